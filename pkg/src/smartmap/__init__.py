"""k-survivable mapping of IP (logical) topologies onto WDM (physical) topologies."""
from .contraction import ContractedTopology, contract, origin_subgraph, origin_vertex
from .estimator import SurvivableMapper
from .formats import emit_mapping, emit_topology, parse_mapping, parse_topology
from .mapping import (Lightpath, Mapping, MappingConflictError, MappingError, image, is_total,
                      make_lightpath, merge)
from .oracle import OracleResult, oracle_exists
from .smart import (Decision, SmartOutcome, Strategy, candidate_subgraphs, decide_existence,
                    finalize_self_loops, map_subgraph, run, trace_vulnerability)
from .survivability import (FailureSet, Verdict, is_k_survivable, is_piecewise_k_survivable,
                            surviving_path)
from .topology import (Path, Topology, TopologyError, edge_connectivity,
                       enumerate_simple_paths, is_connected, shortest_path)

__version__ = "0.1.0"

__all__ = [
    "ContractedTopology", "Decision", "FailureSet", "Lightpath", "Mapping",
    "MappingConflictError", "MappingError", "OracleResult", "Path", "SmartOutcome",
    "Strategy", "SurvivableMapper", "Topology", "TopologyError", "Verdict",
    "candidate_subgraphs", "contract", "decide_existence", "edge_connectivity",
    "emit_mapping", "emit_topology", "enumerate_simple_paths", "finalize_self_loops",
    "image", "is_connected", "is_k_survivable", "is_piecewise_k_survivable", "is_total",
    "make_lightpath", "map_subgraph", "merge", "oracle_exists", "origin_subgraph",
    "origin_vertex", "parse_mapping", "parse_topology", "run", "shortest_path",
    "surviving_path", "trace_vulnerability",
]
