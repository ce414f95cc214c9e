"""Input checks shared by the estimator, the CLI and the public operations."""
from __future__ import annotations

import numbers
import os

from .mapping import Mapping, MappingError, make_lightpath
from .topology import CONTRACTED, LOGICAL, PHYSICAL, Topology, TopologyError, is_connected

DEFAULT_K_CEILING = 3


def k_ceiling() -> int:
    raw = os.environ.get("SMARTMAP_K_CEILING")
    if raw is None:
        return DEFAULT_K_CEILING
    try:
        value = int(raw)
    except ValueError:
        raise ValueError(f"SMARTMAP_K_CEILING must be an integer, got {raw!r}") from None
    if value < 1:
        raise ValueError("SMARTMAP_K_CEILING must be at least 1")
    return value


def check_k(k) -> int:
    if isinstance(k, bool) or not isinstance(k, numbers.Integral):
        raise TypeError(f"k must be an integer, got {type(k).__name__}")
    ceiling = k_ceiling()
    if not 1 <= k <= ceiling:
        raise ValueError(f"k must lie in [1, {ceiling}], got {k}")
    return int(k)


def check_topology(g, layer=None, connected=True) -> Topology:
    if not isinstance(g, Topology):
        raise TypeError(f"expected a Topology, got {type(g).__name__}")
    if layer is not None and g.layer != layer:
        raise TopologyError(f"expected a {layer} topology, got {g.layer}")
    if connected and not is_connected(g):
        raise TopologyError(f"{g.layer} topology is disconnected")
    return g


def check_instance(physical, logical) -> tuple:
    """Validate a (physical, logical) pair the way k-SMART needs it."""
    check_topology(physical, PHYSICAL)
    check_topology(logical, LOGICAL)
    missing = logical.nodes - physical.nodes
    if missing:
        raise TopologyError(f"logical nodes {sorted(missing)} are absent from the physical layer")
    return physical, logical


def check_mapping(m, logical: Topology, physical: Topology, total: bool = False) -> Mapping:
    if not isinstance(m, Mapping):
        raise TypeError(f"expected a Mapping, got {type(m).__name__}")
    unknown = m.domain - logical.edges.keys()
    if unknown:
        raise MappingError(f"mapping covers unknown logical edges {sorted(unknown)}")
    for e in m:
        make_lightpath(logical, physical, e, m[e].edges)
    if total and m.domain != frozenset(logical.edges):
        missing = sorted(frozenset(logical.edges) - m.domain)
        raise MappingError(f"mapping is not total; missing {missing}")
    return m


def check_subgraph(sub: Topology, host: Topology) -> Topology:
    if sub.layer != host.layer and host.layer != CONTRACTED:
        raise TopologyError("subgraph layer differs from its host")
    if not sub.nodes <= host.nodes:
        raise TopologyError("subgraph has vertices outside its host")
    for e, ends in sub.edges.items():
        if host.edges.get(e) != ends:
            raise TopologyError(f"edge {e!r} is not an edge of the host graph")
    return sub
