"""Exhaustive search for k-survivable lightpath assignments.

The same backtracking engine serves the ground-truth oracle (large caps)
and the per-subgraph mapping step of k-SMART (small caps).
"""
from __future__ import annotations

from dataclasses import dataclass, field
from itertools import combinations
from typing import Mapping as MappingT, Optional

from .contraction import ContractedTopology
from .mapping import Lightpath, Mapping
from .survivability import _Connectivity
from .topology import LOGICAL, Topology, TopologyError, edge_connectivity, enumerate_simple_paths

FOUND = "found"
NOT_EXISTS = "not_exists"
UNKNOWN = "unknown"

DEFAULT_MAX_PATHS = 64
DEFAULT_MAX_COMBINATIONS = 10 ** 7


@dataclass
class SearchStats:
    paths_per_edge: dict = field(default_factory=dict)
    combinations: int = 0
    truncated: list = field(default_factory=list)
    budget_hit: bool = False
    refuted_by: Optional[str] = None

    @property
    def complete(self) -> bool:
        return not self.truncated and not self.budget_hit

    def as_dict(self) -> dict:
        return {
            "paths_per_edge": dict(sorted(self.paths_per_edge.items())),
            "combinations": self.combinations,
            "truncated_edges": sorted(self.truncated),
            "budget_hit": self.budget_hit,
            "refuted_by": self.refuted_by,
        }


@dataclass
class OracleResult:
    status: str
    mapping: Optional[Mapping] = None
    stats: SearchStats = field(default_factory=SearchStats)

    @property
    def found(self) -> bool:
        return self.status == FOUND


class _BudgetExceeded(Exception):
    pass


def search_assignment(physical: Topology, target: Topology, ends: MappingT[str, tuple],
                      k: int, max_paths: int, max_combinations: int):
    """Backtracking over per-edge simple-path candidates.

    ``target`` is the (possibly contracted) graph whose connectivity must
    survive; ``ends`` gives, per target edge, the physical end-nodes its
    lightpath must join. Self-loops of ``target`` are ignored. Returns
    ``(paths or None, stats)`` where ``paths`` maps edge id -> Path.
    """
    if max_paths < 1 or max_combinations < 1:
        raise ValueError("search caps must be at least 1")
    stats = SearchStats()
    conn = _Connectivity(target)
    if len(target.components()) > 1:
        raise TopologyError("target topology must be connected")
    edges = conn.edges
    for e in edges:
        for x in ends[e]:
            physical.check_node(x)
    pidx = {e: i for i, e in enumerate(physical.edge_ids)}

    cands = {}
    for e in edges:
        listing = enumerate_simple_paths(physical, *ends[e], cap=max_paths)
        cands[e] = [(sum(1 << pidx[p] for p in path.edges), path) for path in listing.paths]
        stats.paths_per_edge[e] = len(listing.paths)
        if listing.truncated:
            stats.truncated.append(e)
        if not cands[e]:
            stats.refuted_by = f"no physical route for {e}"
            return None, stats
    if not edges:
        return {}, stats
    # a logical cut of at most k links dies once one physical link per lightpath fails
    k = min(k, len(physical.edges))
    if edge_connectivity(target) <= k:
        stats.refuted_by = "logical cut"
        return None, stats

    fails = [sum(1 << pidx[p] for p in c) for c in combinations(physical.edge_ids, k)]
    by_bit = [[] for _ in pidx]
    for fi, f in enumerate(fails):
        for b in range(len(pidx)):
            if f >> b & 1:
                by_bit[b].append(fi)

    # an edge whose end-nodes a failure separates physically is dead in every assignment
    node_idx = {n: i for i, n in enumerate(physical.sorted_nodes)}
    pends = [(node_idx[physical.edges[p][0]], node_idx[physical.edges[p][1]])
             for p in physical.edge_ids]
    dead = []
    for f in fails:
        parent = list(range(len(node_idx)))

        def find(x):
            while parent[x] != x:
                parent[x] = parent[parent[x]]
                x = parent[x]
            return x

        for b, (x, y) in enumerate(pends):
            if not f >> b & 1:
                parent[find(x)] = find(y)
        forced = 0
        for i, e in enumerate(edges):
            x, y = ends[e]
            if find(node_idx[x]) != find(node_idx[y]):
                forced |= 1 << i
        if not conn.connected(forced):
            stats.refuted_by = "physical cut"
            return None, stats
        dead.append(forced)

    affected_cache = {}

    def affected(mask):
        hit = affected_cache.get(mask)
        if hit is None:
            s = set()
            for b in range(len(pidx)):
                if mask >> b & 1:
                    s.update(by_bit[b])
            hit = affected_cache[mask] = tuple(sorted(s))
        return hit

    # most constrained edges first
    order = sorted(range(len(edges)), key=lambda i: (len(cands[edges[i]]), edges[i]))
    chosen = {}
    counter = [0]

    def assign(pos, used):
        if pos == len(order):
            return True
        i = order[pos]
        bit = 1 << i
        options = cands[edges[i]]
        # edge-disjoint choices first, each group shortest first
        ranked = [c for c in options if not c[0] & used] + [c for c in options if c[0] & used]
        for mask, path in ranked:
            counter[0] += 1
            if counter[0] > max_combinations:
                raise _BudgetExceeded
            changed = []
            ok = True
            for fi in affected(mask):
                d = dead[fi]
                if d & bit:
                    continue
                dead[fi] = d | bit
                changed.append((fi, d))
                if not conn.connected(d | bit):
                    ok = False
                    break
            if ok:
                chosen[edges[i]] = path
                if assign(pos + 1, used | mask):
                    return True
                del chosen[edges[i]]
            for fi, d in changed:
                dead[fi] = d
        return False

    try:
        found = assign(0, 0)
    except _BudgetExceeded:
        stats.budget_hit = True
        found = False
    stats.combinations = min(counter[0], max_combinations)
    return (dict(chosen) if found else None), stats


def _target_and_ends(target, logical: Optional[Topology]):
    if isinstance(target, ContractedTopology):
        return target.graph, target.base
    if logical is None:
        if target.layer != LOGICAL:
            raise TopologyError("contracted targets need the logical topology for end-nodes")
        logical = target
    return target, logical


def oracle_exists(physical: Topology, target, k: int,
                  max_paths: int = DEFAULT_MAX_PATHS,
                  max_combinations: int = DEFAULT_MAX_COMBINATIONS,
                  logical: Optional[Topology] = None) -> OracleResult:
    """Decide whether ``target`` admits a k-survivable mapping onto ``physical``.

    ``target`` is a logical topology, a ContractedTopology, or a subgraph of
    a contracted graph together with ``logical``. Lightpaths always join the
    original logical end-nodes of each link. ``NOT_EXISTS`` is only claimed
    when no candidate list was truncated and the combination cap was not
    reached, or when a physical cut refutes the instance outright.
    """
    if k < 1:
        raise ValueError("k must be at least 1")
    graph, base = _target_and_ends(target, logical)
    ends = {}
    for e in graph.edge_ids:
        if e not in graph.self_loops:
            ends[e] = base.endpoints(e)
    paths, stats = search_assignment(physical, graph, ends, k, max_paths, max_combinations)
    if paths is not None:
        mapping = Mapping({e: Lightpath(e, p) for e, p in paths.items()})
        return OracleResult(FOUND, mapping, stats)
    if stats.refuted_by or stats.complete:
        return OracleResult(NOT_EXISTS, None, stats)
    return OracleResult(UNKNOWN, None, stats)
