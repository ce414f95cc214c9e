"""Deciding k-survivability and piecewise k-survivability of mapped subgraphs."""
from __future__ import annotations

from dataclasses import dataclass, field
from itertools import combinations
from typing import Optional

from .contraction import ContractedTopology, contract, origin_vertex
from .mapping import Mapping, MappingError
from .topology import NoPathError, Path, Topology, TopologyError, shortest_path


@dataclass(frozen=True)
class FailureSet:
    edges: tuple

    def __post_init__(self):
        object.__setattr__(self, "edges", tuple(sorted(self.edges)))

    @classmethod
    def checked(cls, edges, k: int, physical: Topology) -> "FailureSet":
        edges = physical.check_edges(edges)
        if len(edges) != k:
            raise ValueError(f"failure set must hold exactly {k} edges, got {len(edges)}")
        return cls(tuple(edges))


@dataclass(frozen=True)
class Verdict:
    survivable: bool
    witness: Optional[FailureSet] = None
    components: tuple = ()

    @property
    def pair(self) -> Optional[tuple]:
        """Two nodes the witness leaves disconnected."""
        if self.survivable:
            return None
        return self.components[0][0], self.components[1][0]

    def as_dict(self, k: int) -> dict:
        return {
            "survivable": self.survivable,
            "k": k,
            "witness_edges": list(self.witness.edges) if self.witness else None,
            "split_components": [list(c) for c in self.components] or None,
        }


class _Connectivity:
    """Memoised connectivity of ``g`` minus a set of dead edges (bitmask over ``g``'s edges)."""

    def __init__(self, g: Topology):
        self.nodes = g.sorted_nodes
        self.index = {n: i for i, n in enumerate(self.nodes)}
        self.edges = [e for e in g.edge_ids if e not in g.self_loops]
        self.ends = [tuple(self.index[x] for x in g.edges[e]) for e in self.edges]
        self.cache = {}

    def connected(self, dead: int) -> bool:
        hit = self.cache.get(dead)
        if hit is not None:
            return hit
        parent = list(range(len(self.nodes)))

        def find(x):
            while parent[x] != x:
                parent[x] = parent[parent[x]]
                x = parent[x]
            return x

        pieces = len(self.nodes)
        for i, (a, b) in enumerate(self.ends):
            if dead >> i & 1:
                continue
            ra, rb = find(a), find(b)
            if ra != rb:
                parent[ra] = rb
                pieces -= 1
        ok = pieces <= 1
        self.cache[dead] = ok
        return ok


def _check_inputs(g_sub: Topology, m: Mapping, k: int):
    if k < 1:
        raise ValueError("k must be at least 1")
    unmapped = [e for e in g_sub.edge_ids if e not in m and e not in g_sub.self_loops]
    if unmapped:
        raise MappingError(f"unmapped edge(s) {unmapped}")
    if len(g_sub.components()) > 1:
        raise TopologyError("k-survivability is defined for connected subgraphs only")


def is_k_survivable(g_sub: Topology, m: Mapping, k: int, physical: Topology) -> Verdict:
    """Whether every failure of ``k`` physical edges leaves ``g_sub`` connected.

    A logical edge dies when its lightpath meets the failure set. When the
    answer is negative the lexicographically least failing set is returned.
    """
    _check_inputs(g_sub, m, k)
    conn = _Connectivity(g_sub)
    if len(conn.nodes) <= 1:
        return Verdict(True)
    # with fewer than k physical links, failing all of them is the worst case
    k = min(k, len(physical.edges))
    pidx = {e: i for i, e in enumerate(physical.edge_ids)}
    masks = []
    for e in conn.edges:
        mask = 0
        for p in m[e].edges:
            try:
                mask |= 1 << pidx[p]
            except KeyError:
                raise MappingError(f"lightpath of {e!r} uses unknown physical edge {p!r}") from None
        masks.append(mask)

    def dead_under(fail):
        dead = 0
        for i, mask in enumerate(masks):
            if mask & fail:
                dead |= 1 << i
        return dead

    used = 0
    for mask in masks:
        used |= mask
    used_bits = [1 << i for i in range(len(pidx)) if used >> i & 1]
    # failures of unused edges kill nothing, so maximal sets inside ``used`` suffice
    if len(used_bits) >= k:
        candidates = (sum(c) for c in combinations(used_bits, k))
    else:
        candidates = iter((used,))
    if all(conn.connected(dead_under(f)) for f in candidates):
        return Verdict(True)
    for combo in combinations(physical.edge_ids, k):
        fail = sum(1 << pidx[p] for p in combo)
        dead = dead_under(fail)
        if not conn.connected(dead):
            removed = [conn.edges[i] for i in range(len(masks)) if dead >> i & 1]
            comps = g_sub.components(removed)
            return Verdict(False, FailureSet(combo), tuple(tuple(c) for c in comps))
    raise AssertionError("fast check and witness search disagree")


@dataclass(frozen=True)
class PiecewiseReport:
    survivable: bool
    contracted: ContractedTopology
    verdicts: dict = field(default_factory=dict)

    @property
    def failing(self) -> dict:
        return {v: verdict for v, verdict in self.verdicts.items() if not verdict.survivable}


def is_piecewise_k_survivable(logical: Topology, m: Mapping, k: int,
                              physical: Topology) -> PiecewiseReport:
    """Check every contracted vertex of ``logical ↓ domain(m)`` against ``m``."""
    ct = contract(logical, m.domain)
    verdicts = {v: is_k_survivable(origin_vertex(ct, v), m, k, physical) for v in ct.vertices}
    return PiecewiseReport(all(v.survivable for v in verdicts.values()), ct, verdicts)


def surviving_path(g_sub: Topology, m: Mapping, u: str, v: str,
                   f: FailureSet) -> Optional[Path]:
    """A path of ``g_sub`` from ``u`` to ``v`` none of whose lightpaths meets ``f``."""
    g_sub.check_node(u)
    g_sub.check_node(v)
    failed = set(f.edges)
    dead = [e for e in g_sub.edge_ids
            if e not in g_sub.self_loops and not failed.isdisjoint(m[e].edges)]
    try:
        return shortest_path(g_sub, u, v, removed=dead)
    except NoPathError:
        return None
