"""k-SMART: map survivable pieces, contract them, repeat.

The loop converges to a single contracted vertex exactly when a
k-survivable mapping of the whole logical topology exists; otherwise it
stops with a piecewise k-survivable partial mapping and the remaining
contracted topology, which localises the vulnerable part of the network.
"""
from __future__ import annotations

import logging
import math
import random
from dataclasses import dataclass, field, replace
from functools import lru_cache
from itertools import combinations
from typing import Iterator, Optional

from .contraction import ContractedTopology, contract
from .mapping import Lightpath, Mapping, merge
from .oracle import (DEFAULT_MAX_COMBINATIONS, DEFAULT_MAX_PATHS, FOUND, NOT_EXISTS,
                     oracle_exists, search_assignment)
from .survivability import is_k_survivable, is_piecewise_k_survivable
from .topology import Topology, edge_connectivity, is_connected, shortest_path

logger = logging.getLogger(__name__)

CONVERGED = "converged"
STUCK = "stuck"

PROVEN = "proven"
REFUTED = "refuted"
UNKNOWN = "unknown"

CYCLES = "cycles"
K2 = "k2"
EXHAUSTIVE = "exhaustive"
KINDS = (CYCLES, K2, EXHAUSTIVE)


class VerificationError(AssertionError):
    """A run violated one of the guarantees checked in verification mode."""


@dataclass(frozen=True)
class Strategy:
    kind: str = CYCLES
    max_candidates: int = 2000
    max_paths: int = 16
    max_combinations: int = 5000
    seed: int = 0
    shuffle: bool = False

    def __post_init__(self):
        if self.kind not in KINDS:
            raise ValueError(f"unknown strategy kind {self.kind!r}")
        for name in ("max_candidates", "max_paths", "max_combinations"):
            if getattr(self, name) < 1:
                raise ValueError(f"{name} must be at least 1")

    @classmethod
    def for_k(cls, k: int, **kwargs) -> "Strategy":
        kind = {1: CYCLES, 2: K2}.get(k, EXHAUSTIVE)
        return cls(kind=kind, **kwargs)

    def check_k(self, k: int) -> None:
        if self.kind == CYCLES and k != 1:
            raise ValueError("the cycles strategy only applies to k=1")
        if self.kind == K2 and k != 2:
            raise ValueError("the k2 strategy only applies to k=2")

    def escalated(self) -> "Strategy":
        return replace(self, max_candidates=self.max_candidates * 10,
                       max_paths=self.max_paths * 4,
                       max_combinations=self.max_combinations * 10)


@dataclass(frozen=True)
class IterationRecord:
    edges: tuple
    mapping: Mapping
    source: str = "strategy"
    candidates_tried: int = 0


@dataclass
class SmartOutcome:
    status: str
    mapping: Mapping
    remaining: ContractedTopology
    k: int
    iterations: list = field(default_factory=list)
    budget_limited: bool = False
    completed_self_loops: tuple = ()

    @property
    def converged(self) -> bool:
        return self.status == CONVERGED

    @property
    def logical(self) -> Topology:
        return self.remaining.base

    def as_dict(self) -> dict:
        return {
            "status": self.status,
            "k": self.k,
            "budget_limited": self.budget_limited,
            "iterations": [
                {"edges": list(it.edges), "source": it.source,
                 "candidates_tried": it.candidates_tried,
                 "lightpaths": {e: list(p) for e, p in it.mapping.edge_lists().items()}}
                for it in self.iterations
            ],
            "completed_self_loops": list(self.completed_self_loops),
            "remaining": self.remaining.canonical(include_self_loops=False),
            "mapped": sorted(self.mapping.domain),
        }


# -- candidate subgraphs ---------------------------------------------------

def _cycles_of_length(g: Topology, length: int) -> list:
    """Simple cycles with ``length`` edges as sorted edge-id tuples (self-loops skipped)."""
    found = []
    for s in g.sorted_nodes:
        trail = []
        on_path = {s}

        def walk(x):
            depth = len(trail)
            for eid, y in g.adjacency[x]:
                if eid in g.self_loops or (trail and eid == trail[-1]):
                    continue
                if y == s:
                    # each cycle is seen in both directions; keep one
                    if depth + 1 == length and trail[0] < eid:
                        found.append(tuple(sorted(trail + [eid])))
                    continue
                if depth + 1 >= length or y in on_path or y < s:
                    continue
                on_path.add(y)
                trail.append(eid)
                walk(y)
                trail.pop()
                on_path.discard(y)

        walk(s)
    return sorted(set(found))


def _all_cycles(g: Topology) -> Iterator[tuple]:
    for length in range(2, len(g.nodes) + 1):
        yield from _cycles_of_length(g, length)


# yielded by candidate generators when a scan budget cut the stream short
_TRUNCATED = object()


@lru_cache(maxsize=128)
def survivable_classes(physical: Topology, k: int) -> dict:
    """Partition of physical nodes that no failure of ``k`` links can separate.

    A k-survivable piece never spans two classes: some failure would cut
    every lightpath leaving the class. Classes are named by their least node.
    """
    index = {}
    groups = [physical.sorted_nodes]
    for failed in combinations(physical.edge_ids, min(k, len(physical.edges))):
        comp = {}
        for i, c in enumerate(physical.components(failed)):
            for x in c:
                comp[x] = i
        groups = [list(part) for group in groups
                  for part in _split(group, comp)]
    for group in groups:
        for x in group:
            index[x] = min(group)
    return index


def _split(group, comp):
    parts = {}
    for x in group:
        parts.setdefault(comp[x], []).append(x)
    return parts.values()


def _eligible(ct: ContractedTopology, k: int, physical: Optional[Topology]) -> Topology:
    """Edges that can belong to some k-survivable candidate, as a subgraph."""
    g = ct.graph
    edges = [e for e in g.edge_ids if e not in g.self_loops]
    if physical is not None:
        classes = survivable_classes(physical, k)
        vclass = {}
        for v, origin in ct.origin_nodes.items():
            owners = {classes[x] for x in origin}
            vclass[v] = owners.pop() if len(owners) == 1 else None
        edges = [e for e in edges
                 if vclass[g.edges[e][0]] is not None
                 and vclass[g.edges[e][0]] == vclass[g.edges[e][1]]]
    # a (k+1)-edge-connected subgraph lives inside the (k+1)-core
    while True:
        degree = {}
        for e in edges:
            for x in g.edges[e]:
                degree[x] = degree.get(x, 0) + 1
        weak = {x for x, d in degree.items() if d <= k}
        if not weak:
            break
        edges = [e for e in edges if not weak & set(g.edges[e])]
    return g.subgraph(edges)


def _degree_ok(g: Topology, combo, k: int) -> bool:
    degree = {}
    for e in combo:
        for x in g.edges[e]:
            degree[x] = degree.get(x, 0) + 1
    return min(degree.values()) > k


def _exhaustive(g: Topology, k: int, scan_limit: int, skip=frozenset()) -> Iterator:
    edges = list(g.edge_ids)
    scanned = 0
    for size in range(k + 1, len(edges) + 1):
        group = []
        for combo in combinations(edges, size):
            scanned += 1
            if scanned > scan_limit:
                yield group
                yield _TRUNCATED
                return
            if combo in skip or not _degree_ok(g, combo, k):
                continue
            sub = g.subgraph(combo)
            if is_connected(sub) and edge_connectivity(sub) >= k + 1:
                group.append(combo)
        yield group


def _two_cycle_unions(g: Topology, scan_limit: int) -> Iterator:
    cycles = []
    truncated = False
    for c in _all_cycles(g):
        if len(cycles) == scan_limit:
            truncated = True
            break
        cycles.append(c)
    ends = {c: {x for e in c for x in g.edges[e]} for c in cycles}
    seen = set()
    scanned = 0
    for c1, c2 in combinations(cycles, 2):
        scanned += 1
        if scanned > scan_limit:
            truncated = True
            break
        if len(ends[c1] & ends[c2]) < 2:
            continue
        union = tuple(sorted(set(c1) | set(c2)))
        if union in seen or not _degree_ok(g, union, 2):
            continue
        # structures with a degree-2 vertex can never survive two failures
        if edge_connectivity(g.subgraph(union)) >= 3:
            seen.add(union)
    by_size = {}
    for u in seen:
        by_size.setdefault(len(u), []).append(u)
    for n in sorted(by_size):
        yield sorted(by_size[n])
    if truncated:
        yield _TRUNCATED
    yield from _exhaustive(g, 2, scan_limit, skip=frozenset(seen))


def _candidates(ct: ContractedTopology, k: int, strategy: Strategy,
                physical: Optional[Topology]) -> Iterator:
    strategy.check_k(k)
    g = _eligible(ct, k, physical)
    scan_limit = strategy.max_candidates * 50
    if strategy.kind == CYCLES:
        groups = (_cycles_of_length(g, n) for n in range(2, len(g.nodes) + 1))
    elif strategy.kind == K2:
        groups = _two_cycle_unions(g, scan_limit)
    else:
        groups = _exhaustive(g, k, scan_limit)
    rng = random.Random(strategy.seed)
    if strategy.shuffle:
        pool, truncated = [], False
        for group in groups:
            if group is _TRUNCATED:
                truncated = True
            else:
                pool.extend(group)
        groups = [pool, _TRUNCATED] if truncated else [pool]
    for group in groups:
        if group is _TRUNCATED:
            yield _TRUNCATED
            continue
        group = list(group)
        rng.shuffle(group)
        for combo in group:
            yield g.subgraph(combo)


def candidate_subgraphs(ct: ContractedTopology, k: int, strategy: Strategy = Strategy(),
                        physical: Optional[Topology] = None) -> Iterator[Topology]:
    """Subgraphs of the contracted graph to try in one iteration, smallest first.

    Ties within a size class are ordered by ``strategy.seed``; with
    ``strategy.shuffle`` the whole stream is permuted instead. Given the
    physical topology, links that no k-survivable piece can contain are
    left out up front.
    """
    for sub in _candidates(ct, k, strategy, physical):
        if sub is not _TRUNCATED:
            yield sub


# -- mapping one subgraph --------------------------------------------------

def _map_subgraph(g_sub: Topology, physical: Topology, k: int, logical: Topology,
                  max_paths: int, max_combinations: int):
    ends = {e: logical.endpoints(e) for e in g_sub.edge_ids if e not in g_sub.self_loops}
    paths, stats = search_assignment(physical, g_sub, ends, k, max_paths, max_combinations)
    if paths is None:
        return None, stats.complete or bool(stats.refuted_by)
    mb = Mapping({e: Lightpath(e, p) for e, p in paths.items()})
    if not is_k_survivable(g_sub, mb, k, physical).survivable:
        raise VerificationError(f"search returned a non-survivable mapping for {g_sub.edge_ids}")
    return mb, True


def map_subgraph(g_sub: Topology, physical: Topology, k: int, logical: Topology,
                 max_paths: int = 16, max_combinations: int = 5000) -> Optional[Mapping]:
    """A k-survivable mapping of ``g_sub``'s edges, or None within the budget.

    ``logical`` supplies the original end-nodes of each (possibly contracted) link.
    """
    return _map_subgraph(g_sub, physical, k, logical, max_paths, max_combinations)[0]


def finalize_self_loops(m: Mapping, ct: ContractedTopology, physical: Topology) -> Mapping:
    if not ct.is_single_vertex:
        raise ValueError("self-loop completion needs a single-vertex contracted topology")
    extra = {}
    for e in sorted(ct.self_loops):
        if e not in m:
            extra[e] = Lightpath(e, shortest_path(physical, *ct.base.endpoints(e)))
    unmapped = set(ct.base.edges) - m.domain - set(extra)
    if unmapped:
        raise ValueError(f"links {sorted(unmapped)} are neither mapped nor self-loops")
    return merge(m, Mapping(extra))


# -- the main loop ---------------------------------------------------------

def _check_inputs(physical: Topology, logical: Topology, k: int):
    if k < 1:
        raise ValueError("k must be at least 1")
    if not logical.nodes <= physical.nodes:
        raise ValueError("logical nodes must be physical nodes")
    if not is_connected(physical) or not is_connected(logical):
        raise ValueError("both topologies must be connected")


def _verify_step(physical, logical, mapping, k):
    report = is_piecewise_k_survivable(logical, mapping, k, physical)
    if not report.survivable:
        raise VerificationError(
            f"mapping of {sorted(mapping.domain)} is not piecewise {k}-survivable "
            f"(failing vertices {sorted(report.failing)})")


def _verify_unused_edges(physical, logical, mapping, k, rng):
    # failing an edge no lightpath uses must never change which links die
    used = set().union(*(lp.edges for lp in mapping.assignments.values())) if len(mapping) else set()
    unused = sorted(set(physical.edges) - used)
    if not unused or len(physical.edges) < k:
        return
    pick = [rng.choice(unused)]
    pick += rng.sample(sorted(set(physical.edges) - set(pick)), k - 1)
    reduced = [p for p in pick if p in used]
    for e in mapping:
        lp = set(mapping[e].edges)
        if bool(lp & set(pick)) != bool(lp & set(reduced)):
            raise VerificationError(f"unused physical edge changed the fate of {e}")


def _loop(physical, logical, k, strategy, verify, mapping, iterations):
    while True:
        ct = contract(logical, mapping.domain)
        if ct.is_single_vertex:
            full = finalize_self_loops(mapping, ct, physical)
            outcome = SmartOutcome(CONVERGED, full, ct, k, iterations,
                                   completed_self_loops=tuple(sorted(full.domain - mapping.domain)))
            if verify and not is_k_survivable(logical, full, k, physical).survivable:
                raise VerificationError("converged mapping is not k-survivable")
            return outcome
        chosen = None
        budget_limited = False
        tried = 0
        for sub in _candidates(ct, k, strategy, physical):
            if sub is _TRUNCATED:
                budget_limited = True
                continue
            if tried == strategy.max_candidates:
                budget_limited = True
                break
            tried += 1
            mb, complete = _map_subgraph(sub, physical, k, logical,
                                         strategy.max_paths, strategy.max_combinations)
            if mb is not None:
                chosen = (sub, mb)
                break
            budget_limited |= not complete
        if chosen is None:
            return SmartOutcome(STUCK, mapping, ct, k, iterations, budget_limited=budget_limited)
        sub, mb = chosen
        mapping = merge(mapping, mb)
        iterations.append(IterationRecord(sub.edge_ids, mb, "strategy", tried))
        logger.debug("iteration %d: mapped %s", len(iterations), sub.edge_ids)
        if verify:
            _verify_step(physical, logical, mapping, k)


def run(physical: Topology, logical: Topology, k: int = 1,
        strategy: Optional[Strategy] = None, verify: bool = True) -> SmartOutcome:
    """Run k-SMART from the empty mapping."""
    _check_inputs(physical, logical, k)
    strategy = strategy or Strategy.for_k(k)
    strategy.check_k(k)
    outcome = _loop(physical, logical, k, strategy, verify, Mapping(), [])
    if verify:
        _verify_unused_edges(physical, logical, outcome.mapping, k, random.Random(strategy.seed))
    return outcome


def resume(outcome: SmartOutcome, physical: Topology, extra: Mapping, source: str,
           strategy: Strategy, verify: bool = True) -> SmartOutcome:
    """Merge ``extra`` into a stuck outcome's mapping and continue the loop."""
    logical = outcome.logical
    mapping = merge(outcome.mapping, extra)
    iterations = list(outcome.iterations)
    if len(extra):
        iterations.append(IterationRecord(tuple(sorted(extra.domain)), extra, source))
    if verify:
        _verify_step(physical, logical, mapping, outcome.k)
    return _loop(physical, logical, outcome.k, strategy, verify, mapping, iterations)


# -- existence decision ----------------------------------------------------

@dataclass
class Decision:
    status: str
    mapping: Optional[Mapping] = None
    remaining: Optional[ContractedTopology] = None
    reason: str = ""
    outcome: Optional[SmartOutcome] = None
    oracle_calls: int = 0
    escalated: bool = False


def decide_existence(physical: Topology, logical: Topology, k: int = 1,
                     strategy: Optional[Strategy] = None,
                     max_paths: int = DEFAULT_MAX_PATHS,
                     max_combinations: int = DEFAULT_MAX_COMBINATIONS,
                     verify: bool = True) -> Decision:
    """Prove or refute the existence of a k-survivable mapping.

    k-SMART runs first. When it stalls, the oracle is asked about the
    remaining contracted topology only; a mapping found there is merged
    back and the loop resumes, while a refutation there refutes the whole
    instance.
    """
    strategy = strategy or Strategy.for_k(k)
    outcome = run(physical, logical, k, strategy, verify)
    escalated = False
    calls = 0
    while not outcome.converged:
        if outcome.budget_limited and not escalated:
            escalated = True
            strategy = strategy.escalated()
            outcome = resume(outcome, physical, Mapping(), "escalation", strategy, verify)
            continue
        calls += 1
        res = oracle_exists(physical, outcome.remaining, k, max_paths, max_combinations)
        if res.status == FOUND:
            outcome = resume(outcome, physical, res.mapping, "oracle", strategy, verify)
        elif res.status == NOT_EXISTS:
            return Decision(REFUTED, None, outcome.remaining,
                            "remaining contracted topology has no k-survivable mapping",
                            outcome, calls, escalated)
        else:
            return Decision(UNKNOWN, None, outcome.remaining,
                            "oracle search truncated on the remaining topology",
                            outcome, calls, escalated)
    return Decision(PROVEN, outcome.mapping, outcome.remaining, "", outcome, calls, escalated)


def trace_vulnerability(outcome: SmartOutcome) -> dict:
    """Describe where a stuck run got blocked."""
    if outcome.converged:
        raise ValueError("nothing to trace: the run converged")
    ct = outcome.remaining
    loops = ct.self_loops
    core = ct.graph.subgraph([e for e in ct.graph.edge_ids if e not in loops], ct.vertices)
    lam = edge_connectivity(core)
    if lam <= outcome.k:
        diagnosis = "structurally impossible regardless of physical topology"
    else:
        diagnosis = "necessary edge-connectivity condition holds; blocked by physical routing"
    return {
        "schema": 1,
        "status": outcome.status,
        "k": outcome.k,
        "budget_limited": outcome.budget_limited,
        "remaining_vertices": [{"vertex": v, "origin_nodes": sorted(ct.origin_nodes[v])}
                               for v in ct.vertices],
        "unmapped_links": sorted(set(ct.base.edges) - outcome.mapping.domain),
        "self_loops": sorted(loops),
        "edge_connectivity": None if math.isinf(lam) else lam,
        "required_edge_connectivity": outcome.k + 1,
        "diagnosis": diagnosis,
    }
