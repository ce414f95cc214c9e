"""Graph model shared by the physical, logical and contracted layers.

Topologies are undirected multigraphs whose edges carry string ids. The
physical and logical layers must be simple graphs; contracted graphs may
hold parallel edges and self-loops.
"""
from __future__ import annotations

import math
from collections import deque
from dataclasses import dataclass, field
from functools import cached_property
from types import MappingProxyType
from typing import Iterable, Iterator, Mapping, NamedTuple, Optional

import networkx as nx

PHYSICAL = "physical"
LOGICAL = "logical"
CONTRACTED = "contracted"
LAYERS = (PHYSICAL, LOGICAL, CONTRACTED)


class TopologyError(ValueError):
    """Raised when a topology, path or edge reference is malformed."""


class NoPathError(TopologyError):
    pass


@dataclass(frozen=True)
class Topology:
    nodes: frozenset
    edges: Mapping[str, tuple]
    layer: str = LOGICAL

    def __post_init__(self):
        if self.layer not in LAYERS:
            raise TopologyError(f"unknown layer {self.layer!r}")
        nodes = frozenset(self.nodes)
        edges = {}
        seen_pairs = {}
        for eid, (u, v) in dict(self.edges).items():
            for x in (u, v):
                if x not in nodes:
                    raise TopologyError(f"edge {eid}: dangling endpoint {x!r}")
            pair = (u, v) if u <= v else (v, u)
            if self.layer != CONTRACTED:
                if u == v:
                    raise TopologyError(f"edge {eid}: self-loop on {u!r}")
                if pair in seen_pairs:
                    raise TopologyError(
                        f"edge {eid}: parallel to {seen_pairs[pair]} between {u!r} and {v!r}")
            seen_pairs.setdefault(pair, eid)
            edges[eid] = pair
        object.__setattr__(self, "nodes", nodes)
        object.__setattr__(self, "edges", MappingProxyType(edges))

    def __hash__(self):
        return hash((self.layer, self.nodes, frozenset(self.edges.items())))

    def __eq__(self, other):
        if not isinstance(other, Topology):
            return NotImplemented
        return (self.layer == other.layer and self.nodes == other.nodes
                and dict(self.edges) == dict(other.edges))

    @classmethod
    def from_edges(cls, edges, nodes=(), layer=LOGICAL) -> "Topology":
        """Build a topology from ``(id, u, v)`` triples; nodes default to the endpoints."""
        edge_map = {}
        all_nodes = set(nodes)
        for eid, u, v in edges:
            if eid in edge_map:
                raise TopologyError(f"duplicate edge id {eid!r}")
            edge_map[eid] = (u, v)
            all_nodes.update((u, v))
        return cls(frozenset(all_nodes), edge_map, layer)

    @cached_property
    def edge_ids(self) -> tuple:
        return tuple(sorted(self.edges))

    @cached_property
    def sorted_nodes(self) -> tuple:
        return tuple(sorted(self.nodes))

    @cached_property
    def adjacency(self) -> Mapping[str, tuple]:
        """node -> tuple of ``(edge_id, neighbour)`` sorted by edge id."""
        adj = {n: [] for n in self.nodes}
        for eid in self.edge_ids:
            u, v = self.edges[eid]
            adj[u].append((eid, v))
            if u != v:
                adj[v].append((eid, u))
        return MappingProxyType({n: tuple(lst) for n, lst in adj.items()})

    @cached_property
    def self_loops(self) -> frozenset:
        return frozenset(e for e, (u, v) in self.edges.items() if u == v)

    def endpoints(self, eid: str) -> tuple:
        try:
            return self.edges[eid]
        except KeyError:
            raise TopologyError(f"unknown edge id {eid!r}") from None

    def other_end(self, eid: str, node: str) -> str:
        u, v = self.endpoints(eid)
        if node == u:
            return v
        if node == v:
            return u
        raise TopologyError(f"node {node!r} is not an end of edge {eid!r}")

    def check_node(self, node: str) -> None:
        if node not in self.nodes:
            raise TopologyError(f"unknown node {node!r}")

    def check_edges(self, eids: Iterable[str]) -> frozenset:
        eids = frozenset(eids)
        unknown = eids - self.edges.keys()
        if unknown:
            raise TopologyError(f"unknown edge id(s) {sorted(unknown)}")
        return eids

    def subgraph(self, edge_ids: Iterable[str], nodes: Iterable[str] = (),
                 layer: Optional[str] = None) -> "Topology":
        """Edge-induced subgraph, optionally padded with isolated ``nodes``."""
        edge_ids = self.check_edges(edge_ids)
        keep = set(nodes)
        for x in keep:
            self.check_node(x)
        for e in edge_ids:
            keep.update(self.edges[e])
        return Topology(frozenset(keep), {e: self.edges[e] for e in edge_ids},
                        layer or self.layer)

    def components(self, removed: Iterable[str] = ()) -> list:
        """Connected components (sorted node lists) after deleting ``removed``."""
        removed = self.check_edges(removed)
        seen = set()
        comps = []
        for start in self.sorted_nodes:
            if start in seen:
                continue
            comp = [start]
            seen.add(start)
            stack = [start]
            while stack:
                x = stack.pop()
                for eid, y in self.adjacency[x]:
                    if eid not in removed and y not in seen:
                        seen.add(y)
                        comp.append(y)
                        stack.append(y)
            comps.append(sorted(comp))
        return comps


@dataclass(frozen=True)
class Path:
    """A walk given by edge ids, from ``source`` to ``target``."""

    edges: tuple
    source: str
    target: str

    def __post_init__(self):
        object.__setattr__(self, "edges", tuple(self.edges))

    def __len__(self):
        return len(self.edges)

    def __iter__(self) -> Iterator[str]:
        return iter(self.edges)

    def nodes(self, g: Topology) -> list:
        """Visited node sequence; raises if the edges do not chain."""
        seq = [self.source]
        for eid in self.edges:
            seq.append(g.other_end(eid, seq[-1]))
        if seq[-1] != self.target:
            raise TopologyError(
                f"path ends at {seq[-1]!r}, expected {self.target!r}")
        return seq

    def is_simple(self, g: Topology) -> bool:
        seq = self.nodes(g)
        return len(set(seq)) == len(seq)


def is_connected(g: Topology, removed: Iterable[str] = ()) -> bool:
    if not g.nodes:
        g.check_edges(removed)
        return True
    return len(g.components(removed)) == 1


def edge_connectivity(g: Topology) -> float:
    """Size of a minimum edge cut; ``math.inf`` for a single node, 0 if disconnected."""
    if len(g.nodes) <= 1:
        return math.inf
    if not is_connected(g):
        return 0
    h = nx.Graph()
    h.add_nodes_from(g.nodes)
    for u, v in g.edges.values():
        if u == v:
            continue
        if h.has_edge(u, v):
            h[u][v]["weight"] += 1
        else:
            h.add_edge(u, v, weight=1)
    cut_value, _ = nx.stoer_wagner(h)
    return int(cut_value)


def _distances_to(g: Topology, target: str) -> dict:
    dist = {target: 0}
    queue = deque([target])
    while queue:
        x = queue.popleft()
        for _, y in g.adjacency[x]:
            if y not in dist:
                dist[y] = dist[x] + 1
                queue.append(y)
    return dist


def _paths_of_length(g: Topology, u: str, v: str, length: int, dist: dict) -> Iterator[tuple]:
    # DFS over edges in id order yields equal-length sequences lexicographically.
    on_path = {u}
    trail = []

    def extend(x):
        if len(trail) == length:
            if x == v:
                yield tuple(trail)
            return
        if x == v:
            return
        remaining = length - len(trail)
        for eid, y in g.adjacency[x]:
            if y in on_path or dist.get(y, math.inf) > remaining - 1:
                continue
            on_path.add(y)
            trail.append(eid)
            yield from extend(y)
            trail.pop()
            on_path.discard(y)

    yield from extend(u)


class PathEnumeration(NamedTuple):
    paths: list
    truncated: bool


def iter_simple_paths(g: Topology, u: str, v: str) -> Iterator[Path]:
    """Simple paths from ``u`` to ``v``, shortest first, ties by edge-id sequence."""
    g.check_node(u)
    g.check_node(v)
    if u == v:
        yield Path((), u, v)
        return
    dist = _distances_to(g, v)
    if u not in dist:
        return
    for length in range(dist[u], len(g.nodes)):
        for edges in _paths_of_length(g, u, v, length, dist):
            yield Path(edges, u, v)


def enumerate_simple_paths(g: Topology, u: str, v: str,
                           cap: Optional[int] = None) -> PathEnumeration:
    if cap is not None and cap < 1:
        raise ValueError("cap must be at least 1")
    paths = []
    for p in iter_simple_paths(g, u, v):
        if cap is not None and len(paths) == cap:
            return PathEnumeration(paths, True)
        paths.append(p)
    return PathEnumeration(paths, False)


def shortest_path(g: Topology, u: str, v: str, removed: Iterable[str] = ()) -> Path:
    """Minimum-hop path, lexicographically least edge-id sequence among those."""
    g.check_node(u)
    g.check_node(v)
    removed = g.check_edges(removed)
    if u == v:
        return Path((), u, v)
    dist = {v: 0}
    queue = deque([v])
    while queue:
        x = queue.popleft()
        for eid, y in g.adjacency[x]:
            if eid not in removed and y not in dist:
                dist[y] = dist[x] + 1
                queue.append(y)
    if u not in dist:
        raise NoPathError(f"no path between {u!r} and {v!r}")
    # greedy walk down the distance gradient picking the least edge id
    edges = []
    x = u
    while x != v:
        eid, x = min((e, y) for e, y in g.adjacency[x]
                     if e not in removed and dist.get(y) == dist[x] - 1)
        edges.append(eid)
    return Path(tuple(edges), u, v)
