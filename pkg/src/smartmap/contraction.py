"""Edge contraction ``G ↓ A`` and the Origin relation back to the base graph."""
from __future__ import annotations

from dataclasses import dataclass
from types import MappingProxyType
from typing import Iterable, Mapping

from .topology import CONTRACTED, Topology, TopologyError


class _UnionFind:
    def __init__(self, items):
        self.parent = {x: x for x in items}

    def find(self, x):
        root = x
        while self.parent[root] != root:
            root = self.parent[root]
        while self.parent[x] != root:
            self.parent[x], x = root, self.parent[x]
        return root

    def union(self, a, b):
        ra, rb = self.find(a), self.find(b)
        if ra != rb:
            # keep the lexicographically least label as root
            if rb < ra:
                ra, rb = rb, ra
            self.parent[rb] = ra


@dataclass(frozen=True, eq=False)
class ContractedTopology:
    graph: Topology
    contracted_set: frozenset
    origin_nodes: Mapping[str, frozenset]
    base: Topology

    @property
    def vertices(self) -> tuple:
        return self.graph.sorted_nodes

    @property
    def self_loops(self) -> frozenset:
        return self.graph.self_loops

    @property
    def vertex_of(self) -> Mapping[str, str]:
        """original node -> contracted vertex."""
        return MappingProxyType({x: v for v, xs in self.origin_nodes.items() for x in xs})

    @property
    def is_single_vertex(self) -> bool:
        return len(self.graph.nodes) == 1

    def subgraph(self, edge_ids: Iterable[str], vertices: Iterable[str] = ()) -> Topology:
        return self.graph.subgraph(edge_ids, vertices)

    def canonical(self, include_self_loops: bool = False) -> dict:
        """Order-free description: vertex -> sorted origin nodes, and the surviving edges.

        Self-loops are left out unless asked for, in which case they are
        listed separately rather than among the edges.
        """
        loops = self.self_loops
        view = {
            "vertices": {v: sorted(self.origin_nodes[v]) for v in self.vertices},
            "edges": {e: list(self.graph.edges[e]) for e in self.graph.edge_ids
                      if e not in loops},
        }
        if include_self_loops:
            view["self_loops"] = sorted(loops)
        return view


def contract(g: Topology, a: Iterable[str]) -> ContractedTopology:
    """Delete the edges of ``a`` and merge their end-nodes.

    Each contracted vertex is named after the least original label it
    absorbs. Surviving edges keep their ids; those whose ends collapse
    into one vertex become self-loops.
    """
    a = g.check_edges(a)
    uf = _UnionFind(g.nodes)
    for e in a:
        uf.union(*g.edges[e])
    groups = {}
    for x in g.nodes:
        groups.setdefault(uf.find(x), set()).add(x)
    origin = MappingProxyType({min(xs): frozenset(xs) for xs in groups.values()})
    name = {x: min(xs) for xs in groups.values() for x in xs}
    edges = {e: (name[u], name[v]) for e, (u, v) in g.edges.items() if e not in a}
    graph = Topology(frozenset(origin), edges, CONTRACTED)
    return ContractedTopology(graph, a, origin, g)


def origin_vertex(ct: ContractedTopology, v: str) -> Topology:
    if v not in ct.origin_nodes:
        raise TopologyError(f"unknown contracted vertex {v!r}")
    nodes = ct.origin_nodes[v]
    inside = [e for e in ct.contracted_set if ct.base.edges[e][0] in nodes]
    return ct.base.subgraph(inside, nodes)


def origin_subgraph(ct: ContractedTopology, sub: Topology) -> Topology:
    """The maximal base subgraph that contraction turned into ``sub``."""
    for v in sub.nodes:
        if v not in ct.origin_nodes:
            raise TopologyError(f"unknown contracted vertex {v!r}")
    for e, ends in sub.edges.items():
        if ct.graph.edges.get(e) != ends:
            raise TopologyError(f"edge {e!r} is not an edge of the contracted graph")
    nodes = set()
    edges = set(sub.edges)
    for v in sub.nodes:
        nodes |= ct.origin_nodes[v]
    edges.update(e for e in ct.contracted_set if ct.base.edges[e][0] in nodes)
    return ct.base.subgraph(edges, nodes)
