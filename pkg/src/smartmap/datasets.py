"""Small instance generators and hand-built example networks."""
from __future__ import annotations

import random

from .topology import LOGICAL, PHYSICAL, Topology


def _rng(random_state):
    if isinstance(random_state, random.Random):
        return random_state
    return random.Random(random_state)


def _random_connected(nodes, n_edges, rng, prefix, layer):
    nodes = list(nodes)
    rng.shuffle(nodes)
    pairs = set()
    for i in range(1, len(nodes)):
        j = rng.randrange(i)
        pairs.add(frozenset((nodes[i], nodes[j])))
    every = [frozenset((a, b)) for i, a in enumerate(nodes) for b in nodes[i + 1:]]
    extra = [p for p in every if p not in pairs]
    rng.shuffle(extra)
    pairs.update(extra[:max(0, n_edges - len(pairs))])
    edges = [(f"{prefix}{i:02d}", *sorted(p)) for i, p in enumerate(sorted(sorted(p) for p in pairs))]
    return Topology.from_edges(edges, nodes, layer)


def make_instance(n_nodes=6, n_physical_edges=None, n_logical_nodes=None,
                  n_logical_edges=None, random_state=None) -> tuple:
    """Random connected physical graph and a connected logical graph on a node subset.

    Unspecified sizes are drawn at random; the physical graph never exceeds
    the complete graph and always contains a spanning tree.
    """
    rng = _rng(random_state)
    nodes = [f"n{i}" for i in range(n_nodes)]
    full = n_nodes * (n_nodes - 1) // 2
    if n_physical_edges is None:
        n_physical_edges = rng.randint(n_nodes - 1, full)
    physical = _random_connected(nodes, min(n_physical_edges, full), rng, "p", PHYSICAL)
    if n_logical_nodes is None:
        n_logical_nodes = rng.randint(min(3, n_nodes), n_nodes)
    lnodes = sorted(rng.sample(nodes, n_logical_nodes))
    lfull = n_logical_nodes * (n_logical_nodes - 1) // 2
    if n_logical_edges is None:
        n_logical_edges = rng.randint(n_logical_nodes - 1, lfull)
    logical = _random_connected(lnodes, min(n_logical_edges, lfull), rng, "l", LOGICAL)
    return physical, logical


def make_ring(n: int, layer=PHYSICAL, prefix=None) -> Topology:
    prefix = prefix or ("p" if layer == PHYSICAL else "l")
    nodes = [f"n{i}" for i in range(n)]
    edges = [(f"{prefix}{i}", *sorted((nodes[i], nodes[(i + 1) % n]))) for i in range(n)]
    return Topology.from_edges(edges, nodes, layer)


def make_two_rings(drop_bridge: bool = False) -> tuple:
    """Two logical triangles joined by two links, over two physical rings.

    Logical links ``a b c`` and ``f g h`` form the triangles, ``d`` and
    ``e`` join them. Physically the rings are joined by ``pb`` and
    ``ph``; without ``pb`` both joining links must share ``ph``.
    """
    physical = [
        ("pa", "1", "2"), ("pc", "2", "3"), ("pd", "1", "3"),
        ("pe", "4", "5"), ("pf", "5", "6"), ("pg", "4", "6"),
        ("pb", "3", "4"), ("ph", "1", "6"),
    ]
    if drop_bridge:
        physical = [p for p in physical if p[0] != "pb"]
    logical = [
        ("a", "1", "2"), ("b", "2", "3"), ("c", "1", "3"),
        ("f", "4", "5"), ("g", "5", "6"), ("h", "4", "6"),
        ("d", "3", "4"), ("e", "1", "6"),
    ]
    return (Topology.from_edges(physical, layer=PHYSICAL),
            Topology.from_edges(logical, layer=LOGICAL))
