import itertools
import random

import networkx as nx
import pytest

from smartmap.datasets import make_instance, make_ring
from smartmap.topology import LOGICAL, PHYSICAL, Topology

ACCEPTANCE_LINES = []


def pytest_terminal_summary(terminalreporter):
    if ACCEPTANCE_LINES:
        terminalreporter.section("acceptance criteria")
        for line in ACCEPTANCE_LINES:
            terminalreporter.write_line(line)


@pytest.fixture
def ring4():
    return make_ring(4, PHYSICAL), make_ring(4, LOGICAL)


@pytest.fixture
def k4():
    nodes = "abcd"
    edges = [(f"{u}{v}", u, v) for u, v in itertools.combinations(nodes, 2)]
    return Topology.from_edges(edges, layer=PHYSICAL)


@pytest.fixture
def bridge_instance():
    physical = Topology.from_edges([("p1", "u", "v"), ("p2", "v", "w")], layer=PHYSICAL)
    logical = Topology.from_edges([("uv", "u", "v"), ("vw", "v", "w"), ("uw", "u", "w")],
                                  layer=LOGICAL)
    return physical, logical


def random_instances(count, seed, sizes=(4, 7), max_physical=12):
    rng = random.Random(seed)
    for _ in range(count):
        n = rng.randint(*sizes)
        full = n * (n - 1) // 2
        pe = rng.randint(n - 1, min(full, max_physical))
        yield make_instance(n, pe, random_state=rng)


# -- independent reference implementations (networkx only) -------------------

def nx_graph(topology, removed=()):
    g = nx.MultiGraph()
    g.add_nodes_from(topology.nodes)
    for e, (u, v) in topology.edges.items():
        if e not in removed:
            g.add_edge(u, v, key=e)
    return g


def brute_survivable(g_sub, lightpaths, k, physical):
    """Enumerate every k-subset of physical links and test connectivity."""
    if len(g_sub.nodes) <= 1:
        return True
    for failed in itertools.combinations(sorted(physical.edges), min(k, len(physical.edges))):
        failed = set(failed)
        dead = {e for e in g_sub.edges if e not in g_sub.self_loops
                and failed & set(lightpaths[e])}
        if not nx.is_connected(nx_graph(g_sub, dead)):
            return False
    return True


def brute_exists(physical, logical, k, limit=200_000):
    """Try every combination of simple physical paths; None if too large to enumerate."""
    pg = nx_graph(physical)
    choices = []
    for e in sorted(logical.edges):
        u, v = logical.edges[e]
        paths = [tuple(key for _, _, key in p) for p in nx.all_simple_edge_paths(pg, u, v)]
        choices.append(paths)
    size = 1
    for c in choices:
        size *= len(c)
    if size > limit:
        return None
    names = sorted(logical.edges)
    for combo in itertools.product(*choices):
        if brute_survivable(logical, dict(zip(names, combo)), k, physical):
            return True
    return False
