import itertools

import pytest
from hypothesis import given, settings, strategies as st

from smartmap.contraction import contract
from smartmap.datasets import make_instance, make_two_rings
from smartmap.mapping import Lightpath, Mapping, MappingError
from smartmap.survivability import (FailureSet, is_k_survivable, is_piecewise_k_survivable,
                                    surviving_path)
from smartmap.topology import Topology, TopologyError, enumerate_simple_paths

from conftest import brute_survivable

FIG_TOTAL = {"a": ["pa"], "b": ["pc"], "c": ["pd"], "f": ["pe"], "g": ["pf"], "h": ["pg"],
             "d": ["pb"], "e": ["ph"]}


def identity(ring_p, ring_l):
    return Mapping.from_paths(ring_l, ring_p, {f"l{i}": [f"p{i}"] for i in range(4)})


def test_ring_identity_mapping(ring4):
    physical, logical = ring4
    m = identity(physical, logical)
    assert is_k_survivable(logical, m, 1, physical).survivable
    verdict = is_k_survivable(logical, m, 2, physical)
    assert not verdict.survivable
    assert verdict.witness.edges == ("p0", "p1")
    assert len(verdict.components) == 2
    assert verdict.as_dict(2)["witness_edges"] == ["p0", "p1"]


def test_total_mapping_of_two_rings():
    physical, logical = make_two_rings()
    m = Mapping.from_paths(logical, physical, FIG_TOTAL)
    assert is_k_survivable(logical, m, 1, physical).survivable


def test_joining_pair_with_disjoint_lightpaths():
    physical, logical = make_two_rings()
    m = Mapping.from_paths(logical, physical, FIG_TOTAL)
    ct = contract(logical, set(FIG_TOTAL) - {"d", "e"})
    assert set(ct.graph.edges) == {"d", "e"}
    assert is_k_survivable(ct.graph, m, 1, physical).survivable


def test_single_vertex_is_always_survivable():
    physical, _ = make_two_rings()
    g = Topology(frozenset({"1"}), {}, "logical")
    for k in (1, 2, 3):
        assert is_k_survivable(g, Mapping(), k, physical).survivable


def test_input_errors(ring4):
    physical, logical = ring4
    with pytest.raises(MappingError):
        is_k_survivable(logical, Mapping(), 1, physical)
    with pytest.raises(ValueError):
        is_k_survivable(logical, identity(physical, logical), 0, physical)
    split = logical.subgraph(["l0", "l2"])
    with pytest.raises(TopologyError):
        is_k_survivable(split, identity(physical, logical), 1, physical)


def test_failure_set_validation(ring4):
    physical, _ = ring4
    assert FailureSet.checked(["p2", "p0"], 2, physical).edges == ("p0", "p2")
    with pytest.raises(ValueError):
        FailureSet.checked(["p0"], 2, physical)
    with pytest.raises(ValueError):
        FailureSet.checked(["p0", "zz"], 2, physical)


def test_piecewise_on_two_rings():
    physical, logical = make_two_rings()
    m = Mapping.from_paths(logical, physical, FIG_TOTAL).restrict("abcfgh")
    report = is_piecewise_k_survivable(logical, m, 1, physical)
    assert report.survivable
    assert sorted(report.verdicts) == ["1", "4"]
    assert is_piecewise_k_survivable(logical, Mapping(), 3, physical).survivable


def test_piecewise_names_the_failing_piece():
    physical = Topology.from_edges([("p1", "u", "x"), ("p2", "x", "v"), ("p3", "u", "v")],
                                   layer="physical")
    logical = Topology.from_edges([("a", "u", "v"), ("b", "v", "x"), ("c", "u", "x")])
    # both links at u ride p1
    m = Mapping.from_paths(logical, physical, {"a": ["p1", "p2"], "b": ["p2"], "c": ["p1"]})
    report = is_piecewise_k_survivable(logical, m, 1, physical)
    assert not report.survivable
    assert list(report.failing) == ["u"]
    assert report.failing["u"].witness.edges == ("p1",)


def test_surviving_path(ring4):
    physical, logical = ring4
    m = identity(physical, logical)
    p = surviving_path(logical, m, "n0", "n1", FailureSet(("p0",)))
    assert p.edges == ("l3", "l2", "l1")
    assert surviving_path(logical, m, "n0", "n1", FailureSet(())).edges == ("l0",)
    assert surviving_path(logical, m, "n2", "n2", FailureSet(("p0",))).edges == ()
    assert surviving_path(logical, m, "n0", "n2", FailureSet(("p0", "p2"))) is None


def random_mapping(physical, logical, rng):
    out = {}
    for e in logical.edge_ids:
        paths = enumerate_simple_paths(physical, *logical.edges[e], cap=6).paths
        out[e] = Lightpath(e, rng.choice(paths))
    return Mapping(out)


instances = st.builds(make_instance, n_nodes=st.integers(3, 6), random_state=st.integers(0, 10**6))


@settings(max_examples=120, deadline=None)
@given(instances, st.integers(1, 3), st.randoms(use_true_random=False))
def test_matches_brute_force_and_path_definition(instance, k, rng):
    physical, logical = instance
    m = random_mapping(physical, logical, rng)
    verdict = is_k_survivable(logical, m, k, physical)
    assert verdict.survivable == brute_survivable(logical, m.edge_lists(), k, physical)
    # the path-based definition: every pair stays joined under every failure set
    nodes = logical.sorted_nodes
    any_cut = False
    for combo in itertools.combinations(physical.edge_ids, min(k, len(physical.edges))):
        f = FailureSet(combo)
        cut = any(surviving_path(logical, m, u, v, f) is None
                  for u, v in itertools.combinations(nodes, 2))
        any_cut |= cut
    assert verdict.survivable == (not any_cut)
    if not verdict.survivable:
        dead = [e for e in logical.edge_ids if set(m[e].edges) & set(verdict.witness.edges)]
        assert len(logical.components(dead)) > 1
        assert [list(c) for c in verdict.components] == logical.components(dead)
    else:
        # surviving k failures implies surviving fewer
        for j in range(1, k):
            assert is_k_survivable(logical, m, j, physical).survivable
