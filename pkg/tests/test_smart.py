import pytest

from smartmap.contraction import contract
from smartmap.datasets import make_ring, make_two_rings
from smartmap.mapping import Mapping
from smartmap.smart import (CONVERGED, PROVEN, REFUTED, STUCK, UNKNOWN, Strategy,
                            candidate_subgraphs, decide_existence, finalize_self_loops,
                            map_subgraph, run, survivable_classes, trace_vulnerability)
from smartmap.survivability import is_k_survivable, is_piecewise_k_survivable
from smartmap.topology import CONTRACTED, LOGICAL, PHYSICAL, Topology

from conftest import random_instances


def test_ring_on_ring_converges(ring4):
    physical, logical = ring4
    out = run(physical, logical, 1)
    assert out.status == CONVERGED
    assert out.mapping.domain == set(logical.edges)
    assert is_k_survivable(logical, out.mapping, 1, physical).survivable
    assert out.remaining.is_single_vertex


def test_bridge_gets_stuck_with_nothing_contracted(bridge_instance):
    physical, logical = bridge_instance
    out = run(physical, logical, 1)
    assert out.status == STUCK and not out.budget_limited
    assert len(out.mapping) == 0
    assert out.remaining.vertices == ("u", "v", "w")
    assert set(out.remaining.graph.edges) == set(logical.edges)


def test_two_rings_converge_and_record_iterations():
    physical, logical = make_two_rings()
    out = run(physical, logical, 1)
    assert out.converged
    covered = {e for it in out.iterations for e in it.edges} | set(out.completed_self_loops)
    assert covered == set(logical.edges)
    log = out.as_dict()
    assert log["status"] == "converged" and log["mapped"] == sorted(logical.edges)


def test_two_rings_without_bridge_stall_on_the_joining_pair():
    physical, logical = make_two_rings(drop_bridge=True)
    out = run(physical, logical, 1)
    assert out.status == STUCK
    assert out.mapping.domain == set("abcfgh")
    assert set(out.remaining.graph.edges) == {"d", "e"}
    assert is_piecewise_k_survivable(logical, out.mapping, 1, physical).survivable


@pytest.mark.parametrize("seed", range(5))
def test_remaining_topology_is_seed_independent(seed):
    physical, logical = make_two_rings(drop_bridge=True)
    base = run(physical, logical, 1).remaining.canonical()
    other = run(physical, logical, 1, Strategy(seed=seed, shuffle=bool(seed % 2))).remaining
    assert other.canonical() == base


def test_strategy_validation():
    assert Strategy.for_k(1).kind == "cycles"
    assert Strategy.for_k(2).kind == "k2"
    assert Strategy.for_k(3).kind == "exhaustive"
    with pytest.raises(ValueError):
        Strategy(kind="nope")
    with pytest.raises(ValueError):
        Strategy(max_paths=0)
    with pytest.raises(ValueError):
        Strategy(kind="cycles").check_k(2)
    with pytest.raises(ValueError):
        Strategy(kind="k2").check_k(1)
    Strategy(kind="exhaustive").check_k(1)
    bigger = Strategy().escalated()
    assert bigger.max_candidates > Strategy().max_candidates


def test_run_rejects_bad_input(ring4):
    physical, logical = ring4
    with pytest.raises(ValueError):
        run(physical, logical, 0)
    stray = Topology.from_edges([("x", "n0", "zz")], layer=LOGICAL)
    with pytest.raises(ValueError):
        run(physical, stray, 1)


def test_candidates_triangle_first():
    tri = make_ring(3, LOGICAL)
    ct = contract(tri, ())
    first = next(candidate_subgraphs(ct, 1))
    assert set(first.edges) == set(tri.edges)


def test_candidates_parallel_pair():
    g = Topology.from_edges([("a", "x", "y"), ("d", "y", "z"), ("e", "z", "y")], layer=CONTRACTED)
    ct = contract(g, {"a"})
    subs = list(candidate_subgraphs(ct, 1))
    assert [set(s.edges) for s in subs] == [{"d", "e"}]


def test_candidates_on_a_tree():
    tree = Topology.from_edges([("a", "x", "y"), ("b", "y", "z")], layer=LOGICAL)
    assert list(candidate_subgraphs(contract(tree, ()), 1)) == []


def test_candidates_skip_links_no_piece_can_hold(bridge_instance):
    physical, logical = bridge_instance
    assert list(candidate_subgraphs(contract(logical, ()), 1, physical=physical)) == []
    assert len(set(survivable_classes(physical, 1).values())) == 3


def test_map_subgraph():
    physical, logical = make_two_rings()
    pair = contract(logical, "abcfgh").graph.subgraph(["d", "e"])
    m = map_subgraph(pair, physical, 1, logical)
    assert m.domain == {"d", "e"}
    assert not set(m["d"].edges) & set(m["e"].edges)
    physical2, _ = make_two_rings(drop_bridge=True)
    assert map_subgraph(pair, physical2, 1, logical) is None


def test_map_subgraph_triangle_on_ring():
    physical = make_ring(4, PHYSICAL)
    tri = Topology.from_edges([("a", "n0", "n1"), ("b", "n1", "n2"), ("c", "n0", "n2")])
    m = map_subgraph(tri, physical, 1, tri)
    assert is_k_survivable(tri, m, 1, physical).survivable


def test_finalize_self_loops(ring4):
    physical, logical = ring4
    ct = contract(logical, ["l0", "l1", "l2"])
    assert ct.is_single_vertex and ct.self_loops == {"l3"}
    partial = Mapping.from_paths(logical, physical, {"l0": ["p0"], "l1": ["p1"], "l2": ["p2"]})
    full = finalize_self_loops(partial, ct, physical)
    assert full["l3"].edges == ("p3",)
    assert is_k_survivable(logical, full, 1, physical).survivable
    done = contract(logical, logical.edges)
    assert finalize_self_loops(full, done, physical) == full
    with pytest.raises(ValueError):
        finalize_self_loops(Mapping(), contract(logical, ()), physical)


def test_decide_examples(ring4):
    physical, logical = ring4
    assert decide_existence(physical, logical, 1).status == PROVEN
    refuted = decide_existence(physical, logical, 2)
    assert refuted.status == REFUTED
    p2, l2 = make_two_rings(drop_bridge=True)
    dec = decide_existence(p2, l2, 1)
    assert dec.status == REFUTED and dec.oracle_calls == 1
    assert set(dec.remaining.graph.edges) == {"d", "e"}


def test_decide_unknown_when_oracle_budget_is_tiny():
    from test_oracle import SEARCH_ONLY
    physical, logical = SEARCH_ONLY
    dec = decide_existence(physical, logical, 1, max_combinations=1)
    assert dec.status == UNKNOWN


def test_trace(bridge_instance):
    physical, logical = bridge_instance
    report = trace_vulnerability(run(physical, logical, 1))
    assert [v["vertex"] for v in report["remaining_vertices"]] == ["u", "v", "w"]
    assert report["unmapped_links"] == ["uv", "uw", "vw"]
    p2, l2 = make_two_rings(drop_bridge=True)
    report = trace_vulnerability(run(p2, l2, 1))
    assert report["unmapped_links"] == ["d", "e"]
    assert [v["origin_nodes"] for v in report["remaining_vertices"]] == [["1", "2", "3"],
                                                                          ["4", "5", "6"]]
    assert report["diagnosis"].startswith("necessary")
    with pytest.raises(ValueError):
        trace_vulnerability(run(*make_two_rings(), 1))


def test_trace_flags_structural_cut():
    physical = make_ring(4, PHYSICAL)
    logical = Topology.from_edges([("a", "n0", "n1"), ("b", "n1", "n2")])
    report = trace_vulnerability(run(physical, logical, 1))
    assert report["diagnosis"] == "structurally impossible regardless of physical topology"
    assert report["edge_connectivity"] == 1


@pytest.mark.parametrize("k", [1, 2])
def test_outcomes_respect_their_contracts(k):
    for physical, logical in random_instances(40, 100 + k):
        out = run(physical, logical, k)
        if out.converged:
            assert is_k_survivable(logical, out.mapping, k, physical).survivable
            assert out.mapping.domain == set(logical.edges)
        else:
            assert is_piecewise_k_survivable(logical, out.mapping, k, physical).survivable
            assert out.remaining.canonical() == contract(logical, out.mapping.domain).canonical()
