import pytest

from smartmap.datasets import make_two_rings
from smartmap.formats import (ParseError, emit_mapping, emit_topology, parse_mapping,
                              parse_topology)
from smartmap.mapping import Mapping
from smartmap.topology import TopologyError

SQUARE = """\
# four nodes, both layers a ring
node a
node b
node c
node d
pedge p1 a b
pedge p2 b c
pedge p3 c d
pedge p4 d a
ledge l1 a b
ledge l2 b c
ledge l3 c d
ledge l4 d a
"""


def test_parse_square():
    physical, logical = parse_topology(SQUARE)
    assert len(physical.nodes) == len(logical.nodes) == 4
    assert len(physical.edges) == len(logical.edges) == 4
    assert physical.layer == "physical" and logical.layer == "logical"


@pytest.mark.parametrize("text, lineno, message", [
    ("node a\nnode a\n", 2, "duplicate node"),
    ("node a\nnode b\npedge p a b\nledge p a b\n", 4, "duplicate edge id"),
    ("node a\nledge e a b\n", 2, "dangling"),
    ("node u\nledge e1 u u\n", 2, "self-loop"),
    ("node a\nnode b\npedge p a b\npedge q b a\n", 4, "parallel"),
    ("node a\nnode b\nwire p a b\n", 3, "unknown directive"),
    ("node a b\n", 1, "expected"),
    ("node a\nnode b\npedge p a\n", 3, "expected"),
])
def test_parse_errors(text, lineno, message):
    with pytest.raises(ParseError, match=message) as info:
        parse_topology(text)
    assert info.value.lineno == lineno


def test_disconnected_layer_rejected():
    with pytest.raises(TopologyError, match="physical"):
        parse_topology("node a\nnode b\nnode c\npedge p a b\nledge l a b\n")


def test_topology_round_trip():
    physical, logical = make_two_rings()
    text = emit_topology(physical, logical)
    assert parse_topology(text) == (physical, logical)
    assert emit_topology(*parse_topology(text)) == text


def test_mapping_round_trip():
    physical, logical = make_two_rings()
    m = Mapping.from_paths(logical, physical, {"e": ["pg", "pb", "pd"], "a": ["pa"]})
    text = emit_mapping(m)
    assert text == "map a pa\nmap e pd pb pg\n"
    assert parse_mapping(text, logical, physical) == m


@pytest.mark.parametrize("text, message", [
    ("map a\n", "expected"),
    ("map zz pa\n", "unknown logical edge"),
    ("map a pa\nmap a pa\n", "mapped twice"),
    ("map a pc\n", "mismatch"),
    ("route a pa\n", "unknown directive"),
])
def test_mapping_parse_errors(text, message):
    physical, logical = make_two_rings()
    with pytest.raises(ParseError, match=message):
        parse_mapping(text, logical, physical)
