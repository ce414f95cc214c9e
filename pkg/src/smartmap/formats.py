"""Line-oriented topology and mapping files, and JSON views of contracted graphs.

Topology file::

    # comment
    node <label>
    pedge <id> <u> <v>
    ledge <id> <u> <v>

Mapping file::

    map <ledge-id> <pedge-id> [<pedge-id> ...]
"""
from __future__ import annotations

from .contraction import ContractedTopology
from .mapping import Mapping, MappingError, make_lightpath
from .topology import LOGICAL, PHYSICAL, Topology, TopologyError, is_connected


class ParseError(ValueError):
    def __init__(self, lineno: int, message: str):
        super().__init__(f"line {lineno}: {message}")
        self.lineno = lineno


def _lines(text: str):
    for lineno, raw in enumerate(text.splitlines(), 1):
        line = raw.strip()
        if line and not line.startswith("#"):
            yield lineno, line.split()


def parse_topology(text: str) -> tuple:
    """Parse a topology file into ``(physical, logical)``."""
    nodes = set()
    ids = {}
    layers = {"pedge": {}, "ledge": {}}
    pairs = {"pedge": {}, "ledge": {}}
    for lineno, tok in _lines(text):
        kind = tok[0]
        if kind == "node":
            if len(tok) != 2:
                raise ParseError(lineno, "expected 'node <label>'")
            if tok[1] in nodes:
                raise ParseError(lineno, f"duplicate node {tok[1]!r}")
            nodes.add(tok[1])
        elif kind in layers:
            if len(tok) != 4:
                raise ParseError(lineno, f"expected '{kind} <id> <u> <v>'")
            _, eid, u, v = tok
            if eid in ids:
                raise ParseError(lineno, f"duplicate edge id {eid!r} (first on line {ids[eid]})")
            for x in (u, v):
                if x not in nodes:
                    raise ParseError(lineno, f"dangling endpoint {x!r}")
            if u == v:
                raise ParseError(lineno, f"self-loop {eid!r} on {u!r}")
            pair = frozenset((u, v))
            if pair in pairs[kind]:
                raise ParseError(lineno, f"parallel edge {eid!r} duplicates {pairs[kind][pair]!r}")
            ids[eid] = lineno
            pairs[kind][pair] = eid
            layers[kind][eid] = (u, v)
        else:
            raise ParseError(lineno, f"unknown directive {kind!r}")
    physical = Topology(frozenset(nodes), layers["pedge"], PHYSICAL)
    lnodes = frozenset(x for ends in layers["ledge"].values() for x in ends)
    logical = Topology(lnodes, layers["ledge"], LOGICAL)
    if not is_connected(physical):
        raise TopologyError("physical topology is disconnected")
    if not is_connected(logical):
        raise TopologyError("logical topology is disconnected")
    return physical, logical


def emit_topology(physical: Topology, logical: Topology) -> str:
    out = [f"node {n}" for n in physical.sorted_nodes]
    out += [f"pedge {e} {' '.join(physical.edges[e])}" for e in physical.edge_ids]
    out += [f"ledge {e} {' '.join(logical.edges[e])}" for e in logical.edge_ids]
    return "\n".join(out) + "\n"


def parse_mapping(text: str, logical: Topology, physical: Topology) -> Mapping:
    paths = {}
    for lineno, tok in _lines(text):
        if tok[0] != "map":
            raise ParseError(lineno, f"unknown directive {tok[0]!r}")
        if len(tok) < 3:
            raise ParseError(lineno, "expected 'map <ledge-id> <pedge-id> ...'")
        e = tok[1]
        if e in paths:
            raise ParseError(lineno, f"logical edge {e!r} mapped twice")
        if e not in logical.edges:
            raise ParseError(lineno, f"unknown logical edge {e!r}")
        try:
            paths[e] = make_lightpath(logical, physical, e, tok[2:])
        except (MappingError, TopologyError) as exc:
            raise ParseError(lineno, str(exc)) from None
    return Mapping(paths)


def emit_mapping(m: Mapping) -> str:
    return "".join(f"map {e} {' '.join(m[e].edges)}\n" for e in m)


def contracted_to_dict(ct: ContractedTopology) -> dict:
    return ct.canonical(include_self_loops=True)
