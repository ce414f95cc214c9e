"""Lightpaths and mappings of logical links onto the physical layer."""
from __future__ import annotations

from dataclasses import dataclass
from types import MappingProxyType
from typing import Iterable, Mapping as MappingT

from .topology import Path, Topology, TopologyError


class MappingError(ValueError):
    pass


class MappingConflictError(MappingError):
    """Two mappings disagree on the lightpath of a shared logical link."""


@dataclass(frozen=True)
class Lightpath:
    logical_edge: str
    path: Path

    @property
    def edges(self) -> tuple:
        return self.path.edges


def make_lightpath(logical: Topology, physical: Topology, e: str, walk) -> Lightpath:
    """Validate ``walk`` (a Path or a sequence of physical edge ids) as the lightpath of ``e``.

    The walk must be a simple physical path joining the end-nodes of ``e``
    in the logical topology.
    """
    u, v = logical.endpoints(e)
    edges = tuple(walk.edges if isinstance(walk, Path) else walk)
    if not edges:
        raise MappingError(f"lightpath of {e!r} is empty")
    physical.check_edges(edges)
    if len(set(edges)) != len(edges):
        raise MappingError(f"lightpath of {e!r} repeats a physical edge")
    # the walk may be listed from either end
    start = u if u in physical.edges[edges[0]] else v
    if start not in physical.edges[edges[0]]:
        raise MappingError(f"lightpath of {e!r}: first edge misses both end-nodes")
    end = v if start == u else u
    try:
        nodes = Path(edges, start, end).nodes(physical)
    except TopologyError as exc:
        raise MappingError(f"lightpath of {e!r}: endpoint mismatch ({exc})") from None
    if len(set(nodes)) != len(nodes):
        raise MappingError(f"lightpath of {e!r} is not a simple path")
    if start != u:
        edges = edges[::-1]
    return Lightpath(e, Path(edges, u, v))


class Mapping:
    """Immutable partial assignment of logical edge ids to lightpaths."""

    __slots__ = ("_paths",)

    def __init__(self, assignments: MappingT[str, Lightpath] = None):
        paths = {}
        for e, lp in (assignments or {}).items():
            if lp.logical_edge != e:
                raise MappingError(f"key {e!r} holds the lightpath of {lp.logical_edge!r}")
            paths[e] = lp
        self._paths = MappingProxyType(paths)

    @classmethod
    def from_paths(cls, logical: Topology, physical: Topology,
                   paths: MappingT[str, Iterable[str]]) -> "Mapping":
        return cls({e: make_lightpath(logical, physical, e, walk) for e, walk in paths.items()})

    @property
    def assignments(self) -> MappingT[str, Lightpath]:
        return self._paths

    @property
    def domain(self) -> frozenset:
        return frozenset(self._paths)

    def __getitem__(self, e: str) -> Lightpath:
        try:
            return self._paths[e]
        except KeyError:
            raise MappingError(f"logical edge {e!r} is not mapped") from None

    def __contains__(self, e) -> bool:
        return e in self._paths

    def __len__(self):
        return len(self._paths)

    def __iter__(self):
        return iter(sorted(self._paths))

    def __eq__(self, other):
        if not isinstance(other, Mapping):
            return NotImplemented
        return dict(self._paths) == dict(other._paths)

    def __hash__(self):
        return hash(frozenset(self._paths.items()))

    def __repr__(self):
        body = ", ".join(f"{e}: {list(self._paths[e].edges)}" for e in self)
        return f"Mapping({{{body}}})"

    def edge_lists(self) -> dict:
        """logical edge id -> tuple of physical edge ids."""
        return {e: self._paths[e].edges for e in self}

    def restrict(self, links: Iterable[str]) -> "Mapping":
        return Mapping({e: self[e] for e in links})


def merge(m1: Mapping, m2: Mapping) -> Mapping:
    combined = dict(m1.assignments)
    for e, lp in m2.assignments.items():
        if e in combined and combined[e] != lp:
            raise MappingConflictError(
                f"logical edge {e!r} mapped to {list(combined[e].edges)} "
                f"and {list(lp.edges)}")
        combined[e] = lp
    return Mapping(combined)


def image(m: Mapping, links: Iterable[str]) -> frozenset:
    out = set()
    for e in links:
        out.update(m[e].edges)
    return frozenset(out)


def is_total(m: Mapping, logical: Topology) -> bool:
    return m.domain == frozenset(logical.edges)


def kills(m: Mapping, e: str, failed: Iterable[str]) -> bool:
    """True iff failing the physical edges ``failed`` brings down logical edge ``e``."""
    return not image(m, (e,)).isdisjoint(failed)
