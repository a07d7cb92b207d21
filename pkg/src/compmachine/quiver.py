"""Quivers, paths and path enumeration.

A quiver is a directed multigraph: vertices, arrows, and the source and
target of each arrow.  Declaration order of vertices and arrows is kept
because every listing produced by the package is ordered by it.
"""

from __future__ import annotations

import re
from collections import defaultdict
from dataclasses import dataclass
from functools import cached_property
from typing import Iterable, Mapping

from .errors import CyclicQuiver, NotComposable, QuiverError, UnknownArrow

ID_PATTERN = re.compile(r"[A-Za-z_][A-Za-z0-9_]*\Z")


def is_identifier(token) -> bool:
    return isinstance(token, str) and ID_PATTERN.match(token) is not None


@dataclass(frozen=True)
class Quiver:
    vertices: tuple
    arrows: tuple
    source: Mapping[str, str]
    target: Mapping[str, str]

    def __post_init__(self):
        object.__setattr__(self, "vertices", tuple(self.vertices))
        object.__setattr__(self, "arrows", tuple(self.arrows))
        object.__setattr__(self, "source", dict(self.source))
        object.__setattr__(self, "target", dict(self.target))
        for kind, ids in (("vertex", self.vertices), ("arrow", self.arrows)):
            if len(set(ids)) != len(ids):
                raise QuiverError(f"duplicate {kind} ids")
            for i in ids:
                if not is_identifier(i):
                    raise QuiverError(f"invalid {kind} id {i!r}")
        known = set(self.vertices)
        for a in self.arrows:
            for ends in (self.source, self.target):
                if a not in ends:
                    raise QuiverError(f"arrow {a!r} lacks a source or target")
                if ends[a] not in known:
                    raise QuiverError(f"arrow {a!r} references unknown vertex {ends[a]!r}")
        if set(self.source) - set(self.arrows) or set(self.target) - set(self.arrows):
            raise QuiverError("source/target mapping mentions undeclared arrows")

    @classmethod
    def from_arrows(cls, vertices: Iterable[str], arrows: Iterable[tuple]) -> "Quiver":
        """Build from ``(arrow, source, target)`` triples."""
        arrows = list(arrows)
        return cls(
            vertices=tuple(vertices),
            arrows=tuple(a for a, _, _ in arrows),
            source={a: s for a, s, _ in arrows},
            target={a: t for a, _, t in arrows},
        )

    @classmethod
    def empty(cls) -> "Quiver":
        return cls((), (), {}, {})

    @cached_property
    def arrow_index(self) -> dict:
        return {a: i for i, a in enumerate(self.arrows)}

    @cached_property
    def vertex_index(self) -> dict:
        return {v: i for i, v in enumerate(self.vertices)}

    @cached_property
    def outgoing(self) -> dict:
        """Vertex -> arrows leaving it, in declaration order."""
        out = defaultdict(list)
        for a in self.arrows:
            out[self.source[a]].append(a)
        return {v: tuple(out[v]) for v in self.vertices}

    @cached_property
    def incoming(self) -> dict:
        inc = defaultdict(list)
        for a in self.arrows:
            inc[self.target[a]].append(a)
        return {v: tuple(inc[v]) for v in self.vertices}

    def __len__(self):
        return len(self.arrows)


@dataclass(frozen=True)
class Path:
    """A path stored in application order (first-executed arrow first).

    Trivial paths have no arrows and ``source == target`` is their base
    vertex.
    """

    arrows: tuple = ()
    source: str = ""
    target: str = ""

    @classmethod
    def trivial(cls, vertex: str) -> "Path":
        return cls((), vertex, vertex)

    @classmethod
    def of(cls, q: Quiver, arrows: Iterable[str]) -> "Path":
        """Path along ``arrows`` in ``q``; checks the chain condition."""
        arrows = tuple(arrows)
        if not arrows:
            raise QuiverError("use Path.trivial for the empty path")
        for a in arrows:
            if a not in q.source:
                raise UnknownArrow(a)
        for prev, nxt in zip(arrows, arrows[1:]):
            if q.target[prev] != q.source[nxt]:
                raise QuiverError(f"arrows {prev!r} and {nxt!r} are not consecutive")
        return cls(arrows, q.source[arrows[0]], q.target[arrows[-1]])

    @property
    def length(self) -> int:
        return len(self.arrows)

    @property
    def is_trivial(self) -> bool:
        return not self.arrows

    def __str__(self):
        if self.is_trivial:
            return f"trivial({self.source})"
        return "(" + ",".join(self.arrows) + ")"


def concatenate(first: Path, second: Path) -> Path:
    """Run ``first`` then ``second``.

    Argument order is execution order, the reverse of the usual
    right-to-left composition notation.
    """
    if first.target != second.source:
        raise NotComposable(first, second)
    return Path(first.arrows + second.arrows, first.source, second.target)


def is_acyclic(q: Quiver) -> bool:
    # Kahn's algorithm; a loop gives its vertex a nonzero in-degree that never drops.
    indegree = {v: 0 for v in q.vertices}
    for a in q.arrows:
        indegree[q.target[a]] += 1
    ready = [v for v in q.vertices if indegree[v] == 0]
    removed = 0
    while ready:
        v = ready.pop()
        removed += 1
        for a in q.outgoing[v]:
            w = q.target[a]
            indegree[w] -= 1
            if indegree[w] == 0:
                ready.append(w)
    return removed == len(q.vertices)


def path_sort_key(q: Quiver, p: Path):
    return (p.length, tuple(q.arrow_index[a] for a in p.arrows), q.vertex_index[p.source])


def enumerate_paths(q: Quiver, min_length: int = 0) -> list:
    """Every path of length >= ``min_length``, each exactly once.

    Ordered by length, then by the sequence of arrow declaration indices;
    trivial paths follow vertex declaration order.
    """
    if not is_acyclic(q):
        raise CyclicQuiver()
    if min_length < 0:
        raise ValueError("min_length must be non-negative")
    result = []
    if min_length == 0:
        result.extend(Path.trivial(v) for v in q.vertices)
    level = [Path((a,), q.source[a], q.target[a]) for a in q.arrows]
    length = 1
    while level:
        if length >= min_length:
            result.extend(level)
        level = [
            Path(p.arrows + (a,), p.source, q.target[a])
            for p in level
            for a in q.outgoing[p.target]
        ]
        length += 1
    result.sort(key=lambda p: path_sort_key(q, p))
    return result


def subquiver(q: Quiver, keep_arrows: Iterable[str]) -> Quiver:
    """Restrict ``q`` to ``keep_arrows`` and the vertices they touch."""
    keep = set(keep_arrows)
    for a in keep:
        if a not in q.source:
            raise UnknownArrow(a)
    arrows = tuple(a for a in q.arrows if a in keep)
    touched = {q.source[a] for a in arrows} | {q.target[a] for a in arrows}
    return Quiver(
        vertices=tuple(v for v in q.vertices if v in touched),
        arrows=arrows,
        source={a: q.source[a] for a in arrows},
        target={a: q.target[a] for a in arrows},
    )
