"""Alive quivers and the program spaces they generate.

The program space at time ``t`` holds one identity per data type on the
alive quiver and one computon per non-trivial path through it: a single
arrow gives a primitive computon, a longer path gives the composite of
its arrows' computons.
"""

from __future__ import annotations

from dataclasses import dataclass

from .evolution import Configuration, check_configuration
from .machine import Machine
from .quiver import Path, Quiver, enumerate_paths, subquiver

COMPOSE = "∘"


@dataclass(frozen=True)
class AliveQuiver:
    quiver: Quiver
    t: int = 0


def alive_quiver(m: Machine, c: Configuration, t: int = 0) -> AliveQuiver:
    check_configuration(m, c)
    return AliveQuiver(subquiver(m.quiver, c.alive()), t)


@dataclass(frozen=True)
class Morphism:
    """A morphism of a program space.

    ``kind`` is ``"identity"``, ``"primitive"`` or ``"composite"``.
    ``computons`` lists computon ids in application order and is empty for
    identities.
    """

    kind: str
    computons: tuple
    input: str
    output: str

    @classmethod
    def identity(cls, data_type: str) -> "Morphism":
        return cls("identity", (), data_type, data_type)

    @property
    def length(self) -> int:
        return len(self.computons)

    @property
    def label(self) -> str:
        """``id:d1``, ``f1`` or ``f3∘f2∘f1`` (right-to-left)."""
        if self.kind == "identity":
            return f"id:{self.input}"
        return COMPOSE.join(reversed(self.computons))

    def as_dict(self) -> dict:
        return {
            "kind": self.kind,
            "label": self.label,
            "computons": list(self.computons),
            "input": self.input,
            "output": self.output,
        }


def path_morphism(m: Machine, p: Path) -> Morphism:
    """Image of a path under the machine's vertex/arrow labelling."""
    if p.is_trivial:
        return Morphism.identity(m.mu0[p.source])
    fs = tuple(m.mu1[a] for a in p.arrows)
    return Morphism(
        "primitive" if len(fs) == 1 else "composite",
        fs,
        m.computon[fs[0]].dom,
        m.computon[fs[-1]].cod,
    )


@dataclass(frozen=True)
class ProgramSpace:
    data_types: tuple
    morphisms: tuple

    def __contains__(self, item):
        return item in set(self.morphisms)

    def identities(self):
        return [mo for mo in self.morphisms if mo.kind == "identity"]

    def primitives(self):
        return [mo for mo in self.morphisms if mo.kind == "primitive"]

    def composites(self):
        return [mo for mo in self.morphisms if mo.kind == "composite"]

    def find(self, computons: tuple) -> Morphism | None:
        for mo in self.morphisms:
            if mo.kind != "identity" and mo.computons == tuple(computons):
                return mo
        return None


def build_space(m: Machine, aq: AliveQuiver) -> ProgramSpace:
    q = aq.quiver
    present = {m.mu0[v] for v in q.vertices}
    data_types = tuple(d.id for d in m.data_types if d.id in present)
    morphisms = [Morphism.identity(d) for d in data_types]
    morphisms.extend(path_morphism(m, p) for p in enumerate_paths(q, 1))
    return ProgramSpace(data_types, tuple(morphisms))


def maximal_space(m: Machine) -> ProgramSpace:
    """The space with every arrow alive; it contains every other space."""
    return build_space(m, AliveQuiver(m.quiver))


def space_at(m: Machine, c: Configuration, t: int = 0) -> ProgramSpace:
    return build_space(m, alive_quiver(m, c, t))


def space_stats(ps: ProgramSpace) -> dict:
    composites = ps.composites()
    return {
        "identities": len(ps.identities()),
        "primitives": len(ps.primitives()),
        "composites": len(composites),
        "total": len(ps.morphisms),
        "max_composite_length": max((mo.length for mo in composites), default=0),
    }


def spaces_equal(a: ProgramSpace, b: ProgramSpace) -> bool:
    return set(a.data_types) == set(b.data_types) and set(a.morphisms) == set(b.morphisms)
