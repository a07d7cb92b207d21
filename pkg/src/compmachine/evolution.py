"""Configurations, the synchronous global update, orbits and cycle detection."""

from __future__ import annotations

from dataclasses import dataclass
from typing import TYPE_CHECKING, Iterable, Mapping

from .errors import IncompleteConfiguration

if TYPE_CHECKING:
    from .machine import Machine


@dataclass(frozen=True)
class Configuration:
    """Alive (1) / dead (0) state of every arrow, in arrow declaration order."""

    arrows: tuple
    states: tuple

    def __post_init__(self):
        if len(self.arrows) != len(self.states):
            raise IncompleteConfiguration(message="one state per arrow is required")
        if any(s not in (0, 1) or isinstance(s, bool) for s in self.states):
            raise ValueError("states must be 0 or 1")

    @classmethod
    def from_bits(cls, arrows: Iterable[str], bits: str) -> "Configuration":
        arrows = tuple(arrows)
        if len(bits) != len(arrows) or set(bits) - {"0", "1"}:
            raise IncompleteConfiguration(
                message=f"expected {len(arrows)} characters from '01', got {bits!r}"
            )
        return cls(arrows, tuple(int(b) for b in bits))

    @classmethod
    def from_mapping(cls, arrows: Iterable[str], mapping: Mapping[str, int]) -> "Configuration":
        arrows = tuple(arrows)
        missing = [a for a in arrows if a not in mapping]
        if missing:
            raise IncompleteConfiguration(missing)
        return cls(arrows, tuple(int(mapping[a]) for a in arrows))

    @property
    def bits(self) -> str:
        return "".join(map(str, self.states))

    def __getitem__(self, arrow: str) -> int:
        return self.states[self.arrows.index(arrow)]

    def as_dict(self) -> dict:
        return dict(zip(self.arrows, self.states))

    def alive(self) -> tuple:
        return tuple(a for a, s in zip(self.arrows, self.states) if s)

    def __str__(self):
        return self.bits


def check_configuration(m: "Machine", c: Configuration):
    if c.arrows != m.quiver.arrows:
        missing = [a for a in m.quiver.arrows if a not in c.arrows]
        raise IncompleteConfiguration(
            missing, None if missing else "configuration arrows do not match the machine"
        )


def _advance(plan, states: tuple) -> tuple:
    nxt = []
    for rule, cells in plan:
        code = 0
        for i in cells:
            code = (code << 1) | states[i]
        nxt.append((rule >> code) & 1)
    return tuple(nxt)


def step(m: "Machine", c: Configuration) -> Configuration:
    """Apply the global transition once.

    Every arrow reads only the current configuration, so updates are
    simultaneous.
    """
    check_configuration(m, c)
    return Configuration(c.arrows, _advance(m.update_plan, c.states))


@dataclass(frozen=True)
class Orbit:
    machine: "Machine"
    configurations: tuple

    def __len__(self):
        return len(self.configurations)

    def __getitem__(self, t):
        return self.configurations[t]

    @property
    def steps(self) -> int:
        return len(self.configurations) - 1


def orbit(m: "Machine", c0: Configuration | None = None, steps: int = 0) -> Orbit:
    if steps < 0:
        raise ValueError("steps must be non-negative")
    c = m.initial_configuration if c0 is None else c0
    check_configuration(m, c)
    plan = m.update_plan
    rows = [c.states]
    for _ in range(steps):
        rows.append(_advance(plan, rows[-1]))
    return Orbit(m, tuple(Configuration(c.arrows, s) for s in rows))


@dataclass(frozen=True)
class CycleReport:
    preperiod: int
    period: int

    def as_dict(self) -> dict:
        return {"preperiod": self.preperiod, "period": self.period}


@dataclass(frozen=True)
class NotFoundWithin:
    max_steps: int

    def as_dict(self) -> None:
        return None


def detect_cycle(m: "Machine", c0: Configuration | None = None, max_steps: int = 10000):
    """Exact pre-period and period of the orbit of ``c0``.

    Records the first time each configuration is seen; the first revisit at
    time ``u`` of a configuration first seen at ``p`` gives pre-period ``p``
    and period ``u - p``.  Returns :class:`NotFoundWithin` when no revisit
    happens in ``max_steps`` transitions.  A revisit always occurs within
    ``2**n`` transitions for ``n`` arrows.
    """
    if max_steps < 1:
        raise ValueError("max_steps must be at least 1")
    c = m.initial_configuration if c0 is None else c0
    check_configuration(m, c)
    plan = m.update_plan
    seen = {c.states: 0}
    states = c.states
    for u in range(1, max_steps + 1):
        states = _advance(plan, states)
        p = seen.get(states)
        if p is not None:
            return CycleReport(preperiod=p, period=u - p)
        seen[states] = u
    return NotFoundWithin(max_steps)
