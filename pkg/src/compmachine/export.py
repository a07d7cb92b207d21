"""Text exports: Graphviz DOT and space-time diagrams."""

from __future__ import annotations

from .evolution import Orbit
from .quiver import Quiver
from .space import AliveQuiver, ProgramSpace


def _quiver_dot(q: Quiver, name: str) -> list:
    lines = [f"digraph {name} {{"]
    lines += [f'  "{v}" [label="{v}"];' for v in q.vertices]
    lines += [f'  "{q.source[a]}" -> "{q.target[a]}" [label="{a}"];' for a in q.arrows]
    return lines


def export_dot(target) -> str:
    """Render a quiver, alive quiver or program space as a DOT digraph.

    Output is byte-stable: nodes and edges follow declaration order (for a
    space, the space's morphism order).  Identities are left out, and
    composite computons are drawn dashed.
    """
    if isinstance(target, AliveQuiver):
        lines = _quiver_dot(target.quiver, "alive_quiver")
        lines.insert(1, f'  label="t={target.t}";')
    elif isinstance(target, Quiver):
        lines = _quiver_dot(target, "quiver")
    elif isinstance(target, ProgramSpace):
        lines = ["digraph program_space {"]
        lines += [f'  "{d}" [label="{d}"];' for d in target.data_types]
        for mo in target.morphisms:
            if mo.kind == "identity":
                continue
            style = ", style=dashed" if mo.kind == "composite" else ""
            lines.append(f'  "{mo.input}" -> "{mo.output}" [label="{mo.label}"{style}];')
    else:
        raise TypeError(f"cannot export {type(target).__name__} to DOT")
    lines.append("}")
    return "\n".join(lines) + "\n"


def render_diagram(orb: Orbit) -> str:
    """One ``t=<n><TAB><bits>`` line per time step."""
    return "".join(f"t={t}\t{c.bits}\n" for t, c in enumerate(orb.configurations))


def render_space_text(ps: ProgramSpace) -> str:
    lines = ["data_types: " + " ".join(ps.data_types)]
    for mo in ps.morphisms:
        lines.append(f"{mo.kind}\t{mo.label}\t{mo.input} -> {mo.output}")
    return "\n".join(lines) + "\n"
