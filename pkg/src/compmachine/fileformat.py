"""Machine files and JSON reports.

A machine file is a JSON object::

    {
      "data_types": [{"id": "d1", "semantics": "integer"}, ...],
      "computons": [{"id": "f1", "dom": "d1", "cod": "d2", "expr": "x + 1"}, ...],
      "quiver": {
        "vertices": [{"id": "x1", "data_type": "d1"}, ...],
        "arrows": [{"id": "a1", "source": "x1", "target": "x2", "computon": "f1"}, ...]
      },
      "rules": {"delta1": "NOT", "delta2": 6, "delta3": "XOR", "delta4": "RULE54"},
      "initial_configuration": "1101101001"
    }

``semantics`` and ``expr`` are optional.  The initial configuration is
either a bit string in arrow order or an object mapping every arrow id to
0 or 1.  Neighbourhoods are always derived, never stored.
"""

from __future__ import annotations

import json
from importlib import resources
from pathlib import Path

from .errors import DecodeError
from .evolution import Configuration, detect_cycle, orbit
from .machine import Machine, validate_machine
from .space import space_at, space_stats

FIXTURES = ("example1.json", "example2.json", "example3_1.json")


def fixture_path(name: str) -> Path:
    """Filesystem path of a bundled machine file."""
    return Path(str(resources.files("compmachine") / "fixtures" / name))


def load_machine(path) -> Machine:
    path = Path(path)
    text = path.read_text(encoding="utf-8")
    try:
        doc = json.loads(text)
    except json.JSONDecodeError as exc:
        raise DecodeError("$", f"invalid JSON: {exc}") from None
    return validate_machine(doc)


def machine_to_document(m: Machine) -> dict:
    """Canonical JSON-ready form; ``validate_machine`` inverts it."""
    computons = []
    for f in m.computons:
        rec = {"id": f.id, "dom": f.dom, "cod": f.cod}
        if f.expr is not None:
            rec["expr"] = f.expr
        computons.append(rec)
    q = m.quiver
    return {
        "data_types": [
            {"id": d.id} if d.semantics is None else {"id": d.id, "semantics": d.semantics}
            for d in m.data_types
        ],
        "computons": computons,
        "quiver": {
            "vertices": [{"id": v, "data_type": m.mu0[v]} for v in q.vertices],
            "arrows": [
                {"id": a, "source": q.source[a], "target": q.target[a], "computon": m.mu1[a]}
                for a in q.arrows
            ],
        },
        "rules": {
            "delta1": m.rules.delta1,
            "delta2": m.rules.delta2,
            "delta3": m.rules.delta3,
            "delta4": m.rules.delta4,
        },
        "initial_configuration": m.initial_configuration.bits,
    }


def dump_machine(m: Machine) -> str:
    return json.dumps(machine_to_document(m), indent=2, ensure_ascii=False) + "\n"


def orbit_report(m: Machine, steps: int, c0: Configuration | None = None) -> dict:
    orb = orbit(m, c0, steps)
    cycle = detect_cycle(m, orb[0], steps) if steps >= 1 else None
    return {
        "steps": steps,
        "configurations": [c.bits for c in orb.configurations],
        "cycle": cycle.as_dict() if cycle is not None else None,
        "space_stats": [
            {"t": t, **space_stats(space_at(m, c, t))} for t, c in enumerate(orb.configurations)
        ],
    }
