"""Composition machines: quivers of organisms whose alive arrows generate program spaces."""

from .errors import (
    CyclicQuiver,
    Diagnostic,
    IncompleteConfiguration,
    MachineError,
    MachineValidationError,
    NotComposable,
)
from .evolution import Configuration, CycleReport, NotFoundWithin, Orbit, detect_cycle, orbit, step
from .execution import Value, eval_computon, eval_morphism, parse_expression, parse_selector
from .export import export_dot, render_diagram
from .fileformat import dump_machine, fixture_path, load_machine, machine_to_document
from .machine import Machine, RuleSet, derive_neighbourhoods, named_rule, rule_table, validate_machine
from .quiver import Path, Quiver, concatenate, enumerate_paths, is_acyclic, subquiver
from .space import (
    AliveQuiver,
    Morphism,
    ProgramSpace,
    alive_quiver,
    build_space,
    maximal_space,
    space_at,
    space_stats,
    spaces_equal,
)

__version__ = "0.1.0"
