"""Machine definition: data types, computons, rules, neighbourhoods, validation.

Rule numbers follow the elementary cellular automaton convention.  With
alive=1 and dead=0, the output for an input pattern is the bit of the
rule number at the pattern's binary value, so ``delta4 = 54`` is Rule 54
and ``delta2 = 6`` is XOR.
"""

from __future__ import annotations

import enum
import itertools
import re
from collections import defaultdict
from dataclasses import dataclass
from functools import cached_property
from typing import Mapping

from .errors import (
    AmbiguousNeighbourhood,
    DecodeError,
    Diagnostic,
    MachineValidationError,
    UnknownRuleName,
)
from .evolution import Configuration
from .quiver import Quiver, is_acyclic, is_identifier

STATES = (0, 1)
ID_HELP = "[A-Za-z_][A-Za-z0-9_]*"
SEMANTICS = ("abstract", "integer")

# Number of neighbourhood cells each delta reads.
DELTA_ARITY = {"delta1": 1, "delta2": 2, "delta3": 2, "delta4": 3}
DELTA_LIMIT = {name: 1 << (1 << k) for name, k in DELTA_ARITY.items()}


@dataclass(frozen=True)
class DataType:
    id: str
    semantics: str | None = None


@dataclass(frozen=True)
class Computon:
    id: str
    dom: str
    cod: str
    expr: str | None = None


@dataclass(frozen=True)
class RuleSet:
    delta1: int
    delta2: int
    delta3: int
    delta4: int

    def __post_init__(self):
        for name, limit in DELTA_LIMIT.items():
            value = getattr(self, name)
            if isinstance(value, bool) or not isinstance(value, int) or not 0 <= value < limit:
                raise ValueError(f"{name} must be an integer in [0, {limit - 1}], got {value!r}")

    def table(self, which: int) -> list:
        """Truth table of delta ``which`` (1-4)."""
        name = f"delta{which}"
        return rule_table(getattr(self, name), DELTA_ARITY[name])


def apply_rule(rule: int, *states: int) -> int:
    code = 0
    for s in states:
        code = (code << 1) | s
    return (rule >> code) & 1


def rule_table(rule: int, arity: int) -> list:
    """Expand a rule number into ``[(inputs, output), ...]``.

    Rows run from the all-alive pattern down to all-dead, the layout used
    for drawing elementary CA rules.
    """
    if arity not in (1, 2, 3):
        raise ValueError("arity must be 1, 2 or 3")
    if not 0 <= rule < 1 << (1 << arity):
        raise ValueError(f"rule {rule} out of range for arity {arity}")
    rows = []
    for inputs in itertools.product((1, 0), repeat=arity):
        rows.append((inputs, apply_rule(rule, *inputs)))
    return rows


def encode_rule(table) -> int:
    """Inverse of :func:`rule_table`; rows may come in any order."""
    rule = 0
    for inputs, output in table:
        code = 0
        for s in inputs:
            code = (code << 1) | s
        if output:
            rule |= 1 << code
    return rule


_NAMED = {
    "NOT": {"delta1": 1},
    "ID": {"delta1": 2},
    "XOR": {"delta2": 6, "delta3": 6},
    "OR": {"delta2": 14, "delta3": 14},
    "AND": {"delta2": 8, "delta3": 8},
}
_RULE_N = re.compile(r"RULE(\d{1,3})\Z")


def named_rule(name: str) -> dict:
    """Resolve a rule alias to the delta fields it sets.

    >>> named_rule("XOR")
    {'delta2': 6, 'delta3': 6}
    """
    if name in _NAMED:
        return dict(_NAMED[name])
    m = _RULE_N.match(name)
    if m and int(m.group(1)) < 256:
        return {"delta4": int(m.group(1))}
    raise UnknownRuleName(name)


class Kind(enum.Enum):
    ISOLATED = "isolated"
    RIGHT_ONLY = "right_only"
    LEFT_ONLY = "left_only"
    BOTH = "both"


@dataclass(frozen=True)
class Neighbourhood:
    kind: Kind
    arrow: str
    left: str | None = None
    right: str | None = None

    def cells(self) -> tuple:
        """Arrows read by the update rule, left to right."""
        return tuple(a for a in (self.left, self.arrow, self.right) if a is not None)


def _neighbours(q: Quiver, a: str):
    left = [b for b in q.incoming[q.source[a]] if b != a]
    right = [b for b in q.outgoing[q.target[a]] if b != a]
    return left, right


def derive_neighbourhoods(q: Quiver) -> dict:
    """Classify every arrow by which neighbours it has.

    ``b`` is a left neighbour of ``a`` when ``target(b) == source(a)``.
    """
    table = {}
    for a in q.arrows:
        left, right = _neighbours(q, a)
        if len(right) > 1:
            raise AmbiguousNeighbourhood(a, right)
        if len(left) > 1:
            raise AmbiguousNeighbourhood(a, left)
        l = left[0] if left else None
        r = right[0] if right else None
        if l is None and r is None:
            kind = Kind.ISOLATED
        elif l is None:
            kind = Kind.RIGHT_ONLY
        elif r is None:
            kind = Kind.LEFT_ONLY
        else:
            kind = Kind.BOTH
        table[a] = Neighbourhood(kind, a, l, r)
    return table


def neighbourhood_sets(table: Mapping[str, Neighbourhood]) -> dict:
    """Group a neighbourhood table into the four tuple-sets N1..N4."""
    out = {k: [] for k in Kind}
    for nb in table.values():
        out[nb.kind].append(nb.cells())
    return {k: set(v) for k, v in out.items()}


@dataclass(frozen=True)
class Machine:
    data_types: tuple
    computons: tuple
    quiver: Quiver
    mu0: Mapping[str, str]
    mu1: Mapping[str, str]
    rules: RuleSet
    initial_configuration: Configuration

    states = STATES

    @cached_property
    def neighbourhoods(self) -> dict:
        return derive_neighbourhoods(self.quiver)

    @cached_property
    def computon(self) -> dict:
        return {f.id: f for f in self.computons}

    @cached_property
    def data_type(self) -> dict:
        return {d.id: d for d in self.data_types}

    @cached_property
    def update_plan(self) -> tuple:
        """Per arrow (in order): the rule number and the cell indices it reads."""
        idx = self.quiver.arrow_index
        rule_for = {
            Kind.ISOLATED: self.rules.delta1,
            Kind.RIGHT_ONLY: self.rules.delta2,
            Kind.LEFT_ONLY: self.rules.delta3,
            Kind.BOTH: self.rules.delta4,
        }
        plan = []
        for a in self.quiver.arrows:
            nb = self.neighbourhoods[a]
            plan.append((rule_for[nb.kind], tuple(idx[c] for c in nb.cells())))
        return tuple(plan)


# -- validation ---------------------------------------------------------------

def _require(obj, key, path, kind):
    if not isinstance(obj, dict) or key not in obj:
        raise DecodeError(path, f"missing key {key!r}")
    value = obj[key]
    if not isinstance(value, kind):
        raise DecodeError(f"{path}.{key}", f"expected {kind.__name__}")
    return value


def _decode_list(doc, key, path, fields, optional=()):
    items = _require(doc, key, path, list)
    out = []
    for i, item in enumerate(items):
        here = f"{path}.{key}[{i}]"
        if not isinstance(item, dict):
            raise DecodeError(here, "expected object")
        rec = {}
        for f in fields:
            rec[f] = _require(item, f, here, str)
        for f in optional:
            value = item.get(f)
            if value is not None and not isinstance(value, str):
                raise DecodeError(f"{here}.{f}", "expected string")
            rec[f] = value
        unknown = set(item) - set(fields) - set(optional)
        if unknown:
            raise DecodeError(here, f"unexpected keys {sorted(unknown)}")
        out.append(rec)
    return out


def _resolve_rules(raw, diags):
    values = {}
    for name in DELTA_ARITY:
        value = raw.get(name)
        if isinstance(value, str):
            try:
                fragment = named_rule(value)
            except UnknownRuleName:
                diags.append(Diagnostic("UnknownRuleName", (name,), value))
                continue
            if name not in fragment:
                diags.append(Diagnostic("InvalidRule", (name,), f"{value} does not define {name}"))
                continue
            value = fragment[name]
        if isinstance(value, bool) or not isinstance(value, int):
            diags.append(Diagnostic("InvalidRule", (name,), f"expected integer or rule name, got {value!r}"))
        elif not 0 <= value < DELTA_LIMIT[name]:
            diags.append(Diagnostic("InvalidRule", (name,), f"{value} outside [0, {DELTA_LIMIT[name] - 1}]"))
        else:
            values[name] = value
    extra = set(raw) - set(DELTA_ARITY)
    if extra:
        diags.append(Diagnostic("InvalidRule", tuple(sorted(extra)), "unknown rule keys"))
    return RuleSet(**values) if len(values) == 4 else None


def _decode_configuration(raw, arrows, diags):
    if isinstance(raw, str):
        if len(raw) != len(arrows) or set(raw) - {"0", "1"}:
            diags.append(Diagnostic(
                "IncompleteConfiguration", (),
                f"bit string must have {len(arrows)} characters from '01', got {raw!r}",
            ))
            return None
        return Configuration.from_bits(arrows, raw)
    if not isinstance(raw, dict):
        diags.append(Diagnostic("IncompleteConfiguration", (), "expected object or bit string"))
        return None
    ok = True
    unknown = [a for a in raw if a not in set(arrows)]
    if unknown:
        diags.append(Diagnostic("UnknownArrow", tuple(unknown), "in initial configuration"))
        ok = False
    bad = [a for a in arrows if a in raw and (isinstance(raw[a], bool) or raw[a] not in STATES)]
    if bad:
        diags.append(Diagnostic("InvalidState", tuple(bad), "states must be 0 or 1"))
        ok = False
    missing = [a for a in arrows if a not in raw]
    if missing:
        diags.append(Diagnostic("IncompleteConfiguration", tuple(missing), "no initial state"))
        ok = False
    return Configuration.from_mapping(arrows, raw) if ok else None


def _duplicates(ids):
    seen = defaultdict(int)
    for i in ids:
        seen[i] += 1
    return [i for i, n in seen.items() if n > 1]


def validate_machine(candidate: dict) -> Machine:
    """Decode and check a raw machine description.

    ``candidate`` has the machine-file shape (see :mod:`compmachine.io`).
    Structural problems raise :class:`DecodeError`; every violated machine
    constraint is collected and raised together as
    :class:`MachineValidationError`.
    """
    if not isinstance(candidate, dict):
        raise DecodeError("$", "expected object")
    dts = _decode_list(candidate, "data_types", "$", ("id",), ("semantics",))
    fns = _decode_list(candidate, "computons", "$", ("id", "dom", "cod"), ("expr",))
    rawq = _require(candidate, "quiver", "$", dict)
    verts = _decode_list(rawq, "vertices", "$.quiver", ("id", "data_type"))
    arrs = _decode_list(rawq, "arrows", "$.quiver", ("id", "source", "target", "computon"))
    raw_rules = _require(candidate, "rules", "$", dict)
    if "initial_configuration" not in candidate:
        raise DecodeError("$", "missing key 'initial_configuration'")
    extra = set(candidate) - {"data_types", "computons", "quiver", "rules", "initial_configuration"}
    if extra:
        raise DecodeError("$", f"unexpected keys {sorted(extra)}")

    diags = []

    # (a) non-empty D and F
    if not dts:
        diags.append(Diagnostic("EmptyDataTypes"))
    if not fns:
        diags.append(Diagnostic("EmptyComputons"))

    for label, ids in (
        ("data type", [d["id"] for d in dts]),
        ("computon", [f["id"] for f in fns]),
        ("vertex", [v["id"] for v in verts]),
        ("arrow", [a["id"] for a in arrs]),
    ):
        bad = [i for i in ids if not is_identifier(i)]
        if bad:
            diags.append(Diagnostic("InvalidId", tuple(bad), f"{label} ids must match {ID_HELP}"))
        dup = _duplicates(ids)
        if dup:
            diags.append(Diagnostic("DuplicateId", tuple(dup), f"repeated {label} ids"))
    for d in dts:
        if d["semantics"] is not None and d["semantics"] not in SEMANTICS:
            diags.append(Diagnostic("InvalidSemantics", (d["id"],), d["semantics"]))

    dt_ids = {d["id"] for d in dts}
    fn_by_id = {f["id"]: f for f in fns}
    vert_ids = {v["id"] for v in verts}
    for f in fns:
        missing = [t for t in (f["dom"], f["cod"]) if t not in dt_ids]
        if missing:
            diags.append(Diagnostic("UnknownDataType", (f["id"], *missing)))
    for v in verts:
        if v["data_type"] not in dt_ids:
            diags.append(Diagnostic("UnknownDataType", (v["id"], v["data_type"])))
    for a in arrs:
        missing = [x for x in (a["source"], a["target"]) if x not in vert_ids]
        if missing:
            diags.append(Diagnostic("UnknownVertex", (a["id"], *missing)))
        if a["computon"] not in fn_by_id:
            diags.append(Diagnostic("UnknownComputon", (a["id"], a["computon"])))
    if diags:
        # Later clauses need a well-formed quiver and resolvable references.
        raise MachineValidationError(diags)

    arrow_ids = tuple(a["id"] for a in arrs)
    q = Quiver.from_arrows((v["id"] for v in verts), ((a["id"], a["source"], a["target"]) for a in arrs))

    # (c) loops
    loops = [a for a in arrow_ids if q.source[a] == q.target[a]]
    for a in loops:
        diags.append(Diagnostic("Loop", (a,), f"source and target are both {q.source[a]}"))
    # (b) acyclicity, judged apart from loops so a loop is not reported twice
    if not is_acyclic(Quiver.from_arrows(q.vertices, ((a, q.source[a], q.target[a]) for a in arrow_ids if a not in loops))):
        diags.append(Diagnostic("CyclicQuiver", (), "the quiver has a directed cycle"))
    # (d) distinct targets
    for v in q.vertices:
        if len(q.incoming[v]) > 1:
            diags.append(Diagnostic("DuplicateTarget", q.incoming[v], f"all target {v}"))
    # (e) distinct codomains, (f) dom != cod
    by_cod = defaultdict(list)
    for f in fns:
        by_cod[f["cod"]].append(f["id"])
    for d in dts:
        if len(by_cod[d["id"]]) > 1:
            diags.append(Diagnostic("DuplicateCodomain", tuple(by_cod[d["id"]]), f"all have codomain {d['id']}"))
    for f in fns:
        if f["dom"] == f["cod"]:
            diags.append(Diagnostic("DomEqualsCod", (f["id"],), f"{f['dom']} -> {f['cod']}"))
    # (g) bijective mu0 / mu1
    mu0 = {v["id"]: v["data_type"] for v in verts}
    mu1 = {a["id"]: a["computon"] for a in arrs}
    for label, mapping, codomain in (("mu0", mu0, [d["id"] for d in dts]), ("mu1", mu1, [f["id"] for f in fns])):
        preimage = defaultdict(list)
        for k, v in mapping.items():
            preimage[v].append(k)
        for target in codomain:
            if len(preimage[target]) > 1:
                diags.append(Diagnostic("BrokenBijection", (label, target, *preimage[target]), "not injective"))
            elif not preimage[target]:
                diags.append(Diagnostic("BrokenBijection", (label, target), "not surjective"))
    # (h) typing
    for a in arrow_ids:
        f = fn_by_id[mu1[a]]
        want = (mu0[q.source[a]], mu0[q.target[a]])
        if (f["dom"], f["cod"]) != want:
            diags.append(Diagnostic(
                "TypeMismatch", (a,),
                f"{f['id']}: {f['dom']} -> {f['cod']} but arrow runs {want[0]} -> {want[1]}",
            ))
    # (i) at most one right neighbour; a second left neighbour implies a duplicate target
    for a in arrow_ids:
        _, right = _neighbours(q, a)
        if len(right) > 1:
            diags.append(Diagnostic("AmbiguousNeighbourhood", (a, *right), "more than one right neighbour"))

    from .execution import parse_expression
    from .errors import ExpressionError

    for f in fns:
        if f["expr"] is not None:
            try:
                parse_expression(f["expr"])
            except ExpressionError as exc:
                diags.append(Diagnostic("InvalidExpression", (f["id"],), str(exc)))

    rules = _resolve_rules(raw_rules, diags)
    # (j) total initial configuration
    config = _decode_configuration(candidate["initial_configuration"], arrow_ids, diags)

    if diags:
        raise MachineValidationError(diags)
    return Machine(
        data_types=tuple(DataType(d["id"], d["semantics"]) for d in dts),
        computons=tuple(Computon(f["id"], f["dom"], f["cod"], f["expr"]) for f in fns),
        quiver=q,
        mu0=mu0,
        mu1=mu1,
        rules=rules,
        initial_configuration=config,
    )

