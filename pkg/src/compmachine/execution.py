"""Executable computons.

A computon may carry a one-variable integer expression such as
``2*(x - 3)``.  Grammar::

    expr   := term (('+' | '-') term)*
    term   := factor ('*' factor)*
    factor := 'x' | INTEGER | '(' expr ')' | '-' factor

Values are signed 64-bit integers tagged with a data type id.  Results
outside that range raise :class:`ArithmeticOverflow` instead of wrapping.
"""

from __future__ import annotations

import re
from dataclasses import dataclass
from functools import lru_cache

from .errors import (
    ArithmeticOverflow,
    ExpressionSyntaxError,
    NoSemantics,
    SelectorError,
    TypeMismatch,
    UnknownVariable,
)
from .machine import Machine
from .space import COMPOSE, Morphism

INT_MIN = -(1 << 63)
INT_MAX = (1 << 63) - 1


def _fits(v: int) -> bool:
    return INT_MIN <= v <= INT_MAX


@dataclass(frozen=True)
class Num:
    value: int


@dataclass(frozen=True)
class Var:
    pass


@dataclass(frozen=True)
class Neg:
    operand: object


@dataclass(frozen=True)
class BinOp:
    op: str
    left: object
    right: object


_PREC = {"+": 1, "-": 1, "*": 2}
_TOKEN = re.compile(r"(\d+)|([A-Za-z_][A-Za-z0-9_]*)|(.)", re.S)


def _tokenize(text):
    tokens = []
    pos = 0
    while True:
        while pos < len(text) and text[pos].isspace():
            pos += 1
        if pos == len(text):
            break
        m = _TOKEN.match(text, pos)
        if m.group(1) is not None:
            tokens.append(("int", m.group(1), pos))
        elif m.group(2) is not None:
            tokens.append(("name", m.group(2), pos))
        else:
            ch = m.group(3)
            if ch not in "+-*()":
                raise ExpressionSyntaxError(f"unexpected character {ch!r}", text, pos)
            tokens.append((ch, ch, pos))
        pos = m.end()
    tokens.append(("end", "", len(text)))
    return tokens


class _Parser:
    def __init__(self, text):
        self.text = text
        self.tokens = _tokenize(text)
        self.i = 0

    def peek(self):
        return self.tokens[self.i]

    def take(self):
        tok = self.tokens[self.i]
        self.i += 1
        return tok

    def fail(self, message, tok=None):
        tok = tok or self.peek()
        raise ExpressionSyntaxError(message, self.text, tok[2])

    def parse(self):
        tree = self.expr()
        if self.peek()[0] != "end":
            self.fail(f"unexpected {self.peek()[1]!r}")
        return tree

    def expr(self):
        node = self.term()
        while self.peek()[0] in ("+", "-"):
            op = self.take()[0]
            node = BinOp(op, node, self.term())
        return node

    def term(self):
        node = self.factor()
        while self.peek()[0] == "*":
            self.take()
            node = BinOp("*", node, self.factor())
        return node

    def factor(self):
        kind, text, pos = tok = self.take()
        if kind == "int":
            value = int(text)
            if value > INT_MAX:
                raise ExpressionSyntaxError("integer literal does not fit in 64 bits", self.text, pos)
            return Num(value)
        if kind == "name":
            if text != "x":
                raise UnknownVariable(text, pos)
            return Var()
        if kind == "-":
            return Neg(self.factor())
        if kind == "(":
            node = self.expr()
            if self.peek()[0] != ")":
                self.fail("expected ')'")
            self.take()
            return node
        self.fail("expected a number, 'x', '(' or '-'", tok)


@dataclass(frozen=True)
class Expression:
    text: str
    tree: object

    def __call__(self, x: int) -> int:
        return evaluate(self.tree, x)

    def __str__(self):
        return pretty(self.tree)


@lru_cache(maxsize=1024)
def parse_expression(text: str) -> Expression:
    return Expression(text, _Parser(text).parse())


def evaluate(node, x: int) -> int:
    if isinstance(node, Num):
        return node.value
    if isinstance(node, Var):
        return x
    if isinstance(node, Neg):
        result = -evaluate(node.operand, x)
    else:
        a = evaluate(node.left, x)
        b = evaluate(node.right, x)
        if node.op == "+":
            result = a + b
        elif node.op == "-":
            result = a - b
        else:
            result = a * b
    if not _fits(result):
        raise ArithmeticOverflow(f"result {result} does not fit in 64 bits")
    return result


def _prec(node) -> int:
    if isinstance(node, BinOp):
        return _PREC[node.op]
    if isinstance(node, Neg):
        return 3
    return 4


def pretty(node) -> str:
    """Render with the fewest parentheses that keep the tree shape."""
    if isinstance(node, Num):
        return str(node.value)
    if isinstance(node, Var):
        return "x"
    if isinstance(node, Neg):
        inner = pretty(node.operand)
        return "-" + (inner if _prec(node.operand) >= 3 else f"({inner})")
    p = _PREC[node.op]
    left = pretty(node.left)
    if _prec(node.left) < p:
        left = f"({left})"
    right = pretty(node.right)
    if _prec(node.right) <= p:
        right = f"({right})"
    sep = "*" if node.op == "*" else f" {node.op} "
    return left + sep + right


@dataclass(frozen=True)
class Value:
    value: int
    data_type: str

    def __post_init__(self):
        if isinstance(self.value, bool) or not isinstance(self.value, int) or not _fits(self.value):
            raise ValueError(f"{self.value!r} is not a signed 64-bit integer")

    def __str__(self):
        return f"{self.value}:{self.data_type}"


def eval_computon(m: Machine, f: str, v: Value) -> Value:
    """Apply computon ``f`` (or the identity ``id:<data type>``) to ``v``."""
    if f.startswith("id:"):
        d = f[3:]
        if d not in m.data_type:
            raise SelectorError(f"unknown data type {d!r}")
        if v.data_type != d:
            raise TypeMismatch(f"{f} expects {d}, got a value of {v.data_type}")
        return v
    try:
        comp = m.computon[f]
    except KeyError:
        raise SelectorError(f"unknown computon {f!r}") from None
    if v.data_type != comp.dom:
        raise TypeMismatch(f"{f} expects {comp.dom}, got a value of {v.data_type}")
    if comp.expr is None:
        raise NoSemantics(f)
    try:
        result = parse_expression(comp.expr)(v.value)
    except ArithmeticOverflow as exc:
        raise ArithmeticOverflow(f"{f}: {exc}") from None
    return Value(result, comp.cod)


def eval_morphism(m: Machine, mo: Morphism, v: Value) -> Value:
    if v.data_type != mo.input:
        raise TypeMismatch(f"{mo.label} expects {mo.input}, got a value of {v.data_type}")
    for f in mo.computons:
        v = eval_computon(m, f, v)
    return v


def parse_selector(m: Machine, text: str) -> Morphism:
    """Turn ``f3∘f2∘f1``, ``f3.f2.f1``, ``f1`` or ``id:d1`` into a morphism.

    Checks that the named computons exist and compose; does not check
    whether the morphism is present in any particular space.
    """
    text = text.strip()
    if text.startswith("id:"):
        d = text[3:]
        if d not in m.data_type:
            raise SelectorError(f"unknown data type {d!r}")
        return Morphism.identity(d)
    names = [n.strip() for n in re.split(rf"[{COMPOSE}.]", text)]
    names.reverse()
    for n in names:
        if n not in m.computon:
            raise SelectorError(f"unknown computon {n!r}")
    for first, second in zip(names, names[1:]):
        if m.computon[first].cod != m.computon[second].dom:
            raise SelectorError(f"{second} cannot follow {first}: {m.computon[first].cod} != {m.computon[second].dom}")
    return Morphism(
        "primitive" if len(names) == 1 else "composite",
        tuple(names),
        m.computon[names[0]].dom,
        m.computon[names[-1]].cod,
    )

