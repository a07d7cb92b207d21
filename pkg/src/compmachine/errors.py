"""Exception types shared across the package."""

from __future__ import annotations

from dataclasses import dataclass


class MachineError(Exception):
    """Base class for every error raised by compmachine."""


# -- quivers and paths ------------------------------------------------------

class QuiverError(MachineError):
    pass


class CyclicQuiver(QuiverError):
    def __init__(self, message="quiver has a directed cycle; its path set is infinite"):
        super().__init__(message)


class NotComposable(QuiverError):
    def __init__(self, first, second):
        self.first = first
        self.second = second
        super().__init__(
            f"cannot concatenate: target {first.target!r} of first path "
            f"differs from source {second.source!r} of second path"
        )


class UnknownArrow(QuiverError):
    def __init__(self, arrow):
        self.arrow = arrow
        super().__init__(f"unknown arrow {arrow!r}")


class AmbiguousNeighbourhood(QuiverError):
    def __init__(self, arrow, neighbours):
        self.arrow = arrow
        self.neighbours = tuple(neighbours)
        super().__init__(
            f"arrow {arrow!r} has {len(self.neighbours)} right neighbours: "
            + ", ".join(self.neighbours)
        )


# -- machine definition -----------------------------------------------------

class UnknownRuleName(MachineError):
    def __init__(self, name):
        self.name = name
        super().__init__(f"unknown rule name {name!r}")


@dataclass(frozen=True)
class Diagnostic:
    """One violated validation clause.

    ``code`` is a stable identifier such as ``"DuplicateTarget"``; ``ids``
    names the offending vertices, arrows, computons or data types.
    """

    code: str
    ids: tuple = ()
    detail: str = ""

    def __str__(self):
        text = f"{self.code}({', '.join(self.ids)})"
        return f"{text}: {self.detail}" if self.detail else text


class MachineValidationError(MachineError):
    def __init__(self, diagnostics):
        self.diagnostics = tuple(diagnostics)
        super().__init__("\n".join(str(d) for d in self.diagnostics))

    @property
    def codes(self):
        return [d.code for d in self.diagnostics]


class DecodeError(MachineError):
    """Malformed machine document; ``path`` is a JSON path like ``$.quiver.arrows[2]``."""

    def __init__(self, path, message):
        self.path = path
        super().__init__(f"{path}: {message}")


# -- evolution --------------------------------------------------------------

class IncompleteConfiguration(MachineError):
    def __init__(self, missing=(), message=None):
        self.missing = tuple(missing)
        super().__init__(message or "configuration has no state for: " + ", ".join(self.missing))


# -- execution --------------------------------------------------------------

class ExpressionError(MachineError):
    pass


class ExpressionSyntaxError(ExpressionError):
    def __init__(self, message, text, position):
        self.text = text
        self.position = position
        super().__init__(f"{message} at position {position} in {text!r}")


class UnknownVariable(ExpressionError):
    def __init__(self, name, position):
        self.name = name
        self.position = position
        super().__init__(f"unknown variable {name!r} at position {position}; only 'x' is allowed")


class ArithmeticOverflow(ExpressionError):
    pass


class NoSemantics(MachineError):
    def __init__(self, computon):
        self.computon = computon
        super().__init__(f"computon {computon!r} has no expression attached")


class TypeMismatch(MachineError):
    def __init__(self, message):
        super().__init__(message)


class SelectorError(MachineError):
    """A morphism selector names unknown computons or a non-composable chain."""
