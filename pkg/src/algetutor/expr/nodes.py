"""Expression trees for problem statements, expected values, and student input.

Nodes are immutable; constructors enforce the structural rules (integer-only
constants, radical index >= 2, no literal zero denominator).
"""

from __future__ import annotations

from dataclasses import dataclass
from enum import Enum


class ExprError(ValueError):
    """Structurally invalid expression tree."""


@dataclass(frozen=True)
class Expr:
    def children(self) -> tuple["Expr", ...]:
        return ()


@dataclass(frozen=True)
class Const(Expr):
    value: int

    def __post_init__(self) -> None:
        if not isinstance(self.value, int) or isinstance(self.value, bool):
            raise ExprError(f"constants must be integers, got {self.value!r}")


@dataclass(frozen=True)
class Var(Expr):
    name: str

    def __post_init__(self) -> None:
        if len(self.name) != 1 or not self.name.isalpha():
            raise ExprError(f"variables are single letters, got {self.name!r}")


@dataclass(frozen=True)
class Sum(Expr):
    terms: tuple[Expr, ...]

    def __post_init__(self) -> None:
        if len(self.terms) < 2:
            raise ExprError("a sum needs at least two terms")

    def children(self) -> tuple[Expr, ...]:
        return self.terms


@dataclass(frozen=True)
class Product(Expr):
    factors: tuple[Expr, ...]

    def __post_init__(self) -> None:
        if len(self.factors) < 2:
            raise ExprError("a product needs at least two factors")

    def children(self) -> tuple[Expr, ...]:
        return self.factors


@dataclass(frozen=True)
class Power(Expr):
    base: Expr
    exponent: Expr

    def children(self) -> tuple[Expr, ...]:
        return (self.base, self.exponent)


@dataclass(frozen=True)
class Neg(Expr):
    operand: Expr

    def children(self) -> tuple[Expr, ...]:
        return (self.operand,)


@dataclass(frozen=True)
class Fraction(Expr):
    numerator: Expr
    denominator: Expr

    def __post_init__(self) -> None:
        if self.denominator == Const(0):
            raise ExprError("denominator cannot be the literal constant 0")

    def children(self) -> tuple[Expr, ...]:
        return (self.numerator, self.denominator)


@dataclass(frozen=True)
class Radical(Expr):
    radicand: Expr
    index: int = 2

    def __post_init__(self) -> None:
        if not isinstance(self.index, int) or self.index < 2:
            raise ExprError(f"radical index must be an integer >= 2, got {self.index!r}")

    def children(self) -> tuple[Expr, ...]:
        return (self.radicand,)


class ParseErrorKind(Enum):
    UNEXPECTED_TOKEN = "unexpected_token"
    UNBALANCED_DELIMITER = "unbalanced_delimiter"
    EMPTY_INPUT = "empty_input"
    UNKNOWN_SYMBOL = "unknown_symbol"


class ParseError(ValueError):
    """Rejected input, with the character offset where parsing gave up."""

    def __init__(self, kind: ParseErrorKind, position: int, message: str):
        super().__init__(f"{message} (at position {position})")
        self.kind = kind
        self.position = position
        self.message = message


def to_sexpr(e: Expr) -> str:
    """Injective textual serialization; byte-identical iff trees are equal."""
    if isinstance(e, Const):
        return str(e.value)
    if isinstance(e, Var):
        return e.name
    if isinstance(e, Sum):
        return "(+ " + " ".join(to_sexpr(t) for t in e.terms) + ")"
    if isinstance(e, Product):
        return "(* " + " ".join(to_sexpr(f) for f in e.factors) + ")"
    if isinstance(e, Power):
        return f"(^ {to_sexpr(e.base)} {to_sexpr(e.exponent)})"
    if isinstance(e, Neg):
        return f"(neg {to_sexpr(e.operand)})"
    if isinstance(e, Fraction):
        return f"(/ {to_sexpr(e.numerator)} {to_sexpr(e.denominator)})"
    if isinstance(e, Radical):
        return f"(root {e.index} {to_sexpr(e.radicand)})"
    raise TypeError(f"not an expression node: {e!r}")


def free_variables(e: Expr) -> frozenset[str]:
    if isinstance(e, Var):
        return frozenset(e.name)
    out: frozenset[str] = frozenset()
    for child in e.children():
        out |= free_variables(child)
    return out
