"""Algebraic expression handling: parse, canonicalize, compare, render."""

from .canonical import canonicalize, compare
from .evaluate import (
    SingularPointError,
    UndecidableEquivalenceError,
    equivalent,
    evaluate,
)
from .nodes import (
    Const,
    Expr,
    ExprError,
    Fraction,
    Neg,
    ParseError,
    ParseErrorKind,
    Power,
    Product,
    Radical,
    Sum,
    Var,
    free_variables,
    to_sexpr,
)
from .parser import parse
from .render import render

__all__ = [
    "Const",
    "Expr",
    "ExprError",
    "Fraction",
    "Neg",
    "ParseError",
    "ParseErrorKind",
    "Power",
    "Product",
    "Radical",
    "Sum",
    "Var",
    "SingularPointError",
    "UndecidableEquivalenceError",
    "canonicalize",
    "compare",
    "equivalent",
    "evaluate",
    "free_variables",
    "parse",
    "render",
    "to_sexpr",
]
