"""Numeric evaluation and the two-tier equivalence check.

Tier 1 compares canonical forms structurally; tier 2 evaluates both trees at
pseudo-random rational sample points, redrawing any point that lands near a
singularity (tiny denominator, negative even-index radicand).
"""

from __future__ import annotations

import random
from fractions import Fraction as Rational

from .canonical import canonicalize
from .nodes import (
    Const,
    Expr,
    Fraction,
    Neg,
    Power,
    Product,
    Radical,
    Sum,
    Var,
    free_variables,
)

SAMPLE_POINTS = 12
MAX_REDRAWS = 100
RELATIVE_TOLERANCE = 1e-9
_DENOMINATOR_FLOOR = 1e-6
_FLOAT_FALLBACK_EXPONENT = 128

_SAMPLE_SEED = 0x1A2B3C


class SingularPointError(ArithmeticError):
    """Sample point hit a guard: tiny denominator or invalid radicand."""


class UndecidableEquivalenceError(ArithmeticError):
    """Redraw budget exhausted before enough valid sample points were found."""


Number = Rational | float


def evaluate(e: Expr, env: dict[str, Rational]) -> Number:
    """Evaluate at a rational point. Exact until a radical forces floats.

    Raises SingularPointError at guarded singularities and KeyError for
    unbound variables.
    """
    if isinstance(e, Const):
        return Rational(e.value)
    if isinstance(e, Var):
        return env[e.name]
    if isinstance(e, Neg):
        return -evaluate(e.operand, env)
    if isinstance(e, Sum):
        total: Number = Rational(0)
        for t in e.terms:
            total += evaluate(t, env)
        return total
    if isinstance(e, Product):
        prod: Number = Rational(1)
        for f in e.factors:
            prod *= evaluate(f, env)
        return prod
    if isinstance(e, Fraction):
        den = evaluate(e.denominator, env)
        if abs(float(den)) < _DENOMINATOR_FLOOR:
            raise SingularPointError("denominator below threshold")
        return evaluate(e.numerator, env) / den
    if isinstance(e, Power):
        return _evaluate_power(e, env)
    if isinstance(e, Radical):
        return _evaluate_radical(e, env)
    raise TypeError(f"not an expression node: {e!r}")


def _evaluate_power(e: Power, env: dict[str, Rational]) -> Number:
    base = evaluate(e.base, env)
    exp = evaluate(e.exponent, env)
    if isinstance(exp, Rational) and exp.denominator == 1:
        k = exp.numerator
        if k < 0 and abs(float(base)) < _DENOMINATOR_FLOOR:
            raise SingularPointError("zero base with negative exponent")
        if abs(k) > _FLOAT_FALLBACK_EXPONENT:
            return float(base) ** k
        return base**k
    # non-integer exponent: real-valued only for non-negative bases
    fb = float(base)
    if fb < 0:
        raise SingularPointError("negative base with fractional exponent")
    if fb == 0 and float(exp) < 0:
        raise SingularPointError("zero base with negative exponent")
    return fb ** float(exp)


def _evaluate_radical(e: Radical, env: dict[str, Rational]) -> float:
    radicand = float(evaluate(e.radicand, env))
    if e.index % 2 == 0:
        if radicand < 0:
            raise SingularPointError("negative radicand for even index")
        return radicand ** (1.0 / e.index)
    sign = -1.0 if radicand < 0 else 1.0
    return sign * abs(radicand) ** (1.0 / e.index)


def _close(a: float, b: float) -> bool:
    return abs(a - b) <= RELATIVE_TOLERANCE * max(1.0, abs(a), abs(b))


def equivalent(a: Expr, b: Expr) -> bool:
    """True iff canonical forms match or values agree at 12 sample points.

    Raises UndecidableEquivalenceError when 100 redraws cannot find valid
    sample points; callers treat that as not-equivalent.
    """
    ca, cb = canonicalize(a), canonicalize(b)
    if ca == cb:
        return True
    names = sorted(free_variables(ca) | free_variables(cb))
    rng = random.Random(_SAMPLE_SEED)
    redraws = 0
    for _ in range(SAMPLE_POINTS):
        while True:
            env = {
                name: Rational(rng.randint(-50, 50), rng.randint(1, 20)) for name in names
            }
            try:
                va = float(evaluate(ca, env))
                vb = float(evaluate(cb, env))
            except (SingularPointError, OverflowError):
                redraws += 1
                if redraws > MAX_REDRAWS:
                    raise UndecidableEquivalenceError(
                        "no valid sample points after 100 redraws"
                    ) from None
                continue
            break
        if not _close(va, vb):
            return False
    return True
