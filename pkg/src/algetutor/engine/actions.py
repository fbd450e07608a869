"""Registry of arithmetic/algebraic primitives referenced by rule files.

Rule definitions are data; every action they may invoke lives here. Adding a
tutor needs no new code as long as its rules compose these primitives.
"""

from __future__ import annotations

import math
from fractions import Fraction as Rational
from typing import Callable

from ..expr import Const, Expr, Fraction, Power, Product, Radical, Sum, Var


def add_ints(a: int, b: int) -> int:
    return a + b


def sub_ints(a: int, b: int) -> int:
    return a - b


def mul_ints(a: int, b: int) -> int:
    return a * b


def make_power(base: Expr, exponent: int) -> Expr:
    if exponent == 1:
        return base
    return Power(base, Const(exponent))


def largest_square_factor(n: int) -> int:
    """Greatest perfect square dividing n (n >= 1)."""
    best = 1
    k = 2
    while k * k <= n:
        if n % (k * k) == 0:
            best = k * k
        k += 1
    return best


def complement_factor(n: int, square: int) -> int:
    return n // square


def simplified_radical(square: int, rest: int) -> Expr:
    root = math.isqrt(square)
    if rest == 1:
        return Const(root)
    if root == 1:
        return Radical(Const(rest), 2)
    return Product((Const(root), Radical(Const(rest), 2)))


def factor_pair_for(total: int, product: int) -> tuple[int, int]:
    """The integer pair with the given sum and product, smaller value first."""
    for p in range(-abs(product), abs(product) + 1):
        if p == 0:
            continue
        if product % p == 0 and p + product // p == total:
            q = product // p
            if p <= q:
                return (p, q)
    raise ValueError(f"no integer pair with sum {total} and product {product}")


def swap_pair(pair: tuple[int, int]) -> tuple[int, int]:
    return (pair[1], pair[0])


def factored_form(variable: Expr, pair: tuple[int, int]) -> Expr:
    return Product((_binomial(variable, pair[0]), _binomial(variable, pair[1])))


def _binomial(variable: Expr, constant: int) -> Expr:
    return Sum((variable, Const(constant)))


def lcd_with_variable(c: int, e: int, variable: Expr) -> Expr:
    return Product((Const(math.lcm(c, e)), variable))


def clear_fractions(a: int, b: int, c: int, d: int, e: int) -> tuple[int, int]:
    """Multiply a/x + b/c = d/e by lcm(c,e)*x and collect: alpha*x = beta."""
    lcd = math.lcm(c, e)
    alpha = d * lcd // e - b * lcd // c
    beta = a * lcd
    return (alpha, beta)


def negate_pair(pair: tuple[int, int]) -> tuple[int, int]:
    return (-pair[0], -pair[1])


def solve_linear_pair(pair: tuple[int, int]) -> Expr:
    alpha, beta = pair
    value = Rational(beta, alpha)
    if value.denominator == 1:
        return Const(value.numerator)
    return Fraction(Const(value.numerator), Const(value.denominator))


def excluded_zero(variable: Expr) -> Expr:
    assert isinstance(variable, Var)
    return Const(0)


REGISTRY: dict[str, Callable] = {
    "add_ints": add_ints,
    "sub_ints": sub_ints,
    "mul_ints": mul_ints,
    "make_power": make_power,
    "largest_square_factor": largest_square_factor,
    "complement_factor": complement_factor,
    "simplified_radical": simplified_radical,
    "factor_pair_for": factor_pair_for,
    "swap_pair": swap_pair,
    "factored_form": factored_form,
    "lcd_with_variable": lcd_with_variable,
    "clear_fractions": clear_fractions,
    "negate_pair": negate_pair,
    "solve_linear_pair": solve_linear_pair,
    "excluded_zero": excluded_zero,
}
