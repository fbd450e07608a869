"""Seeded problem generators, one per template family.

Generation is a pure function of (problem type, seed): the same seed always
reproduces the identical instance.
"""

from __future__ import annotations

import math
import random
from dataclasses import dataclass, field
from fractions import Fraction as Rational

from ..engine import FactValue
from ..expr import Const, Expr, Fraction, Neg, Power, Product, Radical, Sum, Var, render
from .catalog import ProblemType


@dataclass(frozen=True)
class ProblemInstance:
    instance_id: str
    problem_type_id: str
    tutor_id: str
    seed: int
    statement: Expr
    rhs: Expr | None  # right-hand side when the statement is an equation
    initial_facts: dict[str, FactValue] = field(compare=False)
    created_at: str | None = field(default=None, compare=False)

    @property
    def statement_text(self) -> str:
        text = render(self.statement, "plain")
        if self.rhs is not None:
            text += " = " + render(self.rhs, "plain")
        return text

    @property
    def statement_latex(self) -> str:
        text = render(self.statement, "latex")
        if self.rhs is not None:
            text += " = " + render(self.rhs, "latex")
        return text


def _instance(
    pt: ProblemType,
    seed: int,
    statement: Expr,
    facts: dict[str, FactValue],
    rhs: Expr | None = None,
) -> ProblemInstance:
    return ProblemInstance(
        instance_id=f"{pt.id}:{seed & 0xFFFFFFFFFFFFFFFF:016x}",
        problem_type_id=pt.id,
        tutor_id=pt.tutor_id,
        seed=seed,
        statement=statement,
        rhs=rhs,
        initial_facts=facts,
    )


def _gen_exponent_pair(pt: ProblemType, rng: random.Random, quotient: bool) -> tuple[Var, int, int]:
    g = pt.generator
    v = Var(rng.choice(g["variables"]))
    if quotient:
        a = rng.randint(g["exp_min"] + 1, g["exp_max"])
        b = rng.randint(g["exp_min"], a - 1)
    else:
        a = rng.randint(g["exp_min"], g["exp_max"])
        b = rng.randint(g["exp_min"], g["exp_max"])
    return v, a, b


def exponent_product(pt: ProblemType, seed: int) -> ProblemInstance:
    rng = random.Random(seed)
    v, a, b = _gen_exponent_pair(pt, rng, quotient=False)
    statement = Product((Power(v, Const(a)), Power(v, Const(b))))
    facts: dict[str, FactValue] = {"problem.var": v, "problem.exp_a": a, "problem.exp_b": b}
    return _instance(pt, seed, statement, facts)


def exponent_quotient(pt: ProblemType, seed: int) -> ProblemInstance:
    rng = random.Random(seed)
    v, a, b = _gen_exponent_pair(pt, rng, quotient=True)
    statement = Fraction(Power(v, Const(a)), Power(v, Const(b)))
    facts: dict[str, FactValue] = {"problem.var": v, "problem.exp_a": a, "problem.exp_b": b}
    return _instance(pt, seed, statement, facts)


def exponent_power(pt: ProblemType, seed: int) -> ProblemInstance:
    rng = random.Random(seed)
    v, a, b = _gen_exponent_pair(pt, rng, quotient=False)
    statement = Power(Power(v, Const(a)), Const(b))
    facts: dict[str, FactValue] = {"problem.var": v, "problem.exp_a": a, "problem.exp_b": b}
    return _instance(pt, seed, statement, facts)


def radical_simplify(pt: ProblemType, seed: int) -> ProblemInstance:
    rng = random.Random(seed)
    g = pt.generator
    k = rng.randint(g["k_min"], g["k_max"])
    m = rng.choice(g["squarefree"])
    n = k * k * m
    statement = Radical(Const(n), 2)
    return _instance(pt, seed, statement, {"problem.n": n})


def factor_quadratic(pt: ProblemType, seed: int) -> ProblemInstance:
    rng = random.Random(seed)
    g = pt.generator
    r1 = rng.choice((-1, 1)) * rng.randint(g["root_min"], g["root_max"])
    r2 = rng.choice((-1, 1)) * rng.randint(g["root_min"], g["root_max"])
    b, c = r1 + r2, r1 * r2
    x = Var("x")
    terms: list[Expr] = [Power(x, Const(2))]
    if b == 1:
        terms.append(x)
    elif b == -1:
        terms.append(Neg(x))
    elif b != 0:
        terms.append(Product((Const(b), x)))
    terms.append(Const(c))
    statement = Sum(tuple(terms))
    facts: dict[str, FactValue] = {
        "problem.var": x,
        "problem.linear_coeff": b,
        "problem.constant_term": c,
    }
    return _instance(pt, seed, statement, facts)


def rational_equation(pt: ProblemType, seed: int) -> ProblemInstance:
    rng = random.Random(seed)
    g = pt.generator
    limit = g["max_solution_magnitude"]
    while True:
        a = rng.randint(g["a_min"], g["a_max"])
        b = rng.randint(g["bd_min"], g["bd_max"])
        c = rng.randint(g["ce_min"], g["ce_max"])
        d = rng.randint(g["bd_min"], g["bd_max"])
        e = rng.randint(g["ce_min"], g["ce_max"])
        lcd = math.lcm(c, e)
        alpha = d * lcd // e - b * lcd // c
        if alpha == 0:
            continue
        solution = Rational(a * lcd, alpha)
        if abs(solution.numerator) > limit or solution.denominator > limit:
            continue
        break
    x = Var("x")
    lhs = Sum((Fraction(Const(a), x), Fraction(Const(b), Const(c))))
    rhs = Fraction(Const(d), Const(e))
    facts: dict[str, FactValue] = {
        "problem.var": x,
        "problem.a": a,
        "problem.b": b,
        "problem.c": c,
        "problem.d": d,
        "problem.e": e,
    }
    return _instance(pt, seed, lhs, facts, rhs=rhs)


TEMPLATES = {
    "exponent_product": exponent_product,
    "exponent_quotient": exponent_quotient,
    "exponent_power": exponent_power,
    "radical_simplify": radical_simplify,
    "factor_quadratic": factor_quadratic,
    "rational_equation": rational_equation,
}


def generate(pt: ProblemType, seed: int) -> ProblemInstance:
    """Generate the problem instance for this seed (deterministic)."""
    try:
        template = TEMPLATES[pt.template]
    except KeyError:
        raise ValueError(f"{pt.id}: unknown template {pt.template!r}") from None
    return template(pt, seed)
