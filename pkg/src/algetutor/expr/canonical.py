"""Canonical form: a unique normal form so equal trees serialize identically.

Rewrites applied bottom-up:
  - flatten nested sums/products
  - fold rational-constant arithmetic exactly (fractions.Fraction)
  - e^1 -> e, e^0 -> 1, 1*e -> e, 0+e -> e, 0*e -> 0
  - combine powers of identical bases within a product by adding exponents
  - sort commutative operands: constants, then variables alphabetically,
    then composites by recursive comparison
  - negation folds into constants / a leading -1 coefficient
  - perfect integer roots of constant radicands fold to constants

Not done on purpose: collecting like terms in sums, expanding products, or
extracting square factors from radicals (that last one is tutor content,
not normalization). The numeric-equivalence tier covers those gaps.
"""

from __future__ import annotations

import functools
from fractions import Fraction as Rational

from .nodes import Const, Expr, Fraction, Neg, Power, Product, Radical, Sum, Var

# Skip constant power folding when it would produce huge integers.
_MAX_FOLD_EXPONENT = 64
_MAX_FOLD_BASE = 10**9


def _as_rational(e: Expr) -> Rational | None:
    """Value of a canonical rational-constant node, else None."""
    if isinstance(e, Const):
        return Rational(e.value)
    if (
        isinstance(e, Fraction)
        and isinstance(e.numerator, Const)
        and isinstance(e.denominator, Const)
        and e.denominator.value != 0
    ):
        return Rational(e.numerator.value, e.denominator.value)
    return None


def _from_rational(r: Rational) -> Expr:
    if r.denominator == 1:
        return Const(r.numerator)
    return Fraction(Const(r.numerator), Const(r.denominator))


def _kind_rank(e: Expr) -> int:
    for rank, cls in enumerate((Sum, Product, Power, Fraction, Radical, Neg)):
        if isinstance(e, cls):
            return rank
    raise TypeError(f"not an expression node: {e!r}")


def compare(a: Expr, b: Expr) -> int:
    """Total order: constants < variables (alphabetical) < composites."""
    ra = 0 if isinstance(a, Const) else 1 if isinstance(a, Var) else 2
    rb = 0 if isinstance(b, Const) else 1 if isinstance(b, Var) else 2
    if ra != rb:
        return ra - rb
    if isinstance(a, Const) and isinstance(b, Const):
        return (a.value > b.value) - (a.value < b.value)
    if isinstance(a, Var) and isinstance(b, Var):
        return (a.name > b.name) - (a.name < b.name)
    ka, kb = _kind_rank(a), _kind_rank(b)
    if ka != kb:
        return ka - kb
    if isinstance(a, Radical) and isinstance(b, Radical) and a.index != b.index:
        return a.index - b.index
    ca, cb = a.children(), b.children()
    for xa, xb in zip(ca, cb):
        c = compare(xa, xb)
        if c != 0:
            return c
    return len(ca) - len(cb)


_sort_key = functools.cmp_to_key(compare)


def _canon_sum(terms: list[Expr]) -> Expr:
    flat: list[Expr] = []
    for t in terms:
        if isinstance(t, Sum):
            flat.extend(t.terms)
        else:
            flat.append(t)
    constant = Rational(0)
    rest: list[Expr] = []
    for t in flat:
        r = _as_rational(t)
        if r is not None:
            constant += r
        else:
            rest.append(t)
    rest.sort(key=_sort_key)
    if constant != 0:
        rest.insert(0, _from_rational(constant))
    if not rest:
        return Const(0)
    if len(rest) == 1:
        return rest[0]
    return Sum(tuple(rest))


def _canon_product(factors: list[Expr]) -> Expr:
    flat: list[Expr] = []
    for f in factors:
        if isinstance(f, Product):
            flat.extend(f.factors)
        else:
            flat.append(f)
    coefficient = Rational(1)
    # base serialization -> [base, list of exponents]; insertion order kept
    groups: dict[str, tuple[Expr, list[Expr]]] = {}
    from .nodes import to_sexpr

    for f in flat:
        r = _as_rational(f)
        if r is not None:
            coefficient *= r
            continue
        if isinstance(f, Power):
            base, exp = f.base, f.exponent
        else:
            base, exp = f, Const(1)
        key = to_sexpr(base)
        if key in groups:
            groups[key][1].append(exp)
        else:
            groups[key] = (base, [exp])
    if coefficient == 0:
        return Const(0)
    combined: list[Expr] = []
    for base, exps in groups.values():
        total = _canon_sum(exps) if len(exps) > 1 else exps[0]
        folded = _canon_power(base, total)
        if folded == Const(1):
            continue
        r = _as_rational(folded)
        if r is not None:
            coefficient *= r
            continue
        combined.append(folded)
    if coefficient == 0:
        return Const(0)
    combined.sort(key=_sort_key)
    if coefficient != 1:
        combined.insert(0, _from_rational(coefficient))
    if not combined:
        return Const(1)
    if len(combined) == 1:
        return combined[0]
    return Product(tuple(combined))


def _canon_power(base: Expr, exponent: Expr) -> Expr:
    if exponent == Const(0):
        return Const(1)
    if exponent == Const(1):
        return base
    if base == Const(1):
        return Const(1)
    rb = _as_rational(base)
    if rb is not None and isinstance(exponent, Const):
        k = exponent.value
        small = max(abs(rb.numerator), rb.denominator) <= _MAX_FOLD_BASE
        if small and 0 <= k <= _MAX_FOLD_EXPONENT:
            return _from_rational(rb**k)
        if small and rb != 0 and -_MAX_FOLD_EXPONENT <= k < 0:
            return _from_rational(Rational(1) / rb ** (-k))
    return Power(base, exponent)


def _integer_root(value: int, index: int) -> int | None:
    if value < 0:
        if index % 2 == 0:
            return None
        r = _integer_root(-value, index)
        return -r if r is not None else None
    root = round(value ** (1.0 / index))
    for candidate in (root - 1, root, root + 1):
        if candidate >= 0 and candidate**index == value:
            return candidate
    return None


def _strip_negative_head(e: Expr) -> Expr | None:
    """The positive counterpart of a canonical node with a negative leading
    rational coefficient, or None when the sign is not extractable."""
    if isinstance(e, Const) and e.value < 0:
        return Const(-e.value)
    if isinstance(e, Product):
        head = _as_rational(e.factors[0])
        if head is not None and head < 0:
            rest = e.factors[1:]
            if head == -1:
                return rest[0] if len(rest) == 1 else Product(rest)
            return Product((_from_rational(-head),) + rest)
    return None


def _canon_radical(radicand: Expr, index: int) -> Expr:
    r = _as_rational(radicand)
    if r is not None:
        num = _integer_root(r.numerator, index)
        den = _integer_root(r.denominator, index)
        if num is not None and den is not None:
            return _from_rational(Rational(num, den))
    return Radical(radicand, index)


def canonicalize(e: Expr) -> Expr:
    """Rewrite to the unique canonical form. Idempotent."""
    if isinstance(e, (Const, Var)):
        return e
    if isinstance(e, Neg):
        return _canon_product([Const(-1), canonicalize(e.operand)])
    if isinstance(e, Sum):
        return _canon_sum([canonicalize(t) for t in e.terms])
    if isinstance(e, Product):
        return _canon_product([canonicalize(f) for f in e.factors])
    if isinstance(e, Power):
        return _canon_power(canonicalize(e.base), canonicalize(e.exponent))
    if isinstance(e, Radical):
        return _canon_radical(canonicalize(e.radicand), e.index)
    if isinstance(e, Fraction):
        num = canonicalize(e.numerator)
        den = canonicalize(e.denominator)
        if den == Const(0):
            # Symbolic denominator that cancels to zero (e.g. x - x): the
            # expression is undefined everywhere. Keep the original
            # denominator subtree so the node stays constructible; repeated
            # canonicalization reproduces it byte-for-byte.
            return Fraction(num, e.denominator)
        rn, rd = _as_rational(num), _as_rational(den)
        if rn is not None and rd is not None:
            return _from_rational(rn / rd)
        if num == Const(0):
            return Const(0)
        if den == Const(1):
            return num
        if rd is not None and rd < 0:
            return canonicalize(Fraction(Product((Const(-1), num)), _from_rational(-rd)))
        positive_num = _strip_negative_head(num)
        if positive_num is not None:
            # keep one normal form: the sign lives outside the fraction
            return _canon_product([Const(-1), Fraction(positive_num, den)])
        return Fraction(num, den)
    raise TypeError(f"not an expression node: {e!r}")
