"""Render expression trees as plain text (re-parseable) or LaTeX (display).

Plain output of any tree built from the parser's grammar parses back to a
canonically-equal tree; parenthesization and separator choices below exist
to keep that guarantee under implicit multiplication.
"""

from __future__ import annotations

from .nodes import Const, Expr, Fraction, Neg, Power, Product, Radical, Sum, Var

_ATOM = 100
_POW = 30
_MUL = 20
_NEG = 15
_ADD = 10


def render(e: Expr, format: str = "plain") -> str:
    if format == "plain":
        return _plain(e)[0]
    if format == "latex":
        return _latex(e)
    raise ValueError(f"unknown format {format!r}")


def _plain(e: Expr) -> tuple[str, int]:
    """Returns (text, effective precedence of the rendered text)."""
    if isinstance(e, Const):
        return str(e.value), _ATOM if e.value >= 0 else _NEG
    if isinstance(e, Var):
        return e.name, _ATOM
    if isinstance(e, Radical):
        inner = _plain(e.radicand)[0]
        if e.index == 2:
            return f"sqrt({inner})", _ATOM
        if e.index == 3:
            return f"cbrt({inner})", _ATOM
        # no call form in the grammar beyond cube roots; emit a power form
        base, prec = _plain(e.radicand)
        if prec != _ATOM:
            base = f"({base})"
        return f"{base}^(1/{e.index})", _POW
    if isinstance(e, Power):
        base, bprec = _plain(e.base)
        if bprec != _ATOM:
            base = f"({base})"
        exp, eprec = _plain(e.exponent)
        if eprec != _ATOM:
            exp = f"({exp})"
        return f"{base}^{exp}", _POW
    if isinstance(e, Neg):
        inner, prec = _plain(e.operand)
        if prec <= _NEG:
            inner = f"({inner})"
        return f"-{inner}", _NEG
    if isinstance(e, Fraction):
        num, nprec = _plain(e.numerator)
        if nprec < _MUL:
            num = f"({num})"
        den, dprec = _plain(e.denominator)
        if dprec <= _MUL:
            den = f"({den})"
        return f"{num}/{den}", _MUL
    if isinstance(e, Sum):
        return _plain_sum(e)
    if isinstance(e, Product):
        return _plain_product(e.factors)
    raise TypeError(f"not an expression node: {e!r}")


def _split_negative(t: Expr) -> Expr | None:
    """The positive counterpart of a term rendered after a minus sign."""
    if isinstance(t, Neg):
        return t.operand
    if isinstance(t, Const) and t.value < 0:
        return Const(-t.value)
    if isinstance(t, Product) and isinstance(t.factors[0], Const) and t.factors[0].value < 0:
        head = t.factors[0]
        rest = t.factors[1:]
        if head.value == -1 and rest:
            return rest[0] if len(rest) == 1 else Product(rest)
        return Product((Const(-head.value),) + rest)
    if isinstance(t, Fraction) and isinstance(t.numerator, Const) and t.numerator.value < 0:
        return Fraction(Const(-t.numerator.value), t.denominator)
    return None


def _plain_sum(e: Sum) -> tuple[str, int]:
    parts = [_addend(e.terms[0])]
    for t in e.terms[1:]:
        positive = _split_negative(t)
        if positive is not None:
            parts.append(" - " + _addend(positive))
        else:
            parts.append(" + " + _addend(t))
    return "".join(parts), _ADD


def _addend(t: Expr) -> str:
    text, prec = _plain(t)
    return f"({text})" if prec <= _ADD else text


def _plain_product(factors: tuple[Expr, ...]) -> tuple[str, int]:
    head = factors[0]
    if isinstance(head, Const) and head.value < 0:
        positive = _split_negative(Product(factors))
        assert positive is not None
        text, prec = _plain(positive) if not isinstance(positive, Product) else _plain_product(
            positive.factors
        )
        if prec <= _NEG:
            text = f"({text})"
        return f"-{text}", _NEG
    pieces: list[str] = []
    prev: Expr | None = None
    prev_wrapped = False
    for i, f in enumerate(factors):
        text, prec = _plain(f)
        needs_parens = prec < _MUL or (i > 0 and prec <= _MUL)
        if needs_parens:
            text = f"({text})"
        if i > 0:
            pieces.append(_separator(prev, prev_wrapped, pieces[-1], text))
        pieces.append(text)
        prev, prev_wrapped = f, needs_parens
    return "".join(pieces), _MUL


def _separator(prev: Expr | None, prev_wrapped: bool, prev_text: str, next_text: str) -> str:
    # A bare fraction glues wrongly under juxtaposition: 1/2x is 1/(2x).
    if isinstance(prev, Fraction) and not prev_wrapped:
        return "*"
    last, first = prev_text[-1], next_text[0]
    starts_operand = first.isalpha() or first == "("
    if isinstance(prev, Const) and not prev_wrapped and starts_operand:
        return ""  # 2x, 3(x+1), 5sqrt(2)
    if last == ")" and starts_operand:
        return ""  # (x+1)(x+2)
    if last.isalpha() and first == "(":
        return ""  # x(x+2)
    return "*"


def _latex(e: Expr) -> str:
    if isinstance(e, Const):
        return str(e.value)
    if isinstance(e, Var):
        return e.name
    if isinstance(e, Radical):
        inner = _latex(e.radicand)
        if e.index == 2:
            return rf"\sqrt{{{inner}}}"
        return rf"\sqrt[{e.index}]{{{inner}}}"
    if isinstance(e, Power):
        base = _latex(e.base)
        if not isinstance(e.base, (Const, Var, Radical)) or (
            isinstance(e.base, Const) and e.base.value < 0
        ):
            base = rf"\left({base}\right)"
        return f"{base}^{{{_latex(e.exponent)}}}"
    if isinstance(e, Neg):
        inner = _latex(e.operand)
        if isinstance(e.operand, (Sum, Neg)):
            inner = rf"\left({inner}\right)"
        return f"-{inner}"
    if isinstance(e, Fraction):
        return rf"\frac{{{_latex(e.numerator)}}}{{{_latex(e.denominator)}}}"
    if isinstance(e, Sum):
        parts = [_latex(e.terms[0])]
        for t in e.terms[1:]:
            positive = _split_negative(t)
            if positive is not None:
                parts.append(" - " + _latex(positive))
            else:
                parts.append(" + " + _latex(t))
        return "".join(parts)
    if isinstance(e, Product):
        pieces = []
        for f in e.factors:
            text = _latex(f)
            if isinstance(f, (Sum, Neg)) or (isinstance(f, Const) and f.value < 0):
                text = rf"\left({text}\right)"
            pieces.append(text)
        out = pieces[0]
        for text in pieces[1:]:
            sep = r" \cdot " if out[-1].isdigit() and text[0].isdigit() else " "
            out += sep + text
        return out
    raise TypeError(f"not an expression node: {e!r}")
