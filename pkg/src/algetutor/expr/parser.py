"""Pratt parser for the plain-text expression syntax.

Grammar: integers, single-letter variables, + - * / ^ with the usual
precedence (^ right-associative and tighter than unary minus), implicit
multiplication (2x, 3(x+1), 5sqrt(2)) binding tighter than explicit * but
looser than ^, and sqrt(...) / cbrt(...) call forms. Whitespace is ignored.
"""

from __future__ import annotations

from dataclasses import dataclass

from .nodes import (
    Const,
    Expr,
    Fraction,
    Neg,
    ParseError,
    ParseErrorKind,
    Power,
    Product,
    Radical,
    Sum,
    Var,
)

_ADD_BP = 10
_NEG_BP = 15
_MUL_BP = 20
_JUXT_BP = 25
_POW_BP = 30

_FUNCTIONS = {"sqrt": 2, "cbrt": 3}


@dataclass(frozen=True)
class _Token:
    kind: str  # int, var, func, op, lparen, rparen, eof
    text: str
    pos: int


def _tokenize(text: str) -> list[_Token]:
    tokens: list[_Token] = []
    i = 0
    n = len(text)
    while i < n:
        ch = text[i]
        if ch.isspace():
            i += 1
            continue
        if ch.isdigit():
            j = i
            while j < n and text[j].isdigit():
                j += 1
            tokens.append(_Token("int", text[i:j], i))
            i = j
            continue
        if ch.isalpha():
            matched = None
            for name in _FUNCTIONS:
                if text.startswith(name, i):
                    matched = name
                    break
            if matched:
                tokens.append(_Token("func", matched, i))
                i += len(matched)
            else:
                if not ("a" <= ch <= "z" or "A" <= ch <= "Z"):
                    raise ParseError(ParseErrorKind.UNKNOWN_SYMBOL, i, f"unknown symbol {ch!r}")
                tokens.append(_Token("var", ch, i))
                i += 1
            continue
        if ch in "+-*/^":
            tokens.append(_Token("op", ch, i))
            i += 1
            continue
        if ch == "(":
            tokens.append(_Token("lparen", ch, i))
            i += 1
            continue
        if ch == ")":
            tokens.append(_Token("rparen", ch, i))
            i += 1
            continue
        raise ParseError(ParseErrorKind.UNKNOWN_SYMBOL, i, f"unknown symbol {ch!r}")
    tokens.append(_Token("eof", "", n))
    return tokens


class _Parser:
    def __init__(self, text: str):
        self.text = text
        self.tokens = _tokenize(text)
        self.i = 0
        self.open_parens = 0

    def peek(self) -> _Token:
        return self.tokens[self.i]

    def advance(self) -> _Token:
        tok = self.tokens[self.i]
        self.i += 1
        return tok

    def fail_unexpected(self, tok: _Token) -> ParseError:
        if tok.kind == "eof":
            if self.open_parens > 0:
                return ParseError(
                    ParseErrorKind.UNBALANCED_DELIMITER, tok.pos, "unclosed parenthesis"
                )
            return ParseError(ParseErrorKind.UNEXPECTED_TOKEN, tok.pos, "unexpected end of input")
        if tok.kind == "rparen" and self.open_parens == 0:
            return ParseError(
                ParseErrorKind.UNBALANCED_DELIMITER, tok.pos, "unmatched closing parenthesis"
            )
        return ParseError(
            ParseErrorKind.UNEXPECTED_TOKEN, tok.pos, f"unexpected token {tok.text!r}"
        )

    def parse_expr(self, min_bp: int) -> Expr:
        left = self.parse_operand()
        while True:
            tok = self.peek()
            if tok.kind == "op" and tok.text in "+-":
                if _ADD_BP <= min_bp:
                    break
                self.advance()
                right = self.parse_expr(_ADD_BP)
                if tok.text == "-":
                    right = Neg(right)
                terms = (left.terms if isinstance(left, Sum) else (left,)) + (right,)
                left = Sum(terms)
                continue
            if tok.kind == "op" and tok.text in "*/":
                if _MUL_BP <= min_bp:
                    break
                self.advance()
                denom_pos = self.peek().pos
                right = self.parse_expr(_MUL_BP)
                if tok.text == "/":
                    if right == Const(0):
                        raise ParseError(
                            ParseErrorKind.UNEXPECTED_TOKEN,
                            denom_pos,
                            "division by the literal constant 0",
                        )
                    left = Fraction(left, right)
                else:
                    factors = (left.factors if isinstance(left, Product) else (left,)) + (right,)
                    left = Product(factors)
                continue
            if tok.kind == "op" and tok.text == "^":
                if _POW_BP <= min_bp:
                    break
                self.advance()
                right = self.parse_expr(_POW_BP - 1)  # right-associative
                left = Power(left, right)
                continue
            if tok.kind in ("int", "var", "func", "lparen"):
                # implicit multiplication by juxtaposition
                if _JUXT_BP <= min_bp:
                    break
                right = self.parse_expr(_JUXT_BP)
                factors = (left.factors if isinstance(left, Product) else (left,)) + (right,)
                left = Product(factors)
                continue
            break
        return left

    def parse_operand(self) -> Expr:
        tok = self.advance()
        if tok.kind == "int":
            return Const(int(tok.text))
        if tok.kind == "var":
            return Var(tok.text)
        if tok.kind == "op" and tok.text == "-":
            return Neg(self.parse_expr(_NEG_BP))
        if tok.kind == "lparen":
            self.open_parens += 1
            inner = self.parse_expr(0)
            closing = self.advance()
            if closing.kind != "rparen":
                raise self.fail_unexpected(closing)
            self.open_parens -= 1
            return inner
        if tok.kind == "func":
            opening = self.advance()
            if opening.kind != "lparen":
                raise self.fail_unexpected(opening)
            self.open_parens += 1
            inner = self.parse_expr(0)
            closing = self.advance()
            if closing.kind != "rparen":
                raise self.fail_unexpected(closing)
            self.open_parens -= 1
            return Radical(inner, _FUNCTIONS[tok.text])
        raise self.fail_unexpected(tok)


def parse(text: str) -> Expr:
    """Parse plain-text input into an expression tree.

    Raises ParseError (never crashes) on any malformed input.
    """
    if not text or text.isspace():
        raise ParseError(ParseErrorKind.EMPTY_INPUT, 0, "empty input")
    parser = _Parser(text)
    result = parser.parse_expr(0)
    trailing = parser.peek()
    if trailing.kind != "eof":
        raise parser.fail_unexpected(trailing)
    return result
