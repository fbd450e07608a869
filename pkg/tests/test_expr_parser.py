import pytest

from algetutor.expr import (
    Const,
    Fraction,
    Neg,
    ParseError,
    ParseErrorKind,
    Power,
    Product,
    Radical,
    Sum,
    Var,
    parse,
)


def test_single_variable():
    assert parse("x") == Var("x")


def test_integer():
    assert parse("42") == Const(42)


def test_product_of_powers_tree():
    expected = Product((Power(Var("x"), Const(3)), Power(Var("x"), Const(4))))
    assert parse("x^3*x^4") == expected


def test_precedence_addition_vs_multiplication():
    assert parse("1+2*3") == Sum((Const(1), Product((Const(2), Const(3)))))


def test_power_right_associative():
    assert parse("x^2^3") == Power(Var("x"), Power(Const(2), Const(3)))


def test_power_binds_tighter_than_unary_minus():
    assert parse("-x^2") == Neg(Power(Var("x"), Const(2)))


def test_negative_exponent():
    assert parse("x^-2") == Power(Var("x"), Neg(Const(2)))


def test_implicit_multiplication_forms():
    assert parse("2x") == Product((Const(2), Var("x")))
    assert parse("3(x+1)") == Product((Const(3), Sum((Var("x"), Const(1)))))
    assert parse("x(x+2)") == Product((Var("x"), Sum((Var("x"), Const(2)))))
    assert parse("5sqrt(2)") == Product((Const(5), Radical(Const(2), 2)))


def test_juxtaposition_tighter_than_explicit_star():
    # a*bc groups as a*(b*c)
    assert parse("a*bc") == Product((Var("a"), Product((Var("b"), Var("c")))))


def test_juxtaposition_looser_than_power():
    assert parse("2x^3") == Product((Const(2), Power(Var("x"), Const(3))))


def test_division_builds_fraction():
    assert parse("a/b") == Fraction(Var("a"), Var("b"))
    assert parse("a/b/c") == Fraction(Fraction(Var("a"), Var("b")), Var("c"))


def test_subtraction_is_sum_of_negation():
    assert parse("x-y") == Sum((Var("x"), Neg(Var("y"))))


def test_whitespace_insignificant():
    assert parse(" 2 *  x ") == parse("2*x")


def test_cbrt():
    assert parse("cbrt(x+1)") == Radical(Sum((Var("x"), Const(1))), 3)


def test_unbalanced_open_paren():
    with pytest.raises(ParseError) as exc:
        parse("2(")
    assert exc.value.kind == ParseErrorKind.UNBALANCED_DELIMITER
    assert exc.value.position == 2


def test_unbalanced_close_paren():
    with pytest.raises(ParseError) as exc:
        parse("x)")
    assert exc.value.kind == ParseErrorKind.UNBALANCED_DELIMITER
    assert exc.value.position == 1


def test_empty_input():
    with pytest.raises(ParseError) as exc:
        parse("   ")
    assert exc.value.kind == ParseErrorKind.EMPTY_INPUT
    assert exc.value.position == 0


def test_unknown_symbol():
    with pytest.raises(ParseError) as exc:
        parse("1.5")
    assert exc.value.kind == ParseErrorKind.UNKNOWN_SYMBOL
    assert exc.value.position == 1


def test_dangling_operator():
    with pytest.raises(ParseError) as exc:
        parse("2+")
    assert exc.value.kind == ParseErrorKind.UNEXPECTED_TOKEN
    assert exc.value.position == 2


def test_literal_zero_denominator_rejected():
    with pytest.raises(ParseError):
        parse("1/0")


def test_position_always_within_input():
    bad = ["", "((", "))", "2+", "@", "sqrt", "sqrt(", "x^", "1.5", "2**3", "()"]
    for text in bad:
        with pytest.raises(ParseError) as exc:
            parse(text)
        assert 0 <= exc.value.position <= len(text), text


def test_never_crashes_on_junk(seeded_rng):
    import string

    alphabet = string.ascii_lowercase + string.digits + "+-*/^() .@"
    for _ in range(2000):
        text = "".join(
            seeded_rng.choice(alphabet) for _ in range(seeded_rng.randint(0, 12))
        )
        try:
            parse(text)
        except ParseError:
            pass
