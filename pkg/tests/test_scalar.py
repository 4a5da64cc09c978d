from fractions import Fraction

import pytest
from hypothesis import given
from hypothesis import strategies as st

from logderiv.scalar import ContextError, FieldContext, Scalar, parse_scalar

Q5 = FieldContext(5)
QQ = FieldContext()


def s5(a, b=0):
    return Scalar(Fraction(a), Fraction(b), 5)


def test_context_labels_round_trip():
    assert QQ.label == "Q"
    assert Q5.label == "Q(sqrt 5)"
    assert FieldContext.from_label("Q") == QQ
    assert FieldContext.from_label("Q(sqrt 5)") == Q5
    with pytest.raises(ValueError):
        FieldContext.from_label("R")


def test_context_rejects_non_squarefree_d():
    with pytest.raises(ValueError):
        FieldContext(4)
    with pytest.raises(ValueError):
        FieldContext(12)
    with pytest.raises(ValueError):
        FieldContext(1)
    FieldContext(2)
    FieldContext(10)


def test_parse_print_canonical_forms():
    cases = ["0", "3", "-5", "1/2", "-7/3", "1/2+1/3*rt", "2-1*rt", "0+1*rt", "-3/4-2/5*rt"]
    for text in cases:
        x = parse_scalar(text, 5)
        assert str(x) == text
        assert parse_scalar(str(x), 5) == x


def test_parse_rejects_garbage():
    for bad in ["", "x", "1/2+*rt", "1.5", "rt", "1/2 + 1*rt", "1//2"]:
        with pytest.raises(ValueError):
            parse_scalar(bad, 5)


def test_sqrt_term_needs_context():
    with pytest.raises(ContextError):
        parse_scalar("1+1*rt", None)
    with pytest.raises(ContextError):
        QQ.sqrt_term()


def test_arithmetic_q5():
    rt = Q5.sqrt_term()
    assert rt * rt == 5
    x = s5(Fraction(1, 2), Fraction(1, 3))
    y = s5(2, -1)
    assert x + y == s5(Fraction(5, 2), Fraction(-2, 3))
    assert x * y == s5(1 - Fraction(5, 3), Fraction(-1, 2) + Fraction(2, 3))
    assert (x / y) * y == x
    assert x - x == Q5.zero()
    assert -(x - y) == y - x


def test_inverse_and_norm():
    x = s5(2, 1)
    assert x.norm() == Fraction(-1)
    assert x * x.inverse() == Q5.one()
    assert x * x.conjugate() == Scalar(x.norm(), Fraction(0), 5)
    with pytest.raises(ZeroDivisionError):
        Q5.zero().inverse()


def test_mixed_context_rules():
    x = s5(1, 1)
    r = Scalar(Fraction(3))
    assert (x + r).d == 5
    assert x + 2 == s5(3, 1)
    assert 2 * x == s5(2, 2)
    y = Scalar(Fraction(1), Fraction(1), 2)
    with pytest.raises(ContextError):
        x + y
    with pytest.raises(ContextError):
        x * y


def test_pow():
    rt = Q5.sqrt_term()
    assert rt**4 == 25
    x = s5(1, 1)
    assert x**3 == x * x * x
    assert x**-2 == (x * x).inverse()


def test_residue_homomorphism_explicit():
    p = 2147483659
    s = 852394662  # square root of 5 mod p
    assert (s * s) % p == 5
    x = s5(Fraction(1, 2), Fraction(2, 3))
    y = s5(Fraction(-3), Fraction(1, 5))
    assert (x + y).residue(p, s) == (x.residue(p, s) + y.residue(p, s)) % p
    assert (x * y).residue(p, s) == (x.residue(p, s) * y.residue(p, s)) % p


def test_residue_unlucky_denominator():
    p = 2147483659
    x = Scalar(Fraction(1, p))
    with pytest.raises(ZeroDivisionError):
        x.residue(p)


rationals = st.fractions(min_value=-1000, max_value=1000, max_denominator=1000)


@given(rationals, rationals, rationals, rationals)
def test_field_axioms_q5(a, b, c, e):
    x = Scalar(a, b, 5)
    y = Scalar(c, e, 5)
    assert x + y == y + x
    assert x * y == y * x
    assert x * (y + 1) == x * y + x
    if y:
        assert (x / y) * y == x


@given(rationals, rationals)
def test_parse_print_round_trip_property(a, b):
    x = Scalar(a, b, 7)
    assert parse_scalar(str(x), 7) == x


@given(rationals, rationals, rationals, rationals)
def test_residue_ring_map_property(a, b, c, e):
    p = 2147483659
    s = 1606336379  # square root of 7 mod p
    assert (s * s) % p == 7
    x = Scalar(a, b, 7)
    y = Scalar(c, e, 7)
    try:
        rx, ry = x.residue(p, s), y.residue(p, s)
    except ZeroDivisionError:
        return
    assert (x + y).residue(p, s) == (rx + ry) % p
    assert (x * y).residue(p, s) == (rx * ry) % p
