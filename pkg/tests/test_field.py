from fractions import Fraction

import pytest
from hypothesis import given
from hypothesis import strategies as st

from downup import (
    FieldError,
    ParseError,
    PreconditionError,
    QuadScalar,
    field_ops,
    root_of_unity_order,
    scalar,
    sqrt_in_field,
)
from downup.field import square_split
from strategies import quad_scalars, small_fractions


def test_rational_arithmetic_is_exact():
    x = QuadScalar(Fraction(1, 3))
    assert x + x + x == 1
    assert str(QuadScalar(Fraction(-3, 2))) == "-3/2"


def test_gaussian_division():
    i = QuadScalar(0, 1, -1)
    assert (3 + 2 * i) / (1 + i) == QuadScalar(Fraction(5, 2), Fraction(-1, 2), -1)


def test_mixing_fields_rejected():
    with pytest.raises(FieldError):
        QuadScalar(0, 1, 2) + QuadScalar(0, 1, 3)


def test_rational_values_mix_with_any_field():
    assert QuadScalar(0, 1, 2) + QuadScalar(1) == QuadScalar(1, 1, 2)


def test_division_by_zero():
    with pytest.raises(ZeroDivisionError):
        QuadScalar(1) / QuadScalar(0)


@given(quad_scalars(), quad_scalars(), quad_scalars())
def test_ring_axioms(x, y, z):
    if x.D != y.D or y.D != z.D:
        return
    assert (x + y) * z == x * z + y * z
    assert (x * y) * z == x * (y * z)
    assert x - x == 0


@given(quad_scalars())
def test_inverse(x):
    if x.is_zero():
        return
    assert x * x.inverse() == 1
    assert x ** -2 * x**2 == 1


@given(quad_scalars())
def test_text_round_trip(x):
    assert QuadScalar.parse(str(x)) == x


@given(quad_scalars(D=5))
def test_real_ordering_agrees_with_floats(x):
    approx = float(x.a) + float(x.b) * 5**0.5
    if abs(approx) > 1e-9:
        assert (x > 0) == (approx > 0)


def test_sign_of_small_difference():
    # 1.41421356... vs 1.41421 / 1.41422
    s = QuadScalar(0, 1, 2)
    assert s > Fraction(141421, 100000)
    assert s < Fraction(141422, 100000)


def test_ordering_non_real_rejected():
    with pytest.raises(FieldError):
        QuadScalar(0, 1, -1) < 1


@pytest.mark.parametrize(
    "text,expected",
    [
        ("3", QuadScalar(3)),
        ("-3/2", QuadScalar(Fraction(-3, 2))),
        ("1/2+1/2*sqrt(5)", QuadScalar(Fraction(1, 2), Fraction(1, 2), 5)),
        ("sqrt(8)", QuadScalar(0, 2, 2)),
        ("-sqrt(-3)", QuadScalar(0, -1, -3)),
    ],
)
def test_parse(text, expected):
    assert QuadScalar.parse(text) == expected


@pytest.mark.parametrize("text", ["1.5", "", "1/0", "sqrt(x)", "2*sqrt(2)+sqrt(3)"])
def test_parse_errors(text):
    with pytest.raises(ParseError):
        QuadScalar.parse(text)


def test_square_split():
    assert square_split(72) == (6, 2)
    assert square_split(-12) == (2, -3)


@given(small_fractions)
def test_sqrt_in_field(x):
    y = sqrt_in_field(x)
    assert y * y == x


@pytest.mark.parametrize(
    "x,order",
    [
        (1, 1),
        (-1, 2),
        (QuadScalar(0, 1, -1), 4),
        (QuadScalar(Fraction(-1, 2), Fraction(1, 2), -3), 3),
        (QuadScalar(Fraction(1, 2), Fraction(1, 2), -3), 6),
        (2, None),
        (QuadScalar(Fraction(1, 2), Fraction(1, 2), 5), None),
    ],
)
def test_root_of_unity_order(x, order):
    assert root_of_unity_order(x) == order


def test_root_of_unity_order_zero():
    with pytest.raises(PreconditionError):
        root_of_unity_order(0)


@given(st.sampled_from(["add", "sub", "mul", "div"]), small_fractions, small_fractions)
def test_field_ops_matches_fraction(op, x, y):
    if op == "div" and not y:
        return
    ref = {"add": x + y, "sub": x - y, "mul": x * y, "div": x / y if y else None}[op]
    assert field_ops(x, y, op) == ref


def test_field_ops_predicates():
    assert field_ops(1, 1, "eq") is True
    assert field_ops(0, 5, "is_zero") is True
    assert scalar("2") == 2


def test_surd_norm():
    assert (1 + QuadScalar(0, 1, 2)) * (1 - QuadScalar(0, 1, 2)) == -1
    x = QuadScalar(3, 4, 7)
    assert QuadScalar(1, 0, 7) * x == x


def test_sqrt_in_field_values():
    assert sqrt_in_field(Fraction(9, 4)) == Fraction(3, 2)
    r2 = sqrt_in_field(2)
    assert (r2.b, r2.D) == (1, 2)
    assert sqrt_in_field(Fraction(5, 4)) == QuadScalar(0, Fraction(1, 2), 5)


def test_cube_root_of_unity_explicit():
    w = QuadScalar(Fraction(-1, 2), Fraction(1, 2), -3)
    assert w**3 == 1 and w != 1
