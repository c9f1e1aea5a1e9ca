import pytest
from hypothesis import given

from downup import Params, ParseError, QuadScalar, format_element, parse_element, reduce
from strategies import elements

SL2 = Params.of(2, -1, -2)


def test_juxtaposition_and_powers():
    assert parse_element("d^2*u") == parse_element("ddu") == parse_element("d d u") == {"ddu": QuadScalar(1)}


def test_coefficients_and_signs():
    assert parse_element("-3/2*u*d + 2(du)") == {"ud": QuadScalar(-3, 0) / 2, "du": QuadScalar(2)}


def test_powers_of_sums_expand():
    assert parse_element("(d+u)^2") == {w: QuadScalar(1) for w in ("dd", "du", "ud", "uu")}


def test_cancellation_prunes():
    assert parse_element("du - du") == {}


def test_irrational_coefficient():
    assert parse_element("sqrt(-1)*d") == {"d": QuadScalar(0, 1, -1)}


@pytest.mark.parametrize("text,pos", [("d^", 2), ("d + x", 4), ("(d", 2), ("", 0), ("d*", 2), ("1/0", 2)])
def test_parse_error_positions(text, pos):
    with pytest.raises(ParseError) as info:
        parse_element(text)
    assert info.value.pos == pos


def test_canonical_output():
    x = reduce(SL2, "d^2*u")
    assert format_element(x) == "2*(du)*d - 1*u*d^2 - 2*d"


def test_zero_prints_as_zero():
    assert format_element(reduce(SL2, "d - d")) == "0"


@given(elements())
def test_round_trip(x):
    assert reduce(SL2, parse_element(format_element(x))) == x


def test_round_trip_irrational():
    P = Params.of(1, 1, 0)
    x = reduce(P, {"ud": QuadScalar(1, 1, 5), "": QuadScalar(0, -1, 5)})
    assert reduce(P, parse_element(format_element(x))) == x


def test_parse_examples():
    assert parse_element("2*d*u - u*d") == {"du": QuadScalar(2), "ud": QuadScalar(-1)}
    assert parse_element("(d*u)^2") == {"dudu": QuadScalar(1)}
