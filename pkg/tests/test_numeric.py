import math
from fractions import Fraction as F

import pytest
from hypothesis import given, strategies as st

from qequiv.numeric import (
    EQUAL,
    GREATER,
    LESS,
    NEG_INF,
    POS_INF,
    ParseError,
    compare,
    format_decimal,
    format_rational,
    parse_decimal,
    parse_rational,
    to_rational,
)

TABLE_ML = ["4.21094", "4.69852", "4.92185", "5.12098", "5.21478",
            "5.28943", "5.32558", "5.47828", "5.59103", "5.72736"]
TABLE_A = ["16253.2", "49948.2", "83531.4", "132123.5", "163975.9",
           "194728.7", "211631.3", "300801.5", "389968.9", "533777.2"]


@pytest.mark.parametrize("text, expected", [
    ("0.5", F(1, 2)),
    ("5.21478", F(260739, 50000)),
    ("-3", F(-3)),
    ("+2.50", F(5, 2)),
    ("1.62532e4", F(162532, 10)),
    ("13.21235E4", F(1321235, 10)),
    ("25e-2", F(1, 4)),
    ("007", F(7)),
])
def test_parse_decimal(text, expected):
    assert parse_decimal(text) == expected


@pytest.mark.parametrize("text, position", [
    ("4.21o94", 4),
    ("", 0),
    ("1.", 2),
    (".5", 0),
    ("1e", 2),
    ("--1", 1),
    ("1 2", 1),
])
def test_parse_decimal_errors_name_position(text, position):
    with pytest.raises(ParseError) as info:
        parse_decimal(text)
    assert info.value.position == position


def test_parse_rational_accepts_both_syntaxes():
    assert parse_rational("1/2") == parse_rational("0.5") == F(1, 2)
    assert parse_rational("-6/4") == F(-3, 2)
    with pytest.raises(ParseError):
        parse_rational("1/0")
    with pytest.raises(ParseError):
        parse_rational("1.5/2")


def test_compare_examples():
    assert compare(NEG_INF, F(0)) == LESS
    assert compare(F(1, 2), F(2, 4)) == EQUAL
    assert compare(POS_INF, POS_INF) == EQUAL
    assert compare(POS_INF, F(10**30)) == GREATER


def test_canonical_form():
    q = F(-6, -4)
    assert (q.numerator, q.denominator) == (3, 2)
    assert F(6, -4).denominator > 0


@pytest.mark.parametrize("column", [TABLE_ML, TABLE_A])
def test_table_values_round_trip(column):
    for text in column:
        assert format_decimal(parse_decimal(text)) == text


def test_format_rational():
    assert format_rational(F(11, 2)) == "11/2"
    assert format_rational(F(-3)) == "-3"
    assert format_rational(NEG_INF) == "-inf"
    assert format_rational(POS_INF) == "+inf"


def test_format_decimal_rounds_non_terminating():
    assert format_decimal(F(1, 3), 4) == "0.3333"
    assert format_decimal(F(-2, 3), 2) == "-0.67"
    with pytest.raises(ValueError):
        format_decimal(F(1, 3))


def test_to_rational_is_exact_for_floats():
    assert to_rational(0.1) == F(3602879701896397, 36028797018963968)
    with pytest.raises(ValueError):
        to_rational(math.nan)


rationals = st.fractions(max_denominator=10**6)


@given(rationals, rationals, rationals)
def test_field_axioms_hold_exactly(a, b, c):
    assert (a + b) + c == a + (b + c)
    assert (a * b) * c == a * (b * c)
    assert a * (b + c) == a * b + a * c
    if b != 0:
        assert (a / b) * b == a


@given(st.integers(-10**12, 10**12), st.integers(0, 8))
def test_decimal_text_round_trip(mantissa, places):
    q = F(mantissa, 10**places)
    assert parse_decimal(format_decimal(q)) == q
