"""Interval parsing, formatting and overlap semantics."""

from __future__ import annotations

from datetime import date, timedelta

import pytest
from hypothesis import given
from hypothesis import strategies as st

from chronokg.errors import OrderViolation, ParseError
from chronokg.interval import (
    Precision,
    TimeInterval,
    format_date,
    last_day_of_month,
    make_interval,
    parse_date_literal,
    parse_interval_literal,
    period_interval,
    point,
)
from oracles import interval_overlap_oracle

DATES = st.dates(min_value=date(1, 1, 1), max_value=date(2200, 12, 31))
OPT_DATES = st.none() | DATES


def interval_strategy():
    def build(a, b):
        if a is not None and b is not None and a > b:
            a, b = b, a
        return TimeInterval(a, b)

    return st.builds(build, OPT_DATES, OPT_DATES)


def test_precision_orders_year_month_day():
    assert Precision.YEAR < Precision.MONTH < Precision.DAY
    assert [p.value for p in (Precision.YEAR, Precision.MONTH, Precision.DAY)] == [1, 2, 3]


@pytest.mark.parametrize(
    "text,expected,precision",
    [
        ("2009-01-20", date(2009, 1, 20), Precision.DAY),
        ("2009-01", date(2009, 1, 1), Precision.MONTH),
        ("2009", date(2009, 1, 1), Precision.YEAR),
        ("979", date(979, 1, 1), Precision.YEAR),
        ("0979-06", date(979, 6, 1), Precision.MONTH),
    ],
)
def test_parse_date_literal(text, expected, precision):
    assert parse_date_literal(text) == (expected, precision)


@pytest.mark.parametrize(
    "text", ["", "09-01-20x", "2009-1-2", "2009-1", "2009-13", "2009-02-30", "20090120"]
)
def test_parse_date_literal_rejects_malformed(text):
    with pytest.raises(ParseError):
        parse_date_literal(text)


@given(DATES, st.sampled_from(list(Precision)))
def test_format_parse_round_trip_normalizes(value, precision):
    text = format_date(value, precision)
    parsed, parsed_precision = parse_date_literal(text)
    assert parsed_precision == precision
    assert parsed.year == value.year
    if precision >= Precision.MONTH:
        assert parsed.month == value.month
    if precision is Precision.DAY:
        assert parsed == value


def test_last_day_of_month_handles_leap_years():
    assert last_day_of_month(2008, 2) == 29
    assert last_day_of_month(2009, 2) == 28
    assert last_day_of_month(2009, 12) == 31
    assert last_day_of_month(2009, 4) == 30


def test_interval_rejects_backwards_bounds():
    with pytest.raises(OrderViolation):
        TimeInterval(date(2009, 1, 20), date(2009, 1, 19))


def test_interval_accepts_open_bounds():
    assert TimeInterval(None, None).start is None
    assert TimeInterval(date(2009, 1, 20), None).end is None
    assert TimeInterval(None, date(2009, 1, 20)).start is None


def test_is_point():
    assert point(date(2009, 1, 20)).is_point
    assert not TimeInterval(date(2009, 1, 20), date(2009, 1, 21)).is_point
    assert not TimeInterval(None, date(2009, 1, 20)).is_point
    assert not TimeInterval(None, None).is_point


def test_overlap_examples():
    a = TimeInterval(date(2001, 10, 7), date(2021, 8, 30))
    b = TimeInterval(date(2010, 8, 1), date(2010, 8, 31))
    assert a.overlaps(b)
    assert b.overlaps(a)
    # Touching endpoints count: closed intervals.
    assert TimeInterval(date(2009, 1, 1), date(2009, 1, 20)).overlaps(
        TimeInterval(date(2009, 1, 20), date(2009, 2, 1))
    )
    assert not TimeInterval(date(2009, 1, 1), date(2009, 1, 19)).overlaps(
        TimeInterval(date(2009, 1, 20), date(2009, 2, 1))
    )


def test_fully_unknown_interval_never_overlaps():
    unknown = TimeInterval(None, None)
    assert not unknown.overlaps(unknown)
    assert not unknown.overlaps(point(date(2009, 1, 20)))
    assert not point(date(2009, 1, 20)).overlaps(unknown)


@given(interval_strategy(), interval_strategy())
def test_overlap_matches_oracle_and_is_symmetric(a, b):
    assert a.overlaps(b) == interval_overlap_oracle(a, b)
    assert a.overlaps(b) == b.overlaps(a)


def test_sort_key_puts_undated_material_last():
    dated = point(date(2009, 1, 20))
    undated = TimeInterval(None, None)
    assert sorted([undated, dated], key=TimeInterval.sort_key) == [dated, undated]


def test_str_uses_question_marks_for_open_bounds():
    assert str(TimeInterval(date(2009, 1, 20), None)) == "[2009-01-20, ?]"
    assert str(TimeInterval(None, None)) == "[?, ?]"
    assert (
        str(TimeInterval(date(2009, 1, 1), date(2009, 1, 1), Precision.MONTH, Precision.MONTH))
        == "[2009-01, 2009-01]"
    )


def test_make_interval_and_point_agree_on_points():
    day = date(2009, 1, 20)
    assert make_interval(day, day) == point(day)


def test_parse_interval_literal_single_year_covers_the_period():
    parsed = parse_interval_literal("1979")
    assert parsed == TimeInterval(
        date(1979, 1, 1), date(1979, 12, 31), Precision.YEAR, Precision.YEAR
    )


def test_parse_interval_literal_single_month_covers_the_period():
    parsed = parse_interval_literal("2010-08")
    assert parsed == TimeInterval(
        date(2010, 8, 1), date(2010, 8, 31), Precision.MONTH, Precision.MONTH
    )


def test_parse_interval_literal_single_day_is_a_point():
    assert parse_interval_literal("2009-01-20") == point(date(2009, 1, 20))


def test_parse_interval_literal_pair_expands_right_period_end():
    parsed = parse_interval_literal("2001-10-07/2021")
    assert parsed.start == date(2001, 10, 7)
    assert parsed.end == date(2021, 12, 31)
    assert parsed.start_precision is Precision.DAY
    assert parsed.end_precision is Precision.YEAR


def test_parse_interval_literal_rejects_backwards_pairs():
    with pytest.raises(OrderViolation):
        parse_interval_literal("2021-01-01/2001")


@given(DATES, st.sampled_from(list(Precision)))
def test_period_interval_covers_exactly_the_period(value, precision):
    span = period_interval(value, precision)
    assert span.start == value
    assert span.end >= value
    # The day after the period must fall outside it.
    following = span.end + timedelta(days=1)
    if precision is Precision.DAY:
        assert span.end == value
    elif precision is Precision.MONTH:
        assert (following.year, following.month) != (value.year, value.month)
        assert span.end.month == value.month
    else:
        assert following.year == value.year + 1
