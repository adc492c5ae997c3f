"""Time intervals with per-bound raw precision.

Source dumps carry dates at day, month or year granularity. Each bound keeps
its raw precision so the fusion rules can tell a genuine January 1st from a
year-precision placeholder, and so serialization can round-trip the original
granularity (xsd:date / xsd:gYearMonth / xsd:gYear).
"""

from __future__ import annotations

import calendar
import enum
import re
from dataclasses import dataclass
from datetime import date

from .errors import OrderViolation, ParseError


class Precision(enum.IntEnum):
    YEAR = 1
    MONTH = 2
    DAY = 3


_DATE_RE = re.compile(r"^(\d{1,4})(?:-(\d{2})(?:-(\d{2}))?)?$")


def parse_date_literal(text: str) -> tuple[date, Precision]:
    """Parse ``YYYY[-MM[-DD]]`` into a normalized date plus its raw precision.

    Year and month values normalize to the first day of the period.
    """
    m = _DATE_RE.match(text)
    if not m:
        raise ParseError(f"not a date literal: {text!r}")
    year = int(m.group(1))
    try:
        if m.group(3) is not None:
            return date(year, int(m.group(2)), int(m.group(3))), Precision.DAY
        if m.group(2) is not None:
            return date(year, int(m.group(2)), 1), Precision.MONTH
        return date(year, 1, 1), Precision.YEAR
    except ValueError as exc:
        raise ParseError(f"invalid date {text!r}: {exc}") from None


def format_date(value: date, precision: Precision) -> str:
    if precision is Precision.DAY:
        return value.isoformat()
    if precision is Precision.MONTH:
        return f"{value.year:04d}-{value.month:02d}"
    return f"{value.year:04d}"


def last_day_of_month(year: int, month: int) -> int:
    return calendar.monthrange(year, month)[1]


@dataclass(frozen=True)
class TimeInterval:
    """Validity span with optional bounds.

    ``start``/``end`` are normalized dates; the two precision fields record
    the raw granularity each bound was stated at. A missing bound leaves the
    side open.
    """

    start: date | None = None
    end: date | None = None
    start_precision: Precision = Precision.DAY
    end_precision: Precision = Precision.DAY

    def __post_init__(self) -> None:
        if self.start is not None and self.end is not None and self.start > self.end:
            raise OrderViolation(f"interval start {self.start} after end {self.end}")

    @property
    def is_point(self) -> bool:
        return self.start is not None and self.start == self.end

    def overlaps(self, other: "TimeInterval") -> bool:
        """Closed-interval intersection; a missing bound is unbounded."""
        if (self.start is None and self.end is None) or (
            other.start is None and other.end is None
        ):
            return False
        left_ok = self.start is None or other.end is None or self.start <= other.end
        right_ok = other.start is None or self.end is None or other.start <= self.end
        return left_ok and right_ok

    def sort_key(self) -> tuple:
        # None starts sort last so undated material trails dated material.
        start = self.start or date.max
        end = self.end or date.max
        return (start, end)

    def __str__(self) -> str:
        left = format_date(self.start, self.start_precision) if self.start else "?"
        right = format_date(self.end, self.end_precision) if self.end else "?"
        return f"[{left}, {right}]"


def make_interval(
    start: date | None,
    end: date | None,
    start_precision: Precision = Precision.DAY,
    end_precision: Precision = Precision.DAY,
) -> TimeInterval:
    """Build an interval, normalizing a single known point to start = end."""
    if start is not None and end is not None and start == end:
        return TimeInterval(start, end, start_precision, end_precision)
    return TimeInterval(start, end, start_precision, end_precision)


def point(value: date, precision: Precision = Precision.DAY) -> TimeInterval:
    return TimeInterval(value, value, precision, precision)


def parse_interval_literal(text: str) -> TimeInterval:
    """Parse ``DATE`` or ``DATE/DATE`` (ISO-style span) fixture fields.

    A single year or month becomes the full period span ("1979" means the
    whole of 1979); a slash-separated pair gives explicit bounds.
    """
    if "/" in text:
        left, right = text.split("/", 1)
        s, sp = parse_date_literal(left)
        e, ep = parse_date_literal(right)
        e = _period_end(e, ep)
        return TimeInterval(s, e, sp, ep)
    value, precision = parse_date_literal(text)
    return TimeInterval(value, _period_end(value, precision), precision, precision)


def _period_end(value: date, precision: Precision) -> date:
    if precision is Precision.DAY:
        return value
    if precision is Precision.MONTH:
        return date(value.year, value.month, last_day_of_month(value.year, value.month))
    return date(value.year, 12, 31)


def period_interval(value: date, precision: Precision) -> TimeInterval:
    """Span covering the whole period the (date, precision) pair denotes."""
    return TimeInterval(value, _period_end(value, precision), precision, precision)
