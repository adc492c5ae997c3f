"""Date-expression extraction and event-list page parsing.

Patterns are ordered by specificity (interval > single date > month > year);
the first match of the most specific matching pattern wins, and the page's
temporal scope (from its title) fills whatever components the expression
itself leaves out.
"""

from __future__ import annotations

from dataclasses import dataclass
from datetime import date

from ..errors import OrderViolation, ScopeError
from ..interval import Precision, TimeInterval, period_interval, point
from ..vocab import Iri
from .config import LanguageConfig
from .records import EventListPage, SourceDescriptor, TextEvent, page_iri, parse_links


@dataclass(frozen=True)
class DateScope:
    """Temporal context of a page (or a section within it)."""

    year: int | None = None
    month: int | None = None
    day: int | None = None

    @property
    def is_complete(self) -> bool:
        return None not in (self.year, self.month, self.day)


def scope_from_title(title: str, config: LanguageConfig) -> DateScope | None:
    """Temporal scope captured from an event-list page title, if any."""
    for pattern in config.title_patterns:
        m = pattern.match(title)
        if not m:
            continue
        groups = m.groupdict()
        month_name = groups.get("month")
        return DateScope(
            year=int(groups["year"]) if groups.get("year") else None,
            month=config.months.get(month_name) if month_name else None,
            day=int(groups["day"]) if groups.get("day") else None,
        )
    return None


def _component(groups: dict, key: str, lookup: dict[str, int] | None = None) -> int | None:
    value = groups.get(key)
    if value is None:
        return None
    if lookup is not None:
        return lookup.get(value)
    return int(value)


def _require(year: int | None, month: int | None, day: int | None, text: str) -> date:
    if year is None or month is None or day is None:
        raise ScopeError(f"cannot complete date expression {text!r} from scope")
    try:
        return date(year, month, day)
    except ValueError:
        raise ScopeError(f"invalid completed date for {text!r}") from None


def _match_to_interval(
    cls: str, groups: dict, matched: str, config: LanguageConfig, scope: DateScope
) -> TimeInterval:
    months = config.months
    if cls == "interval":
        year1 = _component(groups, "year") or scope.year
        year2 = _component(groups, "year2") or year1
        month1 = _component(groups, "month", months)
        month2 = _component(groups, "month2", months) or month1
        day1 = _component(groups, "day")
        day2 = _component(groups, "day2")
        start = _require(year1, month1, day1, matched)
        end = _require(year2, month2, day2, matched)
        if start > end:
            raise OrderViolation(f"interval expression {matched!r} runs backwards")
        return TimeInterval(start, end)
    if cls == "date":
        year = _component(groups, "year") or scope.year
        month = _component(groups, "month", months) or scope.month
        day = _component(groups, "day")
        return point(_require(year, month, day, matched))
    if cls == "month":
        year = _component(groups, "year") or scope.year
        month = _component(groups, "month", months)
        if year is None or month is None:
            raise ScopeError(f"cannot complete month expression {matched!r}")
        return period_interval(date(year, month, 1), Precision.MONTH)
    year = _component(groups, "year")
    if year is None:
        raise ScopeError(f"cannot complete year expression {matched!r}")
    return period_interval(date(year, 1, 1), Precision.YEAR)


def extract_date(
    text: str,
    config: LanguageConfig,
    scope: DateScope | None = None,
) -> TimeInterval | None:
    """Most specific date expression in ``text``, as an interval.

    Returns None when no pattern matches at all; raises ScopeError when an
    expression matched but the scope cannot complete it.
    """
    interval, _ = extract_date_span(text, config, scope)
    return interval


def extract_date_span(
    text: str,
    config: LanguageConfig,
    scope: DateScope | None = None,
) -> tuple[TimeInterval | None, tuple[int, int] | None]:
    """Like :func:`extract_date` but also reports the matched span."""
    scope = scope or DateScope()
    for pattern in config.date_patterns:
        m = pattern.regex.search(text)
        if not m:
            continue
        interval = _match_to_interval(
            pattern.cls, m.groupdict(), m.group(0), config, scope
        )
        return interval, m.span()
    return None, None


_SEPARATORS = " –—-–—:,;."


def parse_event_list_page(
    page: EventListPage,
    config: LanguageConfig,
    descriptor: SourceDescriptor,
) -> list[TextEvent]:
    """Dated lines of an event-list page as text events.

    Lines without a resolvable date are skipped; on pages whose title already
    pins a full date (current-events day pages) undated lines inherit it.
    """
    if any(page.title.startswith(p) for p in config.blacklist_title_prefixes):
        return []
    scope = scope_from_title(page.title, config)
    if scope is None:
        raise ScopeError(f"event-list title matches no scope pattern: {page.title}")
    source = page_iri(descriptor, page.title)
    events: list[TextEvent] = []
    for number, raw in page.lines:
        plain, links = parse_links(raw, number)
        try:
            interval, span = extract_date_span(plain, config, scope)
        except (ScopeError, OrderViolation):
            interval, span = None, None
        if interval is None:
            if scope.is_complete:
                interval = point(date(scope.year, scope.month, scope.day))
                span = None
            else:
                continue
        description = plain
        if span is not None and span[0] == 0:
            description = plain[span[1] :].lstrip(_SEPARATORS)
        if not description:
            description = plain
        events.append(
            TextEvent(
                description=description,
                time=interval,
                links=links,
                source_page=source,
                graph=descriptor.graph,
            )
        )
    return events
