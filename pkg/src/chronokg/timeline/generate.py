"""Timeline assembly: model-driven selection plus a greedy baseline."""

from __future__ import annotations

import html
from dataclasses import dataclass
from datetime import date, timedelta
from pathlib import Path

from ..interlink import CorpusStats, count_mentions
from ..interval import format_date
from ..tkg import TKG
from ..vocab import Iri, compact
from .candidates import CandidateEntry, collect_candidates
from .classifier import RelevanceModel
from .features import FeatureSpace, extract_features


@dataclass
class Timeline:
    """Chronologically ordered timeline entries of one entity."""

    entity: Iri
    entries: list[CandidateEntry]


def _chrono_key(entry: CandidateEntry):
    time = entry.relation.time
    return (time.start or date.max, time.end or date.max, entry.relation.uri)


def generate_timeline(
    entity: Iri,
    model: RelevanceModel,
    tkg: TKG,
    stats: CorpusStats,
    space: FeatureSpace | None = None,
) -> Timeline:
    """Keep exactly the candidates the model classifies as relevant,
    ordered by start date (ties by end date, then relation id)."""
    layout = space or model.space
    entries = [
        candidate
        for candidate in collect_candidates(tkg, entity)
        if model.predict(extract_features(candidate, layout, tkg, stats)) == 1
    ]
    entries.sort(key=_chrono_key)
    return Timeline(entity=entity, entries=entries)


def tm_baseline(
    entity: Iri,
    tkg: TKG,
    stats: CorpusStats,
    k: int,
    frequency_threshold: int = 0,
) -> Timeline:
    """Greedy popularity baseline.

    Candidates starting before the entity's existence start are discarded,
    as are connected entities linked fewer than ``frequency_threshold``
    times overall. The rest score as global link count times (1 + total
    co-mentions with the entity); the top ``k`` come back in
    chronological order.
    """
    if k < 0:
        raise ValueError("k must be >= 0")
    candidates = collect_candidates(tkg, entity)
    existence = tkg.entities[entity].time
    birth = existence.start if existence else None

    scored = []
    for candidate in candidates:
        start = candidate.relation.time.start
        if birth is not None and start is not None and start < birth:
            continue
        links = stats.global_mentions(candidate.connected_entity)
        if links < frequency_threshold:
            continue
        co = sum(
            count_mentions(stats, lang, entity, candidate.connected_entity)
            for lang in stats.languages
        )
        scored.append((-(links * (1 + co)), _chrono_key(candidate), candidate))
    scored.sort(key=lambda item: (item[0], item[1]))
    top = [candidate for _, _, candidate in scored[:k]]
    top.sort(key=_chrono_key)
    return Timeline(entity=entity, entries=top)


# -- output formats ------------------------------------------------------------


def format_timeline(timeline: Timeline) -> str:
    """Tab-separated rows: start, end, role, connected entity, provenance.

    Open bounds render as ``?`` matching the interval display form.
    """
    lines = []
    for entry in timeline.entries:
        time = entry.relation.time
        start = format_date(time.start, time.start_precision) if time.start else "?"
        end = format_date(time.end, time.end_precision) if time.end else "?"
        lines.append(
            "\t".join(
                [
                    start,
                    end,
                    entry.relation.role,
                    entry.connected_entity,
                    entry.relation.provenance,
                ]
            )
        )
    return "".join(line + "\n" for line in lines)


def save_timeline(timeline: Timeline, path: str | Path) -> None:
    Path(path).write_text(format_timeline(timeline), encoding="utf-8", newline="\n")


_SVG_WIDTH = 960
_LEFT_GUTTER = 340
_ROW_HEIGHT = 22
_TOP_MARGIN = 30


def _scale(day: date, lo: date, hi: date) -> float:
    span = max((hi - lo).days, 1)
    x = _LEFT_GUTTER + ((day - lo).days / span) * (_SVG_WIDTH - _LEFT_GUTTER - 20)
    return round(x, 2)


def render_timeline_html(timeline: Timeline, title: str | None = None) -> str:
    """Self-contained HTML page with one SVG row per entry.

    Orange lines span each entry's validity time; output is a pure function
    of the timeline, so repeated renders are byte-identical.
    """
    heading = title or f"Timeline of {compact(timeline.entity)}"
    dates = [
        bound
        for entry in timeline.entries
        for bound in (entry.relation.time.start, entry.relation.time.end)
        if bound is not None
    ]
    lo = min(dates) if dates else date(2000, 1, 1)
    hi = max(dates) if dates else date(2000, 12, 31)
    if lo == hi:
        hi = hi + timedelta(days=365)

    height = _TOP_MARGIN + _ROW_HEIGHT * max(len(timeline.entries), 1) + 20
    parts = [
        "<!DOCTYPE html>",
        "<html><head><meta charset='utf-8'>",
        f"<title>{html.escape(heading)}</title>",
        "<style>body{font-family:sans-serif}text{font-size:11px}</style>",
        "</head><body>",
        f"<h1>{html.escape(heading)}</h1>",
        f"<svg width='{_SVG_WIDTH}' height='{height}' "
        "xmlns='http://www.w3.org/2000/svg'>",
    ]
    for tick_year in range(lo.year, hi.year + 1, max(1, (hi.year - lo.year) // 10)):
        tick = date(tick_year, 1, 1)
        if tick < lo or tick > hi:
            continue
        x = _scale(tick, lo, hi)
        parts.append(
            f"<line x1='{x}' y1='{_TOP_MARGIN - 10}' x2='{x}' y2='{height - 10}' "
            "stroke='#ddd'/>"
        )
        parts.append(f"<text x='{x}' y='{_TOP_MARGIN - 14}'>{tick_year}</text>")
    for row, entry in enumerate(timeline.entries):
        y = _TOP_MARGIN + row * _ROW_HEIGHT
        time = entry.relation.time
        label = (
            f"{compact(entry.connected_entity)} ({compact(entry.relation.role)}) "
            f"{time}"
        )
        parts.append(f"<text x='4' y='{y + 4}'>{html.escape(label)}</text>")
        start = time.start or time.end
        end = time.end or time.start
        x1, x2 = _scale(start, lo, hi), _scale(end, lo, hi)
        if x2 - x1 < 3:  # keep point validities visible
            x2 = x1 + 3
        parts.append(
            f"<line x1='{x1}' y1='{y}' x2='{x2}' y2='{y}' "
            "stroke='orange' stroke-width='4'/>"
        )
    parts.append("</svg></body></html>")
    return "\n".join(parts) + "\n"
