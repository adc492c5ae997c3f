"""Evaluation utilities: classification metrics, correlation, coverage and
store-level summary statistics."""

from __future__ import annotations

import statistics
import warnings
from dataclasses import dataclass
from pathlib import Path
from typing import Iterable, Sequence

from .errors import LengthMismatch, ZeroVarianceWarning
from .store import QuadStore, quad_match
from .timeline.benchmark import AbstractLinks, BioAnnotation, build_benchmark
from .timeline.candidates import collect_candidates
from .tkg import _entity_time, relation_nodes, to_tkg
from .vocab import FUSED_GRAPH, RDF_TYPE, SEM_EVENT, SEM_HAS_PLACE, Iri

# -- classification metrics ----------------------------------------------------


@dataclass(frozen=True)
class ClassMetrics:
    precision: float
    recall: float
    f1: float
    support: int


@dataclass(frozen=True)
class MetricsReport:
    per_class: dict[int, ClassMetrics]
    weighted_precision: float
    weighted_recall: float
    weighted_f1: float
    zero_division: bool


def _ratio(numerator: float, denominator: float) -> tuple[float, bool]:
    if denominator == 0:
        return 0.0, True
    return numerator / denominator, False


def classification_metrics(
    predictions: Sequence[int], gold: Sequence[int]
) -> MetricsReport:
    """Per-class and support-weighted precision/recall/F1.

    Undefined ratios (empty denominators) report as 0 and set the
    ``zero_division`` flag instead of raising.
    """
    predicted = list(predictions)
    actual = list(gold)
    if not actual or len(predicted) != len(actual):
        raise LengthMismatch(
            f"{len(predicted)} predictions against {len(actual)} gold labels"
        )

    flagged = False
    per_class: dict[int, ClassMetrics] = {}
    for label in sorted(set(actual) | set(predicted)):
        tp = sum(1 for p, g in zip(predicted, actual) if p == label and g == label)
        fp = sum(1 for p, g in zip(predicted, actual) if p == label and g != label)
        fn = sum(1 for p, g in zip(predicted, actual) if p != label and g == label)
        precision, p_flag = _ratio(tp, tp + fp)
        recall, r_flag = _ratio(tp, tp + fn)
        f1, f_flag = _ratio(2 * precision * recall, precision + recall)
        flagged = flagged or p_flag or r_flag or f_flag
        per_class[label] = ClassMetrics(
            precision=precision, recall=recall, f1=f1, support=tp + fn
        )

    total = len(actual)
    weighted = [0.0, 0.0, 0.0]
    for metrics in per_class.values():
        weight = metrics.support / total
        weighted[0] += weight * metrics.precision
        weighted[1] += weight * metrics.recall
        weighted[2] += weight * metrics.f1
    return MetricsReport(
        per_class=per_class,
        weighted_precision=weighted[0],
        weighted_recall=weighted[1],
        weighted_f1=weighted[2],
        zero_division=flagged,
    )


def pearson(xs: Sequence[float], ys: Sequence[float]) -> float:
    """Sample correlation coefficient; zero-variance input warns and gives 0."""
    if len(xs) != len(ys) or len(xs) < 2:
        raise LengthMismatch(f"need two equal-length samples, got {len(xs)}/{len(ys)}")
    try:
        return statistics.correlation(list(map(float, xs)), list(map(float, ys)))
    except statistics.StatisticsError:
        warnings.warn("constant input has no correlation", ZeroVarianceWarning)
        return 0.0


# -- coverage ------------------------------------------------------------------


@dataclass(frozen=True)
class CoverageReport:
    """Mean per-person fraction of benchmark relations found per graph."""

    per_graph: dict[Iri, float]
    per_person: dict[Iri, dict[Iri, float]]


def _signature(candidate) -> tuple[Iri, Iri, Iri]:
    relation = candidate.relation
    return (relation.subject, relation.role, relation.obj)


def coverage(
    annotations: Sequence[BioAnnotation | AbstractLinks],
    store: QuadStore,
    graphs: Sequence[Iri],
    source_kind: str = "biography",
    reference_graph: Iri = FUSED_GRAPH,
    extended: bool = False,
) -> CoverageReport:
    """How much of the benchmark each source graph can reproduce.

    The benchmark is judged on the reference graph; a relation counts as
    found in a source graph when that graph holds a relation with the same
    subject, role and object that the same annotations judge relevant.
    ``extended`` lends the reference graph's entity times to the sources,
    which can only add relations, so extended coverage never drops below
    plain coverage. Persons without relevant benchmark relations are skipped;
    persons unknown to a source graph count as zero there.
    """
    reference = to_tkg(store, reference_graph)
    fallback = None
    if extended:
        fallback = {
            uri: entity.time
            for uri, entity in reference.entities.items()
            if entity.time is not None
        }
    benchmark = build_benchmark(annotations, reference, source_kind)

    relevant: dict[Iri, set[tuple[Iri, Iri, Iri]]] = {}
    for annotation in annotations:
        person = annotation.person
        relevant[person] = {
            _signature(candidate)
            for candidate in collect_candidates(reference, person)
            if benchmark.judgement(person, candidate.relation.uri) == 1
        }

    per_graph: dict[Iri, float] = {}
    per_person: dict[Iri, dict[Iri, float]] = {}
    for graph in graphs:
        view = to_tkg(store, graph, entity_time_fallback=fallback)
        fractions: dict[Iri, float] = {}
        for annotation in annotations:
            person = annotation.person
            wanted = relevant[person]
            if not wanted:
                continue
            if person not in view.entities:
                fractions[person] = 0.0
                continue
            local = build_benchmark([annotation], view, source_kind)
            found = {
                _signature(candidate)
                for candidate in collect_candidates(view, person)
                if local.judgement(person, candidate.relation.uri) == 1
            }
            fractions[person] = len(wanted & found) / len(wanted)
        per_person[graph] = fractions
        per_graph[graph] = (
            sum(fractions.values()) / len(fractions) if fractions else 0.0
        )
    return CoverageReport(per_graph=per_graph, per_person=per_person)


# -- store summary -------------------------------------------------------------


@dataclass(frozen=True)
class GraphStats:
    graph: Iri
    events: int
    timed: int
    located: int
    both: int

    def _pct(self, count: int) -> float:
        return count / self.events if self.events else 0.0

    @property
    def pct_timed(self) -> float:
        return self._pct(self.timed)

    @property
    def pct_located(self) -> float:
        return self._pct(self.located)

    @property
    def pct_both(self) -> float:
        return self._pct(self.both)


@dataclass(frozen=True)
class StoreReport:
    graphs: list[GraphStats]
    agreeing_events: int
    comparable_events: int
    most_linked: dict[str, list[tuple[Iri, int]]]
    top_co_mentioned: dict[Iri, list[tuple[Iri, int]]]

    @property
    def start_agreement(self) -> float:
        if not self.comparable_events:
            return 0.0
        return self.agreeing_events / self.comparable_events


def store_stats(store: QuadStore, top_n: int = 5) -> StoreReport:
    """Aggregate event completeness, start-date agreement and interlink tops.

    Agreement counts events whose start date is stated in at least two
    source graphs and identical in all of them. Link/mention tops come from
    the interlinking counts on relation nodes: links accumulate per object
    event and language, mentions pair each event with the non-event
    endpoints it is most co-mentioned with.
    """
    source_graphs = [g for g in store.graphs() if g != FUSED_GRAPH]

    reports = []
    starts_per_event: dict[Iri, list] = {}
    for graph in store.graphs():
        events = sorted(
            {q.subject for q in quad_match(store, None, RDF_TYPE, SEM_EVENT, graph)}
        )
        timed = located = both = 0
        for event in events:
            time = _entity_time(store, event, graph)
            place = bool(quad_match(store, event, SEM_HAS_PLACE, graph=graph))
            timed += time is not None
            located += place
            both += time is not None and place
            if graph in source_graphs and time is not None and time.start is not None:
                starts_per_event.setdefault(event, []).append(time.start)
        reports.append(
            GraphStats(
                graph=graph, events=len(events), timed=timed, located=located, both=both
            )
        )

    comparable = agreeing = 0
    for starts in starts_per_event.values():
        if len(starts) < 2:
            continue
        comparable += 1
        agreeing += len(set(starts)) == 1

    event_set = {q.subject for q in quad_match(store, None, RDF_TYPE, SEM_EVENT)}
    linked: dict[str, dict[Iri, int]] = {}
    co_mentioned: dict[Iri, dict[Iri, int]] = {}
    for node in relation_nodes(store):
        if not isinstance(node.obj, str):
            continue
        endpoints = [node.subject, node.obj]
        node_events = [e for e in endpoints if e in event_set]
        for lang, count in node.links.items():
            if lang == "all":
                continue
            for event in node_events:
                if event == node.obj:
                    per_lang = linked.setdefault(lang, {})
                    per_lang[event] = per_lang.get(event, 0) + count
        mention_count = node.mentions.get("all", 0)
        if mention_count:
            for event in node_events:
                other = endpoints[0] if event == endpoints[1] else endpoints[1]
                if other in event_set:
                    continue
                per_event = co_mentioned.setdefault(event, {})
                per_event[other] = max(per_event.get(other, 0), mention_count)

    most_linked = {
        lang: sorted(per_lang.items(), key=lambda kv: (-kv[1], kv[0]))[:top_n]
        for lang, per_lang in sorted(linked.items())
    }
    top_pairs = {
        event: sorted(per_event.items(), key=lambda kv: (-kv[1], kv[0]))[:top_n]
        for event, per_event in sorted(co_mentioned.items())
    }
    return StoreReport(
        graphs=reports,
        agreeing_events=agreeing,
        comparable_events=comparable,
        most_linked=most_linked,
        top_co_mentioned=top_pairs,
    )


def format_store_report(report: StoreReport) -> str:
    """Machine-readable tab-separated rendering of a store report."""
    lines = []
    for stats in report.graphs:
        lines.append(
            f"G\t{stats.graph}\t{stats.events}\t{stats.timed}"
            f"\t{stats.located}\t{stats.both}"
        )
    lines.append(
        f"A\t{report.agreeing_events}\t{report.comparable_events}"
        f"\t{report.start_agreement:.4f}"
    )
    for lang, rows in report.most_linked.items():
        for event, count in rows:
            lines.append(f"L\t{lang}\t{event}\t{count}")
    for event, rows in report.top_co_mentioned.items():
        for other, count in rows:
            lines.append(f"C\t{event}\t{other}\t{count}")
    return "".join(line + "\n" for line in lines)


def format_coverage_report(report: CoverageReport) -> str:
    lines = []
    for graph in sorted(report.per_graph):
        lines.append(f"G\t{graph}\t{report.per_graph[graph]:.4f}")
        for person, fraction in sorted(report.per_person.get(graph, {}).items()):
            lines.append(f"P\t{graph}\t{person}\t{fraction:.4f}")
    return "".join(line + "\n" for line in lines)


def rpref(votes: Iterable[int | bool]) -> float:
    """Fraction of positive votes in an externally collected preference poll."""
    ballot = list(votes)
    if not ballot:
        raise LengthMismatch("no votes")
    return sum(1 for vote in ballot if vote) / len(ballot)


def rpref_from_file(path: str | Path) -> float:
    """Read one vote per non-comment line (last tab field, 0 or 1)."""
    votes = []
    for raw in Path(path).read_text(encoding="utf-8").splitlines():
        line = raw.strip()
        if not line or line.startswith("#"):
            continue
        votes.append(int(line.split("\t")[-1]))
    return rpref(votes)
