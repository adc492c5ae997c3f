"""Relation extraction from knowledge-graph records.

Time-stamp predicates become entity existence times. Every remaining triple
lands in exactly one category:

1. qualifier-timed relations (only Wikidata and YAGO dumps carry these),
2. time-less relations touching an event or an entity with known time,
3. structural predicates mapped onto the canonical vocabulary
   (sub-event, previous/next, containment, location).

Anything else carries no temporal evidence and is dropped.
"""

from __future__ import annotations

from dataclasses import dataclass, field

from ..interval import TimeInterval
from ..store import Literal, Term, parse_date_object
from ..vocab import Iri
from .config import PredicateMapping
from .records import KgRecords, SourceDescriptor, SourceKind

QUALIFIER_TIMED = 1
TIME_INVOLVED = 2
STRUCTURAL = 3


@dataclass(frozen=True)
class RawRelation:
    subject: Iri
    predicate: Iri
    obj: Term
    time: TimeInterval | None
    graph: Iri
    category: int
    line: int = 0


@dataclass
class ExtractionResult:
    relations: list[RawRelation] = field(default_factory=list)
    entity_times: dict[Iri, TimeInterval] = field(default_factory=dict)


def map_predicate(
    source_pred: Iri,
    endpoints_are_events: bool,
    mapping: PredicateMapping,
    family: str = "wikidata",
) -> Iri | None:
    """Canonical predicate for a source predicate, honoring event guards."""
    row = mapping.lookup(family, source_pred)
    if row is None:
        return None
    if row.guard_events and not endpoints_are_events:
        return None
    return row.canonical


def _collect_entity_times(
    records: KgRecords, family: str, mapping: PredicateMapping
) -> dict[Iri, TimeInterval]:
    begins: dict[Iri, list] = {}
    ends: dict[Iri, list] = {}
    for triple in records.triples:
        wants_begin, wants_end = mapping.time_bounds(family, triple.predicate)
        if not (wants_begin or wants_end):
            continue
        parsed = parse_date_object(triple.obj)
        if parsed is None:
            continue
        if wants_begin:
            begins.setdefault(triple.subject, []).append(parsed)
        if wants_end:
            ends.setdefault(triple.subject, []).append(parsed)
    times: dict[Iri, TimeInterval] = {}
    for entity in sorted(set(begins) | set(ends)):
        begin = sorted(begins.get(entity, []))[0] if entity in begins else None
        end = sorted(ends.get(entity, []))[-1] if entity in ends else None
        start_val, start_prec = begin if begin else (None, None)
        end_val, end_prec = end if end else (None, None)
        if start_val is not None and end_val is not None and start_val > end_val:
            end_val, end_prec = None, None
        kwargs = {}
        if start_prec is not None:
            kwargs["start_precision"] = start_prec
        if end_prec is not None:
            kwargs["end_precision"] = end_prec
        times[entity] = TimeInterval(start_val, end_val, **kwargs)
    return times


def extract_relations(
    records: KgRecords,
    events: set[Iri],
    entity_times: dict[Iri, TimeInterval],
    descriptor: SourceDescriptor,
    mapping: PredicateMapping,
) -> ExtractionResult:
    """Partition a KG dump's triples into relations and entity times.

    ``events`` and ``entity_times`` are global knowledge (already integrated
    across sources) so that category 2 sees times and eventness contributed
    by other sources; IRIs in ``records`` must be in the same id space.
    """
    family = descriptor.kind.family
    own_times = _collect_entity_times(records, family, mapping)
    known_times = dict(entity_times)
    known_times.update(own_times)

    result = ExtractionResult(entity_times=own_times)
    qualifier_families = {"wikidata", "yago"}

    for triple in records.triples:
        if mapping.is_time_predicate(family, triple.predicate) and (
            parse_date_object(triple.obj) is not None
        ):
            continue  # consumed as an entity time
        qualifier = triple.time if family in qualifier_families else None

        endpoints_are_events = (
            triple.subject in events
            and isinstance(triple.obj, str)
            and triple.obj in events
        )
        row = mapping.lookup(family, triple.predicate)
        mapped = None
        if row is not None and not (row.guard_events and not endpoints_are_events):
            mapped = row

        if qualifier is not None:
            predicate = mapped.canonical if mapped else triple.predicate
            subject, obj = triple.subject, triple.obj
            if mapped and mapped.invert and isinstance(obj, str):
                subject, obj = obj, subject
            result.relations.append(
                RawRelation(
                    subject, predicate, obj, qualifier,
                    descriptor.graph, QUALIFIER_TIMED, triple.line,
                )
            )
            continue

        if mapped is not None and isinstance(triple.obj, str):
            subject, obj = triple.subject, triple.obj
            if mapped.invert:
                subject, obj = obj, subject
            result.relations.append(
                RawRelation(
                    subject, mapped.canonical, obj, None,
                    descriptor.graph, STRUCTURAL, triple.line,
                )
            )
            continue

        if isinstance(triple.obj, Literal):
            continue  # literal objects only matter as times, handled above

        involved = (
            triple.subject in events
            or triple.obj in events
            or triple.subject in known_times
            or triple.obj in known_times
        )
        if involved:
            result.relations.append(
                RawRelation(
                    triple.subject, triple.predicate, triple.obj, None,
                    descriptor.graph, TIME_INVOLVED, triple.line,
                )
            )
    return result
