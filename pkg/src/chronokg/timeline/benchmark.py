"""Distant-supervision benchmarks from external biographical material.

Two annotation shapes produce binary relevance judgements over a person's
candidate entries:

* dated biography records (time expression plus linked entities per
  sentence): a record marks a candidate relevant when the record date equals
  the relation start exactly, or the record links the connected entity and
  the times overlap, or the record links the connected entity and it is an
  event (no overlap needed then),
* abstract event links: every relation of the person to one of the events
  linked from the person's encyclopedic abstract is relevant.

Candidates no record maps to are judged irrelevant, so a benchmark assigns
a label to every candidate of every annotated person.
"""

from __future__ import annotations

import random
from dataclasses import dataclass
from pathlib import Path
from typing import Iterable, Sequence

from ..errors import InputError, ParseError, SchemaError, UnknownPerson
from ..interval import TimeInterval, parse_interval_literal
from ..tkg import TKG
from ..vocab import Iri, expand
from .candidates import CandidateEntry, collect_candidates

BIOGRAPHY = "biography"
ABSTRACT = "abstract"


@dataclass(frozen=True)
class BioRecord:
    """One annotated biography sentence: optional time, linked entities."""

    time: TimeInterval | None
    entities: frozenset[Iri] = frozenset()

    def __post_init__(self) -> None:
        if self.time is None and not self.entities:
            raise InputError("biography record needs a time or at least one entity")


@dataclass(frozen=True)
class BioAnnotation:
    person: Iri
    records: tuple[BioRecord, ...] = ()


@dataclass(frozen=True)
class AbstractLinks:
    person: Iri
    events: frozenset[Iri] = frozenset()


@dataclass
class Benchmark:
    """Binary judgements per (person, relation) pair for one source kind."""

    source: str
    entities: list[Iri]
    judgements: dict[tuple[Iri, Iri], int]

    def judgement(self, person: Iri, relation_uri: Iri) -> int:
        return self.judgements.get((person, relation_uri), 0)

    def positives(self, person: Iri) -> list[Iri]:
        return sorted(
            uri
            for (p, uri), label in self.judgements.items()
            if p == person and label == 1
        )

    def restricted_to(self, keep: Iterable[Iri]) -> "Benchmark":
        """The sub-benchmark over a subset of the annotated persons."""
        wanted = set(keep)
        return Benchmark(
            source=self.source,
            entities=[person for person in self.entities if person in wanted],
            judgements={
                key: label
                for key, label in self.judgements.items()
                if key[0] in wanted
            },
        )


def split_entities(entities: Sequence[Iri], seed: int = 0) -> tuple[list[Iri], list[Iri]]:
    """Deterministic halving of a person roster into train and test parts."""
    ordered = sorted(entities)
    random.Random(seed).shuffle(ordered)
    half = len(ordered) // 2
    return ordered[:half], ordered[half:]


def record_maps_to(record: BioRecord, candidate: CandidateEntry, tkg: TKG) -> bool:
    """The three-clause mapping rule between a record and a candidate."""
    relation_time = candidate.relation.time
    connected = candidate.connected_entity
    record_time = record.time
    if (
        record_time is not None
        and record_time.is_point
        and relation_time.start == record_time.start
    ):
        return True
    if (
        connected in record.entities
        and record_time is not None
        and relation_time.overlaps(record_time)
    ):
        return True
    if connected in record.entities:
        entry = tkg.entities.get(connected)
        if entry is not None and entry.is_event:
            return True
    return False


def build_benchmark(
    annotations: Sequence[BioAnnotation | AbstractLinks],
    tkg: TKG,
    source_kind: str,
) -> Benchmark:
    """Judge every candidate of every annotated person.

    ``source_kind`` selects the mapping rule: ``biography`` applies the
    three-clause record rule, ``abstract`` marks relations to linked events.
    """
    if source_kind not in (BIOGRAPHY, ABSTRACT):
        raise SchemaError(f"unknown benchmark source kind: {source_kind!r}")
    entities: list[Iri] = []
    judgements: dict[tuple[Iri, Iri], int] = {}
    for annotation in annotations:
        person = annotation.person
        if person not in tkg.entities:
            raise UnknownPerson(f"not in graph {tkg.graph}: {person}")
        if person not in entities:
            entities.append(person)
        for candidate in collect_candidates(tkg, person):
            if source_kind == BIOGRAPHY:
                records = getattr(annotation, "records", ())
                label = int(
                    any(record_maps_to(rec, candidate, tkg) for rec in records)
                )
            else:
                events = getattr(annotation, "events", frozenset())
                label = int(candidate.connected_entity in events)
            key = (person, candidate.relation.uri)
            judgements[key] = max(judgements.get(key, 0), label)
    return Benchmark(source=source_kind, entities=entities, judgements=judgements)


# -- annotation files ----------------------------------------------------------


def parse_bio_file(path: str | Path) -> list[BioAnnotation]:
    """Read a ``.bio`` annotation file.

    Line grammar (tab-separated): ``B person`` opens a person block;
    ``R time entity,entity,...`` adds a record, where ``time`` is a date,
    a period (``1979``), an explicit span (``2001/2021``) or the empty
    string / ``-`` for no time. Blank lines and ``#`` comments are skipped.
    """
    annotations: list[BioAnnotation] = []
    person: Iri | None = None
    records: list[BioRecord] = []

    def flush() -> None:
        if person is not None:
            annotations.append(BioAnnotation(person=person, records=tuple(records)))

    with Path(path).open("r", encoding="utf-8") as handle:
        for number, raw in enumerate(handle, start=1):
            line = raw.rstrip("\n")
            if not line.strip() or line.startswith("#"):
                continue
            fields = line.split("\t")
            tag = fields[0]
            if tag == "B" and len(fields) == 2:
                flush()
                person = expand(fields[1].strip())
                records = []
            elif tag == "R" and len(fields) in (2, 3):
                if person is None:
                    raise ParseError("record before any person line", number, str(path))
                time_text = fields[1].strip()
                time = None
                if time_text and time_text != "-":
                    time = parse_interval_literal(time_text)
                names = fields[2].strip() if len(fields) == 3 else ""
                entities = frozenset(
                    expand(name.strip()) for name in names.split(",") if name.strip()
                )
                if time is None and not entities:
                    raise ParseError(
                        "record needs a time or at least one entity", number, str(path)
                    )
                records.append(BioRecord(time=time, entities=entities))
            else:
                raise ParseError(f"unrecognized line: {line!r}", number, str(path))
    flush()
    return annotations


def parse_abstract_file(path: str | Path) -> list[AbstractLinks]:
    """Read a ``.abs`` file of ``A person event`` lines, one per link."""
    events: dict[Iri, set[Iri]] = {}
    order: list[Iri] = []
    with Path(path).open("r", encoding="utf-8") as handle:
        for number, raw in enumerate(handle, start=1):
            line = raw.rstrip("\n")
            if not line.strip() or line.startswith("#"):
                continue
            fields = line.split("\t")
            if fields[0] != "A" or len(fields) != 3:
                raise ParseError(f"unrecognized line: {line!r}", number, str(path))
            person = expand(fields[1].strip())
            if person not in events:
                events[person] = set()
                order.append(person)
            events[person].add(expand(fields[2].strip()))
    return [
        AbstractLinks(person=person, events=frozenset(events[person]))
        for person in order
    ]


# -- benchmark persistence -----------------------------------------------------


def save_benchmark(benchmark: Benchmark, path: str | Path) -> None:
    """Write judgements as tab-separated text (``S`` kind, ``E`` roster,
    ``J person relation label`` rows, sorted for stable output)."""
    with Path(path).open("w", encoding="utf-8", newline="\n") as out:
        out.write(f"S\t{benchmark.source}\n")
        for person in benchmark.entities:
            out.write(f"E\t{person}\n")
        for (person, uri), label in sorted(benchmark.judgements.items()):
            out.write(f"J\t{person}\t{uri}\t{label}\n")


def load_benchmark(path: str | Path) -> Benchmark:
    source: str | None = None
    entities: list[Iri] = []
    judgements: dict[tuple[Iri, Iri], int] = {}
    with Path(path).open("r", encoding="utf-8") as handle:
        for number, raw in enumerate(handle, start=1):
            line = raw.rstrip("\n")
            if not line.strip() or line.startswith("#"):
                continue
            fields = line.split("\t")
            tag = fields[0]
            if tag == "S" and len(fields) == 2:
                source = fields[1]
            elif tag == "E" and len(fields) == 2:
                entities.append(fields[1])
            elif tag == "J" and len(fields) == 4 and fields[3] in ("0", "1"):
                judgements[(fields[1], fields[2])] = int(fields[3])
            else:
                raise ParseError(f"unrecognized line: {line!r}", number, str(path))
    if source is None:
        raise SchemaError(f"benchmark file without source line: {path}")
    return Benchmark(source=source, entities=entities, judgements=judgements)


def iter_labelled(
    benchmark: Benchmark, tkg: TKG
) -> Iterable[tuple[CandidateEntry, int]]:
    """Pair every candidate of every benchmark person with its judgement."""
    for person in benchmark.entities:
        for candidate in collect_candidates(tkg, person):
            yield candidate, benchmark.judgement(person, candidate.relation.uri)
