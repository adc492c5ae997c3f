"""Source descriptors and fixture-dump parsing.

Three line-oriented, tab-separated formats cover the source kinds:

``.kgsrc`` (knowledge graphs)
    ``T s p o [start] [end]`` triple with optional validity qualifiers,
    ``H sub super`` subclass edge, ``I inst class`` instance typing,
    ``S local target`` sameAs link, ``L id lang label`` label,
    ``Y id dbo_type`` mapped ontology type.

``.wiki`` (Wikipedia corpus)
    ``P page_title entity_iri`` article-to-entity mapping,
    ``C page_title category``, ``S page_title sentence`` where sentences may
    contain ``[[iri|surface]]`` links.

``.evl`` (event-list pages, also used for the current-events portal)
    ``G page_title`` opens a page, ``E line_text`` adds one list line with the
    same link markup.
"""

from __future__ import annotations

import enum
import re
from dataclasses import dataclass, field
from datetime import date
from pathlib import Path

from ..errors import ParseError, SchemaError
from ..interval import Precision, TimeInterval, parse_date_literal
from ..store import Term, text_literal
from ..vocab import Iri, expand, graph_iri

_DATEISH = re.compile(r"^\d{1,4}(-\d{2}(-\d{2})?)?$")


class SourceKind(str, enum.Enum):
    KG_WIKIDATA = "kg_wikidata"
    KG_DBPEDIA = "kg_dbpedia"
    KG_YAGO = "kg_yago"
    WIKI_CORPUS = "wiki_corpus"
    WIKI_EVENT_LISTS = "wiki_event_lists"
    WCEP = "wcep"

    @property
    def family(self) -> str:
        return {
            SourceKind.KG_WIKIDATA: "wikidata",
            SourceKind.KG_DBPEDIA: "dbpedia",
            SourceKind.KG_YAGO: "yago",
            SourceKind.WIKI_CORPUS: "wikipedia",
            SourceKind.WIKI_EVENT_LISTS: "wikipedia",
            SourceKind.WCEP: "wcep",
        }[self]

    @property
    def is_kg(self) -> bool:
        return self in (SourceKind.KG_WIKIDATA, SourceKind.KG_DBPEDIA, SourceKind.KG_YAGO)

    @property
    def is_event_list(self) -> bool:
        return self in (SourceKind.WIKI_EVENT_LISTS, SourceKind.WCEP)


# Kinds that may (or must) carry a language code.
_LANGUAGE_KINDS = {
    SourceKind.KG_DBPEDIA,
    SourceKind.WIKI_CORPUS,
    SourceKind.WIKI_EVENT_LISTS,
    SourceKind.WCEP,
}


@dataclass(frozen=True)
class SourceDescriptor:
    """One configured reference source feeding a named graph."""

    name: str  # short graph name, e.g. "wikidata" or "dbpedia_fr"
    kind: SourceKind
    language: str | None = None
    created: date | None = None
    trust_rank: int | None = None
    path: str | None = None

    def __post_init__(self) -> None:
        if self.language is not None and self.kind not in _LANGUAGE_KINDS:
            raise SchemaError(f"source kind {self.kind.value} takes no language")
        if self.kind in (SourceKind.WIKI_CORPUS, SourceKind.WIKI_EVENT_LISTS):
            if self.language is None:
                raise SchemaError(f"source kind {self.kind.value} requires a language")

    @property
    def graph(self) -> Iri:
        return graph_iri(self.name)


@dataclass(frozen=True)
class KgTriple:
    subject: Iri
    predicate: Iri
    obj: Term
    time: TimeInterval | None = None
    line: int = 0


@dataclass
class KgRecords:
    triples: list[KgTriple] = field(default_factory=list)
    hierarchy: list[tuple[Iri, Iri]] = field(default_factory=list)  # (sub, super)
    instances: list[tuple[Iri, Iri]] = field(default_factory=list)  # (inst, class)
    sameas: list[tuple[Iri, Iri]] = field(default_factory=list)  # (local, target)
    labels: list[tuple[Iri, str, str]] = field(default_factory=list)
    dbo_types: list[tuple[Iri, Iri]] = field(default_factory=list)


@dataclass(frozen=True)
class Sentence:
    page: str
    text: str  # plain text, markup replaced by surface forms
    links: tuple[Iri, ...]


@dataclass
class WikiRecords:
    pages: dict[str, Iri] = field(default_factory=dict)  # title -> entity
    categories: list[tuple[str, str]] = field(default_factory=list)
    sentences: list[Sentence] = field(default_factory=list)


@dataclass
class EventListPage:
    title: str
    lines: list[tuple[int, str]] = field(default_factory=list)  # (line number, raw text)


@dataclass
class EventListRecords:
    pages: list[EventListPage] = field(default_factory=list)


SourceRecords = KgRecords | WikiRecords | EventListRecords


@dataclass(frozen=True)
class TextEvent:
    """Dated list line from an event-list page, pre-integration."""

    description: str
    time: TimeInterval
    links: tuple[Iri, ...]
    source_page: Iri
    graph: Iri


_LINK_RE = re.compile(r"\[\[([^\]|]+)\|([^\]]*)\]\]")


def parse_links(text: str, line: int | None = None) -> tuple[str, tuple[Iri, ...]]:
    """Strip ``[[iri|surface]]`` markup: returns (plain text, link targets).

    Targets keep their order of appearance, duplicates included.
    """
    links: list[Iri] = []

    def repl(m: re.Match) -> str:
        links.append(expand(m.group(1), line))
        return m.group(2)

    return _LINK_RE.sub(repl, text), tuple(links)


def _parse_object(raw: str, line: int) -> Term:
    if raw.startswith('"') and raw.endswith('"') and len(raw) >= 2:
        return text_literal(raw[1:-1])
    if _DATEISH.match(raw):
        value, precision = parse_date_literal(raw)
        from ..store import date_literal

        return date_literal(value, precision)
    return expand(raw, line)


def _parse_qualifier(raw: str, line: int) -> tuple[date, Precision]:
    try:
        return parse_date_literal(raw)
    except ParseError:
        raise ParseError(f"bad qualifier date: {raw!r}", line) from None


def _split(raw_line: str) -> list[str]:
    return [f for f in raw_line.rstrip("\n").split("\t") if f != ""]


def _parse_kgsrc(lines, path: str | None) -> KgRecords:
    records = KgRecords()
    for number, raw in enumerate(lines, start=1):
        if not raw.strip() or raw.lstrip().startswith("#"):
            continue
        fields = _split(raw)
        tag = fields[0]
        try:
            if tag == "T":
                if len(fields) < 4 or len(fields) > 6:
                    raise ParseError("T record needs s, p, o and up to 2 dates", number)
                start = end = None
                sp = ep = Precision.DAY
                if len(fields) >= 5:
                    start, sp = _parse_qualifier(fields[4], number)
                if len(fields) == 6:
                    end, ep = _parse_qualifier(fields[5], number)
                time = None
                if start is not None or end is not None:
                    time = TimeInterval(start, end, sp, ep)
                records.triples.append(
                    KgTriple(
                        expand(fields[1], number),
                        expand(fields[2], number),
                        _parse_object(fields[3], number),
                        time,
                        number,
                    )
                )
            elif tag == "H":
                if len(fields) != 3:
                    raise ParseError("H record needs sub and super", number)
                records.hierarchy.append(
                    (expand(fields[1], number), expand(fields[2], number))
                )
            elif tag == "I":
                if len(fields) != 3:
                    raise ParseError("I record needs instance and class", number)
                records.instances.append(
                    (expand(fields[1], number), expand(fields[2], number))
                )
            elif tag == "S":
                if len(fields) != 3:
                    raise ParseError("S record needs local id and target id", number)
                records.sameas.append(
                    (expand(fields[1], number), expand(fields[2], number))
                )
            elif tag == "L":
                if len(fields) != 4:
                    raise ParseError("L record needs id, language and label", number)
                records.labels.append((expand(fields[1], number), fields[2], fields[3]))
            elif tag == "Y":
                if len(fields) != 3:
                    raise ParseError("Y record needs id and type", number)
                records.dbo_types.append(
                    (expand(fields[1], number), expand(fields[2], number))
                )
            else:
                raise SchemaError(f"{path or ''}:{number}: unknown kgsrc tag {tag!r}")
        except ParseError as exc:
            raise ParseError(str(exc.args[0]), exc.line or number, path) from None
    return records


def _parse_wiki(lines, path: str | None) -> WikiRecords:
    records = WikiRecords()
    for number, raw in enumerate(lines, start=1):
        if not raw.strip() or raw.lstrip().startswith("#"):
            continue
        fields = _split(raw)
        tag = fields[0]
        try:
            if tag == "P":
                if len(fields) != 3:
                    raise ParseError("P record needs page title and entity", number)
                records.pages[fields[1]] = expand(fields[2], number)
            elif tag == "C":
                if len(fields) != 3:
                    raise ParseError("C record needs page title and category", number)
                records.categories.append((fields[1], fields[2]))
            elif tag == "S":
                if len(fields) != 3:
                    raise ParseError("S record needs page title and sentence", number)
                text, links = parse_links(fields[2], number)
                records.sentences.append(Sentence(fields[1], text, links))
            else:
                raise SchemaError(f"{path or ''}:{number}: unknown wiki tag {tag!r}")
        except ParseError as exc:
            raise ParseError(str(exc.args[0]), exc.line or number, path) from None
    return records


def _parse_evl(lines, path: str | None) -> EventListRecords:
    records = EventListRecords()
    current: EventListPage | None = None
    for number, raw in enumerate(lines, start=1):
        if not raw.strip() or raw.lstrip().startswith("#"):
            continue
        fields = raw.rstrip("\n").split("\t")
        tag = fields[0]
        if tag == "G":
            if len(fields) != 2 or not fields[1]:
                raise ParseError("G record needs a page title", number, path)
            current = EventListPage(fields[1])
            records.pages.append(current)
        elif tag == "E":
            if len(fields) != 2:
                raise ParseError("E record needs a line text", number, path)
            if current is None:
                raise ParseError("E record before any G record", number, path)
            current.lines.append((number, fields[1]))
        else:
            raise SchemaError(f"{path or ''}:{number}: unknown event-list tag {tag!r}")
    return records


def load_source(path: str | Path, descriptor: SourceDescriptor) -> SourceRecords:
    """Parse a fixture dump according to the descriptor's kind."""
    path = Path(path)
    with path.open("r", encoding="utf-8") as handle:
        lines = list(handle)
    if descriptor.kind.is_kg:
        return _parse_kgsrc(lines, str(path))
    if descriptor.kind is SourceKind.WIKI_CORPUS:
        return _parse_wiki(lines, str(path))
    return _parse_evl(lines, str(path))


_PAGE_NS = {
    "en": "http://en.wikipedia.org/wiki/",
    "pt": "http://pt.wikipedia.org/wiki/",
    "fr": "http://fr.wikipedia.org/wiki/",
    "de": "http://de.wikipedia.org/wiki/",
}


def page_iri(descriptor: SourceDescriptor, title: str) -> Iri:
    """IRI for a wiki page, for provenance statements."""
    safe = title.replace(" ", "_")
    if descriptor.kind is SourceKind.WCEP:
        return "http://en.wikipedia.org/wiki/Portal:Current_events/" + safe
    ns = _PAGE_NS.get(descriptor.language or "en", _PAGE_NS["en"])
    return ns + safe
