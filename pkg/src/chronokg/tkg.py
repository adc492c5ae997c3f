"""Temporal-graph views over a quad store.

``to_tkg`` materializes the entity/event partition and the temporal relations
of one named graph. Relations are reified nodes; a node with its own validity
time is *explicit*, a time-less node borrows its object entity's time
(*induced*), and nodes with no temporal evidence at all stay out of the view.
"""

from __future__ import annotations

from dataclasses import dataclass, field
from datetime import date

from .errors import UnknownEntity
from .interval import TimeInterval
from .store import Literal, QuadStore, parse_date_object, quad_match
from .vocab import (
    DBO_NS,
    EKG_LINKS,
    EKG_MENTIONS,
    EKG_RELATION,
    FUSED_GRAPH,
    GRAPH_NS,
    OWL_SAMEAS,
    RDF_OBJECT,
    RDF_SUBJECT,
    RDF_TYPE,
    SEM_CORE,
    SEM_EVENT,
    SEM_HAS_BEGIN,
    SEM_HAS_END,
    SEM_HAS_PLACE,
    SEM_ROLE_TYPE,
    Iri,
    graph_language,
)

EXPLICIT = "explicit"
INDUCED_FROM_EVENT = "induced_from_event"
INDUCED_FROM_ENTITY = "induced_from_entity"


@dataclass
class TemporalEntity:
    uri: Iri
    time: TimeInterval | None = None
    is_event: bool = False
    types: frozenset[Iri] = frozenset()

    @property
    def start(self) -> date | None:
        return self.time.start if self.time else None

    @property
    def end(self) -> date | None:
        return self.time.end if self.time else None


@dataclass
class RelationNode:
    """Reified relation as stored in the graphs.

    ``links``/``mentions`` are per-language interlinking counts keyed by
    language code, with the derived ``all`` aggregate included.
    """

    uri: Iri
    subject: Iri
    obj: Iri | Literal
    role: Iri
    time: TimeInterval | None = None
    graph: Iri | None = None
    links: dict[str, int] = field(default_factory=dict)
    mentions: dict[str, int] = field(default_factory=dict)


@dataclass(frozen=True)
class TemporalRelation:
    uri: Iri
    subject: Iri
    obj: Iri
    role: Iri
    time: TimeInterval
    provenance: str  # explicit | induced_from_event | induced_from_entity


@dataclass
class TKG:
    """One named graph seen as a temporal knowledge graph."""

    graph: Iri
    entities: dict[Iri, TemporalEntity]
    relations: list[TemporalRelation]

    def events(self) -> list[TemporalEntity]:
        return [e for e in self.entities.values() if e.is_event]

    def plain_entities(self) -> list[TemporalEntity]:
        return [e for e in self.entities.values() if not e.is_event]

    def relations_of(self, entity: Iri) -> list[TemporalRelation]:
        return [r for r in self.relations if entity in (r.subject, r.obj)]


def _entity_time(store: QuadStore, subject: Iri, graph: Iri) -> TimeInterval | None:
    begin = _first_date(store, subject, SEM_HAS_BEGIN, graph)
    end = _first_date(store, subject, SEM_HAS_END, graph)
    if begin is None and end is None:
        return None
    start_val, start_prec = begin if begin else (None, None)
    end_val, end_prec = end if end else (None, None)
    if start_val is not None and end_val is not None and start_val > end_val:
        # Contradictory single-source data: keep the start bound.
        end_val, end_prec = None, None
    kwargs = {}
    if start_prec is not None:
        kwargs["start_precision"] = start_prec
    if end_prec is not None:
        kwargs["end_precision"] = end_prec
    return TimeInterval(start_val, end_val, **kwargs)


def _first_date(store: QuadStore, subject: Iri, predicate: Iri, graph: Iri):
    for quad in quad_match(store, subject, predicate, graph=graph):
        parsed = parse_date_object(quad.obj)
        if parsed is not None:
            return parsed
    return None


def _counts(store: QuadStore, node: Iri, predicate: Iri) -> dict[str, int]:
    counts: dict[str, int] = {}
    for quad in quad_match(store, node, predicate):
        lang = graph_language(quad.graph)
        if lang is None or not isinstance(quad.obj, Literal):
            continue
        try:
            counts[lang] = counts.get(lang, 0) + int(quad.obj.lexical)
        except ValueError:
            continue
    if counts:
        counts["all"] = sum(v for k, v in counts.items() if k != "all")
    return counts


def relation_nodes(store: QuadStore, graph: Iri | None = None) -> list[RelationNode]:
    """Materialize reified relation nodes, most fields read from ``graph``.

    With ``graph=None`` every node in the store is returned once, homed at
    the graph holding its rdf:subject statement. Interlinking counts are
    always collected across all per-language graphs.
    """
    nodes: list[RelationNode] = []
    seen: set[tuple[Iri, Iri]] = set()
    for quad in quad_match(store, predicate=RDF_TYPE, obj=EKG_RELATION, graph=graph):
        node_iri, node_graph = quad.subject, quad.graph
        if (node_iri, node_graph) in seen:
            continue
        seen.add((node_iri, node_graph))
        subjects = quad_match(store, node_iri, RDF_SUBJECT, graph=node_graph)
        objects = quad_match(store, node_iri, RDF_OBJECT, graph=node_graph)
        roles = quad_match(store, node_iri, SEM_ROLE_TYPE, graph=node_graph)
        if not subjects or not objects:
            continue
        subject = subjects[0].obj
        if isinstance(subject, Literal):
            continue
        nodes.append(
            RelationNode(
                uri=node_iri,
                subject=subject,
                obj=objects[0].obj,
                role=roles[0].obj if roles else EKG_RELATION,
                time=_entity_time(store, node_iri, node_graph),
                graph=node_graph,
                links=_counts(store, node_iri, EKG_LINKS),
                mentions=_counts(store, node_iri, EKG_MENTIONS),
            )
        )
    nodes.sort(key=lambda n: (n.graph or "", n.uri))
    return nodes


def to_tkg(
    store: QuadStore,
    graph: Iri,
    entity_time_fallback: dict[Iri, TimeInterval] | None = None,
) -> TKG:
    """Build the temporal view of ``graph``.

    ``entity_time_fallback`` supplies existence times for entities the graph
    itself leaves undated (used to extend per-source views with fused times);
    it changes which induced relations materialize, nothing else.
    """
    store.require_graph(graph)
    fallback = entity_time_fallback or {}

    entities: dict[Iri, TemporalEntity] = {}
    for quad in quad_match(store, predicate=RDF_TYPE, obj=SEM_CORE, graph=graph):
        uri = quad.subject
        if uri in entities:
            continue
        types = frozenset(
            q.obj
            for q in quad_match(store, uri, RDF_TYPE, graph=graph)
            if isinstance(q.obj, str) and q.obj.startswith(DBO_NS)
        )
        entities[uri] = TemporalEntity(
            uri=uri,
            time=_entity_time(store, uri, graph) or fallback.get(uri),
            is_event=bool(quad_match(store, uri, RDF_TYPE, SEM_EVENT, graph)),
            types=types,
        )

    relations: list[TemporalRelation] = []
    for node in relation_nodes(store, graph):
        if node.time is not None:
            time, provenance = node.time, EXPLICIT
        elif isinstance(node.obj, str) and node.obj in entities:
            target = entities[node.obj]
            if target.time is None:
                continue
            time = target.time
            provenance = INDUCED_FROM_EVENT if target.is_event else INDUCED_FROM_ENTITY
        else:
            continue
        if isinstance(node.obj, Literal):
            continue
        relations.append(
            TemporalRelation(
                uri=node.uri,
                subject=node.subject,
                obj=node.obj,
                role=node.role,
                time=time,
                provenance=provenance,
            )
        )
    relations.sort(key=lambda r: (r.time.sort_key(), r.uri))
    return TKG(graph=graph, entities=entities, relations=relations)


# -- canned queries ----------------------------------------------------------

_DBPEDIA_EN_GRAPH = GRAPH_NS + "dbpedia_en"


def resolve_entity(store: QuadStore, iri: Iri) -> Iri:
    """Map an external identifier to its canonical resource.

    Canonical ids pass through; otherwise any owl:sameAs quad pointing at the
    identifier resolves it. Unresolvable identifiers raise UnknownEntity.
    """
    if quad_match(store, iri, RDF_TYPE, SEM_CORE):
        return iri
    candidates = sorted(
        q.subject for q in quad_match(store, predicate=OWL_SAMEAS, obj=iri)
    )
    if candidates:
        return candidates[0]
    raise UnknownEntity(f"cannot resolve entity: {iri}")


def _display_iri(store: QuadStore, iri: Iri) -> Iri:
    """Prefer the English DBpedia identifier of a resource for output."""
    if _DBPEDIA_EN_GRAPH not in store.graphs():
        return iri
    targets = sorted(
        q.obj
        for q in quad_match(store, iri, OWL_SAMEAS, graph=_DBPEDIA_EN_GRAPH)
        if isinstance(q.obj, str)
    )
    return targets[0] if targets else iri


def canned_query_locations(store: QuadStore, event: Iri) -> list[tuple[Iri, Iri]]:
    """Per-graph locations of an event: (location, graph) rows sorted by graph.

    Locations are reported under their English DBpedia identifier when one is
    known, mirroring how a sameAs join against the English DBpedia graph would
    present them.
    """
    canonical = resolve_entity(store, event)
    rows = []
    for quad in quad_match(store, canonical, SEM_HAS_PLACE):
        if isinstance(quad.obj, Literal):
            continue
        rows.append((_display_iri(store, quad.obj), quad.graph))
    rows.sort(key=lambda row: (row[1], row[0]))
    return rows


def canned_query_top_events(
    store: QuadStore, entity: Iri, mentions_graph: Iri
) -> list[tuple[Iri, int, date | None]]:
    """Events related to an entity, by descending mention count.

    Counts come from eventKG-s:mentions quads in ``mentions_graph``; start
    dates from the fused graph when present. Ties and zero counts order by
    event IRI so the output is stable.
    """
    canonical = resolve_entity(store, entity)
    store.require_graph(mentions_graph)
    lang = graph_language(mentions_graph)

    per_event: dict[Iri, int] = {}
    for node in relation_nodes(store):
        if node.subject != canonical or not isinstance(node.obj, str):
            continue
        if not quad_match(store, node.obj, RDF_TYPE, SEM_EVENT):
            continue
        count = node.mentions.get(lang, 0) if lang else 0
        per_event[node.obj] = max(per_event.get(node.obj, 0), count)

    results = []
    for event, count in per_event.items():
        start = None
        if FUSED_GRAPH in store.graphs():
            parsed = _first_date(store, event, SEM_HAS_BEGIN, FUSED_GRAPH)
            if parsed is not None:
                start = parsed[0]
        results.append((_display_iri(store, event), count, start))
    results.sort(key=lambda row: (-row[1], row[0]))
    return results
