"""Rule-based fusion of per-source statements into the fused graph.

Times fuse per bound through a three-step cascade: boundary dates (coarser
than a day, the first of a month, or the last of a month) lose to exact ones
when any exist, a strict plurality of sources wins next, and source trust
decides otherwise. Locations keep the most specific places of the union and
types map into the dbo namespace through class sameAs links.
"""

from __future__ import annotations

from datetime import date as date_type
from typing import Iterable, Mapping

from .errors import CycleError
from .interval import Precision, TimeInterval, last_day_of_month
from .store import Literal, Quad, QuadStore, date_literal, quad_match, serialize_term
from .tkg import _entity_time, relation_nodes
from .vocab import (
    DBO_NS,
    DCTERMS_ALTERNATIVE,
    DCTERMS_CREATED,
    DCTERMS_DESCRIPTION,
    EKG_EXTRACTED_FROM,
    EKG_LINKS,
    EKG_MENTIONS,
    EKG_RELATION,
    FUSED_GRAPH,
    GRAPH_NS,
    OWL_SAMEAS,
    RDF_OBJECT,
    RDF_SUBJECT,
    RDF_TYPE,
    RDFS_LABEL,
    RESOURCE_NS,
    SEM_CORE,
    SEM_EVENT,
    SEM_HAS_BEGIN,
    SEM_HAS_END,
    SEM_HAS_PLACE,
    SEM_ROLE_TYPE,
    Iri,
)

DEFAULT_TRUST_ORDER = ("wikidata", "dbpedia", "wikipedia", "wcep", "yago")

_UNTRUSTED = 10**9


def is_boundary_date(value: date_type, precision: Precision) -> bool:
    """True for dates that look like period boundaries rather than exact days."""
    if precision is not Precision.DAY:
        return True
    return value.day == 1 or value.day == last_day_of_month(value.year, value.month)


def _fuse_bound(
    candidates: list[tuple[Iri, date_type, Precision]],
    trust: Mapping[Iri, int],
) -> tuple[date_type, Precision] | None:
    if not candidates:
        return None
    per_source: dict[Iri, tuple[date_type, Precision]] = {}
    for source in sorted({c[0] for c in candidates}):
        mine = [(d, p) for s, d, p in candidates if s == source]
        mine.sort(key=lambda dp: (is_boundary_date(*dp), dp[0], -dp[1]))
        per_source[source] = mine[0]

    votes = [(s, d, p) for s, (d, p) in per_source.items()]
    exact = [(s, d, p) for s, d, p in votes if not is_boundary_date(d, p)]
    if exact:
        votes = exact

    counts: dict[date_type, int] = {}
    for _, d, _ in votes:
        counts[d] = counts.get(d, 0) + 1
    top = max(counts.values())
    winners = [d for d, c in counts.items() if c == top]
    if len(winners) == 1:
        winner = winners[0]
        backers = sorted(
            ((s, p) for s, d, p in votes if d == winner),
            key=lambda sp: (trust.get(sp[0], _UNTRUSTED), -sp[1], sp[0]),
        )
        return winner, backers[0][1]

    ranked = sorted(
        votes, key=lambda v: (trust.get(v[0], _UNTRUSTED), v[1], -v[2], v[0])
    )
    _, d, p = ranked[0]
    return d, p


def fuse_time(
    candidates: Iterable[tuple[Iri, TimeInterval]],
    trust: Mapping[Iri, int],
) -> TimeInterval | None:
    """Fuse per-source intervals; each bound is decided independently.

    ``trust`` maps a source to its rank, lower meaning more trusted. A fused
    start after the fused end keeps only the start.
    """
    starts: list[tuple[Iri, date_type, Precision]] = []
    ends: list[tuple[Iri, date_type, Precision]] = []
    for source, interval in candidates:
        if interval is None:
            continue
        if interval.start is not None:
            starts.append((source, interval.start, interval.start_precision))
        if interval.end is not None:
            ends.append((source, interval.end, interval.end_precision))
    start = _fuse_bound(starts, trust)
    end = _fuse_bound(ends, trust)
    if start is None and end is None:
        return None
    if start is not None and end is not None and start[0] > end[0]:
        end = None
    kwargs = {}
    if start is not None:
        kwargs["start_precision"] = start[1]
    if end is not None:
        kwargs["end_precision"] = end[1]
    return TimeInterval(
        start[0] if start else None, end[0] if end else None, **kwargs
    )


def fuse_locations(
    per_source: Mapping[Iri, set[Iri]],
    containment: Mapping[Iri, set[Iri]],
) -> set[Iri]:
    """Union of locations minus strict ancestors of other members.

    ``containment`` maps a place to its direct containers. A containment
    cycle reachable from the union raises CycleError.
    """
    union: set[Iri] = set()
    for places in per_source.values():
        union.update(places)

    ancestors: dict[Iri, set[Iri]] = {}
    state: dict[Iri, int] = {}  # 1 on stack, 2 done
    stack_members: list[Iri] = []

    def visit(node: Iri) -> set[Iri]:
        if state.get(node) == 2:
            return ancestors[node]
        if state.get(node) == 1:
            members = sorted(stack_members[stack_members.index(node):])
            raise CycleError(f"containment cycle: {members}", frozenset(members))
        state[node] = 1
        stack_members.append(node)
        found: set[Iri] = set()
        for parent in sorted(containment.get(node, ())):
            found.add(parent)
            found.update(visit(parent))
        stack_members.pop()
        state[node] = 2
        ancestors[node] = found
        return found

    dropped: set[Iri] = set()
    for place in sorted(union):
        dropped.update(visit(place) & union - {place})
    return union - dropped


def fuse_types(
    per_source: Mapping[Iri, set[Iri]],
    type_sameas: Iterable[tuple[Iri, Iri]] = (),
) -> set[Iri]:
    """dbo-namespace types reachable from any source type via class sameAs."""
    neighbours: dict[Iri, set[Iri]] = {}
    for a, b in type_sameas:
        neighbours.setdefault(a, set()).add(b)
        neighbours.setdefault(b, set()).add(a)

    out: set[Iri] = set()
    for types in per_source.values():
        for typ in types:
            seen = {typ}
            frontier = [typ]
            while frontier:
                node = frontier.pop()
                if node.startswith(DBO_NS):
                    out.add(node)
                for other in neighbours.get(node, ()):
                    if other not in seen:
                        seen.add(other)
                        frontier.append(other)
    return out


# -- whole-store fusion -------------------------------------------------------

_ENTITY_FACT_SKIP = {
    RDF_TYPE,
    OWL_SAMEAS,
    RDFS_LABEL,
    DCTERMS_ALTERNATIVE,
    DCTERMS_DESCRIPTION,
    DCTERMS_CREATED,
    EKG_EXTRACTED_FROM,
    EKG_LINKS,
    EKG_MENTIONS,
    SEM_HAS_BEGIN,
    SEM_HAS_END,
    SEM_HAS_PLACE,
    SEM_ROLE_TYPE,
    RDF_SUBJECT,
    RDF_OBJECT,
}


def _graph_family(graph: Iri) -> str:
    local = graph[len(GRAPH_NS):] if graph.startswith(GRAPH_NS) else graph
    return local.split("_", 1)[0]


def default_trust(
    graphs: Iterable[Iri], order: tuple[str, ...] = DEFAULT_TRUST_ORDER
) -> dict[Iri, int]:
    """Trust ranks from the family order, ties broken by graph IRI."""
    ranked: dict[Iri, int] = {}
    for graph in sorted(g for g in graphs if g != FUSED_GRAPH):
        family = _graph_family(graph)
        base = order.index(family) if family in order else len(order)
        ranked[graph] = base * 1000 + len([g for g in ranked if ranked[g] // 1000 == base])
    return ranked


def _date_quads(subject: Iri, time: TimeInterval, graph: Iri) -> list[Quad]:
    quads = []
    if time.start is not None:
        quads.append(
            Quad(subject, SEM_HAS_BEGIN, date_literal(time.start, time.start_precision), graph)
        )
    if time.end is not None:
        quads.append(
            Quad(subject, SEM_HAS_END, date_literal(time.end, time.end_precision), graph)
        )
    return quads


def build_fused_graph(
    store: QuadStore,
    trust: Mapping[Iri, int] | None = None,
    trust_order: tuple[str, ...] = DEFAULT_TRUST_ORDER,
) -> QuadStore:
    """Return a copy of the store with the fused graph populated.

    Entity times, locations and types are fused across source graphs; labels,
    aliases, descriptions, sameAs links and direct statements are unioned.
    Relation nodes sharing subject, role and object collapse into one fused
    node whose validity time is fused from the members that have one.
    """
    source_graphs = [g for g in store.graphs() if g != FUSED_GRAPH]
    if trust is None:
        trust = default_trust(source_graphs, trust_order)

    fused = QuadStore()
    for graph in store.graphs():
        fused.register_graph(graph, store.created(graph))
    fused.register_graph(FUSED_GRAPH)
    fused.add_all(store)

    entities = sorted(
        {q.subject for q in quad_match(store, None, RDF_TYPE, SEM_CORE)}
    )
    events = {q.subject for q in quad_match(store, None, RDF_TYPE, SEM_EVENT)}

    containment: dict[Iri, set[Iri]] = {}
    for quad in store:
        if quad.predicate.endswith("containedInPlace") and isinstance(quad.obj, str):
            containment.setdefault(quad.subject, set()).add(quad.obj)

    type_sameas = [
        (q.subject, q.obj)
        for q in quad_match(store, None, OWL_SAMEAS)
        if isinstance(q.obj, str)
    ]

    for entity in entities:
        fused.add(Quad(entity, RDF_TYPE, SEM_CORE, FUSED_GRAPH))
        if entity in events:
            fused.add(Quad(entity, RDF_TYPE, SEM_EVENT, FUSED_GRAPH))

        labels: dict[str | None, set] = {}
        for predicate in (RDFS_LABEL, DCTERMS_ALTERNATIVE):
            for quad in quad_match(store, entity, predicate):
                if isinstance(quad.obj, Literal):
                    labels.setdefault(quad.obj.language, set()).add(quad.obj)
        for lang in sorted(labels, key=lambda v: v or ""):
            main, *rest = sorted(labels[lang], key=lambda lit: lit.lexical)
            fused.add(Quad(entity, RDFS_LABEL, main, FUSED_GRAPH))
            for alt in rest:
                fused.add(Quad(entity, DCTERMS_ALTERNATIVE, alt, FUSED_GRAPH))
        for quad in quad_match(store, entity, DCTERMS_DESCRIPTION):
            fused.add(Quad(entity, DCTERMS_DESCRIPTION, quad.obj, FUSED_GRAPH))
        for quad in quad_match(store, entity, OWL_SAMEAS):
            fused.add(Quad(entity, OWL_SAMEAS, quad.obj, FUSED_GRAPH))

        times = []
        places: dict[Iri, set[Iri]] = {}
        types: dict[Iri, set[Iri]] = {}
        for graph in source_graphs:
            interval = _entity_time(store, entity, graph)
            if interval is not None:
                times.append((graph, interval))
            graph_places = {
                q.obj
                for q in quad_match(store, entity, SEM_HAS_PLACE, graph=graph)
                if isinstance(q.obj, str)
            }
            if graph_places:
                places[graph] = graph_places
            graph_types = {
                q.obj
                for q in quad_match(store, entity, RDF_TYPE, graph=graph)
                if isinstance(q.obj, str) and q.obj not in (SEM_CORE, SEM_EVENT)
            }
            if graph_types:
                types[graph] = graph_types

        fused_time = fuse_time(times, trust)
        if fused_time is not None:
            fused.add_all(_date_quads(entity, fused_time, FUSED_GRAPH))
        for place in sorted(fuse_locations(places, containment)):
            fused.add(Quad(entity, SEM_HAS_PLACE, place, FUSED_GRAPH))
        for typ in sorted(fuse_types(types, type_sameas)):
            fused.add(Quad(entity, RDF_TYPE, typ, FUSED_GRAPH))

        for quad in quad_match(store, entity):
            if quad.predicate in _ENTITY_FACT_SKIP or quad.graph == FUSED_GRAPH:
                continue
            if not isinstance(quad.obj, str):
                continue
            fused.add(Quad(quad.subject, quad.predicate, quad.obj, FUSED_GRAPH))

    groups: dict[tuple[Iri, Iri, str], list] = {}
    for node in relation_nodes(store):
        if node.graph == FUSED_GRAPH:
            continue
        key = (node.subject, node.role, serialize_term(node.obj))
        groups.setdefault(key, []).append(node)
    for index, key in enumerate(sorted(groups)):
        members = groups[key]
        node_iri = f"{RESOURCE_NS}relation_f{index}"
        first = members[0]
        fused.add(Quad(node_iri, RDF_TYPE, EKG_RELATION, FUSED_GRAPH))
        fused.add(Quad(node_iri, RDF_SUBJECT, first.subject, FUSED_GRAPH))
        fused.add(Quad(node_iri, RDF_OBJECT, first.obj, FUSED_GRAPH))
        fused.add(Quad(node_iri, SEM_ROLE_TYPE, first.role, FUSED_GRAPH))
        timed = [(m.graph, m.time) for m in members if m.time is not None]
        fused_time = fuse_time(timed, trust) if timed else None
        if fused_time is not None:
            fused.add_all(_date_quads(node_iri, fused_time, FUSED_GRAPH))
    return fused
