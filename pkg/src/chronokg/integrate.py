"""Cross-source integration: identity clustering, text-event deduplication
and assembly of the per-source named graphs.

Identity integration runs over owl:sameAs pairs with Wikidata ids as hubs;
every resource gets a canonical ``eventKG-r:entity_<n>`` / ``event_<n>`` id.
Text events merge when they share a date and at least one link; a text event
matching exactly one identified event becomes a description of it instead of
a new node.
"""

from __future__ import annotations

import warnings
from dataclasses import dataclass, field

from .errors import ConflictError, IntegrationWarning
from .ingest.records import (
    EventListRecords,
    KgRecords,
    SourceDescriptor,
    TextEvent,
    WikiRecords,
)
from .ingest.relations import STRUCTURAL, ExtractionResult
from .interlink import CorpusStats, annotate_relations
from .interval import TimeInterval
from .store import (
    Quad,
    QuadStore,
    Term,
    date_literal,
    integer_literal,
    serialize_term,
    text_literal,
)
from .tkg import RelationNode
from .vocab import (
    DCTERMS_ALTERNATIVE,
    DCTERMS_CREATED,
    DCTERMS_DESCRIPTION,
    DCTERMS_REFERENCES,
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
    SEM_ROLE_TYPE,
    WIKIDATA_NS,
    Iri,
)

# -- sameAs clustering -------------------------------------------------------


@dataclass
class ClusterResult:
    canonical: dict[Iri, Iri]
    members: dict[Iri, tuple[Iri, ...]]
    wikidata_id: dict[Iri, Iri | None]
    conflicts: list[tuple[Iri, Iri]]
    next_event_index: int
    next_entity_index: int

    def resolve(self, iri: Iri) -> Iri:
        return self.canonical.get(iri, iri)


class _UnionFind:
    def __init__(self) -> None:
        self.parent: dict[Iri, Iri] = {}

    def add(self, x: Iri) -> None:
        self.parent.setdefault(x, x)

    def find(self, x: Iri) -> Iri:
        self.add(x)
        root = x
        while self.parent[root] != root:
            root = self.parent[root]
        while self.parent[x] != root:
            self.parent[x], x = root, self.parent[x]
        return root

    def union(self, a: Iri, b: Iri) -> Iri:
        ra, rb = self.find(a), self.find(b)
        if ra == rb:
            return ra
        keep, drop = (ra, rb) if ra < rb else (rb, ra)
        self.parent[drop] = keep
        return keep


def cluster_sameas(
    pairs: list[tuple[Iri, Iri]],
    universe: set[Iri] = frozenset(),
    events: set[Iri] = frozenset(),
    strict: bool = False,
) -> ClusterResult:
    """Partition identifiers into components and mint canonical ids.

    A component may contain at most one Wikidata id; a pair that would merge
    two is skipped and reported (or raises ConflictError with ``strict``).
    Components are numbered by their Wikidata id, components without one
    following in smallest-member order; a component whose members include an
    identified event gets an ``event_<n>`` id, others ``entity_<n>``.
    """
    uf = _UnionFind()
    hub: dict[Iri, Iri] = {}

    def wd_of(root: Iri) -> Iri | None:
        if root in hub:
            return hub[root]
        return root if root.startswith(WIKIDATA_NS) else None

    for iri in sorted(universe):
        uf.add(iri)
    conflicts: list[tuple[Iri, Iri]] = []
    for a, b in sorted(set(pairs)):
        ra, rb = uf.find(a), uf.find(b)
        wa, wb = wd_of(ra), wd_of(rb)
        if wa is not None and wb is not None and wa != wb:
            conflicts.append((a, b))
            continue
        root = uf.union(ra, rb)
        merged = wa if wa is not None else wb
        if merged is not None:
            hub[root] = merged
    if conflicts:
        message = (
            "sameAs pairs merging distinct Wikidata ids were skipped: "
            + ", ".join(f"{a} ~ {b}" for a, b in conflicts)
        )
        if strict:
            raise ConflictError(message)
        warnings.warn(message, IntegrationWarning, stacklevel=2)

    components: dict[Iri, list[Iri]] = {}
    for iri in uf.parent:
        components.setdefault(uf.find(iri), []).append(iri)

    def sort_key(root: Iri) -> tuple:
        wd = wd_of(root)
        members = components[root]
        return (0, wd) if wd is not None else (1, min(members))

    canonical: dict[Iri, Iri] = {}
    members_out: dict[Iri, tuple[Iri, ...]] = {}
    wikidata_out: dict[Iri, Iri | None] = {}
    event_index = entity_index = 0
    for root in sorted(components, key=sort_key):
        members = tuple(sorted(components[root]))
        if any(m in events for m in members):
            cid = f"{RESOURCE_NS}event_{event_index}"
            event_index += 1
        else:
            cid = f"{RESOURCE_NS}entity_{entity_index}"
            entity_index += 1
        for member in members:
            canonical[member] = cid
        canonical[cid] = cid
        members_out[cid] = members
        wikidata_out[cid] = wd_of(root)
    return ClusterResult(
        canonical=canonical,
        members=members_out,
        wikidata_id=wikidata_out,
        conflicts=conflicts,
        next_event_index=event_index,
        next_entity_index=entity_index,
    )


# -- text-event deduplication ------------------------------------------------


def _dates_equal(a: TimeInterval, b: TimeInterval) -> bool:
    return a.start == b.start and a.end == b.end


@dataclass
class MergedTextEvent:
    time: TimeInterval
    parts: tuple[TextEvent, ...]

    @property
    def links(self) -> tuple[Iri, ...]:
        return tuple(sorted({link for p in self.parts for link in p.links}))

    @property
    def descriptions(self) -> tuple[str, ...]:
        out: list[str] = []
        for part in self.parts:
            if part.description not in out:
                out.append(part.description)
        return tuple(out)


@dataclass
class Attachment:
    event: Iri
    parts: tuple[TextEvent, ...]


@dataclass
class DedupResult:
    events: list[MergedTextEvent]
    attachments: list[Attachment]


def dedup_text_events(
    text_events: list[TextEvent],
    identified_event_times: dict[Iri, TimeInterval | None],
) -> DedupResult:
    """Merge text events and attach matches to identified events.

    Two text events merge when their dates are identical and their link sets
    intersect (closed transitively). A merged group whose links contain
    exactly one identified event with the same date becomes descriptions of
    that event rather than a new node. Input order does not matter; events
    are processed in sorted order.
    """
    ordered = sorted(
        text_events, key=lambda t: (t.time.sort_key(), t.description, t.source_page)
    )
    n = len(ordered)
    parent = list(range(n))

    def find(i: int) -> int:
        while parent[i] != i:
            parent[i] = parent[parent[i]]
            i = parent[i]
        return i

    link_sets = [set(t.links) for t in ordered]
    for i in range(n):
        for j in range(i + 1, n):
            if ordered[i].time.start != ordered[j].time.start:
                continue
            if not _dates_equal(ordered[i].time, ordered[j].time):
                continue
            if link_sets[i] & link_sets[j]:
                ri, rj = find(i), find(j)
                if ri != rj:
                    parent[max(ri, rj)] = min(ri, rj)

    groups: dict[int, list[TextEvent]] = {}
    for i in range(n):
        groups.setdefault(find(i), []).append(ordered[i])

    events: list[MergedTextEvent] = []
    attachments: list[Attachment] = []
    for root in sorted(groups):
        parts = tuple(groups[root])
        merged = MergedTextEvent(time=parts[0].time, parts=parts)
        linked_events = [
            e
            for e in merged.links
            if e in identified_event_times
        ]
        if len(linked_events) == 1:
            target_time = identified_event_times[linked_events[0]]
            if target_time is not None and _dates_equal(target_time, merged.time):
                attachments.append(Attachment(event=linked_events[0], parts=parts))
                continue
        events.append(merged)
    return DedupResult(events=events, attachments=attachments)


# -- graph assembly ----------------------------------------------------------


@dataclass
class PreparedSource:
    """Everything assembly needs about one source, in the canonical id space."""

    descriptor: SourceDescriptor
    records: KgRecords | WikiRecords | EventListRecords
    events: set[Iri] = field(default_factory=set)
    extraction: ExtractionResult | None = None
    identity_pairs: list[tuple[Iri, Iri]] = field(default_factory=list)
    class_sameas: list[tuple[Iri, Iri]] = field(default_factory=list)


def class_iris(all_records: list[KgRecords]) -> set[Iri]:
    """IRIs used as classes anywhere (kept out of entity clustering)."""
    classes: set[Iri] = set()
    for records in all_records:
        for sub, sup in records.hierarchy:
            classes.add(sub)
            classes.add(sup)
        for _, cls in records.instances:
            classes.add(cls)
        for _, typ in records.dbo_types:
            classes.add(typ)
    return classes


def mentioned_resources(records, classes: set[Iri]) -> set[Iri]:
    """Resource IRIs a source talks about (excluding class identifiers)."""
    out: set[Iri] = set()
    if isinstance(records, KgRecords):
        for triple in records.triples:
            out.add(triple.subject)
            if isinstance(triple.obj, str):
                out.add(triple.obj)
        for inst, _ in records.instances:
            out.add(inst)
        for local, _ in records.sameas:
            out.add(local)
        for iri, _, _ in records.labels:
            out.add(iri)
        for iri, _ in records.dbo_types:
            out.add(iri)
    elif isinstance(records, WikiRecords):
        out.update(records.pages.values())
        for sentence in records.sentences:
            out.update(sentence.links)
    elif isinstance(records, EventListRecords):
        pass  # link targets enter through the parsed text events
    return {iri for iri in out if iri not in classes}


def rewrite_kg_records(records: KgRecords, resolve) -> KgRecords:
    """Copy of KG records with subject/object ids canonicalized.

    Hierarchy/class positions are left untouched; sameAs rows are dropped
    (their information lives in the cluster result).
    """

    def term(t: Term) -> Term:
        return resolve(t) if isinstance(t, str) else t

    out = KgRecords()
    for t in records.triples:
        out.triples.append(
            type(t)(resolve(t.subject), t.predicate, term(t.obj), t.time, t.line)
        )
    out.hierarchy = list(records.hierarchy)
    out.instances = [(resolve(inst), cls) for inst, cls in records.instances]
    out.labels = [(resolve(iri), lang, text) for iri, lang, text in records.labels]
    out.dbo_types = [(resolve(iri), typ) for iri, typ in records.dbo_types]
    return out


@dataclass
class AssembleResult:
    store: QuadStore
    text_event_ids: list[Iri]


@dataclass(frozen=True)
class _PendingRelation:
    graph: Iri
    subject: Iri
    role: Iri
    obj: Term
    time: TimeInterval | None

    def sort_key(self) -> tuple:
        time_key = self.time.sort_key() if self.time else ()
        return (self.graph, self.subject, self.role, serialize_term(self.obj), str(time_key))


def _time_quads(subject: Iri, time: TimeInterval, graph: Iri) -> list[Quad]:
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


def assemble_graphs(
    prepared: list[PreparedSource],
    clusters: ClusterResult,
    dedup: DedupResult | None = None,
    stats: CorpusStats | None = None,
    classes: set[Iri] = frozenset(),
) -> AssembleResult:
    """Emit one named graph per source plus the empty fused placeholder.

    All ids must already be canonical. Relation nodes are minted with
    deterministic sequential ids over the sorted set of pending relations;
    interlinking counts attach to them as quads in per-language graphs.
    """
    store = QuadStore()
    store.register_graph(FUSED_GRAPH)
    pending: set[_PendingRelation] = set()
    text_event_ids: list[Iri] = []

    global_events: set[Iri] = set()
    for source in prepared:
        global_events.update(source.events)

    # Minted ids for surviving text events continue the cluster counter.
    merged_ids: dict[int, Iri] = {}
    if dedup is not None:
        for offset, merged in enumerate(dedup.events):
            merged_ids[offset] = (
                f"{RESOURCE_NS}event_{clusters.next_event_index + offset}"
            )
        global_events.update(merged_ids.values())

    for source in prepared:
        graph = source.descriptor.graph
        store.register_graph(graph, source.descriptor.created)
        if source.descriptor.created is not None:
            store.add(
                Quad(graph, DCTERMS_CREATED, date_literal(source.descriptor.created), graph)
            )

        mentioned = mentioned_resources(source.records, classes)
        for iri in sorted(mentioned):
            store.add(Quad(iri, RDF_TYPE, SEM_CORE, graph))
        for event in sorted(source.events):
            store.add(Quad(event, RDF_TYPE, SEM_CORE, graph))
            store.add(Quad(event, RDF_TYPE, SEM_EVENT, graph))

        for canonical_id, alias in sorted(set(source.identity_pairs)):
            if canonical_id != alias:
                store.add(Quad(canonical_id, OWL_SAMEAS, alias, graph))
        for cls, target in sorted(set(source.class_sameas)):
            store.add(Quad(cls, OWL_SAMEAS, target, graph))

        if isinstance(source.records, KgRecords):
            records = source.records
            labels: dict[tuple[Iri, str], list[str]] = {}
            for iri, lang, text in records.labels:
                labels.setdefault((iri, lang), []).append(text)
            for (iri, lang), texts in sorted(labels.items()):
                main, *rest = sorted(set(texts))
                store.add(Quad(iri, RDFS_LABEL, text_literal(main, lang), graph))
                for alt in rest:
                    store.add(Quad(iri, DCTERMS_ALTERNATIVE, text_literal(alt, lang), graph))
            for inst, cls in sorted(set(records.instances)):
                store.add(Quad(inst, RDF_TYPE, cls, graph))
            for iri, typ in sorted(set(records.dbo_types)):
                store.add(Quad(iri, RDF_TYPE, typ, graph))

        if source.extraction is not None:
            for entity, time in sorted(source.extraction.entity_times.items()):
                store.add_all(_time_quads(entity, time, graph))
            for relation in source.extraction.relations:
                if relation.category == STRUCTURAL:
                    if isinstance(relation.obj, str):
                        store.add(
                            Quad(relation.subject, relation.predicate, relation.obj, graph)
                        )
                else:
                    pending.add(
                        _PendingRelation(
                            graph,
                            relation.subject,
                            relation.predicate,
                            relation.obj,
                            relation.time,
                        )
                    )

    # Relations minted from article links pointing at identified events.
    if stats is not None:
        kg_pairs = {(p.subject, p.obj) for p in pending} | {
            (q.subject, q.obj)
            for q in store
            if isinstance(q.obj, str) and q.predicate not in (RDF_TYPE, OWL_SAMEAS)
        }
        for lang in stats.languages:
            graph = GRAPH_NS + f"wikipedia_{lang}"
            for (subject, target), count in sorted(stats.page_links[lang].items()):
                if count <= 0 or subject == target or target not in global_events:
                    continue
                if (subject, target) in kg_pairs:
                    continue
                store.register_graph(graph)
                pending.add(
                    _PendingRelation(graph, subject, DCTERMS_REFERENCES, target, None)
                )

    # Surviving merged text events become event nodes.
    if dedup is not None:
        for offset, merged in enumerate(dedup.events):
            event_id = merged_ids[offset]
            text_event_ids.append(event_id)
            for part in merged.parts:
                store.add(Quad(event_id, RDF_TYPE, SEM_CORE, part.graph))
                store.add(Quad(event_id, RDF_TYPE, SEM_EVENT, part.graph))
                store.add_all(_time_quads(event_id, part.time, part.graph))
                store.add(
                    Quad(
                        event_id,
                        DCTERMS_DESCRIPTION,
                        text_literal(part.description),
                        part.graph,
                    )
                )
                store.add(Quad(event_id, EKG_EXTRACTED_FROM, part.source_page, part.graph))
                for link in part.links:
                    store.add(Quad(link, RDF_TYPE, SEM_CORE, part.graph))
                    pending.add(
                        _PendingRelation(part.graph, event_id, DCTERMS_REFERENCES, link, None)
                    )
        for attachment in dedup.attachments:
            for part in attachment.parts:
                store.add(
                    Quad(
                        attachment.event,
                        DCTERMS_DESCRIPTION,
                        text_literal(part.description),
                        part.graph,
                    )
                )
                store.add(
                    Quad(attachment.event, EKG_EXTRACTED_FROM, part.source_page, part.graph)
                )

    # Mint relation node ids and emit the reified statements.
    nodes: list[RelationNode] = []
    for index, item in enumerate(sorted(pending, key=_PendingRelation.sort_key)):
        node_iri = f"{RESOURCE_NS}relation_{index}"
        store.add(Quad(node_iri, RDF_TYPE, EKG_RELATION, item.graph))
        store.add(Quad(node_iri, RDF_SUBJECT, item.subject, item.graph))
        store.add(Quad(node_iri, RDF_OBJECT, item.obj, item.graph))
        store.add(Quad(node_iri, SEM_ROLE_TYPE, item.role, item.graph))
        if item.time is not None:
            store.add_all(_time_quads(node_iri, item.time, item.graph))
        nodes.append(
            RelationNode(
                uri=node_iri,
                subject=item.subject,
                obj=item.obj,
                role=item.role,
                time=item.time,
                graph=item.graph,
            )
        )

    if stats is not None:
        annotate_relations(nodes, stats)
        for node in nodes:
            for counts, predicate in ((node.links, EKG_LINKS), (node.mentions, EKG_MENTIONS)):
                for lang, count in sorted(counts.items()):
                    if lang == "all" or count <= 0:
                        continue
                    graph = GRAPH_NS + f"wikipedia_{lang}"
                    store.register_graph(graph)
                    store.add(Quad(node.uri, predicate, integer_literal(count), graph))
    return AssembleResult(store=store, text_event_ids=text_event_ids)
