"""End-to-end graph construction driven by a TOML build manifest.

A manifest lists the sources feeding the graph::

    [build]
    config_dir = "overrides"        # optional configuration overlay

    [[source]]
    name = "wikidata"               # short graph name
    kind = "kg_wikidata"
    path = "wikidata.kgsrc"         # relative to the manifest
    created = 2017-12-01            # optional dump date
    # language = "fr"               # required for wiki corpora / event lists
    # trust = 0                     # optional explicit trust rank

Building loads every dump, identifies events, clusters identities, extracts
relations and text events, counts interlinks and assembles the per-source
named graphs. Fusion is a separate step over the built store.
"""

from __future__ import annotations

from dataclasses import dataclass, field
from datetime import date
from pathlib import Path

try:
    import tomllib
except ModuleNotFoundError:  # Python < 3.11
    import tomli as tomllib

from .errors import InputError, SchemaError
from .ingest.config import PipelineConfig, default_config
from .ingest.dates import parse_event_list_page
from .ingest.events import identify_events
from .ingest.records import (
    EventListRecords,
    KgRecords,
    Sentence,
    SourceDescriptor,
    SourceKind,
    SourceRecords,
    TextEvent,
    WikiRecords,
    load_source,
)
from .ingest.relations import _collect_entity_times, extract_relations
from .integrate import (
    AssembleResult,
    ClusterResult,
    DedupResult,
    PreparedSource,
    assemble_graphs,
    class_iris,
    cluster_sameas,
    dedup_text_events,
    mentioned_resources,
    rewrite_kg_records,
)
from .interlink import (
    CorpusStats,
    build_corpus_stats,
    save_stats,
    stats_sidecar_path,
)
from .interval import TimeInterval
from .store import QuadStore, save_store
from .vocab import Iri

DEFAULT_FAMILY_ORDER = ("wikidata", "dbpedia", "wikipedia", "wcep", "yago")


@dataclass
class BuildManifest:
    sources: list[SourceDescriptor]
    config_dir: Path | None = None
    base_dir: Path = Path(".")


def _descriptor_from_table(table: dict, base: Path, index: int) -> SourceDescriptor:
    try:
        name = table["name"]
        kind_value = table["kind"]
        path = table["path"]
    except KeyError as missing:
        raise SchemaError(f"source #{index}: missing key {missing}") from None
    try:
        kind = SourceKind(kind_value)
    except ValueError:
        raise SchemaError(f"source #{index}: unknown kind {kind_value!r}") from None
    created = table.get("created")
    if isinstance(created, str):
        created = date.fromisoformat(created)
    if created is not None and not isinstance(created, date):
        raise SchemaError(f"source #{index}: created must be a date")
    trust = table.get("trust")
    if trust is not None and not isinstance(trust, int):
        raise SchemaError(f"source #{index}: trust must be an integer")
    return SourceDescriptor(
        name=name,
        kind=kind,
        language=table.get("language"),
        created=created,
        trust_rank=trust,
        path=str(base / path),
    )


def load_manifest(path: str | Path) -> BuildManifest:
    path = Path(path)
    try:
        raw = tomllib.loads(path.read_text(encoding="utf-8"))
    except FileNotFoundError:
        raise InputError(f"manifest not found: {path}") from None
    except tomllib.TOMLDecodeError as exc:
        raise SchemaError(f"bad manifest {path}: {exc}") from None
    base = path.parent
    tables = raw.get("source", [])
    if not isinstance(tables, list) or not tables:
        raise SchemaError(f"manifest {path} declares no sources")
    sources = [
        _descriptor_from_table(table, base, index)
        for index, table in enumerate(tables, start=1)
    ]
    names = [s.name for s in sources]
    if len(names) != len(set(names)):
        raise SchemaError(f"manifest {path} has duplicate source names")
    config_dir = raw.get("build", {}).get("config_dir")
    if config_dir is not None:
        config_dir = base / config_dir
    return BuildManifest(sources=sources, config_dir=config_dir, base_dir=base)


def trust_ranks(
    sources: list[SourceDescriptor],
    order: tuple[str, ...] = DEFAULT_FAMILY_ORDER,
) -> dict[Iri, int]:
    """Graph trust ranks: explicit manifest values, else family order.

    Default ranks leave room below every family so explicit small values
    always win; within a family graphs rank by IRI.
    """
    ranks: dict[Iri, int] = {}
    remaining = []
    for source in sources:
        if source.trust_rank is not None:
            ranks[source.graph] = source.trust_rank
        else:
            remaining.append(source)
    by_family: dict[str, list[Iri]] = {}
    for source in remaining:
        by_family.setdefault(source.kind.family, []).append(source.graph)
    for family, graphs in by_family.items():
        base = order.index(family) if family in order else len(order)
        for offset, graph in enumerate(sorted(graphs)):
            ranks[graph] = (base + 1) * 1000 + offset
    return ranks


@dataclass
class BuildResult:
    store: QuadStore
    stats: CorpusStats
    clusters: ClusterResult
    dedup: DedupResult
    trust: dict[Iri, int]
    config: PipelineConfig
    text_event_ids: list[Iri] = field(default_factory=list)


def _rewrite_wiki_records(records: WikiRecords, resolve) -> WikiRecords:
    out = WikiRecords()
    out.pages = {title: resolve(iri) for title, iri in records.pages.items()}
    out.categories = list(records.categories)
    out.sentences = [
        Sentence(s.page, s.text, tuple(resolve(t) for t in s.links))
        for s in records.sentences
    ]
    return out


def _event_list_language(descriptor: SourceDescriptor) -> str:
    return descriptor.language or "en"


def build(manifest: BuildManifest | str | Path) -> BuildResult:
    """Run the full construction pipeline for a manifest."""
    if not isinstance(manifest, BuildManifest):
        manifest = load_manifest(manifest)
    config = default_config(manifest.config_dir)

    loaded: list[tuple[SourceDescriptor, SourceRecords]] = []
    for descriptor in manifest.sources:
        try:
            records = load_source(descriptor.path, descriptor)
        except OSError as exc:
            raise InputError(f"cannot read source {descriptor.name}: {exc}") from None
        loaded.append((descriptor, records))

    local_events: dict[str, set[Iri]] = {}
    for descriptor, records in loaded:
        local_events[descriptor.name] = identify_events(records, descriptor, config)

    kg_records = [r for _, r in loaded if isinstance(r, KgRecords)]
    classes = class_iris(kg_records)

    entity_pairs: list[tuple[Iri, Iri]] = []
    class_pairs_by_source: dict[str, list[tuple[Iri, Iri]]] = {}
    for descriptor, records in loaded:
        if not isinstance(records, KgRecords):
            continue
        for local, target in records.sameas:
            if local in classes or target in classes:
                class_pairs_by_source.setdefault(descriptor.name, []).append(
                    (local, target)
                )
            else:
                entity_pairs.append((local, target))

    universe: set[Iri] = set()
    for _, records in loaded:
        universe.update(mentioned_resources(records, classes))
    event_universe: set[Iri] = set()
    for events in local_events.values():
        event_universe.update(events)
    universe.update(event_universe)

    clusters = cluster_sameas(entity_pairs, universe, event_universe)
    resolve = clusters.resolve

    prepared: list[PreparedSource] = []
    text_events: list[TextEvent] = []
    corpora: dict[str, list[WikiRecords]] = {}
    canonical_records: dict[str, KgRecords] = {}

    for descriptor, records in loaded:
        events_c = {resolve(e) for e in local_events[descriptor.name]}
        identity = sorted(
            {
                (resolve(iri), iri)
                for iri in mentioned_resources(records, classes)
                if resolve(iri) != iri
            }
        )
        if isinstance(records, KgRecords):
            canonical = rewrite_kg_records(records, resolve)
            canonical_records[descriptor.name] = canonical
            for local, target in records.sameas:
                if local not in classes and target not in classes:
                    identity.append((resolve(local), target))
            prepared.append(
                PreparedSource(
                    descriptor=descriptor,
                    records=canonical,
                    events=events_c,
                    identity_pairs=sorted(set(identity)),
                    class_sameas=class_pairs_by_source.get(descriptor.name, []),
                )
            )
        elif isinstance(records, WikiRecords):
            assert descriptor.language is not None
            rewritten = _rewrite_wiki_records(records, resolve)
            corpora.setdefault(descriptor.language, []).append(records)
            prepared.append(
                PreparedSource(
                    descriptor=descriptor,
                    records=rewritten,
                    events=events_c,
                    identity_pairs=sorted(set(identity)),
                )
            )
        else:
            assert isinstance(records, EventListRecords)
            language = config.language(_event_list_language(descriptor))
            raw_events: list[TextEvent] = []
            if language is not None:
                for page in records.pages:
                    raw_events.extend(parse_event_list_page(page, language, descriptor))
            link_identity = sorted(
                {
                    (resolve(link), link)
                    for t in raw_events
                    for link in t.links
                    if resolve(link) != link
                }
            )
            text_events.extend(
                TextEvent(
                    description=t.description,
                    time=t.time,
                    links=tuple(resolve(link) for link in t.links),
                    source_page=t.source_page,
                    graph=t.graph,
                )
                for t in raw_events
            )
            prepared.append(
                PreparedSource(
                    descriptor=descriptor,
                    records=records,
                    events=events_c,
                    identity_pairs=link_identity,
                )
            )

    events_global: set[Iri] = set()
    for source in prepared:
        events_global.update(source.events)

    global_times: dict[Iri, TimeInterval] = {}
    for descriptor, _ in loaded:
        canonical = canonical_records.get(descriptor.name)
        if canonical is None:
            continue
        own = _collect_entity_times(
            canonical, descriptor.kind.family, config.mapping
        )
        for entity, interval in sorted(own.items()):
            global_times.setdefault(entity, interval)

    for source in prepared:
        if isinstance(source.records, KgRecords):
            source.extraction = extract_relations(
                source.records,
                events_global,
                global_times,
                source.descriptor,
                config.mapping,
            )

    identified_times = {e: global_times.get(e) for e in events_global}
    dedup = dedup_text_events(text_events, identified_times)
    stats = build_corpus_stats(corpora, clusters.canonical)

    assembled: AssembleResult = assemble_graphs(
        prepared, clusters, dedup, stats, classes
    )
    assembled.store.freeze()
    return BuildResult(
        store=assembled.store,
        stats=stats,
        clusters=clusters,
        dedup=dedup,
        trust=trust_ranks(manifest.sources),
        config=config,
        text_event_ids=assembled.text_event_ids,
    )


def write_build(result: BuildResult, out_path: str | Path) -> None:
    """Write the store with its prefix and statistics sidecars."""
    save_store(result.store, out_path)
    save_stats(result.stats, stats_sidecar_path(out_path))
