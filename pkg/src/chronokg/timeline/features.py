"""Feature extraction for relevance classification of candidate entries.

A candidate entry is described by four blocks:

* timeline-entity types (binary, one slot per frequent ontology type),
* connected-entity popularity: per-language mention counts with dense rank
  and relative rank, plus an is-event flag,
* relation semantics: binary property-identifier slots and per-language
  (plus aggregate) co-mention counts with ranks,
* temporal block: signed day distances from the timeline entity's existence
  bounds to the relation start (with missing flags) and the provenance kind
  of the validity time (3 explicit, 2 from an event, 1 from an entity).

Ranks are dense (tied scores share a rank) and computed against the other
entities connected to the same timeline entity, so they only depend on the
ordering of counts, never on their scale.
"""

from __future__ import annotations

import math
from collections import Counter
from dataclasses import dataclass, field
from typing import Iterable, Sequence

from ..errors import EmptyTraining, UnknownEntity
from ..interlink import CorpusStats, count_mentions
from ..tkg import EXPLICIT, INDUCED_FROM_ENTITY, INDUCED_FROM_EVENT, TKG
from ..vocab import Iri
from .candidates import CandidateEntry

_PROVENANCE_VALUE = {
    EXPLICIT: 3.0,
    INDUCED_FROM_EVENT: 2.0,
    INDUCED_FROM_ENTITY: 1.0,
}


@dataclass
class FeatureSpace:
    """Fixed feature layout shared by training and prediction.

    ``languages`` always ends with the ``all`` aggregate; the per-language
    connected-entity block skips it, the relation block includes it.
    ``normalization`` holds per-column (low, high) training ranges once a
    model has been fitted.
    """

    entity_types: list[Iri] = field(default_factory=list)
    predicates: list[Iri] = field(default_factory=list)
    languages: list[str] = field(default_factory=list)
    normalization: list[tuple[float, float]] | None = None

    def __post_init__(self) -> None:
        ordered = [lang for lang in dict.fromkeys(self.languages) if lang != "all"]
        self.languages = ordered + ["all"]

    def corpus_languages(self) -> list[str]:
        return [lang for lang in self.languages if lang != "all"]

    def feature_names(self) -> list[str]:
        names = [f"tef_c:{t}" for t in self.entity_types]
        for lang in self.corpus_languages():
            names += [f"cef_m:{lang}", f"cef_mr:{lang}", f"cef_mrr:{lang}"]
        names.append("cef_e")
        names += [f"trf_pi:{p}" for p in self.predicates]
        for lang in self.languages:
            names += [f"trf_m:{lang}", f"trf_mr:{lang}", f"trf_mrr:{lang}"]
        names += ["tf_tds", "tf_tds_missing", "tf_tde", "tf_tde_missing", "tf_tp"]
        return names

    def width(self) -> int:
        return len(self.feature_names())


@dataclass(frozen=True)
class FeatureVector:
    values: tuple[float, ...]

    def __len__(self) -> int:
        return len(self.values)

    def __iter__(self):
        return iter(self.values)

    def __getitem__(self, index: int) -> float:
        return self.values[index]

    def named(self, space: FeatureSpace) -> dict[str, float]:
        """Map layout names to values, for inspection and tests."""
        return dict(zip(space.feature_names(), self.values))


def dense_rank(score: float, scores: Iterable[float]) -> tuple[int, int]:
    """Dense rank of ``score`` (1 = highest) and the distinct-score count.

    ``score`` joins the pool before ranking, so the result is always within
    [1, distinct] and relative ranks stay in (0, 1].
    """
    pool = set(scores)
    pool.add(score)
    higher = sum(1 for s in pool if s > score)
    return higher + 1, len(pool)


def build_feature_space(
    training_candidates: Iterable[CandidateEntry],
    training_entities: Iterable[Iri],
    tkg: TKG,
    *,
    stats: CorpusStats | None = None,
    languages: Sequence[str] | None = None,
) -> FeatureSpace:
    """Derive the feature layout from a training split.

    Type slots keep the most frequent half of the timeline-entity types
    (ties broken by identifier, odd counts round up); property slots keep
    roles present in at least a quarter of the training relations.
    Languages come from ``languages`` or, failing that, from ``stats``.
    """
    candidates = list(training_candidates)
    entities = list(dict.fromkeys(training_entities))
    if not candidates or not entities:
        raise EmptyTraining("feature space needs training candidates and entities")

    type_freq: Counter[Iri] = Counter()
    for uri in entities:
        entity = tkg.entities.get(uri)
        if entity is None:
            raise UnknownEntity(f"training entity not in graph {tkg.graph}: {uri}")
        type_freq.update(entity.types)
    ranked_types = sorted(type_freq.items(), key=lambda kv: (-kv[1], kv[0]))
    keep = math.ceil(len(ranked_types) / 2)
    entity_types = [t for t, _ in ranked_types[:keep]]

    role_freq = Counter(c.relation.role for c in candidates)
    threshold = 0.25 * len(candidates)
    predicates = [
        role
        for role, count in sorted(role_freq.items(), key=lambda kv: (-kv[1], kv[0]))
        if count >= threshold
    ]

    if languages is None:
        languages = list(stats.languages) if stats is not None else []
    return FeatureSpace(
        entity_types=entity_types,
        predicates=predicates,
        languages=list(languages),
    )


def _connected_entities(tkg: TKG, entity: Iri) -> set[Iri]:
    connected: set[Iri] = set()
    for relation in tkg.relations:
        if relation.subject == entity:
            connected.add(relation.obj)
        elif relation.obj == entity:
            connected.add(relation.subject)
    return connected


def _distance_days(bound, start) -> tuple[float, float]:
    # Value plus missing flag; either operand absent makes the pair (0, 1).
    if bound is None or start is None:
        return 0.0, 1.0
    return float((bound - start).days), 0.0


def extract_features(
    candidate: CandidateEntry,
    space: FeatureSpace,
    tkg: TKG,
    stats: CorpusStats,
) -> FeatureVector:
    """Compute the dense feature vector of one candidate under ``space``.

    A connected entity missing from the graph view still gets its corpus
    counts; its type and event information default to empty/false.
    """
    timeline = tkg.entities.get(candidate.timeline_entity)
    if timeline is None:
        raise UnknownEntity(
            f"timeline entity not in graph {tkg.graph}: {candidate.timeline_entity}"
        )
    connected_uri = candidate.connected_entity
    connected = tkg.entities.get(connected_uri)

    values: list[float] = []
    values += [1.0 if t in timeline.types else 0.0 for t in space.entity_types]

    others = _connected_entities(tkg, timeline.uri)
    for lang in space.corpus_languages():
        score = stats.mention_total(lang, connected_uri)
        rank, distinct = dense_rank(
            score, (stats.mention_total(lang, other) for other in others)
        )
        values += [float(score), float(rank), rank / distinct]

    values.append(1.0 if connected is not None and connected.is_event else 0.0)

    values += [1.0 if candidate.relation.role == p else 0.0 for p in space.predicates]

    real_langs = space.corpus_languages()

    def co_mentions(lang: str, other: Iri) -> int:
        if lang == "all":
            return sum(count_mentions(stats, l, timeline.uri, other) for l in real_langs)
        return count_mentions(stats, lang, timeline.uri, other)

    connected_events = [
        other
        for other in others
        if (entry := tkg.entities.get(other)) is not None and entry.is_event
    ]
    for lang in space.languages:
        score = co_mentions(lang, connected_uri)
        rank, distinct = dense_rank(
            score, (co_mentions(lang, event) for event in connected_events)
        )
        values += [float(score), float(rank), rank / distinct]

    r_start = candidate.relation.time.start
    e_time = timeline.time
    tds, tds_missing = _distance_days(e_time.start if e_time else None, r_start)
    tde, tde_missing = _distance_days(e_time.end if e_time else None, r_start)
    values += [tds, tds_missing, tde, tde_missing]
    values.append(_PROVENANCE_VALUE[candidate.relation.provenance])

    return FeatureVector(values=tuple(values))
