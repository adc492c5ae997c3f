"""Temporal knowledge graphs from heterogeneous reference sources.

The package splits into a construction half and a timeline half. The
construction side ingests source dumps listed in a build manifest, resolves
identity links, extracts temporal relations, and serializes a named-graph
quad store with rule-based fusion on top. The timeline side classifies the
temporal relations of an entity by biographical relevance and renders the
relevant ones in chronological order.
"""

from .errors import (
    ChronoKgError,
    ConflictError,
    CycleError,
    DegenerateTraining,
    DimensionMismatch,
    EmptyTraining,
    InputError,
    IntegrationWarning,
    LengthMismatch,
    OrderViolation,
    ParseError,
    SchemaError,
    ScopeError,
    UnknownEntity,
    UnknownGraph,
    UnknownPerson,
    ZeroVarianceWarning,
)
from .evaluate import (
    ClassMetrics,
    CoverageReport,
    GraphStats,
    MetricsReport,
    StoreReport,
    classification_metrics,
    coverage,
    pearson,
    rpref,
    store_stats,
)
from .fuse import (
    DEFAULT_TRUST_ORDER,
    build_fused_graph,
    default_trust,
    fuse_locations,
    fuse_time,
    fuse_types,
    is_boundary_date,
)
from .interlink import (
    CorpusStats,
    build_corpus_stats,
    count_links,
    count_mentions,
    load_stats,
    save_stats,
)
from .interval import Precision, TimeInterval, make_interval, parse_interval_literal
from .pipeline import BuildManifest, BuildResult, build, load_manifest, write_build
from .store import (
    Literal,
    Quad,
    QuadStore,
    dumps_nquads,
    load_store,
    loads_nquads,
    quad_match,
    save_store,
)
from .timeline import (
    Benchmark,
    BioAnnotation,
    CandidateEntry,
    FeatureSpace,
    FeatureVector,
    HingeClassifier,
    RelevanceModel,
    Timeline,
    TrainingConfig,
    build_benchmark,
    build_feature_space,
    collect_candidates,
    extract_features,
    generate_timeline,
    load_model,
    save_model,
    tm_baseline,
    train,
)
from .tkg import (
    TKG,
    TemporalEntity,
    TemporalRelation,
    canned_query_locations,
    canned_query_top_events,
    resolve_entity,
    to_tkg,
)
from .vocab import FUSED_GRAPH, GRAPH_NS, Iri, compact, expand

__version__ = "0.1.0"

__all__ = [
    "Benchmark",
    "BioAnnotation",
    "BuildManifest",
    "BuildResult",
    "CandidateEntry",
    "ChronoKgError",
    "ClassMetrics",
    "ConflictError",
    "CorpusStats",
    "CoverageReport",
    "CycleError",
    "DEFAULT_TRUST_ORDER",
    "DegenerateTraining",
    "DimensionMismatch",
    "EmptyTraining",
    "FUSED_GRAPH",
    "FeatureSpace",
    "FeatureVector",
    "GRAPH_NS",
    "GraphStats",
    "HingeClassifier",
    "InputError",
    "IntegrationWarning",
    "Iri",
    "LengthMismatch",
    "Literal",
    "MetricsReport",
    "OrderViolation",
    "ParseError",
    "Precision",
    "Quad",
    "QuadStore",
    "RelevanceModel",
    "SchemaError",
    "ScopeError",
    "StoreReport",
    "TKG",
    "TemporalEntity",
    "TemporalRelation",
    "TimeInterval",
    "Timeline",
    "TrainingConfig",
    "UnknownEntity",
    "UnknownGraph",
    "UnknownPerson",
    "ZeroVarianceWarning",
    "build",
    "build_benchmark",
    "build_corpus_stats",
    "build_feature_space",
    "build_fused_graph",
    "canned_query_locations",
    "canned_query_top_events",
    "classification_metrics",
    "collect_candidates",
    "compact",
    "count_links",
    "count_mentions",
    "coverage",
    "default_trust",
    "dumps_nquads",
    "expand",
    "extract_features",
    "fuse_locations",
    "fuse_time",
    "fuse_types",
    "generate_timeline",
    "is_boundary_date",
    "load_manifest",
    "load_model",
    "load_stats",
    "load_store",
    "loads_nquads",
    "make_interval",
    "parse_interval_literal",
    "pearson",
    "quad_match",
    "resolve_entity",
    "rpref",
    "save_model",
    "save_stats",
    "save_store",
    "store_stats",
    "tm_baseline",
    "to_tkg",
    "train",
    "write_build",
]
