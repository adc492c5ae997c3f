"""Biographical timeline generation on top of a temporal graph view.

The submodules cover the full path from graph to timeline: candidate
collection, feature extraction, distant-supervision benchmarks, the linear
relevance classifier, and timeline assembly (model-driven plus a greedy
popularity baseline).
"""

from .benchmark import (
    AbstractLinks,
    Benchmark,
    BioAnnotation,
    BioRecord,
    build_benchmark,
    iter_labelled,
    load_benchmark,
    parse_abstract_file,
    parse_bio_file,
    record_maps_to,
    save_benchmark,
    split_entities,
)
from .candidates import CandidateEntry, collect_candidates
from .classifier import (
    HingeClassifier,
    RelevanceModel,
    TrainingConfig,
    load_model,
    save_model,
    train,
    training_instances,
)
from .features import (
    FeatureSpace,
    FeatureVector,
    build_feature_space,
    dense_rank,
    extract_features,
)
from .generate import (
    Timeline,
    format_timeline,
    generate_timeline,
    render_timeline_html,
    save_timeline,
    tm_baseline,
)

__all__ = [
    "AbstractLinks",
    "Benchmark",
    "BioAnnotation",
    "BioRecord",
    "CandidateEntry",
    "FeatureSpace",
    "FeatureVector",
    "HingeClassifier",
    "RelevanceModel",
    "Timeline",
    "TrainingConfig",
    "build_benchmark",
    "build_feature_space",
    "collect_candidates",
    "dense_rank",
    "extract_features",
    "format_timeline",
    "generate_timeline",
    "iter_labelled",
    "load_benchmark",
    "load_model",
    "parse_abstract_file",
    "parse_bio_file",
    "record_maps_to",
    "render_timeline_html",
    "save_benchmark",
    "save_model",
    "save_timeline",
    "split_entities",
    "tm_baseline",
    "train",
    "training_instances",
]
