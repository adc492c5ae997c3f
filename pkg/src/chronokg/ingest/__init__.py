"""Source ingestion: fixture parsing, event identification, date and
relation extraction, and the data-driven configuration behind them."""

from .config import (
    IdentificationConfig,
    LanguageConfig,
    MappingRow,
    PipelineConfig,
    PredicateMapping,
    default_config,
)
from .dates import DateScope, extract_date, parse_event_list_page, scope_from_title
from .events import ClosureReport, identify_events, subclass_closure
from .records import (
    EventListPage,
    EventListRecords,
    KgRecords,
    KgTriple,
    Sentence,
    SourceDescriptor,
    SourceKind,
    TextEvent,
    WikiRecords,
    load_source,
    parse_links,
)
from .relations import ExtractionResult, RawRelation, extract_relations, map_predicate

__all__ = [
    "ClosureReport",
    "DateScope",
    "EventListPage",
    "EventListRecords",
    "ExtractionResult",
    "IdentificationConfig",
    "KgRecords",
    "KgTriple",
    "LanguageConfig",
    "MappingRow",
    "PipelineConfig",
    "PredicateMapping",
    "RawRelation",
    "Sentence",
    "SourceDescriptor",
    "SourceKind",
    "TextEvent",
    "WikiRecords",
    "default_config",
    "extract_date",
    "extract_relations",
    "identify_events",
    "load_source",
    "map_predicate",
    "parse_event_list_page",
    "parse_links",
    "scope_from_title",
    "subclass_closure",
]
