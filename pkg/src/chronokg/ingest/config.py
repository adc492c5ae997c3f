"""Data-driven configuration: language rules, predicate mapping, event roots.

Everything here loads from JSON files shipped under ``chronokg/data`` so that
additional languages or source predicates are additive data changes, not code
changes.
"""

from __future__ import annotations

import json
import re
from dataclasses import dataclass, field
from importlib import resources
from pathlib import Path

from ..errors import SchemaError
from ..vocab import SEM_HAS_BEGIN, SEM_HAS_END, Iri, expand

# Specificity classes in decreasing order.
_CLASS_ORDER = {"interval": 0, "date": 1, "month": 2, "year": 3}


@dataclass(frozen=True)
class DatePattern:
    cls: str
    regex: re.Pattern


@dataclass
class LanguageConfig:
    """Per-language extraction rules (category matching, date grammar)."""

    language: str
    months: dict[str, int]
    event_category_pattern: re.Pattern | None = None
    blacklist_title_prefixes: tuple[str, ...] = ()
    title_patterns: list[re.Pattern] = field(default_factory=list)
    date_patterns: list[DatePattern] = field(default_factory=list)

    @classmethod
    def from_dict(cls, raw: dict) -> "LanguageConfig":
        months = {str(k): int(v) for k, v in raw.get("months", {}).items()}
        month_alt = "|".join(re.escape(m) for m in sorted(months, key=len, reverse=True))
        tokens = {
            "{month_name}": month_alt,
            "{month}": f"(?P<month>{month_alt})",
            "{dash}": r"\s*[-–—]\s*",
        }

        def build(pattern: str, *, boundary: bool) -> re.Pattern:
            for token, replacement in tokens.items():
                pattern = pattern.replace(token, replacement)
            if boundary:
                pattern = rf"(?<!\w){pattern}(?!\w)"
            return re.compile(pattern)

        patterns = []
        last_rank = -1
        for item in raw.get("date_patterns", []):
            rank = _CLASS_ORDER.get(item.get("class"))
            if rank is None:
                raise SchemaError(f"unknown date pattern class: {item.get('class')!r}")
            if rank < last_rank:
                raise SchemaError(
                    "date patterns must be ordered interval > date > month > year"
                )
            last_rank = rank
            patterns.append(DatePattern(item["class"], build(item["pattern"], boundary=True)))

        category = raw.get("event_category_pattern")
        return cls(
            language=raw["language"],
            months=months,
            event_category_pattern=re.compile(category) if category else None,
            blacklist_title_prefixes=tuple(raw.get("blacklist_title_prefixes", [])),
            title_patterns=[
                build(p, boundary=False) for p in raw.get("event_list_title_patterns", [])
            ],
            date_patterns=patterns,
        )


@dataclass(frozen=True)
class MappingRow:
    canonical: Iri
    family: str
    source: Iri
    guard_events: bool = False
    invert: bool = False


class PredicateMapping:
    """Source predicate to canonical predicate table.

    Regular rows map one (family, source predicate) pair to exactly one
    canonical predicate. Point-in-time predicates are kept separately because
    they assign both the begin and the end timestamp at once.
    """

    def __init__(self, rows: list[MappingRow], point_in_time: set[tuple[str, Iri]]):
        self.rows: dict[tuple[str, Iri], MappingRow] = {}
        for row in rows:
            key = (row.family, row.source)
            if key in self.rows:
                raise SchemaError(
                    f"duplicate mapping for {row.source} in family {row.family}"
                )
            self.rows[key] = row
        self.point_in_time = frozenset(point_in_time)
        overlap = self.point_in_time & set(self.rows)
        if overlap:
            raise SchemaError(f"predicates both mapped and point-in-time: {overlap}")

    @classmethod
    def from_dict(cls, raw: dict) -> "PredicateMapping":
        rows = [
            MappingRow(
                canonical=expand(item["canonical"]),
                family=item["family"],
                source=expand(item["source"]),
                guard_events=bool(item.get("guard_events", False)),
                invert=bool(item.get("invert", False)),
            )
            for item in raw.get("rows", [])
        ]
        point = {
            (item["family"], expand(item["source"]))
            for item in raw.get("point_in_time", [])
        }
        return cls(rows, point)

    def lookup(self, family: str, source: Iri) -> MappingRow | None:
        return self.rows.get((family, source))

    def time_bounds(self, family: str, source: Iri) -> tuple[bool, bool]:
        """(assigns begin, assigns end) for a source predicate."""
        if (family, source) in self.point_in_time:
            return True, True
        row = self.rows.get((family, source))
        if row is None:
            return False, False
        return row.canonical == SEM_HAS_BEGIN, row.canonical == SEM_HAS_END

    def is_time_predicate(self, family: str, source: Iri) -> bool:
        begin, end = self.time_bounds(family, source)
        return begin or end


@dataclass
class IdentificationConfig:
    wikidata_event_roots: tuple[Iri, ...]
    wikidata_class_blacklist: tuple[Iri, ...]
    dbpedia_event_root: Iri
    trust_order: tuple[str, ...]

    @classmethod
    def from_dict(cls, raw: dict) -> "IdentificationConfig":
        return cls(
            wikidata_event_roots=tuple(expand(x) for x in raw["wikidata_event_roots"]),
            wikidata_class_blacklist=tuple(
                expand(x) for x in raw.get("wikidata_class_blacklist", [])
            ),
            dbpedia_event_root=expand(raw["dbpedia_event_root"]),
            trust_order=tuple(raw.get("trust_order", [])),
        )


@dataclass
class PipelineConfig:
    languages: dict[str, LanguageConfig]
    identification: IdentificationConfig
    mapping: PredicateMapping

    def language(self, code: str | None) -> LanguageConfig | None:
        if code is None:
            return None
        return self.languages.get(code)


def _data_text(*parts: str) -> str:
    node = resources.files("chronokg").joinpath("data")
    for part in parts:
        node = node.joinpath(part)
    return node.read_text(encoding="utf-8")


def default_config(overrides_dir: str | Path | None = None) -> PipelineConfig:
    """Packaged defaults, optionally overlaid with JSON files from a directory.

    An overrides directory may contain ``identification.json``,
    ``mapping.json`` and/or per-language ``languages/<code>.json`` files with
    the same shapes as the packaged data.
    """
    languages: dict[str, LanguageConfig] = {}
    lang_dir = resources.files("chronokg").joinpath("data", "languages")
    for entry in lang_dir.iterdir():
        if entry.name.endswith(".json"):
            cfg = LanguageConfig.from_dict(json.loads(entry.read_text(encoding="utf-8")))
            languages[cfg.language] = cfg
    identification = IdentificationConfig.from_dict(
        json.loads(_data_text("identification.json"))
    )
    mapping = PredicateMapping.from_dict(json.loads(_data_text("mapping.json")))

    if overrides_dir is not None:
        base = Path(overrides_dir)
        ident_path = base / "identification.json"
        if ident_path.exists():
            identification = IdentificationConfig.from_dict(
                json.loads(ident_path.read_text(encoding="utf-8"))
            )
        mapping_path = base / "mapping.json"
        if mapping_path.exists():
            mapping = PredicateMapping.from_dict(
                json.loads(mapping_path.read_text(encoding="utf-8"))
            )
        lang_override = base / "languages"
        if lang_override.is_dir():
            for path in sorted(lang_override.glob("*.json")):
                cfg = LanguageConfig.from_dict(
                    json.loads(path.read_text(encoding="utf-8"))
                )
                languages[cfg.language] = cfg
    return PipelineConfig(languages=languages, identification=identification, mapping=mapping)
