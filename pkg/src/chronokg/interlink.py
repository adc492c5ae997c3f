"""Per-language interlinking statistics from the Wikipedia corpora.

Three counters feed the graphs and the feature model:

* entity mentions: how often an entity is linked anywhere in a language's
  corpus (every hyperlink occurrence counts),
* page links: hyperlinks from one entity's article to another entity,
* co-mentions: sentences linking two entities together (symmetric; the
  degenerate pair (a, a) counts sentences linking a at all).
"""

from __future__ import annotations

from dataclasses import dataclass, field
from pathlib import Path

from .errors import ParseError
from .ingest.records import WikiRecords
from .tkg import RelationNode
from .vocab import Iri


def _pair(a: Iri, b: Iri) -> tuple[Iri, Iri]:
    return (a, b) if a <= b else (b, a)


@dataclass
class CorpusStats:
    languages: list[str] = field(default_factory=list)
    entity_mentions: dict[str, dict[Iri, int]] = field(default_factory=dict)
    page_links: dict[str, dict[tuple[Iri, Iri], int]] = field(default_factory=dict)
    co_mentions: dict[str, dict[tuple[Iri, Iri], int]] = field(default_factory=dict)

    def add_language(self, lang: str) -> None:
        if lang not in self.languages:
            self.languages.append(lang)
            self.languages.sort()
        self.entity_mentions.setdefault(lang, {})
        self.page_links.setdefault(lang, {})
        self.co_mentions.setdefault(lang, {})

    def mention_total(self, lang: str, entity: Iri) -> int:
        return self.entity_mentions.get(lang, {}).get(entity, 0)

    def global_mentions(self, entity: Iri) -> int:
        return sum(self.mention_total(lang, entity) for lang in self.languages)


def count_links(stats: CorpusStats, lang: str, subject: Iri, obj: Iri) -> int:
    """Hyperlinks from the subject entity's page(s) to the object entity.

    A subject without a page in the language contributes 0.
    """
    return stats.page_links.get(lang, {}).get((subject, obj), 0)


def count_mentions(stats: CorpusStats, lang: str, a: Iri, b: Iri) -> int:
    """Sentences in the language linking both entities (symmetric)."""
    return stats.co_mentions.get(lang, {}).get(_pair(a, b), 0)


def build_corpus_stats(
    corpora: dict[str, list[WikiRecords]],
    canonical: dict[Iri, Iri] | None = None,
) -> CorpusStats:
    """Count statistics per language over raw wiki records.

    ``canonical`` rewrites link targets and page entities into the integrated
    id space before counting, so counts aggregate across identifier variants.
    """
    canon = canonical or {}

    def c(iri: Iri) -> Iri:
        return canon.get(iri, iri)

    stats = CorpusStats()
    for lang in sorted(corpora):
        stats.add_language(lang)
        mentions = stats.entity_mentions[lang]
        links = stats.page_links[lang]
        co = stats.co_mentions[lang]
        for records in corpora[lang]:
            page_entity = {title: c(entity) for title, entity in records.pages.items()}
            for sentence in records.sentences:
                targets = [c(t) for t in sentence.links]
                for target in targets:
                    mentions[target] = mentions.get(target, 0) + 1
                    source = page_entity.get(sentence.page)
                    if source is not None:
                        key = (source, target)
                        links[key] = links.get(key, 0) + 1
                distinct = sorted(set(targets))
                for i, a in enumerate(distinct):
                    for b in distinct[i:]:
                        key = _pair(a, b)
                        co[key] = co.get(key, 0) + 1
    return stats


def annotate_relations(
    relations: list[RelationNode], stats: CorpusStats
) -> list[RelationNode]:
    """Fill per-language links/mentions maps on relation nodes, in place.

    Only non-zero counts are recorded; the ``all`` aggregate is the sum over
    languages and is present whenever any language has a count.
    """
    for node in relations:
        if not isinstance(node.obj, str):
            continue
        for lang in stats.languages:
            link_count = count_links(stats, lang, node.subject, node.obj)
            if link_count:
                node.links[lang] = link_count
            mention_count = count_mentions(stats, lang, node.subject, node.obj)
            if mention_count:
                node.mentions[lang] = mention_count
        for counts in (node.links, node.mentions):
            total = sum(v for k, v in counts.items() if k != "all")
            if total:
                counts["all"] = total
    return relations


# -- sidecar persistence -----------------------------------------------------


def save_stats(stats: CorpusStats, path: str | Path) -> None:
    """Write the stats sidecar (tab-separated, one counter per line)."""
    with Path(path).open("w", encoding="utf-8", newline="\n") as out:
        for lang in stats.languages:
            for entity, count in sorted(stats.entity_mentions[lang].items()):
                out.write(f"M\t{lang}\t{entity}\t{count}\n")
            for (src, dst), count in sorted(stats.page_links[lang].items()):
                out.write(f"L\t{lang}\t{src}\t{dst}\t{count}\n")
            for (a, b), count in sorted(stats.co_mentions[lang].items()):
                out.write(f"C\t{lang}\t{a}\t{b}\t{count}\n")


def load_stats(path: str | Path) -> CorpusStats:
    stats = CorpusStats()
    with Path(path).open("r", encoding="utf-8") as handle:
        for number, raw in enumerate(handle, start=1):
            if not raw.strip() or raw.startswith("#"):
                continue
            fields = raw.rstrip("\n").split("\t")
            tag = fields[0]
            try:
                if tag == "M" and len(fields) == 4:
                    stats.add_language(fields[1])
                    stats.entity_mentions[fields[1]][fields[2]] = int(fields[3])
                elif tag == "L" and len(fields) == 5:
                    stats.add_language(fields[1])
                    stats.page_links[fields[1]][(fields[2], fields[3])] = int(fields[4])
                elif tag == "C" and len(fields) == 5:
                    stats.add_language(fields[1])
                    stats.co_mentions[fields[1]][(fields[2], fields[3])] = int(fields[4])
                else:
                    raise ValueError(f"unknown stats tag {tag!r}")
            except ValueError as exc:
                raise ParseError(str(exc), number, str(path)) from None
    return stats


def stats_sidecar_path(store_path: str | Path) -> Path:
    return Path(str(store_path) + ".stats")
