"""Corpus interlinking statistics and their sidecar format."""

from __future__ import annotations

import random

import pytest

from chronokg.errors import ParseError
from chronokg.ingest.records import Sentence, WikiRecords
from chronokg.interlink import (
    CorpusStats,
    annotate_relations,
    build_corpus_stats,
    count_links,
    count_mentions,
    load_stats,
    save_stats,
    stats_sidecar_path,
)
from chronokg.tkg import RelationNode
from chronokg.vocab import EKG_RELATION, RESOURCE_NS

A, B, C = RESOURCE_NS + "entity_a", RESOURCE_NS + "entity_b", RESOURCE_NS + "entity_c"


def wiki(pages, sentences):
    records = WikiRecords()
    records.pages.update(pages)
    for page, links in sentences:
        records.sentences.append(
            Sentence(page=page, text="t", links=tuple(links))
        )
    return records


def test_every_link_occurrence_counts_as_a_mention():
    corpus = wiki({"A page": A}, [("A page", [B, B, C])])
    stats = build_corpus_stats({"en": [corpus]})
    assert stats.mention_total("en", B) == 2
    assert stats.mention_total("en", C) == 1
    assert stats.mention_total("en", A) == 0


def test_page_links_need_a_mapped_source_page():
    corpus = wiki({"A page": A}, [("A page", [B]), ("Orphan page", [B])])
    stats = build_corpus_stats({"en": [corpus]})
    assert count_links(stats, "en", A, B) == 1
    # the orphan sentence still counts a mention
    assert stats.mention_total("en", B) == 2


def test_co_mentions_symmetric_with_self_pairs():
    corpus = wiki({"A page": A}, [("A page", [B, C, B])])
    stats = build_corpus_stats({"en": [corpus]})
    assert count_mentions(stats, "en", B, C) == 1
    assert count_mentions(stats, "en", C, B) == 1
    # duplicate links collapse for co-mentions but self pairs are kept
    assert count_mentions(stats, "en", B, B) == 1
    assert count_mentions(stats, "en", C, C) == 1
    assert count_mentions(stats, "en", A, B) == 0


def test_canonical_rewriting_merges_variants():
    alias = "http://en.wikipedia.org/wiki/B_alias"
    corpus = wiki({"A page": "http://x.test/a-raw"}, [("A page", [alias, B])])
    canonical = {"http://x.test/a-raw": A, alias: B}
    stats = build_corpus_stats({"en": [corpus]}, canonical)
    assert stats.mention_total("en", B) == 2
    assert count_links(stats, "en", A, B) == 2
    assert count_mentions(stats, "en", B, B) == 1


def test_languages_counted_separately_and_sorted():
    en = wiki({"A page": A}, [("A page", [B])])
    pt = wiki({"Uma pagina": A}, [("Uma pagina", [B]), ("Uma pagina", [B])])
    stats = build_corpus_stats({"pt": [pt], "en": [en]})
    assert stats.languages == ["en", "pt"]
    assert stats.mention_total("en", B) == 1
    assert stats.mention_total("pt", B) == 2
    assert stats.global_mentions(B) == 3


def test_build_matches_naive_rescan():
    rng = random.Random(7)
    entities = [f"{RESOURCE_NS}entity_{i}" for i in range(6)]
    corpora = {}
    for lang in ("en", "pt"):
        pages = {f"{lang} page {i}": entities[i] for i in range(3)}
        sentences = []
        for _ in range(40):
            page = rng.choice(list(pages) + ["unmapped"])
            links = [rng.choice(entities) for _ in range(rng.randint(0, 4))]
            sentences.append((page, links))
        corpora[lang] = [wiki(pages, sentences)]
    stats = build_corpus_stats(corpora)

    for lang, records_list in corpora.items():
        pages = records_list[0].pages
        for entity in entities:
            expected = sum(
                s.links.count(entity) for s in records_list[0].sentences
            )
            assert stats.mention_total(lang, entity) == expected
        for target in entities:
            expected = sum(
                s.links.count(target)
                for s in records_list[0].sentences
                if pages.get(s.page) == entities[0]
            )
            assert count_links(stats, lang, entities[0], target) == expected
        for a in entities:
            for b in entities:
                expected = sum(
                    1
                    for s in records_list[0].sentences
                    if a in s.links and b in s.links
                )
                assert count_mentions(stats, lang, a, b) == expected


def test_annotate_relations_fills_nonzero_counts_and_all():
    stats = CorpusStats()
    for lang, count in [("en", 30), ("pt", 4), ("fr", 2)]:
        stats.add_language(lang)
        stats.co_mentions[lang][(A, B)] = count
    stats.page_links["en"][(A, B)] = 5
    node = RelationNode(
        uri=RESOURCE_NS + "relation_0", subject=A, obj=B, role=EKG_RELATION
    )
    lonely = RelationNode(
        uri=RESOURCE_NS + "relation_1", subject=A, obj=C, role=EKG_RELATION
    )
    annotate_relations([node, lonely], stats)
    assert node.mentions == {"en": 30, "pt": 4, "fr": 2, "all": 36}
    assert node.links == {"en": 5, "all": 5}
    assert lonely.mentions == {} and lonely.links == {}


def test_stats_sidecar_round_trip(tmp_path):
    corpus = wiki({"A page": A}, [("A page", [B, C]), ("A page", [B])])
    stats = build_corpus_stats({"en": [corpus], "pt": [corpus]})
    path = tmp_path / "store.nq.stats"
    save_stats(stats, path)
    again = load_stats(path)
    assert again == stats
    save_stats(again, tmp_path / "second.stats")
    assert (tmp_path / "second.stats").read_bytes() == path.read_bytes()


def test_load_stats_rejects_unknown_tags(tmp_path):
    path = tmp_path / "bad.stats"
    path.write_text("M\ten\thttp://x.test/a\t3\nZ\tboom\n", encoding="utf-8")
    with pytest.raises(ParseError) as err:
        load_stats(path)
    assert err.value.line == 2


def test_load_stats_rejects_bad_counts(tmp_path):
    path = tmp_path / "bad.stats"
    path.write_text("M\ten\thttp://x.test/a\tmany\n", encoding="utf-8")
    with pytest.raises(ParseError):
        load_stats(path)


def test_stats_sidecar_path():
    assert str(stats_sidecar_path("/tmp/store.nq")) == "/tmp/store.nq.stats"
