"""Identity clustering and text-event deduplication."""

from __future__ import annotations

import random
from datetime import date

import pytest

from chronokg.errors import ConflictError, IntegrationWarning
from chronokg.integrate import cluster_sameas, dedup_text_events
from chronokg.ingest.records import TextEvent
from chronokg.interval import TimeInterval, point
from chronokg.vocab import GRAPH_NS, RESOURCE_NS

from oracles import components_oracle

WD = "http://www.wikidata.org/entity/"
X = "http://x.test/"


# -- sameAs clustering -----------------------------------------------------------


def test_cluster_components_match_merge_oracle():
    rng = random.Random(4)
    for _ in range(300):
        n = rng.randint(1, 12)
        nodes = [f"{X}{i}" for i in range(n)]
        pairs = [
            (rng.choice(nodes), rng.choice(nodes)) for _ in range(rng.randint(0, 10))
        ]
        result = cluster_sameas(list(pairs), universe=set(nodes))
        got = sorted(result.members.values())
        assert got == components_oracle(pairs, nodes)
        for a, b in pairs:
            assert result.resolve(a) == result.resolve(b)


def test_cluster_numbering_and_member_lists():
    pairs = [(X + "a", WD + "Q9"), (X + "b", X + "c")]
    result = cluster_sameas(pairs, universe={X + "z"}, events={X + "c"})
    # wd-bearing component first, then smallest-member order
    assert result.canonical[WD + "Q9"] == RESOURCE_NS + "entity_0"
    assert result.canonical[X + "a"] == RESOURCE_NS + "entity_0"
    assert result.canonical[X + "b"] == RESOURCE_NS + "event_0"
    assert result.canonical[X + "c"] == RESOURCE_NS + "event_0"
    assert result.canonical[X + "z"] == RESOURCE_NS + "entity_1"
    assert result.members[RESOURCE_NS + "entity_0"] == (WD + "Q9", X + "a")
    assert result.wikidata_id[RESOURCE_NS + "entity_0"] == WD + "Q9"
    assert result.wikidata_id[RESOURCE_NS + "event_0"] is None
    assert result.next_event_index == 1
    assert result.next_entity_index == 2


def test_cluster_canonical_ids_resolve_to_themselves():
    result = cluster_sameas([(X + "a", X + "b")])
    cid = result.canonical[X + "a"]
    assert result.resolve(cid) == cid
    assert result.resolve("http://elsewhere.test/unseen") == "http://elsewhere.test/unseen"


def test_cluster_wikidata_components_sort_by_id_string():
    result = cluster_sameas([(WD + "Q76", X + "o"), (WD + "Q13133", X + "m")])
    # "Q13133" sorts before "Q76" as a string
    assert result.canonical[WD + "Q13133"] == RESOURCE_NS + "entity_0"
    assert result.canonical[WD + "Q76"] == RESOURCE_NS + "entity_1"


def test_cluster_conflicting_wikidata_ids_skip_pair():
    pairs = [(WD + "Q1", X + "a"), (WD + "Q2", X + "a")]
    with pytest.warns(IntegrationWarning):
        result = cluster_sameas(pairs)
    assert result.conflicts == [(WD + "Q2", X + "a")]
    assert result.canonical[X + "a"] == result.canonical[WD + "Q1"]
    assert result.canonical[WD + "Q2"] != result.canonical[WD + "Q1"]


def test_cluster_conflict_detected_through_transitive_hubs():
    pairs = [(X + "a", X + "b"), (WD + "Q1", X + "a"), (WD + "Q2", X + "b")]
    with pytest.warns(IntegrationWarning):
        result = cluster_sameas(pairs)
    assert result.conflicts == [(X + "a", X + "b")]


def test_cluster_conflict_strict_mode_raises():
    pairs = [(WD + "Q1", X + "a"), (WD + "Q2", X + "a")]
    with pytest.raises(ConflictError):
        cluster_sameas(pairs, strict=True)


def test_obama_cluster_layout(obama_build):
    clusters = obama_build.clusters
    assert clusters.canonical[WD + "Q13133"] == RESOURCE_NS + "entity_0"
    assert clusters.canonical[WD + "Q76"] == RESOURCE_NS + "entity_1"
    assert clusters.canonical[WD + "Q13426199"] == RESOURCE_NS + "event_0"
    assert clusters.canonical[WD + "Q1424167"] == RESOURCE_NS + "event_1"
    assert clusters.canonical[WD + "Q18511"] == RESOURCE_NS + "event_2"
    assert clusters.canonical["http://pt.wikipedia.org/wiki/Barack_Obama"] == (
        RESOURCE_NS + "entity_1"
    )
    assert clusters.next_event_index == 3
    assert clusters.next_entity_index == 2


# -- text-event deduplication ------------------------------------------------------


def text_event(description, time, links=(), page="p1"):
    return TextEvent(
        description=description,
        time=time,
        links=tuple(links),
        source_page="http://en.wikipedia.org/wiki/" + page,
        graph=GRAPH_NS + "wikipedia_en",
    )


MAY8 = point(date(2018, 5, 8))


def test_dedup_merges_on_shared_link_transitively():
    a = text_event("first report", MAY8, [X + "x"])
    b = text_event("second report", MAY8, [X + "x", X + "y"])
    c = text_event("third report", MAY8, [X + "y"])
    d = text_event("other day", point(date(2018, 5, 9)), [X + "x"])
    result = dedup_text_events([a, b, c, d], {})
    assert len(result.events) == 2
    merged = result.events[0]
    assert merged.parts == (a, b, c)
    assert merged.links == (X + "x", X + "y")
    assert merged.descriptions == ("first report", "second report", "third report")
    assert result.events[1].parts == (d,)
    assert result.attachments == []


def test_dedup_descriptions_drop_repeats():
    a = text_event("same words", MAY8, [X + "x"], page="p1")
    b = text_event("same words", MAY8, [X + "x"], page="p2")
    result = dedup_text_events([a, b], {})
    assert result.events[0].descriptions == ("same words",)
    assert len(result.events[0].parts) == 2


def test_dedup_needs_identical_dates():
    open_ended = TimeInterval(date(2018, 5, 8), None)
    a = text_event("a", MAY8, [X + "x"])
    b = text_event("b", open_ended, [X + "x"])
    result = dedup_text_events([a, b], {})
    assert len(result.events) == 2


def test_dedup_needs_a_shared_link():
    a = text_event("a", MAY8, [X + "x"])
    b = text_event("b", MAY8, [X + "y"])
    result = dedup_text_events([a, b], {})
    assert len(result.events) == 2


def test_dedup_attaches_to_single_matching_event():
    a = text_event("about the event", MAY8, [X + "x", WD + "Q5555"])
    result = dedup_text_events([a], {WD + "Q5555": MAY8})
    assert result.events == []
    assert len(result.attachments) == 1
    assert result.attachments[0].event == WD + "Q5555"
    assert result.attachments[0].parts == (a,)


def test_dedup_attachment_needs_matching_time():
    a = text_event("about the event", MAY8, [WD + "Q5555"])
    result = dedup_text_events([a], {WD + "Q5555": point(date(2018, 5, 9))})
    assert result.attachments == []
    assert len(result.events) == 1
    undated = dedup_text_events([a], {WD + "Q5555": None})
    assert undated.attachments == []


def test_dedup_attachment_needs_a_unique_candidate():
    a = text_event("ambiguous", MAY8, [WD + "Q1", WD + "Q2"])
    result = dedup_text_events([a], {WD + "Q1": MAY8, WD + "Q2": MAY8})
    assert result.attachments == []
    assert len(result.events) == 1


def test_dedup_input_order_does_not_matter():
    events = [
        text_event("a", MAY8, [X + "x"]),
        text_event("b", MAY8, [X + "x", X + "y"]),
        text_event("c", point(date(2018, 5, 9)), [X + "y"]),
        text_event("d", MAY8, [X + "z"]),
    ]
    base = dedup_text_events(list(events), {})
    for seed in range(5):
        shuffled = list(events)
        random.Random(seed).shuffle(shuffled)
        again = dedup_text_events(shuffled, {})
        assert again == base
