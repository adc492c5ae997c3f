"""Source parsing, language rules, event identification, relation extraction."""

from __future__ import annotations

import random
from datetime import date

import pytest

from chronokg.errors import OrderViolation, ParseError, SchemaError, ScopeError
from chronokg.errors import IntegrationWarning
from chronokg.ingest.config import (
    LanguageConfig,
    MappingRow,
    PredicateMapping,
    default_config,
)
from chronokg.ingest.dates import (
    DateScope,
    extract_date,
    parse_event_list_page,
    scope_from_title,
)
from chronokg.ingest.events import identify_events, subclass_closure
from chronokg.ingest.records import (
    EventListPage,
    KgRecords,
    SourceDescriptor,
    SourceKind,
    WikiRecords,
    load_source,
    page_iri,
    parse_links,
)
from chronokg.ingest.relations import (
    QUALIFIER_TIMED,
    STRUCTURAL,
    TIME_INVOLVED,
    extract_relations,
    map_predicate,
)
from chronokg.interval import Precision, TimeInterval, point
from chronokg.store import Literal, date_literal
from chronokg.vocab import GRAPH_NS, expand

from conftest import FIXTURES
from oracles import closure_oracle

WD = "http://www.wikidata.org/entity/"
CONFIG = default_config()
EN = CONFIG.language("en")
MAPPING = CONFIG.mapping


def kg_descriptor(name="wikidata", kind=SourceKind.KG_WIKIDATA, **kwargs):
    return SourceDescriptor(name=name, kind=kind, **kwargs)


# -- descriptors ---------------------------------------------------------------


def test_descriptor_language_rules():
    with pytest.raises(SchemaError):
        SourceDescriptor(name="wikidata", kind=SourceKind.KG_WIKIDATA, language="en")
    with pytest.raises(SchemaError):
        SourceDescriptor(name="wikipedia_en", kind=SourceKind.WIKI_CORPUS)
    with pytest.raises(SchemaError):
        SourceDescriptor(name="wikipedia_en", kind=SourceKind.WIKI_EVENT_LISTS)
    # dbpedia may carry a language, wcep may omit one
    SourceDescriptor(name="dbpedia_fr", kind=SourceKind.KG_DBPEDIA, language="fr")
    SourceDescriptor(name="wcep", kind=SourceKind.WCEP)


def test_descriptor_graph_iri():
    descriptor = kg_descriptor(name="dbpedia_fr", kind=SourceKind.KG_DBPEDIA)
    assert descriptor.graph == GRAPH_NS + "dbpedia_fr"


def test_source_kind_families():
    assert SourceKind.KG_WIKIDATA.family == "wikidata"
    assert SourceKind.WIKI_CORPUS.family == "wikipedia"
    assert SourceKind.WIKI_EVENT_LISTS.family == "wikipedia"
    assert SourceKind.WCEP.family == "wcep"
    assert SourceKind.KG_YAGO.is_kg
    assert not SourceKind.WCEP.is_kg
    assert SourceKind.WCEP.is_event_list
    assert not SourceKind.WIKI_CORPUS.is_event_list


# -- link markup ---------------------------------------------------------------


def test_parse_links_strips_markup_and_keeps_order():
    text = "met [[wd:Q76|Barack Obama]] and [[wd:Q13133|Michelle]] and [[wd:Q76|Obama]]"
    plain, links = parse_links(text)
    assert plain == "met Barack Obama and Michelle and Obama"
    assert links == (WD + "Q76", WD + "Q13133", WD + "Q76")


def test_parse_links_without_markup_is_identity():
    assert parse_links("no links here") == ("no links here", ())


def test_parse_links_bad_target_reports_line():
    with pytest.raises(ParseError) as err:
        parse_links("[[not a target|x]]", line=7)
    assert err.value.line == 7


# -- fixture file parsing --------------------------------------------------------


def test_load_kgsrc_reconstructs_all_record_kinds():
    descriptor = kg_descriptor()
    records = load_source(FIXTURES / "obama" / "wikidata.kgsrc", descriptor)
    assert isinstance(records, KgRecords)
    assert (WD + "Q4119207", WD + "Q1417098") in records.hierarchy
    assert (WD + "Q1424167", WD + "Q4119207") in records.instances
    assert ("http://pt.wikipedia.org/wiki/Barack_Obama", WD + "Q76") in records.sameas
    assert any(iri == WD + "Q76" and lang == "en" for iri, lang, _ in records.labels)
    spouse = [t for t in records.triples if t.predicate == WD + "P26"]
    assert len(spouse) == 1
    assert spouse[0].time == TimeInterval(date(1992, 10, 3), None)
    birth = [t for t in records.triples if t.predicate == WD + "P569"]
    assert birth[0].obj == date_literal(date(1961, 8, 4))


def test_load_wiki_corpus():
    descriptor = SourceDescriptor(
        name="wikipedia_pt", kind=SourceKind.WIKI_CORPUS, language="pt"
    )
    records = load_source(FIXTURES / "obama" / "wikipedia_pt.wiki", descriptor)
    assert isinstance(records, WikiRecords)
    assert records.pages["Barack Obama"] == "http://pt.wikipedia.org/wiki/Barack_Obama"
    assert len(records.sentences) == 1
    assert records.sentences[0].links == (
        "http://pt.wikipedia.org/wiki/Morte_de_Osama_bin_Laden",
    )


def test_load_event_lists():
    descriptor = SourceDescriptor(
        name="wikipedia_en", kind=SourceKind.WIKI_EVENT_LISTS, language="en"
    )
    records = load_source(FIXTURES / "obama" / "wikipedia_en.evl", descriptor)
    assert [p.title for p in records.pages] == ["2018 in the United States"]
    assert len(records.pages[0].lines) == 1


@pytest.mark.parametrize(
    "content,error",
    [
        ("T\twd:Q76\twd:P26\n", ParseError),  # missing object
        ("T\ta\tb\tc\td\te\tf\tg\n", ParseError),  # too many fields
        ("H\twd:Q1\n", ParseError),
        ("L\twd:Q76\ten\n", ParseError),
        ("T\twd:Q76\twd:P26\twd:Q13133\tnot-a-date\n", ParseError),
        ("X\ta\tb\n", SchemaError),
    ],
)
def test_kgsrc_malformed_lines(tmp_path, content, error):
    path = tmp_path / "bad.kgsrc"
    path.write_text("# header\n" + content, encoding="utf-8")
    with pytest.raises(error):
        load_source(path, kg_descriptor())


def test_kgsrc_parse_error_carries_line_and_path(tmp_path):
    path = tmp_path / "bad.kgsrc"
    path.write_text("\n\nH\tonly-one\n", encoding="utf-8")
    with pytest.raises(ParseError) as err:
        load_source(path, kg_descriptor())
    assert err.value.line == 3
    assert err.value.path == str(path)


def test_evl_event_before_group_rejected(tmp_path):
    path = tmp_path / "bad.evl"
    path.write_text("E\tsomething happened\n", encoding="utf-8")
    descriptor = SourceDescriptor(
        name="wikipedia_en", kind=SourceKind.WIKI_EVENT_LISTS, language="en"
    )
    with pytest.raises(ParseError):
        load_source(path, descriptor)


def test_page_iri_per_language_and_wcep():
    en = SourceDescriptor(name="wikipedia_en", kind=SourceKind.WIKI_EVENT_LISTS, language="en")
    assert page_iri(en, "2018 in Spain") == "http://en.wikipedia.org/wiki/2018_in_Spain"
    pt = SourceDescriptor(name="wikipedia_pt", kind=SourceKind.WIKI_CORPUS, language="pt")
    assert page_iri(pt, "Barack Obama") == "http://pt.wikipedia.org/wiki/Barack_Obama"
    wcep = SourceDescriptor(name="wcep", kind=SourceKind.WCEP)
    assert (
        page_iri(wcep, "2018 May 8")
        == "http://en.wikipedia.org/wiki/Portal:Current_events/2018_May_8"
    )


# -- language and mapping config -------------------------------------------------


def test_default_config_ships_english_rules():
    assert EN is not None
    assert EN.months["February"] == 2
    assert EN.event_category_pattern is not None
    assert CONFIG.language("xx") is None
    assert CONFIG.language(None) is None


def test_date_pattern_classes_must_stay_ordered():
    raw = {
        "language": "xx",
        "months": {"Jan": 1},
        "date_patterns": [
            {"class": "year", "pattern": r"(?P<year>\d{4})"},
            {"class": "date", "pattern": r"(?P<day>\d{1,2})"},
        ],
    }
    with pytest.raises(SchemaError):
        LanguageConfig.from_dict(raw)


def test_unknown_date_pattern_class_rejected():
    raw = {
        "language": "xx",
        "months": {},
        "date_patterns": [{"class": "week", "pattern": "x"}],
    }
    with pytest.raises(SchemaError):
        LanguageConfig.from_dict(raw)


def test_mapping_duplicate_row_rejected():
    row = MappingRow(canonical=expand("sem:hasPlace"), family="wikidata", source=WD + "P276")
    with pytest.raises(SchemaError):
        PredicateMapping([row, row], set())


def test_mapping_point_in_time_overlap_rejected():
    row = MappingRow(canonical=expand("sem:hasPlace"), family="wikidata", source=WD + "P585")
    with pytest.raises(SchemaError):
        PredicateMapping([row], {("wikidata", WD + "P585")})


def test_mapping_time_bounds():
    assert MAPPING.time_bounds("wikidata", WD + "P585") == (True, True)
    assert MAPPING.time_bounds("wikidata", WD + "P569") == (True, False)
    assert MAPPING.time_bounds("wikidata", WD + "P570") == (False, True)
    assert MAPPING.time_bounds("wikidata", WD + "P26") == (False, False)
    assert MAPPING.is_time_predicate("wikidata", WD + "P585")
    assert not MAPPING.is_time_predicate("wikidata", WD + "P26")


# -- title scopes and date expressions -------------------------------------------


def test_scope_from_title_variants():
    assert scope_from_title("2018 in the United States", EN) == DateScope(year=2018)
    assert scope_from_title("2011", EN) == DateScope(year=2011)
    assert scope_from_title("2018 May 8", EN) == DateScope(year=2018, month=5, day=8)
    assert scope_from_title("Main Page", EN) is None


@pytest.mark.parametrize(
    "text,scope,expected",
    [
        (
            "February 17 — April 23",
            DateScope(year=2011),
            TimeInterval(date(2011, 2, 17), date(2011, 4, 23)),
        ),
        (
            "February 17 - February 23",
            DateScope(year=2011),
            TimeInterval(date(2011, 2, 17), date(2011, 2, 23)),
        ),
        ("May 2 something happened", DateScope(year=2011), point(date(2011, 5, 2))),
        ("on 17 May 2011 exactly", None, point(date(2011, 5, 17))),
        ("17", DateScope(year=2011, month=2), point(date(2011, 2, 17))),
        (
            "in May 2011 broadly",
            None,
            TimeInterval(
                date(2011, 5, 1), date(2011, 5, 31), Precision.MONTH, Precision.MONTH
            ),
        ),
        (
            "back in 1979",
            None,
            TimeInterval(
                date(1979, 1, 1), date(1979, 12, 31), Precision.YEAR, Precision.YEAR
            ),
        ),
        ("no date at all", DateScope(year=2011), None),
    ],
)
def test_extract_date(text, scope, expected):
    assert extract_date(text, EN, scope) == expected


def test_extract_date_prefers_most_specific_class():
    # A full date is also a bare day number and a year; the date class wins.
    got = extract_date("May 2, 2011", EN, None)
    assert got == point(date(2011, 5, 2))


def test_extract_date_missing_scope_component_raises():
    with pytest.raises(ScopeError):
        extract_date("February 17", EN, None)  # no year anywhere
    with pytest.raises(ScopeError):
        extract_date("17", EN, DateScope(year=2011))  # day number needs a month


def test_extract_date_backwards_interval_raises():
    with pytest.raises(OrderViolation):
        extract_date("April 23 — February 17", EN, DateScope(year=2011))


def evl_descriptor():
    return SourceDescriptor(
        name="wikipedia_en", kind=SourceKind.WIKI_EVENT_LISTS, language="en"
    )


def test_parse_event_list_page_dates_and_strips_expression():
    page = EventListPage(
        "2018 in the United States",
        lines=[(4, "May 8 — [[wd:Q76|Barack Obama]] said something.")],
    )
    events = parse_event_list_page(page, EN, evl_descriptor())
    assert len(events) == 1
    event = events[0]
    assert event.time == point(date(2018, 5, 8))
    assert event.description == "Barack Obama said something."
    assert event.links == (WD + "Q76",)
    assert event.source_page == "http://en.wikipedia.org/wiki/2018_in_the_United_States"


def test_parse_event_list_page_undated_lines():
    # Incomplete scope: undated lines are dropped.
    yearly = EventListPage("2018 in the United States", lines=[(2, "nothing dated here")])
    assert parse_event_list_page(yearly, EN, evl_descriptor()) == []
    # Complete scope (a day page): undated lines inherit the page date.
    daily = EventListPage("2018 May 8", lines=[(2, "undated line text")])
    events = parse_event_list_page(daily, EN, evl_descriptor())
    assert len(events) == 1
    assert events[0].time == point(date(2018, 5, 8))
    assert events[0].description == "undated line text"


def test_parse_event_list_page_blacklisted_title_is_skipped():
    page = EventListPage(
        "Chronological list of the best events", lines=[(1, "May 8 — thing.")]
    )
    assert parse_event_list_page(page, EN, evl_descriptor()) == []


def test_parse_event_list_page_unmatched_title_raises():
    page = EventListPage("Assorted trivia", lines=[(1, "May 8 — thing.")])
    with pytest.raises(ScopeError):
        parse_event_list_page(page, EN, evl_descriptor())


def test_parse_event_list_page_skips_uncompletable_lines():
    page = EventListPage(
        "2018 in the United States",
        lines=[(1, "17 — a bare day number needs a month"), (2, "May 8 — kept.")],
    )
    events = parse_event_list_page(page, EN, evl_descriptor())
    assert [e.description for e in events] == ["kept."]


# -- event identification --------------------------------------------------------


def sweep_hierarchies(seed=0, count=120):
    rng = random.Random(seed)
    for _ in range(count):
        n = rng.randint(2, 14)
        nodes = [f"http://c.test/{i}" for i in range(n)]
        edges = []
        for i in range(n):
            for j in range(i + 1, n):
                if rng.random() < 0.3:
                    edges.append((nodes[j], nodes[i]))  # j below i: acyclic
        roots = tuple(rng.sample(nodes, rng.randint(1, 2)))
        blacklist = tuple(rng.sample(nodes, rng.randint(0, 2)))
        yield edges, roots, blacklist


def test_subclass_closure_matches_fixpoint_oracle():
    for edges, roots, blacklist in sweep_hierarchies():
        report = subclass_closure(edges, roots, blacklist)
        assert report.cycle_members == frozenset()
        assert report.classes == frozenset(closure_oracle(edges, roots, blacklist))


def test_subclass_closure_includes_roots_and_descendants():
    edges = [("http://c.test/b", "http://c.test/a"), ("http://c.test/c", "http://c.test/b")]
    report = subclass_closure(edges, ("http://c.test/a",))
    assert report.classes == {"http://c.test/a", "http://c.test/b", "http://c.test/c"}


def test_subclass_closure_blacklist_is_hereditary():
    a, b, c, d = (f"http://c.test/{x}" for x in "abcd")
    # c sits under blacklisted b but also directly under a; exclusion wins
    edges = [(b, a), (c, b), (c, a), (d, c)]
    report = subclass_closure(edges, (a,), (b,))
    assert report.classes == {a}


def test_subclass_closure_cycle_members_excluded_but_traversed():
    a, b, c = (f"http://c.test/{x}" for x in "abc")
    edges = [(b, a), (a, b), (c, b)]
    with pytest.warns(IntegrationWarning):
        report = subclass_closure(edges, (a,))
    assert report.cycle_members == {a, b}
    assert report.classes == {c}


def test_subclass_closure_self_loop_is_a_cycle():
    a, b = "http://c.test/a", "http://c.test/b"
    with pytest.warns(IntegrationWarning):
        report = subclass_closure([(a, a), (b, a)], (a,))
    assert report.cycle_members == {a}
    assert report.classes == {b}


def test_identify_events_wikidata_uses_occurrence_closure():
    records = load_source(FIXTURES / "obama" / "wikidata.kgsrc", kg_descriptor())
    events = identify_events(records, kg_descriptor(), CONFIG)
    assert events == {WD + "Q1424167", WD + "Q13426199", WD + "Q18511"}


def test_identify_events_wikidata_blacklist():
    records = KgRecords(
        hierarchy=[(WD + "Q7366", WD + "Q1190554")],  # song under the root
        instances=[("http://x.test/tune", WD + "Q7366")],
    )
    assert identify_events(records, kg_descriptor(), CONFIG) == set()


def test_identify_events_dbpedia_subtree():
    dbo = "http://dbpedia.org/ontology/"
    records = KgRecords(
        hierarchy=[(dbo + "MilitaryConflict", dbo + "Event")],
        instances=[
            ("http://dbpedia.org/resource/Some_battle", dbo + "MilitaryConflict"),
            ("http://dbpedia.org/resource/Some_person", dbo + "Person"),
        ],
    )
    descriptor = kg_descriptor(name="dbpedia_en", kind=SourceKind.KG_DBPEDIA)
    assert identify_events(records, descriptor, CONFIG) == {
        "http://dbpedia.org/resource/Some_battle"
    }


def test_identify_events_yago_never_contributes():
    records = KgRecords(
        hierarchy=[("http://yago-knowledge.org/resource/A", "http://yago-knowledge.org/resource/B")],
        instances=[("http://yago-knowledge.org/resource/x", "http://yago-knowledge.org/resource/A")],
    )
    descriptor = kg_descriptor(name="yago", kind=SourceKind.KG_YAGO)
    assert identify_events(records, descriptor, CONFIG) == set()


def test_identify_events_wiki_corpus_category_pattern():
    records = WikiRecords(
        pages={
            "Operation Eagle Claw": "http://en.wikipedia.org/wiki/Operation_Eagle_Claw",
            "Nicer Topic": "http://en.wikipedia.org/wiki/Nicer_Topic",
        },
        categories=[
            ("Operation Eagle Claw", "Cancelled projects and events"),
            ("Nicer Topic", "Biography articles"),
        ],
    )
    descriptor = SourceDescriptor(
        name="wikipedia_en", kind=SourceKind.WIKI_CORPUS, language="en"
    )
    assert identify_events(records, descriptor, CONFIG) == {
        "http://en.wikipedia.org/wiki/Operation_Eagle_Claw"
    }


def test_identify_events_wiki_corpus_respects_title_blacklist():
    records = WikiRecords(
        pages={"Chronological list of big events": "http://en.wikipedia.org/wiki/X"},
        categories=[("Chronological list of big events", "Huge events")],
    )
    descriptor = SourceDescriptor(
        name="wikipedia_en", kind=SourceKind.WIKI_CORPUS, language="en"
    )
    assert identify_events(records, descriptor, CONFIG) == set()


# -- relation extraction ---------------------------------------------------------


def test_map_predicate_basics():
    assert map_predicate(WD + "P276", False, MAPPING) == expand("sem:hasPlace")
    assert map_predicate(WD + "P26", False, MAPPING) is None  # unmapped
    # guarded row needs event endpoints
    assert map_predicate(WD + "P361", False, MAPPING) is None
    assert map_predicate(WD + "P361", True, MAPPING) == expand("so:hasSubEvent")
    assert (
        map_predicate("http://dbpedia.org/ontology/place", False, MAPPING, family="dbpedia")
        == expand("sem:hasPlace")
    )


def extraction(records, events=frozenset(), times=None, descriptor=None):
    return extract_relations(
        records,
        set(events),
        dict(times or {}),
        descriptor or kg_descriptor(),
        MAPPING,
    )


def test_extract_relations_consumes_time_predicates_as_entity_times():
    records = load_source(FIXTURES / "obama" / "wikidata.kgsrc", kg_descriptor())
    result = extraction(records)
    assert result.entity_times[WD + "Q76"] == TimeInterval(date(1961, 8, 4), None)
    assert result.entity_times[WD + "Q1424167"] == point(date(2009, 1, 20))
    assert all(r.predicate != WD + "P569" for r in result.relations)


def test_extract_relations_qualifier_times():
    records = load_source(FIXTURES / "obama" / "wikidata.kgsrc", kg_descriptor())
    result = extraction(records)
    spouse = [r for r in result.relations if r.predicate == WD + "P26"]
    assert len(spouse) == 1
    assert spouse[0].category == QUALIFIER_TIMED
    assert spouse[0].time == TimeInterval(date(1992, 10, 3), None)


def test_extract_relations_dbpedia_has_no_qualifier_times():
    triple_records = KgRecords()
    from chronokg.ingest.records import KgTriple

    triple_records.triples.append(
        KgTriple(
            "http://fr.dbpedia.org/resource/A",
            "http://fr.dbpedia.org/property/candidat",
            "http://fr.dbpedia.org/resource/B",
            point(date(2012, 11, 6)),
        )
    )
    descriptor = kg_descriptor(name="dbpedia_fr", kind=SourceKind.KG_DBPEDIA, language="fr")
    result = extraction(
        triple_records,
        events={"http://fr.dbpedia.org/resource/B"},
        descriptor=descriptor,
    )
    assert len(result.relations) == 1
    assert result.relations[0].category == TIME_INVOLVED
    assert result.relations[0].time is None


def test_extract_relations_structural_mapping_and_inversion():
    from chronokg.ingest.records import KgTriple

    records = KgRecords()
    records.triples.append(
        KgTriple(WD + "Q54109", WD + "P706", WD + "Q61")  # capitol sits in d.c.
    )
    records.triples.append(
        KgTriple(WD + "Q61", WD + "P36", WD + "Q54109")  # inverted direction
    )
    result = extraction(records)
    contained = expand("so:containedInPlace")
    rows = [(r.subject, r.predicate, r.obj, r.category) for r in result.relations]
    # Both directions normalize to the same containment statement.
    assert rows == [(WD + "Q54109", contained, WD + "Q61", STRUCTURAL)] * 2


def test_extract_relations_event_guard_blocks_sub_event():
    from chronokg.ingest.records import KgTriple

    records = KgRecords()
    records.triples.append(KgTriple(WD + "Q1", WD + "P361", WD + "Q2"))
    no_events = extraction(records)
    assert no_events.relations == []  # guard fails and nothing is time-involved

    both_events = extraction(records, events={WD + "Q1", WD + "Q2"})
    assert len(both_events.relations) == 1
    relation = both_events.relations[0]
    assert relation.predicate == expand("so:hasSubEvent")
    assert (relation.subject, relation.obj) == (WD + "Q2", WD + "Q1")  # inverted
    assert relation.category == STRUCTURAL


def test_extract_relations_time_involved_uses_global_knowledge():
    from chronokg.ingest.records import KgTriple

    records = KgRecords()
    records.triples.append(KgTriple(WD + "Q76", WD + "P793", WD + "Q1424167"))
    bare = extraction(records)
    assert bare.relations == []

    known = extraction(records, times={WD + "Q76": TimeInterval(date(1961, 8, 4), None)})
    assert len(known.relations) == 1
    assert known.relations[0].category == TIME_INVOLVED


def test_extract_relations_skips_plain_literals():
    from chronokg.ingest.records import KgTriple

    records = KgRecords()
    records.triples.append(
        KgTriple(WD + "Q76", WD + "P1559", Literal("Barack Obama"))
    )
    assert extraction(records, events={WD + "Q76"}).relations == []


def test_entity_times_earliest_begin_latest_end_and_order_fix():
    from chronokg.ingest.records import KgTriple

    records = KgRecords()
    records.triples.append(KgTriple(WD + "Q1", WD + "P580", date_literal(date(2001, 5, 1))))
    records.triples.append(KgTriple(WD + "Q1", WD + "P580", date_literal(date(2000, 1, 1))))
    records.triples.append(KgTriple(WD + "Q1", WD + "P582", date_literal(date(2003, 1, 1))))
    records.triples.append(KgTriple(WD + "Q1", WD + "P582", date_literal(date(2002, 1, 1))))
    records.triples.append(KgTriple(WD + "Q2", WD + "P580", date_literal(date(2005, 1, 1))))
    records.triples.append(KgTriple(WD + "Q2", WD + "P582", date_literal(date(1999, 1, 1))))
    result = extraction(records)
    assert result.entity_times[WD + "Q1"] == TimeInterval(date(2000, 1, 1), date(2003, 1, 1))
    # contradictory bounds: keep the start
    assert result.entity_times[WD + "Q2"] == TimeInterval(date(2005, 1, 1), None)


def test_entity_time_precision_survives():
    from chronokg.ingest.records import KgTriple

    records = KgRecords()
    records.triples.append(
        KgTriple(WD + "Q1", WD + "P580", date_literal(date(2001, 1, 1), Precision.YEAR))
    )
    result = extraction(records)
    time = result.entity_times[WD + "Q1"]
    assert time.start_precision is Precision.YEAR
