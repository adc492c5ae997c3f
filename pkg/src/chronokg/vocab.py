"""Namespaces, IRI handling and the vocabulary terms used in emitted graphs.

IRIs are plain strings throughout the package; :func:`expand` turns prefixed
names from fixture files into absolute IRIs and :func:`check_iri` enforces the
subset of the N-Quads IRI grammar we rely on.
"""

from __future__ import annotations

import re

from .errors import ParseError

Iri = str

# Core namespace table, emitted as the sidecar prefix file next to every
# serialized store.
NAMESPACES: dict[str, str] = {
    "so": "http://schema.org/",
    "dbo": "http://dbpedia.org/ontology/",
    "rdf": "http://www.w3.org/1999/02/22-rdf-syntax-ns#",
    "rdfs": "http://www.w3.org/2000/01/rdf-schema#",
    "dcterms": "http://purl.org/dc/terms/",
    "sem": "http://semanticweb.cs.vu.nl/2009/11/sem/",
    "eventKG-s": "http://eventKG.l3s.uni-hannover.de/schema/",
    "eventKG-r": "http://eventKG.l3s.uni-hannover.de/resource/",
    "eventKG-g": "http://eventKG.l3s.uni-hannover.de/graph/",
    "owl": "http://www.w3.org/2002/07/owl#",
    "xsd": "http://www.w3.org/2001/XMLSchema#",
    "void": "http://rdfs.org/ns/void#",
}

# Source-side namespaces accepted in fixture files.
SOURCE_NAMESPACES: dict[str, str] = {
    "wd": "http://www.wikidata.org/entity/",
    "dbr": "http://dbpedia.org/resource/",
    "dbfr": "http://fr.dbpedia.org/resource/",
    "dbpt": "http://pt.dbpedia.org/resource/",
    "dbde": "http://de.dbpedia.org/resource/",
    "prop-fr": "http://fr.dbpedia.org/property/",
    "prop-en": "http://dbpedia.org/property/",
    "yago": "http://yago-knowledge.org/resource/",
    "wiki-en": "http://en.wikipedia.org/wiki/",
    "wiki-pt": "http://pt.wikipedia.org/wiki/",
    "wiki-fr": "http://fr.wikipedia.org/wiki/",
    "wiki-de": "http://de.wikipedia.org/wiki/",
    "wcep": "http://en.wikipedia.org/wiki/Portal:Current_events/",
}

PREFIXES: dict[str, str] = {**NAMESPACES, **SOURCE_NAMESPACES}


def _ns(prefix: str, local: str) -> Iri:
    return PREFIXES[prefix] + local


# rdf / rdfs / owl / dcterms
RDF_TYPE = _ns("rdf", "type")
RDF_SUBJECT = _ns("rdf", "subject")
RDF_OBJECT = _ns("rdf", "object")
RDFS_LABEL = _ns("rdfs", "label")
OWL_SAMEAS = _ns("owl", "sameAs")
DCTERMS_ALTERNATIVE = _ns("dcterms", "alternative")
DCTERMS_DESCRIPTION = _ns("dcterms", "description")
DCTERMS_CREATED = _ns("dcterms", "created")
DCTERMS_REFERENCES = _ns("dcterms", "references")
VOID_DATASET = _ns("void", "Dataset")

# sem event model
SEM_CORE = _ns("sem", "Core")
SEM_EVENT = _ns("sem", "Event")
SEM_PLACE = _ns("sem", "Place")
SEM_ACTOR = _ns("sem", "Actor")
SEM_HAS_BEGIN = _ns("sem", "hasBeginTimeStamp")
SEM_HAS_END = _ns("sem", "hasEndTimeStamp")
SEM_HAS_PLACE = _ns("sem", "hasPlace")
SEM_ROLE_TYPE = _ns("sem", "roleType")

# schema.org event structure
SO_HAS_SUB_EVENT = _ns("so", "hasSubEvent")
SO_PREVIOUS_EVENT = _ns("so", "previousEvent")
SO_NEXT_EVENT = _ns("so", "nextEvent")
SO_CONTAINED_IN_PLACE = _ns("so", "containedInPlace")

# own schema terms
EKG_RELATION = _ns("eventKG-s", "Relation")
EKG_LINKS = _ns("eventKG-s", "links")
EKG_MENTIONS = _ns("eventKG-s", "mentions")
EKG_EXTRACTED_FROM = _ns("eventKG-s", "extractedFrom")

RESOURCE_NS = PREFIXES["eventKG-r"]
GRAPH_NS = PREFIXES["eventKG-g"]
WIKIDATA_NS = PREFIXES["wd"]
DBO_NS = PREFIXES["dbo"]

# xsd datatypes for literals
XSD_DATE = _ns("xsd", "date")
XSD_GYEAR = _ns("xsd", "gYear")
XSD_GYEARMONTH = _ns("xsd", "gYearMonth")
XSD_INTEGER = _ns("xsd", "integer")

FUSED_GRAPH = GRAPH_NS + "event_kg"

# Absolute IRI with a scheme, no whitespace/angle brackets/quotes (the
# characters N-Quads forbids unescaped inside an IRIREF).
_IRI_RE = re.compile(r"^[A-Za-z][A-Za-z0-9+.-]*:[^\x00-\x20<>\"{}|^`\\]*$")
_PREFIXED_RE = re.compile(r"^([A-Za-z][\w.-]*):(\S*)$")


def is_valid_iri(text: str) -> bool:
    return bool(_IRI_RE.match(text))


def check_iri(text: str) -> Iri:
    if not is_valid_iri(text):
        raise ParseError(f"not a valid IRI: {text!r}")
    return text


def expand(name: str, line: int | None = None) -> Iri:
    """Expand a prefixed name using the registered prefixes.

    Full IRIs (anything with ``://`` or an unknown scheme that still parses as
    an absolute IRI) pass through unchanged.
    """
    m = _PREFIXED_RE.match(name)
    if m and m.group(1) in PREFIXES:
        iri = PREFIXES[m.group(1)] + m.group(2)
        if not is_valid_iri(iri):
            raise ParseError(f"prefixed name expands to invalid IRI: {name!r}", line)
        return iri
    if is_valid_iri(name):
        return name
    raise ParseError(f"not an IRI or known prefixed name: {name!r}", line)


def compact(iri: Iri) -> str:
    """Best-effort inverse of :func:`expand`, for report output."""
    best = ""
    best_prefix = None
    for prefix, ns in PREFIXES.items():
        if iri.startswith(ns) and len(ns) > len(best):
            best = ns
            best_prefix = prefix
    if best_prefix is None:
        return iri
    return f"{best_prefix}:{iri[len(best):]}"


def graph_iri(short_name: str) -> Iri:
    """Named-graph IRI for a short graph name like ``wikidata``."""
    if ":" in short_name:
        return expand(short_name)
    return GRAPH_NS + short_name


def graph_language(graph: Iri) -> str | None:
    """Language code of a per-language wiki graph, if the IRI encodes one."""
    if graph.startswith(GRAPH_NS):
        local = graph[len(GRAPH_NS):]
        for stem in ("wikipedia_", "dbpedia_"):
            if local.startswith(stem):
                return local[len(stem):]
    return None
