"""Named-graph quad store with canonical N-Quads serialization.

The store is the provenance backbone: every statement lives in the named
graph of the source (or the fused graph) and nothing is ever overwritten,
only added. Emission is sorted and escaping is canonical, so serializing,
parsing and serializing again is byte-identical.
"""

from __future__ import annotations

import io
import re
from dataclasses import dataclass
from datetime import date
from pathlib import Path
from typing import Iterable, Iterator

from .errors import ParseError, UnknownGraph
from .interval import Precision, format_date, parse_date_literal
from .vocab import (
    DCTERMS_CREATED,
    NAMESPACES,
    XSD_DATE,
    XSD_GYEAR,
    XSD_GYEARMONTH,
    XSD_INTEGER,
    Iri,
    check_iri,
)


@dataclass(frozen=True)
class Literal:
    """RDF literal: lexical form plus optional datatype or language tag."""

    lexical: str
    datatype: Iri | None = None
    language: str | None = None

    def __post_init__(self) -> None:
        if self.datatype is not None and self.language is not None:
            raise ParseError("literal cannot carry both datatype and language")


def date_literal(value: date, precision: Precision = Precision.DAY) -> Literal:
    datatype = {
        Precision.DAY: XSD_DATE,
        Precision.MONTH: XSD_GYEARMONTH,
        Precision.YEAR: XSD_GYEAR,
    }[precision]
    return Literal(format_date(value, precision), datatype)


def parse_date_object(obj: "Term") -> tuple[date, Precision] | None:
    """Read back a date literal written by :func:`date_literal`."""
    if not isinstance(obj, Literal) or obj.datatype not in (
        XSD_DATE,
        XSD_GYEAR,
        XSD_GYEARMONTH,
    ):
        return None
    return parse_date_literal(obj.lexical)


def integer_literal(value: int) -> Literal:
    return Literal(str(int(value)), XSD_INTEGER)


def text_literal(text: str, language: str | None = None) -> Literal:
    return Literal(text, language=language)


Term = Iri | Literal


@dataclass(frozen=True)
class Quad:
    subject: Iri
    predicate: Iri
    obj: Term
    graph: Iri

    def sort_key(self) -> tuple[str, str, str, str]:
        return (self.graph, self.subject, self.predicate, serialize_term(self.obj))


_ESCAPES = {"\\": "\\\\", '"': '\\"', "\n": "\\n", "\r": "\\r", "\t": "\\t"}


def _escape(text: str) -> str:
    return "".join(_ESCAPES.get(ch, ch) for ch in text)


_UNESCAPES = {"\\": "\\", '"': '"', "n": "\n", "r": "\r", "t": "\t", "'": "'"}


def _unescape(text: str, line: int | None = None) -> str:
    out = []
    i = 0
    while i < len(text):
        ch = text[i]
        if ch != "\\":
            out.append(ch)
            i += 1
            continue
        if i + 1 >= len(text):
            raise ParseError("dangling escape in literal", line)
        nxt = text[i + 1]
        if nxt in _UNESCAPES:
            out.append(_UNESCAPES[nxt])
            i += 2
        elif nxt == "u":
            out.append(chr(int(text[i + 2 : i + 6], 16)))
            i += 6
        elif nxt == "U":
            out.append(chr(int(text[i + 2 : i + 10], 16)))
            i += 10
        else:
            raise ParseError(f"unknown escape \\{nxt}", line)
    return "".join(out)


def serialize_term(term: Term) -> str:
    if isinstance(term, Literal):
        base = f'"{_escape(term.lexical)}"'
        if term.language:
            return f"{base}@{term.language}"
        if term.datatype:
            return f"{base}^^<{term.datatype}>"
        return base
    return f"<{term}>"


class QuadStore:
    """Append-only set of quads in named graphs.

    Graphs carry optional creation dates in a registry; iteration is always
    sorted by (graph, subject, predicate, object). ``freeze`` makes the store
    immutable once construction is done.
    """

    def __init__(self) -> None:
        self._quads: set[Quad] = set()
        self._graphs: dict[Iri, date | None] = {}
        self._frozen = False
        self._sorted: list[Quad] | None = None

    # -- construction ------------------------------------------------------

    def register_graph(self, graph: Iri, created: date | None = None) -> None:
        self._check_mutable()
        check_iri(graph)
        previous = self._graphs.get(graph)
        if previous is not None and created is not None and previous != created:
            raise ParseError(
                f"graph {graph} registered twice with different creation dates"
            )
        if graph not in self._graphs or created is not None:
            self._graphs[graph] = created

    def add(self, quad: Quad) -> None:
        self._check_mutable()
        if quad.graph not in self._graphs:
            self.register_graph(quad.graph)
        if quad.subject == quad.graph and quad.predicate == DCTERMS_CREATED:
            parsed = parse_date_object(quad.obj)
            if parsed is not None and self._graphs.get(quad.graph) is None:
                self._graphs[quad.graph] = parsed[0]
        self._quads.add(quad)
        self._sorted = None

    def add_all(self, quads: Iterable[Quad]) -> None:
        for quad in quads:
            self.add(quad)

    def freeze(self) -> "QuadStore":
        self._frozen = True
        return self

    def _check_mutable(self) -> None:
        if self._frozen:
            raise ParseError("store is frozen")

    # -- access ------------------------------------------------------------

    def __len__(self) -> int:
        return len(self._quads)

    def __iter__(self) -> Iterator[Quad]:
        if self._sorted is None:
            self._sorted = sorted(self._quads, key=Quad.sort_key)
        return iter(self._sorted)

    def __contains__(self, quad: Quad) -> bool:
        return quad in self._quads

    def graphs(self) -> list[Iri]:
        return sorted(self._graphs)

    def created(self, graph: Iri) -> date | None:
        self.require_graph(graph)
        return self._graphs[graph]

    def require_graph(self, graph: Iri) -> None:
        if graph not in self._graphs:
            raise UnknownGraph(f"unknown graph: {graph}")


def quad_match(
    store: QuadStore,
    subject: Iri | None = None,
    predicate: Iri | None = None,
    obj: Term | None = None,
    graph: Iri | None = None,
) -> list[Quad]:
    """All quads matching the pattern; ``None`` is a wildcard.

    Results come back sorted by (graph, subject, predicate, object).
    """
    return [
        q
        for q in store
        if (subject is None or q.subject == subject)
        and (predicate is None or q.predicate == predicate)
        and (obj is None or q.obj == obj)
        and (graph is None or q.graph == graph)
    ]


# -- N-Quads serialization ---------------------------------------------------


def write_nquads(store: QuadStore, out: io.TextIOBase) -> None:
    for quad in store:
        out.write(
            f"<{quad.subject}> <{quad.predicate}> "
            f"{serialize_term(quad.obj)} <{quad.graph}> .\n"
        )


def dumps_nquads(store: QuadStore) -> str:
    buf = io.StringIO()
    write_nquads(store, buf)
    return buf.getvalue()


_IRIREF = r"<([^\x00-\x20<>\"{}|^`\\]*)>"
_LITERAL = r'"((?:[^"\\]|\\.)*)"(?:\^\^' + _IRIREF + r"|@([A-Za-z][A-Za-z0-9-]*))?"
_QUAD_RE = re.compile(
    rf"^{_IRIREF}\s+{_IRIREF}\s+(?:{_IRIREF}|{_LITERAL})\s+{_IRIREF}\s*\.\s*$"
)


def parse_nquads_line(text: str, line: int | None = None) -> Quad | None:
    stripped = text.strip()
    if not stripped or stripped.startswith("#"):
        return None
    m = _QUAD_RE.match(stripped)
    if not m:
        raise ParseError(f"malformed N-Quads line: {stripped!r}", line)
    subject, predicate, obj_iri, lexical, datatype, lang, graph = m.groups()
    obj: Term
    if obj_iri is not None:
        obj = check_iri(obj_iri)
    else:
        obj = Literal(_unescape(lexical, line), datatype, lang)
    return Quad(check_iri(subject), check_iri(predicate), obj, check_iri(graph))


def read_nquads(lines: Iterable[str], path: str | None = None) -> QuadStore:
    store = QuadStore()
    for number, text in enumerate(lines, start=1):
        try:
            quad = parse_nquads_line(text, number)
        except ParseError as exc:
            raise ParseError(str(exc.args[0]), number, path) from None
        if quad is not None:
            store.add(quad)
    return store


def loads_nquads(text: str) -> QuadStore:
    # Not str.splitlines: IRIs may legally contain \x85 /  -style
    # separators, and files are split on plain newlines anyway.
    return read_nquads(text.split("\n"))


def save_store(store: QuadStore, path: str | Path, prefixes: bool = True) -> None:
    path = Path(path)
    with path.open("w", encoding="utf-8", newline="\n") as handle:
        write_nquads(store, handle)
    if prefixes:
        write_prefix_sidecar(prefix_sidecar_path(path))


def load_store(path: str | Path) -> QuadStore:
    path = Path(path)
    with path.open("r", encoding="utf-8") as handle:
        return read_nquads(handle, str(path)).freeze()


def prefix_sidecar_path(store_path: str | Path) -> Path:
    return Path(str(store_path) + ".prefixes")


def write_prefix_sidecar(path: str | Path) -> None:
    """Emit the namespace prefix table as ``prefix<TAB>namespace`` lines."""
    with Path(path).open("w", encoding="utf-8", newline="\n") as handle:
        for prefix, namespace in NAMESPACES.items():
            handle.write(f"{prefix}\t{namespace}\n")
