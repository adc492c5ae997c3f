"""Event identification per source kind.

Knowledge graphs identify events through class hierarchies (instances of the
transitive subclass closure of configured event roots, minus a hereditary
blacklist); the Wikipedia corpus identifies them by category name patterns.
YAGO and the event-list sources never contribute identified events.
"""

from __future__ import annotations

import warnings
from dataclasses import dataclass

from ..errors import IntegrationWarning
from ..vocab import Iri
from .config import PipelineConfig
from .records import EventListRecords, KgRecords, SourceDescriptor, SourceKind, WikiRecords


@dataclass(frozen=True)
class ClosureReport:
    classes: frozenset[Iri]
    cycle_members: frozenset[Iri]


def subclass_closure(
    hierarchy: list[tuple[Iri, Iri]],
    roots: tuple[Iri, ...] | frozenset[Iri],
    blacklist: tuple[Iri, ...] | frozenset[Iri] = (),
) -> ClosureReport:
    """Classes reachable downward from the roots, minus the blacklist subtree.

    ``hierarchy`` holds (sub, super) edges. The blacklist is hereditary: a
    blacklisted class and everything below it is excluded no matter how else
    it connects to a root. Classes sitting on a cycle reachable from a root
    are excluded from the result (and reported) but traversal continues
    through them, so their acyclic descendants are still found.
    """
    children: dict[Iri, list[Iri]] = {}
    for sub, sup in hierarchy:
        children.setdefault(sup, []).append(sub)

    def reach(starts) -> set[Iri]:
        seen: set[Iri] = set()
        stack = list(starts)
        while stack:
            node = stack.pop()
            if node in seen:
                continue
            seen.add(node)
            stack.extend(children.get(node, ()))
        return seen

    reachable = reach(roots)
    banned = reach(blacklist)

    cycle_members = _cycle_members(children, reachable)
    classes = frozenset(reachable - banned - cycle_members)
    if cycle_members:
        warnings.warn(
            f"subclass hierarchy contains cycles; excluded classes: "
            f"{sorted(cycle_members)}",
            IntegrationWarning,
            stacklevel=2,
        )
    return ClosureReport(classes=classes, cycle_members=frozenset(cycle_members))


def _cycle_members(children: dict[Iri, list[Iri]], universe: set[Iri]) -> set[Iri]:
    """Nodes of ``universe`` on a directed cycle, via iterative Tarjan SCC."""
    index: dict[Iri, int] = {}
    low: dict[Iri, int] = {}
    on_stack: set[Iri] = set()
    stack: list[Iri] = []
    counter = [0]
    result: set[Iri] = set()

    for start in sorted(universe):
        if start in index:
            continue
        work = [(start, iter(sorted(c for c in children.get(start, ()) if c in universe)))]
        index[start] = low[start] = counter[0]
        counter[0] += 1
        stack.append(start)
        on_stack.add(start)
        while work:
            node, it = work[-1]
            advanced = False
            for child in it:
                if child not in index:
                    index[child] = low[child] = counter[0]
                    counter[0] += 1
                    stack.append(child)
                    on_stack.add(child)
                    work.append(
                        (
                            child,
                            iter(
                                sorted(
                                    c for c in children.get(child, ()) if c in universe
                                )
                            ),
                        )
                    )
                    advanced = True
                    break
                if child in on_stack:
                    low[node] = min(low[node], index[child])
            if advanced:
                continue
            work.pop()
            if work:
                parent = work[-1][0]
                low[parent] = min(low[parent], low[node])
            if low[node] == index[node]:
                component = []
                while True:
                    member = stack.pop()
                    on_stack.discard(member)
                    component.append(member)
                    if member == node:
                        break
                if len(component) > 1:
                    result.update(component)
                elif any(
                    component[0] == c
                    for c in children.get(component[0], ())
                ):  # self-loop
                    result.update(component)
    return result


def identify_events(
    records,
    descriptor: SourceDescriptor,
    config: PipelineConfig,
) -> set[Iri]:
    """Source-local IRIs of resources this source identifies as events."""
    kind = descriptor.kind
    if kind is SourceKind.KG_WIKIDATA:
        assert isinstance(records, KgRecords)
        report = subclass_closure(
            records.hierarchy,
            config.identification.wikidata_event_roots,
            config.identification.wikidata_class_blacklist,
        )
        return {inst for inst, cls in records.instances if cls in report.classes}
    if kind is SourceKind.KG_DBPEDIA:
        assert isinstance(records, KgRecords)
        report = subclass_closure(records.hierarchy, (config.identification.dbpedia_event_root,))
        return {inst for inst, cls in records.instances if cls in report.classes}
    if kind is SourceKind.KG_YAGO:
        return set()
    if kind is SourceKind.WIKI_CORPUS:
        assert isinstance(records, WikiRecords)
        lang = config.language(descriptor.language)
        if lang is None or lang.event_category_pattern is None:
            return set()
        blacklisted = lang.blacklist_title_prefixes
        matching_titles = {
            title
            for title, category in records.categories
            if lang.event_category_pattern.fullmatch(category)
            and not any(title.startswith(p) for p in blacklisted)
        }
        return {
            entity
            for title, entity in records.pages.items()
            if title in matching_titles
        }
    assert isinstance(records, EventListRecords)
    return set()
