"""Candidate timeline entries: the temporal relations touching one entity."""

from __future__ import annotations

from dataclasses import dataclass

from ..errors import UnknownEntity
from ..tkg import TKG, TemporalRelation
from ..vocab import Iri


@dataclass(frozen=True)
class CandidateEntry:
    """One temporal relation considered for an entity's timeline.

    ``connected_entity`` is the endpoint opposite the timeline entity; for a
    self-relation both roles collapse onto the same identifier.
    """

    relation: TemporalRelation
    timeline_entity: Iri
    connected_entity: Iri

    @property
    def start(self):
        return self.relation.time.start

    @property
    def end(self):
        return self.relation.time.end


def collect_candidates(tkg: TKG, entity: Iri) -> list[CandidateEntry]:
    """Every temporal relation with ``entity`` as subject or object.

    Order follows the graph view's relation order (validity time, then
    relation id), so repeated calls are deterministic. Each relation node
    yields exactly one entry even when both endpoints are the entity.
    """
    if entity not in tkg.entities:
        raise UnknownEntity(f"not in graph {tkg.graph}: {entity}")
    entries = []
    for relation in tkg.relations:
        if relation.subject == entity:
            connected = relation.obj
        elif relation.obj == entity:
            connected = relation.subject
        else:
            continue
        entries.append(CandidateEntry(relation, entity, connected))
    return entries
