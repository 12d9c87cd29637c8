"""Displacement detection and itinerary-relation assembly.

A n-ary relation becomes an itinerary relation iff its predicate is a motion
verb AND at least one of its object/oblique arguments contains a spatial
entity (the polysemy filter: "il a quitté sa femme" has the verb but no
spatial entity, so no displacement is read).  Prepositions assign roles
first (de/depuis -> origin, vers/pour/à -> destination, par -> intermediate);
the bare-object entity falls to the verb polarity's default side.
"""

from __future__ import annotations

from dataclasses import dataclass
from typing import NamedTuple, Optional, Sequence

from .depgraph import NoMainVerb, SentenceGraph, TokenSpan, root_verb
from .entities import (SpatialEntity, TemporalEntity, recognize_spatial,
                       recognize_temporal)
from .lexicon import LexiconSet, VerbPolarity, motion_polarity, normalize
from .nary import Argument, NaryRelation, extract_nary

ORIGIN_PREPS = frozenset({"de", "depuis", "dès"})
DESTINATION_PREPS = frozenset({"vers", "pour", "à", "jusque", "jusqu à", "en"})
INTERMEDIATE_PREPS = frozenset({"par", "via"})

_POLARITY_DEFAULT = {
    VerbPolarity.INITIAL: "origin",
    VerbPolarity.MEDIAN: "intermediate",
    VerbPolarity.FINAL: "destination",
}


@dataclass(frozen=True)
class ItineraryRelation:
    verb_lemma: str
    polarity: VerbPolarity
    actor: Optional[Argument]
    origin: tuple[SpatialEntity, ...]
    intermediate: tuple[SpatialEntity, ...]
    destination: tuple[SpatialEntity, ...]
    temporal: tuple[TemporalEntity, ...]
    source_nary: NaryRelation
    sent_id: str

    def __post_init__(self):
        if not (self.origin or self.intermediate or self.destination):
            raise ValueError("itinerary relation needs at least one "
                             "spatial entity")


class RoleAssignment(NamedTuple):
    origin: tuple[SpatialEntity, ...]
    intermediate: tuple[SpatialEntity, ...]
    destination: tuple[SpatialEntity, ...]
    defaulted: tuple[str, ...]  # roles placed by polarity default only


def assign_roles(polarity: VerbPolarity,
                 es_args: Sequence[tuple[str, Sequence[SpatialEntity]]]
                 ) -> RoleAssignment:
    """Distribute the spatial entities of role-labeled arguments over
    origin/intermediate/destination.  Prepositions win; the polarity default
    only places unmarked (direct object or unknown-preposition) entities."""
    buckets: dict[str, list[SpatialEntity]] = {
        "origin": [], "intermediate": [], "destination": []}
    defaulted: list[str] = []
    for role, entities in es_args:
        prep = normalize(role)
        if prep in ORIGIN_PREPS:
            side = "origin"
        elif prep in DESTINATION_PREPS:
            side = "destination"
        elif prep in INTERMEDIATE_PREPS:
            side = "intermediate"
        else:
            side = _POLARITY_DEFAULT[polarity]
            if prep != "obj":
                defaulted.append(role)
        buckets[side].extend(entities)
    return RoleAssignment(tuple(buckets["origin"]),
                          tuple(buckets["intermediate"]),
                          tuple(buckets["destination"]),
                          tuple(defaulted))


def _recognition_span(arg: Argument) -> TokenSpan:
    """Argument span widened to take back its case-marking preposition, so
    that marker-led entities ("depuis deux semaines") stay recognizable."""
    if arg.case_marker is not None and arg.case_marker == arg.span.first - 1:
        return TokenSpan(arg.case_marker, arg.span.last)
    return arg.span


def detect_displacement(relation: NaryRelation, g: SentenceGraph,
                        lex: LexiconSet,
                        loose: bool = False) -> Optional[ItineraryRelation]:
    """Itinerary relation for a n-ary relation, or None.

    Present iff the predicate is a motion verb and at least one non-subject
    argument carries a spatial entity.
    """
    polarity = motion_polarity(lex, relation.predicate_lemma)
    if polarity is None:
        return None
    actor: Optional[Argument] = None
    es_args: list[tuple[str, list[SpatialEntity]]] = []
    temporal: list[TemporalEntity] = []
    for arg in relation.arguments:
        span = _recognition_span(arg)
        spatial = recognize_spatial(g, span, lex, loose)
        temporal.extend(recognize_temporal(g, span, lex))
        if arg.role == "subj":
            if actor is None:
                actor = arg
            continue  # the subject is the actor, never a route constituent
        if spatial:
            es_args.append((arg.role, spatial))
    if not es_args:
        return None
    origin, intermediate, destination, _ = assign_roles(polarity, es_args)
    return ItineraryRelation(verb_lemma=relation.predicate_lemma,
                             polarity=polarity, actor=actor,
                             origin=origin, intermediate=intermediate,
                             destination=destination,
                             temporal=tuple(temporal),
                             source_nary=relation, sent_id=relation.sent_id)


@dataclass(frozen=True)
class SkipRecord:
    sent_id: str
    reason: str


def extract_itineraries(corpus: Sequence[SentenceGraph], lex: LexiconSet,
                        loose: bool = False,
                        report: Optional[list[SkipRecord]] = None
                        ) -> list[ItineraryRelation]:
    """Itinerary relations over a corpus, sentence granularity, input order.

    Per-sentence problems (no main verb) go into ``report`` when given and
    never abort the corpus.
    """
    out: list[ItineraryRelation] = []
    for g in corpus:
        try:
            root_verb(g)
        except NoMainVerb:
            if report is not None:
                report.append(SkipRecord(g.sent_id, "no main verb"))
            continue
        for relation in extract_nary(g, lex):
            found = detect_displacement(relation, g, lex, loose)
            if found is not None:
                out.append(found)
    return out
