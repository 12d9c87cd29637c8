"""Extraction document assembly and the JSON / Turtle serializers.

JSON is the canonical machine format and round-trips exactly; Turtle is a
one-way projection using the n-ary reification pattern: one instance node
per itinerary relation, one property per role.
"""

from __future__ import annotations

import hashlib
import json
import re
from dataclasses import dataclass
from pathlib import Path
from typing import Optional, Sequence

from .depgraph import NoMainVerb, SentenceGraph, TokenSpan, parse_conllu, root_verb
from .entities import SpatialEntity, TemporalEntity
from .itinerary import (ItineraryRelation, SkipRecord, detect_displacement)
from .lexicon import (FILE_NAMES, LexiconSet, SpatialRelationKind,
                      TemporalRelationKind, VerbPolarity, load_lexicons)
from .nary import Argument, NaryRelation, UseCaseKind, extract_nary

TOOL_VERSION = "0.1.0"


@dataclass(frozen=True)
class SentenceResult:
    sent_id: str
    text: str
    nary_relations: tuple[NaryRelation, ...]
    itinerary_relations: tuple[ItineraryRelation, ...]
    skips: tuple[str, ...]


@dataclass(frozen=True)
class ExtractionDocument:
    tool_version: str
    lexicon_fingerprint: str
    sentences: tuple[SentenceResult, ...]


def lexicon_fingerprint(directory) -> str:
    """Content hash of the five lexicon files; changes iff any byte does."""
    digest = hashlib.sha256()
    directory = Path(directory)
    for name in FILE_NAMES:
        digest.update(name.encode("utf-8"))
        digest.update(b"\x00")
        digest.update((directory / name).read_bytes())
        digest.update(b"\x00")
    return digest.hexdigest()


def build_document(graphs: Sequence[SentenceGraph], lex: LexiconSet,
                   loose: bool = False,
                   fingerprint: str = "") -> ExtractionDocument:
    sentences = []
    for g in graphs:
        skips: list[str] = []
        narys: tuple[NaryRelation, ...] = ()
        itins: list[ItineraryRelation] = []
        try:
            root_verb(g)
        except NoMainVerb:
            skips.append("no main verb")
        else:
            narys = tuple(extract_nary(g, lex))
            for r in narys:
                found = detect_displacement(r, g, lex, loose)
                if found is not None:
                    itins.append(found)
        sentences.append(SentenceResult(
            sent_id=g.sent_id, text=g.text, nary_relations=narys,
            itinerary_relations=tuple(itins), skips=tuple(skips)))
    return ExtractionDocument(tool_version=TOOL_VERSION,
                              lexicon_fingerprint=fingerprint,
                              sentences=tuple(sentences))


def run_extract(conllu_text: str, lexicon_dir,
                loose: bool = False) -> ExtractionDocument:
    """End-to-end driver: CoNLL-U text + lexicon directory -> document."""
    lex = load_lexicons(lexicon_dir)
    graphs = parse_conllu(conllu_text)
    return build_document(graphs, lex, loose=loose,
                          fingerprint=lexicon_fingerprint(lexicon_dir))


# --- JSON ------------------------------------------------------------------

def _span_dict(span: TokenSpan) -> dict:
    return {"first": span.first, "last": span.last}


def _argument_dict(a: Argument) -> dict:
    return {"role": a.role, "text": a.text, **_span_dict(a.span),
            "pivot": a.pivot, "order": a.order,
            "case_marker": a.case_marker, "flagged": a.flagged}


def _spatial_dict(e: SpatialEntity) -> dict:
    return {"kind": e.kind.value, "text": e.text, **_span_dict(e.span),
            "anchors": list(e.anchors),
            "magnitude": ({"value": e.magnitude[0], "unit": e.magnitude[1]}
                          if e.magnitude else None),
            "direction": e.direction, "loose": e.loose}


def _temporal_dict(e: TemporalEntity) -> dict:
    return {"kind": e.kind.value, "text": e.text, **_span_dict(e.span),
            "magnitude": ({"value": e.magnitude[0], "unit": e.magnitude[1]}
                          if e.magnitude else None),
            "anchor_text": e.anchor_text}


def _nary_dict(r: NaryRelation) -> dict:
    return {"use_case": r.use_case.value,
            "predicate_lemma": r.predicate_lemma,
            "predicate_token": r.predicate_token,
            "arguments": [_argument_dict(a) for a in r.arguments]}


def _itinerary_dict(r: ItineraryRelation, narys: Sequence[NaryRelation]) -> dict:
    return {"verb_lemma": r.verb_lemma, "polarity": r.polarity.value,
            "actor": _argument_dict(r.actor) if r.actor else None,
            "origin": [_spatial_dict(e) for e in r.origin],
            "intermediate": [_spatial_dict(e) for e in r.intermediate],
            "destination": [_spatial_dict(e) for e in r.destination],
            "temporal": [_temporal_dict(e) for e in r.temporal],
            "source_nary": list(narys).index(r.source_nary)}


def to_json(doc: ExtractionDocument) -> str:
    """Stable-order, exact-round-trip JSON rendering of a document."""
    obj = {
        "tool_version": doc.tool_version,
        "lexicon_fingerprint": doc.lexicon_fingerprint,
        "sentences": [
            {"sent_id": s.sent_id, "text": s.text,
             "nary_relations": [_nary_dict(r) for r in s.nary_relations],
             "itinerary_relations": [
                 _itinerary_dict(r, s.nary_relations)
                 for r in s.itinerary_relations],
             "skips": list(s.skips)}
            for s in doc.sentences],
    }
    return json.dumps(obj, ensure_ascii=False, indent=2) + "\n"


def _argument_from(d: dict) -> Argument:
    return Argument(span=TokenSpan(d["first"], d["last"]), text=d["text"],
                    role=d["role"], pivot=d["pivot"], order=d["order"],
                    case_marker=d["case_marker"], flagged=d["flagged"])


def _magnitude_from(d: Optional[dict]):
    return (d["value"], d["unit"]) if d else None


def _spatial_from(d: dict) -> SpatialEntity:
    return SpatialEntity(span=TokenSpan(d["first"], d["last"]),
                         kind=SpatialRelationKind(d["kind"]),
                         anchors=tuple(d["anchors"]),
                         magnitude=_magnitude_from(d["magnitude"]),
                         direction=d["direction"], text=d["text"],
                         loose=d["loose"])


def _temporal_from(d: dict) -> TemporalEntity:
    return TemporalEntity(span=TokenSpan(d["first"], d["last"]),
                          kind=TemporalRelationKind(d["kind"]),
                          magnitude=_magnitude_from(d["magnitude"]),
                          anchor_text=d["anchor_text"], text=d["text"])


def _nary_from(d: dict, sent_id: str) -> NaryRelation:
    return NaryRelation(use_case=UseCaseKind(d["use_case"]),
                        predicate_lemma=d["predicate_lemma"],
                        predicate_token=d["predicate_token"],
                        arguments=tuple(_argument_from(a)
                                        for a in d["arguments"]),
                        sent_id=sent_id)


def from_json(text: str) -> ExtractionDocument:
    """Inverse of :func:`to_json`."""
    obj = json.loads(text)
    sentences = []
    for s in obj["sentences"]:
        narys = tuple(_nary_from(d, s["sent_id"]) for d in s["nary_relations"])
        itins = []
        for d in s["itinerary_relations"]:
            itins.append(ItineraryRelation(
                verb_lemma=d["verb_lemma"],
                polarity=VerbPolarity(d["polarity"]),
                actor=_argument_from(d["actor"]) if d["actor"] else None,
                origin=tuple(_spatial_from(e) for e in d["origin"]),
                intermediate=tuple(_spatial_from(e) for e in d["intermediate"]),
                destination=tuple(_spatial_from(e) for e in d["destination"]),
                temporal=tuple(_temporal_from(e) for e in d["temporal"]),
                source_nary=narys[d["source_nary"]],
                sent_id=s["sent_id"]))
        sentences.append(SentenceResult(
            sent_id=s["sent_id"], text=s["text"], nary_relations=narys,
            itinerary_relations=tuple(itins), skips=tuple(s["skips"])))
    return ExtractionDocument(tool_version=obj["tool_version"],
                              lexicon_fingerprint=obj["lexicon_fingerprint"],
                              sentences=tuple(sentences))


# --- Turtle ----------------------------------------------------------------

_IRI_OK = re.compile(r'^[A-Za-z][A-Za-z0-9+.\-]*:[^\s<>"{}|^`\\]*$')

_TTL_ESCAPES = {"\\": "\\\\", '"': '\\"', "\n": "\\n", "\r": "\\r",
                "\t": "\\t"}


def _lit(value: str) -> str:
    return '"' + "".join(_TTL_ESCAPES.get(c, c) for c in value) + '"'


def _entity_node(e, indent: str) -> str:
    pairs = [("itx:kind", _lit(e.kind.value)), ("itx:text", _lit(e.text))]
    if isinstance(e, SpatialEntity):
        pairs += [("itx:anchor", _lit(a)) for a in e.anchors]
        if e.direction:
            pairs.append(("itx:direction", _lit(e.direction)))
    else:
        pairs.append(("itx:reference", _lit(e.anchor_text)))
    if e.magnitude:
        pairs.append(("itx:magnitudeValue", str(e.magnitude[0])))
        pairs.append(("itx:magnitudeUnit", _lit(e.magnitude[1])))
    inner = (" ;\n" + indent + "  ").join(f"{p} {o}" for p, o in pairs)
    return "[ " + inner + " ]"


def to_turtle(doc: ExtractionDocument, base_iri: str) -> str:
    """Reified Turtle projection: one instance node per itinerary relation,
    one property per role, spatial/temporal entities as nested nodes."""
    if not _IRI_OK.match(base_iri):
        raise ValueError(f"invalid base IRI: {base_iri!r}")
    sep = "" if base_iri.endswith(("/", "#")) else "/"
    vocab = f"{base_iri}{sep}vocab#"
    lines = [
        "@prefix rdf: <http://www.w3.org/1999/02/22-rdf-syntax-ns#> .",
        f"@prefix itx: <{vocab}> .",
        "",
        "# Project-defined role vocabulary:",
        "#   itx:actor            subject argument text of the displacement",
        "#   itx:origin           spatial entity the motion starts from",
        "#   itx:intermediate     spatial entity passed through",
        "#   itx:destination      spatial entity the motion heads to",
        "#   itx:temporal         temporal entity anchoring the displacement",
        "#   itx:sourceSentence   sentence id the relation was read from",
        "",
    ]
    counter = 0
    for s in doc.sentences:
        for r in s.itinerary_relations:
            counter += 1
            subject = f"<{base_iri}{sep}relation/{counter}>"
            indent = "    "
            pairs: list[tuple[str, str]] = [
                ("a", f"<{base_iri}{sep}verb/{r.verb_lemma}>"),
                ("itx:verb", _lit(r.verb_lemma)),
                ("itx:polarity", _lit(r.polarity.value)),
            ]
            if r.actor is not None:
                pairs.append(("itx:actor", _lit(r.actor.text)))
            for prop, entities in (("itx:origin", r.origin),
                                   ("itx:intermediate", r.intermediate),
                                   ("itx:destination", r.destination),
                                   ("itx:temporal", r.temporal)):
                for e in entities:
                    pairs.append((prop, _entity_node(e, indent)))
            pairs.append(("itx:sourceSentence", _lit(s.sent_id)))
            body = (" ;\n" + indent).join(f"{p} {o}" for p, o in pairs)
            lines.append(f"{subject} {body} .")
            lines.append("")
    return "\n".join(lines).rstrip("\n") + "\n"
