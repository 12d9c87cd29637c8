"""Recognition and classification of spatial and temporal entities.

Both recognizers scan a token span left to right, matching marker phrases
from the lexicon (longest match wins, French contractions folded: du ~ de,
aux ~ à) and toponyms from the gazetteer.  Matched tokens are consumed, so
entities never overlap and a relational entity suppresses the bare toponym
inside it ("près de Lyon" hides a separate absolute "Lyon").
"""

from __future__ import annotations

import re
from dataclasses import dataclass
from typing import Optional, Sequence

from .depgraph import SentenceGraph, Token, TokenSpan, span_text
from .lexicon import (LexiconSet, SpatialRelationKind, TemporalRelationKind,
                      canon_word, normalize)


class NotAMarker(KeyError):
    """Phrase absent from the relevant marker lexicon."""


MONTHS = frozenset("""janvier février mars avril mai juin juillet août
septembre octobre novembre décembre""".split())

# Closed list of French number words accepted next to digit strings.
FRENCH_NUMBERS = {
    "un": 1, "une": 1, "deux": 2, "trois": 3, "quatre": 4, "cinq": 5,
    "six": 6, "sept": 7, "huit": 8, "neuf": 9, "dix": 10, "onze": 11,
    "douze": 12, "treize": 13, "quatorze": 14, "quinze": 15, "seize": 16,
    "dix-sept": 17, "dix-huit": 18, "dix-neuf": 19, "vingt": 20,
    "cent": 100, "mille": 1000,
}

_DIGITS = re.compile(r"\d+")
_SEPARATOR_FORMS = {",", ";", "et", "ou"}


@dataclass(frozen=True)
class SpatialEntity:
    span: TokenSpan
    kind: SpatialRelationKind
    anchors: tuple[str, ...]
    magnitude: Optional[tuple[int, str]]  # (value, unit lemma), Metric only
    direction: Optional[str]              # Orientation only
    text: str
    loose: bool = False                   # an anchor came from loose matching

    def __post_init__(self):
        if not self.anchors:
            raise ValueError("spatial entity needs at least one anchor")
        if self.kind is SpatialRelationKind.METRIC and self.magnitude is None:
            raise ValueError("metric entity needs a magnitude")
        if self.kind is SpatialRelationKind.ORIENTATION and not self.direction:
            raise ValueError("orientation entity needs a direction")
        if (self.kind is SpatialRelationKind.GEOMETRIC_FIGURE
                and len(self.anchors) < 2):
            raise ValueError("geometric figure needs at least two anchors")


@dataclass(frozen=True)
class TemporalEntity:
    span: TokenSpan
    kind: TemporalRelationKind
    magnitude: Optional[tuple[int, str]]  # (value, unit lemma), Distance only
    anchor_text: str
    text: str

    def __post_init__(self):
        if self.kind is TemporalRelationKind.DISTANCE and self.magnitude is None:
            raise ValueError("temporal distance entity needs a magnitude")


def classify_spatial_marker(marker: str, lex: LexiconSet) -> SpatialRelationKind:
    kind = lex.spatial_markers.get(normalize(marker))
    if kind is None:
        raise NotAMarker(marker)
    return kind


def classify_temporal_marker(marker: str, lex: LexiconSet) -> TemporalRelationKind:
    kind = lex.temporal_markers.get(normalize(marker))
    if kind is None:
        raise NotAMarker(marker)
    return kind


def number_value(tok: Token) -> Optional[int]:
    if _DIGITS.fullmatch(tok.form):
        return int(tok.form)
    return FRENCH_NUMBERS.get(normalize(tok.form))


def _canon(tok: Token) -> str:
    return canon_word(normalize(tok.form))


def _unit_class(tok: Token, lex: LexiconSet) -> Optional[str]:
    return lex.units.get(tok.lemma.casefold())


def _match_marker(toks: Sequence[Token], i: int, seq):
    """Longest marker match at position i -> (n_tokens, phrase, kind)."""
    for words, phrase, kind in seq:
        n = len(words)
        if i + n <= len(toks) and all(
                _canon(toks[i + k]) == words[k] for k in range(n)):
            return n, words, phrase, kind
    return None


def _match_toponym(toks: Sequence[Token], i: int, lex: LexiconSet,
                   loose: bool):
    """Longest gazetteer match at i -> (n_tokens, display name, loose?)."""
    for words, display in lex.gazetteer_seq:
        n = len(words)
        if i + n <= len(toks) and all(
                normalize(toks[i + k].form) == words[k] for k in range(n)):
            return n, display, False
    tok = toks[i]
    if loose and tok.upos == "PROPN" and tok.form[:1].isupper():
        return 1, tok.form, True
    return None


def _temporal_evidence(tok: Token, lex: LexiconSet) -> bool:
    return (normalize(tok.form) in MONTHS
            or bool(_DIGITS.fullmatch(tok.form))
            or _unit_class(tok, lex) == "temporal")


def _make_spatial(g, toks, start, end, kind, anchors, magnitude, direction,
                  loose):
    span = TokenSpan(toks[start].id, toks[end].id)
    return SpatialEntity(span=span, kind=kind, anchors=tuple(anchors),
                         magnitude=magnitude, direction=direction,
                         text=span_text(g, span), loose=loose)


def _figure_entity(g, toks, start, anchors_from, figure_noun, lex, loose):
    """Coordinated gazetteer anchors after a figure noun."""
    anchors: list[str] = []
    loose_any = False
    last_end = None
    p = anchors_from
    while p < len(toks):
        tok = toks[p]
        if tok.upos in ("PUNCT", "CCONJ", "DET") or \
                normalize(tok.form) in _SEPARATOR_FORMS:
            p += 1
            continue
        hit = _match_toponym(toks, p, lex, loose)
        if hit is None:
            break
        n, display, lo = hit
        anchors.append(display)
        loose_any = loose_any or lo
        last_end = p + n - 1
        p = last_end + 1
    minimum = 3 if figure_noun == "triangle" else 2
    if len(anchors) < minimum:
        return None
    ent = _make_spatial(g, toks, start, last_end,
                        SpatialRelationKind.GEOMETRIC_FIGURE, anchors,
                        None, None, loose_any)
    return ent, last_end + 1


def _spatial_from_marker(g, toks, i, match, lex, loose):
    n, words, phrase, kind = match
    j = i + n
    if kind is SpatialRelationKind.METRIC:
        # <marker> <number> <spatial unit> de <toponym>
        if j + 3 > len(toks):
            return None
        value = number_value(toks[j])
        if value is None or _unit_class(toks[j + 1], lex) != "spatial":
            return None
        if _canon(toks[j + 2]) != "de":
            return None
        hit = _match_toponym(toks, j + 3, lex, loose)
        if hit is None:
            return None
        hn, display, lo = hit
        end = j + 3 + hn - 1
        ent = _make_spatial(g, toks, i, end, kind, [display],
                            (value, toks[j + 1].lemma.casefold()), None, lo)
        return ent, end + 1

    if kind is SpatialRelationKind.GEOMETRIC_FIGURE:
        return _figure_entity(g, toks, i, j, phrase, lex, loose)

    # relational kinds: skip determiners between marker and complement
    k = j
    while k < len(toks) and toks[k].upos == "DET":
        k += 1
    if k >= len(toks):
        return None
    if normalize(toks[k].form) in lex.figure_nouns:
        return _figure_entity(g, toks, i, k + 1, normalize(toks[k].form),
                              lex, loose)
    hit = _match_toponym(toks, k, lex, loose)
    if hit is None:
        return None
    hn, display, lo = hit
    end = k + hn - 1
    direction = words[-2] if kind is SpatialRelationKind.ORIENTATION else None
    ent = _make_spatial(g, toks, i, end, kind, [display], None, direction, lo)
    return ent, end + 1


def recognize_spatial(g: SentenceGraph, within: TokenSpan, lex: LexiconSet,
                      loose: bool = False) -> list[SpatialEntity]:
    """All maximal, non-overlapping spatial entities inside a span."""
    toks = list(g.span_tokens(within))
    out: list[SpatialEntity] = []
    i = 0
    while i < len(toks):
        match = _match_marker(toks, i, lex.spatial_marker_seq)
        if match is not None:
            made = _spatial_from_marker(g, toks, i, match, lex, loose)
            if made is not None:
                ent, nxt = made
                out.append(ent)
                i = nxt
                continue
        hit = _match_toponym(toks, i, lex, loose)
        if hit is not None:
            n, display, lo = hit
            out.append(_make_spatial(g, toks, i, i + n - 1,
                                     SpatialRelationKind.ABSOLUTE,
                                     [display], None, None, lo))
            i += n
            continue
        i += 1
    return out


def _reference_window(toks, j, lex, seq):
    """Indices j..end of the phrase after a marker, plus the index of the
    last token carrying temporal evidence (month, digits, temporal unit)."""
    w = j
    evidence = None
    while w < len(toks):
        tok = toks[w]
        if tok.upos in ("PUNCT", "VERB") or _match_marker(toks, w, seq):
            break
        if _temporal_evidence(tok, lex):
            evidence = w
        w += 1
    return evidence


def _temporal_from_marker(g, toks, i, match, lex):
    n, words, phrase, kind = match
    j = i + n
    if kind is TemporalRelationKind.DISTANCE:
        # magnitude after the marker: "depuis deux semaines"
        if j + 1 < len(toks):
            value = number_value(toks[j])
            if value is not None and _unit_class(toks[j + 1], lex) == "temporal":
                unit = toks[j + 1].lemma.casefold()
                span = TokenSpan(toks[i].id, toks[j + 1].id)
                anchor = span_text(g, TokenSpan(toks[j].id, toks[j + 1].id))
                return TemporalEntity(span, kind, (value, unit), anchor,
                                      span_text(g, span)), j + 2
        # magnitude before the marker: "20 ans après le début du siècle"
        if i >= 2:
            value = number_value(toks[i - 2])
            if value is not None and _unit_class(toks[i - 1], lex) == "temporal":
                evidence = _reference_window(toks, j, lex,
                                             lex.temporal_marker_seq)
                if evidence is not None:
                    unit = toks[i - 1].lemma.casefold()
                    span = TokenSpan(toks[i - 2].id, toks[evidence].id)
                    anchor = span_text(
                        g, TokenSpan(toks[j].id, toks[evidence].id))
                    return TemporalEntity(span, kind, (value, unit), anchor,
                                          span_text(g, span)), evidence + 1
        return None

    evidence = _reference_window(toks, j, lex, lex.temporal_marker_seq)
    if evidence is None:
        return None
    span = TokenSpan(toks[i].id, toks[evidence].id)
    anchor = span_text(g, TokenSpan(toks[j].id, toks[evidence].id))
    return TemporalEntity(span, kind, None, anchor,
                          span_text(g, span)), evidence + 1


def _bare_date(g, toks, i, lex):
    """Unmarked calendar reference: [day] <month> [year]."""
    month = None
    start = i
    if normalize(toks[i].form) in MONTHS:
        month = i
    elif (_DIGITS.fullmatch(toks[i].form) and 1 <= int(toks[i].form) <= 31
          and i + 1 < len(toks) and normalize(toks[i + 1].form) in MONTHS):
        month = i + 1
    if month is None:
        return None
    end = month
    if end + 1 < len(toks) and re.fullmatch(r"\d{4}", toks[end + 1].form):
        end += 1
    span = TokenSpan(toks[start].id, toks[end].id)
    text = span_text(g, span)
    return TemporalEntity(span, TemporalRelationKind.ABSOLUTE, None,
                          text, text), end + 1


def recognize_temporal(g: SentenceGraph, within: TokenSpan,
                       lex: LexiconSet) -> list[TemporalEntity]:
    """All maximal, non-overlapping temporal entities inside a span."""
    toks = list(g.span_tokens(within))
    out: list[TemporalEntity] = []
    i = 0
    while i < len(toks):
        match = _match_marker(toks, i, lex.temporal_marker_seq)
        if match is not None:
            made = _temporal_from_marker(g, toks, i, match, lex)
            if made is not None:
                ent, nxt = made
                out.append(ent)
                i = nxt
                continue
        made = _bare_date(g, toks, i, lex)
        if made is not None:
            ent, nxt = made
            out.append(ent)
            i = nxt
            continue
        i += 1
    return out
