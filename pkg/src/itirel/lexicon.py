"""Lexicon loading, validation and lookup.

Five TSV files drive the extraction patterns: motion verbs with aspectual
polarity, spatial relation markers, temporal relation markers, a toponym
gazetteer, and measure units.  All of them are data, not code: the bundled
files under ``itirel/data/lexicons`` are a seed that users can amend.
"""

from __future__ import annotations

import re
import unicodedata
from dataclasses import dataclass, field
from enum import Enum
from functools import cached_property
from pathlib import Path
from typing import Mapping, Optional


class VerbPolarity(str, Enum):
    INITIAL = "initial"
    MEDIAN = "median"
    FINAL = "final"


class SpatialRelationKind(str, Enum):
    METRIC = "metric"
    ORIENTATION = "orientation"
    GEOMETRIC_FIGURE = "figure"
    ADJACENCY = "adjacency"
    INCLUSION = "inclusion"
    # a bare gazetteer toponym with no relational marker around it
    ABSOLUTE = "absolute"


class TemporalRelationKind(str, Enum):
    ADJACENCY = "adjacency"
    INCLUSION = "inclusion"
    DISTANCE = "distance"
    ABSOLUTE = "absolute"


class LexiconError(Exception):
    """Missing lexicon file(s) or invalid lexicon contents."""

    def __init__(self, problems: list[str]):
        super().__init__("; ".join(problems))
        self.problems = list(problems)


_APOSTROPHES = re.compile("['’‘ʼ`]")
_WS = re.compile(r"\s+")

# French contracted prepositions, folded for marker matching only.
_CONTRACTIONS = {"au": "à", "aux": "à", "du": "de", "des": "de", "d": "de"}


def normalize(phrase: str) -> str:
    """Case-fold and elision-normalize a phrase ("l'Ouest" -> "l ouest")."""
    s = unicodedata.normalize("NFC", phrase).casefold()
    s = _APOSTROPHES.sub(" ", s)
    return _WS.sub(" ", s).strip()


def canon_word(word: str) -> str:
    """Normalized word with contracted prepositions folded (du -> de)."""
    return _CONTRACTIONS.get(word, word)


def canon_words(phrase: str) -> tuple[str, ...]:
    return tuple(canon_word(w) for w in normalize(phrase).split())


FILE_NAMES = ("motion_verbs.tsv", "spatial_markers.tsv",
              "temporal_markers.tsv", "gazetteer.tsv", "units.tsv")

_POLARITIES = {p.value: p for p in VerbPolarity}
_SPATIAL_KINDS = {k.value: k for k in SpatialRelationKind
                  if k is not SpatialRelationKind.ABSOLUTE}
_TEMPORAL_KINDS = {k.value: k for k in TemporalRelationKind
                   if k is not TemporalRelationKind.ABSOLUTE}
_UNIT_CLASSES = {"spatial", "temporal"}


@dataclass(frozen=True)
class LexiconSet:
    """Immutable bundle of the five lexicons, keys already normalized."""

    motion_verbs: Mapping[str, VerbPolarity]
    spatial_markers: Mapping[str, SpatialRelationKind]
    temporal_markers: Mapping[str, TemporalRelationKind]
    gazetteer: Mapping[str, str]  # display toponym -> feature type ('' if none)
    units: Mapping[str, str]      # unit lemma -> 'spatial' | 'temporal'

    @cached_property
    def spatial_marker_seq(self) -> tuple[tuple[tuple[str, ...], str, SpatialRelationKind], ...]:
        """(canonical words, phrase, kind), longest phrases first."""
        items = [(canon_words(p), p, k) for p, k in self.spatial_markers.items()]
        return tuple(sorted(items, key=lambda x: (-len(x[0]), x[1])))

    @cached_property
    def temporal_marker_seq(self) -> tuple[tuple[tuple[str, ...], str, TemporalRelationKind], ...]:
        items = [(canon_words(p), p, k) for p, k in self.temporal_markers.items()]
        return tuple(sorted(items, key=lambda x: (-len(x[0]), x[1])))

    @cached_property
    def gazetteer_seq(self) -> tuple[tuple[tuple[str, ...], str], ...]:
        """(normalized words, display name), longest names first."""
        items = [(tuple(normalize(name).split()), name) for name in self.gazetteer]
        return tuple(sorted(items, key=lambda x: (-len(x[0]), x[1])))

    @cached_property
    def figure_nouns(self) -> frozenset[str]:
        return frozenset(p for p, k in self.spatial_markers.items()
                         if k is SpatialRelationKind.GEOMETRIC_FIGURE)


def _read_tsv(path: Path, n_cols: int, optional_second: bool = False):
    """Yield (line_no, columns) for data lines; '#' comments and blanks skipped."""
    for line_no, raw in enumerate(path.read_text(encoding="utf-8").splitlines(), 1):
        line = raw.rstrip()
        if not line or line.lstrip().startswith("#"):
            continue
        cols = line.split("\t")
        if optional_second and len(cols) == 1:
            cols = [cols[0], ""]
        if len(cols) != n_cols:
            raise LexiconError(
                [f"{path.name}:{line_no}: expected {n_cols} columns, got {len(cols)}"])
        yield line_no, [c.strip() for c in cols]


def _load_map(path: Path, value_table: Mapping[str, object],
              key_norm, problems: list[str]) -> dict:
    out: dict = {}
    lines: dict[str, int] = {}
    for line_no, (key, value) in _read_tsv(path, 2):
        k = key_norm(key)
        if not k:
            problems.append(f"{path.name}:{line_no}: empty key")
            continue
        if value not in value_table:
            problems.append(
                f"{path.name}:{line_no}: unknown value {value!r} "
                f"(expected one of {sorted(value_table)})")
            continue
        v = value_table[value]
        if k in out and out[k] != v:
            problems.append(
                f"{path.name}:{line_no}: duplicate key {k!r} conflicts with "
                f"line {lines[k]}")
            continue
        out[k] = v
        lines.setdefault(k, line_no)
    return out


def load_lexicons(directory) -> LexiconSet:
    """Load the five TSV lexicons from a directory.

    Raises :class:`LexiconError` listing every missing file, duplicate key
    with a conflicting value, or unknown polarity/kind token.
    """
    directory = Path(directory)
    missing = [n for n in FILE_NAMES if not (directory / n).is_file()]
    if missing:
        raise LexiconError([f"missing lexicon file: {n}" for n in missing])

    problems: list[str] = []
    motion = _load_map(directory / "motion_verbs.tsv", _POLARITIES,
                       lambda k: k.casefold(), problems)
    spatial = _load_map(directory / "spatial_markers.tsv", _SPATIAL_KINDS,
                        normalize, problems)
    temporal = _load_map(directory / "temporal_markers.tsv", _TEMPORAL_KINDS,
                         normalize, problems)
    units = _load_map(directory / "units.tsv",
                      {u: u for u in _UNIT_CLASSES},
                      lambda k: k.casefold(), problems)
    gazetteer: dict[str, str] = {}
    gaz_lines: dict[str, int] = {}
    for line_no, (name, ftype) in _read_tsv(directory / "gazetteer.tsv", 2,
                                            optional_second=True):
        if not name:
            problems.append(f"gazetteer.tsv:{line_no}: empty toponym")
            continue
        if name in gazetteer and gazetteer[name] != ftype:
            problems.append(
                f"gazetteer.tsv:{line_no}: duplicate toponym {name!r} conflicts "
                f"with line {gaz_lines[name]}")
            continue
        gazetteer[name] = ftype
        gaz_lines.setdefault(name, line_no)
    if problems:
        raise LexiconError(problems)
    return LexiconSet(motion_verbs=motion, spatial_markers=spatial,
                      temporal_markers=temporal, gazetteer=gazetteer,
                      units=units)


def save_lexicons(lex: LexiconSet, directory) -> None:
    """Write a LexiconSet back to the five TSV files (sorted, no comments)."""
    directory = Path(directory)
    directory.mkdir(parents=True, exist_ok=True)

    def dump(name: str, pairs):
        lines = [f"{k}\t{v}" for k, v in sorted(pairs)]
        (directory / name).write_text("\n".join(lines) + "\n", encoding="utf-8")

    dump("motion_verbs.tsv", ((k, v.value) for k, v in lex.motion_verbs.items()))
    dump("spatial_markers.tsv", ((k, v.value) for k, v in lex.spatial_markers.items()))
    dump("temporal_markers.tsv", ((k, v.value) for k, v in lex.temporal_markers.items()))
    dump("gazetteer.tsv", lex.gazetteer.items())
    dump("units.tsv", lex.units.items())


@dataclass(frozen=True)
class ValidationReport:
    errors: tuple[str, ...]
    notices: tuple[str, ...]
    counts: Mapping[str, int]

    @property
    def valid(self) -> bool:
        return not self.errors

    def render(self) -> str:
        lines = [f"{name}: {n} entries" for name, n in self.counts.items()]
        lines += [f"error: {e}" for e in self.errors]
        lines += [f"notice: {n}" for n in self.notices]
        lines.append("result: " + ("OK" if self.valid else "INVALID"))
        return "\n".join(lines)


def _overlap_notices(name: str, phrases) -> list[str]:
    """Markers contained in longer markers: longest-match ambiguity notices."""
    out = []
    words = sorted((tuple(normalize(p).split()), p) for p in phrases)
    for wa, pa in words:
        for wb, pb in words:
            if len(wa) >= len(wb):
                continue
            if any(wb[i:i + len(wa)] == wa
                   for i in range(len(wb) - len(wa) + 1)):
                kind = "a prefix" if wb[:len(wa)] == wa else "contained in"
                if kind == "a prefix":
                    out.append(f"{name}: marker {pa!r} is a prefix of {pb!r} "
                               "(longest match wins)")
                else:
                    out.append(f"{name}: marker {pa!r} is contained in {pb!r} "
                               "(longest match wins)")
    return out


def validate_lexicons(lex: LexiconSet) -> ValidationReport:
    """Report-only consistency check of a loaded LexiconSet."""
    errors: list[str] = []
    notices: list[str] = []
    for verb, pol in lex.motion_verbs.items():
        if not verb:
            errors.append("motion_verbs: empty lemma")
        if not isinstance(pol, VerbPolarity):
            errors.append(f"motion_verbs: bad polarity for {verb!r}")
    for phrase in list(lex.spatial_markers) + list(lex.temporal_markers):
        if not phrase:
            errors.append("markers: empty phrase")
        elif phrase != normalize(phrase):
            errors.append(f"markers: phrase {phrase!r} is not normalized")

    notices += _overlap_notices("spatial_markers", lex.spatial_markers)
    notices += _overlap_notices("temporal_markers", lex.temporal_markers)

    both = set(lex.spatial_markers) & set(lex.temporal_markers)
    for phrase in sorted(both):
        notices.append(
            f"marker {phrase!r} is both spatial and temporal; resolved at "
            "classification time by the governed phrase")

    if not lex.gazetteer:
        notices.append("gazetteer empty: Absolute spatial entities cannot "
                       "be recognized")
    marker_phrases = set(lex.spatial_markers) | set(lex.temporal_markers)
    for name in sorted(lex.gazetteer):
        if normalize(name) in marker_phrases or normalize(name) in lex.units:
            notices.append(f"gazetteer entry {name!r} collides with a "
                           "common-noun marker or unit")

    counts = {
        "motion_verbs": len(lex.motion_verbs),
        "spatial_markers": len(lex.spatial_markers),
        "temporal_markers": len(lex.temporal_markers),
        "gazetteer": len(lex.gazetteer),
        "units": len(lex.units),
    }
    return ValidationReport(tuple(errors), tuple(notices), counts)


def motion_polarity(lex: LexiconSet, lemma: str) -> Optional[VerbPolarity]:
    """Polarity of a motion verb, or None.  Lookup is by lemma only."""
    return lex.motion_verbs.get(lemma.casefold())


def bundled_lexicon_dir() -> Path:
    """Directory of the seed lexicons shipped with the package."""
    from importlib.resources import files
    return Path(str(files("itirel") / "data" / "lexicons"))
