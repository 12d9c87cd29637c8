import shutil

import pytest

from itirel import (LexiconError, LexiconSet, SpatialRelationKind,
                    TemporalRelationKind, VerbPolarity, bundled_lexicon_dir,
                    load_lexicons, motion_polarity, save_lexicons,
                    validate_lexicons)
from itirel.lexicon import FILE_NAMES, canon_word, canon_words, normalize


class TestNormalization:
    def test_casefold_and_elision(self):
        assert normalize("L'Ouest") == "l ouest"
        assert normalize("  Près   de ") == "près de"
        assert normalize("jusqu’à") == "jusqu à"

    def test_contraction_folding(self):
        assert canon_word("du") == "de"
        assert canon_word("des") == "de"
        assert canon_word("au") == "à"
        assert canon_word("aux") == "à"
        assert canon_word("ville") == "ville"
        assert canon_words("à l'ouest du") == ("à", "l", "ouest", "de")


class TestLoading:
    def test_bundled_lexicons_load(self, lex):
        assert motion_polarity(lex, "quitter") is VerbPolarity.INITIAL
        assert motion_polarity(lex, "sortir") is VerbPolarity.INITIAL
        assert motion_polarity(lex, "passer") is VerbPolarity.MEDIAN
        assert motion_polarity(lex, "arriver") is VerbPolarity.FINAL
        assert motion_polarity(lex, "QUITTER") is VerbPolarity.INITIAL
        assert motion_polarity(lex, "visiter") is None
        assert motion_polarity(lex, "sorti") is None  # lemma lookup only
        assert lex.gazetteer["Pau"] == "city"
        assert lex.units["semaine"] == "temporal"

    def test_missing_files_all_reported(self, tmp_path):
        with pytest.raises(LexiconError) as err:
            load_lexicons(tmp_path)
        assert len(err.value.problems) == len(FILE_NAMES)
        assert all("missing lexicon file" in p for p in err.value.problems)

    def test_duplicate_with_conflicting_value(self, tmp_path):
        shutil.copytree(bundled_lexicon_dir(), tmp_path / "lex")
        with (tmp_path / "lex" / "motion_verbs.tsv").open("a") as fh:
            fh.write("quitter\tfinal\n")
        with pytest.raises(LexiconError) as err:
            load_lexicons(tmp_path / "lex")
        assert any("duplicate key 'quitter'" in p for p in err.value.problems)

    def test_duplicate_with_same_value_is_fine(self, tmp_path, lex):
        shutil.copytree(bundled_lexicon_dir(), tmp_path / "lex")
        with (tmp_path / "lex" / "motion_verbs.tsv").open("a") as fh:
            fh.write("quitter\tinitial\n")
        assert load_lexicons(tmp_path / "lex") == lex

    def test_unknown_polarity_token(self, tmp_path):
        shutil.copytree(bundled_lexicon_dir(), tmp_path / "lex")
        with (tmp_path / "lex" / "motion_verbs.tsv").open("a") as fh:
            fh.write("fuir\tweird\n")
        with pytest.raises(LexiconError) as err:
            load_lexicons(tmp_path / "lex")
        assert any("unknown value 'weird'" in p for p in err.value.problems)

    def test_wrong_column_count(self, tmp_path):
        shutil.copytree(bundled_lexicon_dir(), tmp_path / "lex")
        with (tmp_path / "lex" / "units.tsv").open("a") as fh:
            fh.write("pied\n")
        with pytest.raises(LexiconError) as err:
            load_lexicons(tmp_path / "lex")
        assert any("expected 2 columns" in p for p in err.value.problems)

    def test_gazetteer_type_column_optional(self, tmp_path):
        shutil.copytree(bundled_lexicon_dir(), tmp_path / "lex")
        with (tmp_path / "lex" / "gazetteer.tsv").open("a") as fh:
            fh.write("Ossau\n")
        assert load_lexicons(tmp_path / "lex").gazetteer["Ossau"] == ""

    def test_save_load_round_trip(self, tmp_path, lex):
        save_lexicons(lex, tmp_path / "out")
        assert load_lexicons(tmp_path / "out") == lex


class TestMarkerTables:
    def test_every_marker_has_exactly_one_kind(self, lex):
        assert all(isinstance(k, SpatialRelationKind)
                   for k in lex.spatial_markers.values())
        assert all(isinstance(k, TemporalRelationKind)
                   for k in lex.temporal_markers.values())

    def test_longest_first_ordering(self, lex):
        lengths = [len(words) for words, _, _ in lex.spatial_marker_seq]
        assert lengths == sorted(lengths, reverse=True)

    def test_figure_nouns(self, lex):
        assert "triangle" in lex.figure_nouns
        assert "près de" not in lex.figure_nouns


class TestValidation:
    def test_bundled_lexicons_validate(self, lex):
        report = validate_lexicons(lex)
        assert report.valid
        assert report.counts["motion_verbs"] == 9
        assert report.counts["gazetteer"] == 9
        assert "result: OK" in report.render()

    def test_containment_notice(self, lex):
        report = validate_lexicons(lex)
        assert any("'près de' is contained in 'tout près de'" in n
                   for n in report.notices)

    def test_cross_map_marker_notice(self, lex):
        report = validate_lexicons(lex)
        assert any("'dans' is both spatial and temporal" in n
                   for n in report.notices)

    def test_empty_gazetteer_notice(self):
        empty = LexiconSet(motion_verbs={}, spatial_markers={},
                           temporal_markers={}, gazetteer={}, units={})
        report = validate_lexicons(empty)
        assert any("gazetteer empty" in n for n in report.notices)

    def test_unnormalized_marker_is_an_error(self):
        bad = LexiconSet(motion_verbs={}, spatial_markers={
            "Près De": SpatialRelationKind.ADJACENCY},
            temporal_markers={}, gazetteer={"X": ""}, units={})
        report = validate_lexicons(bad)
        assert not report.valid
        assert "result: INVALID" in report.render()

    def test_purity_of_polarity_lookup(self, lex):
        assert all(motion_polarity(lex, "quitter") is VerbPolarity.INITIAL
                   for _ in range(3))
