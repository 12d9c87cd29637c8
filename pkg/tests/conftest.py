from importlib import resources

import pytest

import itirel


def _gold_file(name: str) -> str:
    return (resources.files("itirel") / "data" / "gold" / name).read_text(
        encoding="utf-8")


def build(rows, sent_id="t1", text=None):
    """Build a one-sentence graph from (id, form, lemma, upos, head, deprel)
    rows through the real parser."""
    lines = [f"# sent_id = {sent_id}"]
    if text is not None:
        lines.append(f"# text = {text}")
    for tid, form, lemma, upos, head, deprel in rows:
        lines.append(
            f"{tid}\t{form}\t{lemma}\t{upos}\t_\t_\t{head}\t{deprel}\t_\t_")
    return itirel.parse_conllu("\n".join(lines) + "\n")[0]


@pytest.fixture(scope="session")
def gold_text():
    return _gold_file("gold.conllu")


@pytest.fixture(scope="session")
def taxonomy_text():
    return _gold_file("taxonomy.conllu")


@pytest.fixture(scope="session")
def gold(gold_text):
    return {g.sent_id: g for g in itirel.parse_conllu(gold_text)}


@pytest.fixture(scope="session")
def taxonomy(taxonomy_text):
    return {g.sent_id: g for g in itirel.parse_conllu(taxonomy_text)}


@pytest.fixture(scope="session")
def all_graphs(gold, taxonomy):
    return list(gold.values()) + list(taxonomy.values())


@pytest.fixture(scope="session")
def lex():
    return itirel.load_lexicons(itirel.bundled_lexicon_dir())
