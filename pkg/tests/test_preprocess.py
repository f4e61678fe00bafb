from pathlib import Path

import pytest
from hypothesis import given, settings, strategies as st

from fedtopics.corpus import Document
from fedtopics.preprocess import (
    STEPS,
    STOPWORDS_BEFORE_STEMMING,
    PreprocessConfig,
    default_blocklist,
    default_stopwords,
    load_tokens,
    normalize,
    normalize_corpus,
    porter_stem,
    read_term_file,
    save_tokens,
)

VECTORS = Path(__file__).parent / "data" / "porter_vectors.tsv"


def doc(text):
    return Document("s", "2020-01-01", text)


def load_vectors():
    pairs = []
    for line in VECTORS.read_text(encoding="utf-8").splitlines():
        if line.strip() and not line.startswith("#"):
            word, stem = line.split("\t")
            pairs.append((word, stem))
    return pairs


def test_hand_traced_sentence():
    cfg = PreprocessConfig(blocklist={"committee"})
    assert normalize(doc("The Committee decided to lower rates."), cfg).tokens == ("decid", "lower", "rate")


def test_empty_text():
    assert normalize(doc("")).tokens == ()


def test_case_folding_only():
    cfg = PreprocessConfig(blocklist=set(), stopwords=set(), stem=False)
    assert normalize(doc("Growth growth GROWTH"), cfg).tokens == ("growth",) * 3


def test_numbers_single_chars_and_punctuation():
    cfg = PreprocessConfig(blocklist=set(), stopwords=set(), stem=False)
    toks = normalize(doc("In 2008, the target was 0-1/4 percent; U.S. rates fell 3x."), cfg).tokens
    assert toks == ("in", "the", "target", "was", "percent", "rates", "fell", "3x")


def test_accents_fold_to_ascii():
    cfg = PreprocessConfig(blocklist=set(), stopwords=set(), stem=False)
    assert normalize(doc("café — naïve"), cfg).tokens == ("cafe", "naive")


def test_blocklist_and_stopwords_apply_to_surface_forms():
    # "rates" stems to "rate"; blocking the stem must not remove the surface word
    cfg = PreprocessConfig(blocklist={"rate"}, stopwords=set())
    assert normalize(doc("rates rate"), cfg).tokens == ("rate",)
    assert STOPWORDS_BEFORE_STEMMING is True
    assert STEPS.index("drop_stopwords") < STEPS.index("stem")


def test_default_lists_are_bundled():
    stop, block = default_stopwords(), default_blocklist()
    assert {"the", "and", "of"} <= stop
    assert {"board", "approve", "governor", "committee"} <= block
    for term in stop | block:
        assert term == term.lower() and term.strip() == term and term


def test_config_rejects_bad_entries():
    with pytest.raises(ValueError):
        PreprocessConfig(stopwords={"The"})
    with pytest.raises(ValueError):
        PreprocessConfig(blocklist={"new york"})


def test_term_file(tmp_path):
    p = tmp_path / "stop.txt"
    p.write_text("# v1\nthe\n\nand  # inline\n")
    assert read_term_file(p) == {"the", "and"}
    cfg = PreprocessConfig.from_files(stopwords=p)
    assert cfg.stopwords == {"the", "and"}
    assert cfg.digest() != PreprocessConfig().digest()


def test_token_round_trip(tmp_path, fixture_corpus_path):
    from fedtopics.corpus import load_corpus

    toks = normalize_corpus(load_corpus(fixture_corpus_path))
    save_tokens(toks, tmp_path / "t.jsonl")
    assert load_tokens(tmp_path / "t.jsonl") == toks


def test_fixture_tokens_are_clean(fixture_corpus_path):
    from fedtopics.corpus import load_corpus

    cfg = PreprocessConfig()
    for d in normalize_corpus(load_corpus(fixture_corpus_path), cfg):
        assert d.tokens
        for t in d.tokens:
            assert t.isalnum() and t == t.lower() and len(t) > 1 and not t.isdigit()
            assert t not in cfg.blocklist


@settings(max_examples=200, deadline=None)
@given(st.text(alphabet=st.characters(max_codepoint=127), max_size=120))
def test_lowercase_closure(text):
    assert normalize(doc(text.upper())) == normalize(doc(text))


@settings(max_examples=200, deadline=None)
@given(st.text(max_size=120))
def test_tokens_are_lowercase_alphanumeric_and_filtered(text):
    cfg = PreprocessConfig(stem=False)
    for t in normalize(doc(text), cfg).tokens:
        assert t.isascii() and t.isalnum() and t == t.lower()
        assert t not in cfg.stopwords and t not in cfg.blocklist


@pytest.mark.parametrize("word, stem", [("caresses", "caress"), ("ponies", "poni"), ("sky", "sky")])
def test_porter_examples(word, stem):
    assert porter_stem(word) == stem


def test_porter_reference_vectors():
    pairs = load_vectors()
    assert len(pairs) >= 90
    wrong = [(w, s, porter_stem(w)) for w, s in pairs if porter_stem(w) != s]
    assert wrong == []


def test_porter_chains_steps():
    # generalizations -> generalization -> generalize -> general -> gener
    assert porter_stem("generalizations") == "gener"
    assert porter_stem("oscillators") == "oscil"
