import csv
import math
from itertools import chain

import numpy as np
import pytest
from hypothesis import given, settings, strategies as st

from fedtopics.coherence import (
    CoherenceConfig,
    cv_score,
    npmi,
    sliding_window_counts,
    write_npmi_table,
)
from fedtopics.errors import UnknownWord, WordNotInCorpus


# -- brute-force oracle: explicit windows, dense NPMI, explicit cosine ---------

def oracle_windows(docs, width):
    out = []
    for d in docs:
        if not d:
            continue
        if len(d) <= width:
            out.append(set(d))
        else:
            out.extend(set(d[i:i + width]) for i in range(len(d) - width + 1))
    return out


def oracle_cv(topics, docs, width, eps=1e-12, gamma=1.0):
    wins = oracle_windows(docs, width)
    n = len(wins)

    def p(*ws):
        return sum(1 for w in wins if all(x in w for x in ws)) / n

    scores = []
    for topic in topics:
        vecs = []
        for wi in topic:
            row = []
            for wj in topic:
                joint = p(wi, wj) + eps
                v = math.log(joint / (p(wi) * p(wj))) / -math.log(joint)
                row.append(math.copysign(abs(v) ** gamma, v))
            vecs.append(row)
        total = [sum(col) for col in zip(*vecs)]
        norm_t = math.sqrt(sum(x * x for x in total))
        cos = []
        for v in vecs:
            norm_v = math.sqrt(sum(x * x for x in v))
            dot = sum(a * b for a, b in zip(v, total))
            cos.append(dot / (norm_v * norm_t) if norm_v * norm_t > 0 else 0.0)
        scores.append(min(1.0, max(0.0, sum(cos) / len(cos))))
    return sum(scores) / len(scores), scores


# -- window counts -------------------------------------------------------------

def test_window_counts_by_hand():
    c = sliding_window_counts([["a", "b", "a"]], 2)
    assert c.total == 2
    assert c.windows("a") == 2 and c.windows("b") == 2
    assert c.windows_pair("a", "b") == 2


def test_single_token_document():
    c = sliding_window_counts([["rate"]], 110)
    assert c.total == 1 and c.prob("rate") == 1.0


def test_disjoint_documents():
    c = sliding_window_counts([["a", "b"], ["c", "d"]], 110)
    for x in "ab":
        for y in "cd":
            assert c.windows_pair(x, y) == 0


def test_short_documents_count_once_and_empty_ones_not_at_all():
    c = sliding_window_counts([["a"] * 5, [], ["a", "b"]], 3)
    assert c.total == 3 + 1
    assert c.windows("a") == 4 and c.windows("b") == 1


@settings(max_examples=150, deadline=None)
@given(st.lists(st.lists(st.sampled_from("abcdef"), max_size=12), min_size=1, max_size=5),
       st.integers(2, 6))
def test_window_counts_match_enumeration(docs, width):
    c = sliding_window_counts(docs, width, list("abcdef"))
    wins = oracle_windows(docs, width)
    assert c.total == len(wins)
    for x in "abcdef":
        assert c.windows(x) == sum(x in w for w in wins)
        for y in "abcdef":
            assert c.windows_pair(x, y) == sum(x in w and y in w for w in wins)


# -- NPMI ----------------------------------------------------------------------

def test_npmi_always_together():
    c = sliding_window_counts([["a", "b"], ["a", "b"], ["c"]], 2)
    assert npmi("a", "b", c) == pytest.approx(1.0, abs=1e-9)


def test_npmi_independent():
    # P(a)=P(b)=1/2, P(a,b)=1/4
    c = sliding_window_counts([["a", "b"], ["a"], ["b"], ["z"]], 2)
    assert npmi("a", "b", c) == pytest.approx(0.0, abs=1e-9)


def test_npmi_never_together():
    c = sliding_window_counts([["a", "b"], ["c", "d"]], 2)
    v = npmi("a", "c", c, 1e-12)
    expected = math.log(1e-12 / 0.25) / -math.log(1e-12)
    assert v == pytest.approx(expected, abs=1e-12)
    assert v < -0.9


def test_npmi_unknown_word():
    c = sliding_window_counts([["a", "b"]], 2, ["a", "b", "q"])
    with pytest.raises(UnknownWord):
        npmi("a", "q", c)
    with pytest.raises(UnknownWord):
        npmi("a", "nope", c)


# -- C_v -----------------------------------------------------------------------

COHERENT = [["a", "b", "c"]] * 3 + [["d", "e", "f"]] * 2


def test_all_cooccurring_topic():
    cfg = CoherenceConfig(top_n=3, window=110)
    s = cv_score([["a", "b", "c"]], COHERENT, cfg)
    assert s.value >= 0.99
    # identical context vectors: cosines of 1 + O(1e-16) are clamped and counted
    assert s.value <= 1.0 and s.clamped <= 1


def test_deterministic():
    cfg = CoherenceConfig(top_n=3, window=2)
    docs = [list("abcabdcd"), list("bbcda")]
    assert cv_score([["a", "b", "c"]], docs, cfg) == cv_score([["a", "b", "c"]], docs, cfg)


def crafted():
    docs = [
        ["rate", "cut", "inflat", "x1", "y1"],
        ["rate", "cut", "inflat", "x2", "y2"],
        ["rate", "cut", "inflat", "x3", "y3"],
        ["bank", "x1", "y2"],
        ["oil", "x2", "y3"],
    ]
    return docs, [["rate", "cut", "inflat"], ["bank", "oil", "x3"]]


def test_coherent_beats_incoherent():
    docs, topics = crafted()
    cfg = CoherenceConfig(top_n=3, window=110)
    s = cv_score(topics, docs, cfg)
    assert s.per_topic[0] > s.per_topic[1]
    ref, ref_topics = oracle_cv(topics, docs, 110)
    np.testing.assert_allclose(s.per_topic, ref_topics, atol=1e-9)


def test_value_is_mean_of_topics():
    docs, topics = crafted()
    s = cv_score(topics, docs, CoherenceConfig(top_n=3))
    assert s.value == pytest.approx(np.mean(s.per_topic), abs=1e-15)
    assert 0 <= s.value <= 1


def test_word_not_in_corpus():
    with pytest.raises(WordNotInCorpus):
        cv_score([["a", "b", "zz"]], COHERENT, CoherenceConfig(top_n=3))


def test_topic_length_must_match_top_n():
    with pytest.raises(ValueError):
        cv_score([["a", "b"]], COHERENT, CoherenceConfig(top_n=3))


@pytest.mark.parametrize("kw", [{"top_n": 1}, {"window": 1}, {"epsilon": 0}, {"gamma": 0}])
def test_config_validation(kw):
    with pytest.raises(ValueError):
        CoherenceConfig(**kw)


small_docs = st.lists(st.lists(st.sampled_from("abcdefghij"), min_size=1, max_size=14), min_size=1, max_size=5)


@settings(max_examples=200, deadline=None)
@given(small_docs, st.integers(2, 8), st.sampled_from([1.0, 0.5, 2.0]), st.randoms(use_true_random=False))
def test_matches_brute_force(docs, width, gamma, rnd):
    vocab = sorted(set(chain.from_iterable(docs)))
    if len(vocab) < 2:
        return
    n = rnd.randint(2, min(4, len(vocab)))
    topics = [rnd.sample(vocab, n) for _ in range(rnd.randint(1, 3))]
    s = cv_score(topics, docs, CoherenceConfig(top_n=n, window=width, gamma=gamma))
    ref, ref_topics = oracle_cv(topics, docs, width, gamma=gamma)
    assert abs(s.value - ref) <= 1e-9
    np.testing.assert_allclose(s.per_topic, ref_topics, atol=1e-9, rtol=0)
    assert 0.0 <= s.value <= 1.0


@settings(max_examples=100, deadline=None)
@given(small_docs, st.randoms(use_true_random=False))
def test_permutation_invariance(docs, rnd):
    vocab = sorted(set(chain.from_iterable(docs)))
    if len(vocab) < 3:
        return
    topics = [rnd.sample(vocab, 3) for _ in range(3)]
    cfg = CoherenceConfig(top_n=3, window=3)
    base = cv_score(topics, docs, cfg).value
    shuffled = [rnd.sample(t, 3) for t in topics]
    rnd.shuffle(shuffled)
    assert cv_score(shuffled, docs, cfg).value == pytest.approx(base, abs=1e-12)


def test_shared_counts(tmp_path):
    docs, topics = crafted()
    cfg = CoherenceConfig(top_n=3, window=4)
    counts = sliding_window_counts(docs, 4)
    assert cv_score(topics, None, cfg, counts=counts) == cv_score(topics, docs, cfg)
    write_npmi_table(topics[0], counts, tmp_path / "npmi.csv")
    rows = list(csv.reader(open(tmp_path / "npmi.csv")))
    assert rows[0] == ["w1", "w2", "npmi"] and len(rows) == 10
    assert float(rows[2][2]) == pytest.approx(npmi("rate", "cut", counts))
