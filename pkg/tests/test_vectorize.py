import math

import numpy as np
import pytest
from hypothesis import given, settings, strategies as st

from fedtopics.errors import EmptyDocumentRow, EmptyVocabulary
from fedtopics.preprocess import TokenizedDocument
from fedtopics.vectorize import (
    Dictionary,
    bow_matrix,
    build_dictionary,
    read_triplets,
    tfidf_transform,
    write_triplets,
)


def docs_of(*token_lists):
    return [TokenizedDocument(f"d{i}", f"2020-01-{i + 1:02d}", toks) for i, toks in enumerate(token_lists)]


def test_dictionary_drops_terms_above_max_df():
    d = build_dictionary(docs_of(["a", "b"], ["a", "c"], ["a"]), max_df=0.5)
    assert d.terms == ("b", "c")
    assert d.doc_freq == (1, 1)


def test_dictionary_single_doc():
    assert build_dictionary(docs_of(["x"]), max_df=1.0).terms == ("x",)


def test_dictionary_cutoff_is_strict():
    # df 2/4 is not "more than half"
    d = build_dictionary(docs_of(["a"], ["a", "b"], ["b"], ["c"]), max_df=0.5)
    assert d.terms == ("a", "b", "c")


def test_dictionary_empty():
    with pytest.raises(EmptyVocabulary):
        build_dictionary(docs_of(["a"], ["a"]), max_df=0.5)


def test_bow_counts():
    docs = docs_of(["b", "b", "c"], ["c"])
    A = bow_matrix(docs, Dictionary(("b", "c"), (1, 2), 2))
    assert A.toarray().tolist() == [[2, 1], [0, 1]]
    assert A.kind == "bow"


def test_bow_singleton():
    assert bow_matrix(docs_of(["b"]), Dictionary(("b",), (1,), 1)).toarray().tolist() == [[1]]


def test_bow_empty_row_names_document():
    with pytest.raises(EmptyDocumentRow) as err:
        bow_matrix(docs_of(["a"]), Dictionary(("b",), (1,), 1))
    assert err.value.doc_id == "d0"


def bow_from(dense):
    dense = np.asarray(dense)
    terms = tuple(f"t{j}" for j in range(dense.shape[1]))
    docs = docs_of(*[[t for t, c in zip(terms, row) for _ in range(int(c))] for row in dense])
    df = tuple(int((dense[:, j] > 0).sum()) for j in range(dense.shape[1]))
    return bow_matrix(docs, Dictionary(terms, df, dense.shape[0]))


def test_tfidf_ubiquitous_column_dropped():
    T = tfidf_transform(bow_from([[1, 1, 0], [1, 0, 1]]))
    assert T.terms == ("t1", "t2")
    assert T.toarray().tolist() == [[math.log(2), 0.0], [0.0, math.log(2)]]
    with pytest.raises(EmptyVocabulary):
        tfidf_transform(bow_from([[1], [1]]))


def test_tfidf_hand_values():
    T = tfidf_transform(bow_from([[1, 0], [0, 1], [1, 0]])).toarray()
    expected = np.array([[math.log(1.5), 0], [0, math.log(3)], [math.log(1.5), 0]])
    np.testing.assert_allclose(T, expected, rtol=0, atol=1e-12)
    np.testing.assert_allclose(T[0, 0], 0.4055, atol=5e-5)


def test_tfidf_single_document_is_empty():
    with pytest.raises(EmptyVocabulary):
        tfidf_transform(bow_from([[3]]))


@settings(max_examples=80, deadline=None)
@given(st.lists(st.lists(st.integers(0, 3), min_size=4, max_size=4), min_size=2, max_size=6))
def test_tfidf_properties(rows):
    dense = np.asarray(rows)
    dense = dense[dense.sum(axis=1) > 0]
    dense = dense[:, dense.sum(axis=0) > 0]
    if dense.shape[0] < 2 or dense.shape[1] == 0:
        return
    A = bow_from(dense)
    df = np.asarray(A.doc_freq)
    assert np.all(A.toarray().sum(axis=0) >= df)
    idf = np.log(dense.shape[0] / df)
    for j in range(len(df)):
        for k in range(len(df)):
            if df[j] < df[k]:
                assert idf[j] > idf[k]
    try:
        T = tfidf_transform(A)
    except (EmptyVocabulary, EmptyDocumentRow):
        return
    keep = [A.terms.index(t) for t in T.terms]
    assert np.array_equal(A.toarray()[:, keep] > 0, T.toarray() > 0)


def test_deterministic_and_triplets(tmp_path):
    docs = docs_of(["b", "b", "c"], ["c", "d"], ["d"])
    A1 = bow_matrix(docs, build_dictionary(docs, 1.0))
    A2 = bow_matrix(docs, build_dictionary(docs, 1.0))
    assert (A1.data != A2.data).nnz == 0
    write_triplets(tfidf_transform(A1), tmp_path / "m.tsv")
    rows, vocab = read_triplets(tmp_path / "m.tsv")
    assert vocab == [("b", 1), ("c", 2), ("d", 2)]
    assert ("d0", "b", 2 * math.log(3)) in rows and len(rows) == 5
    write_triplets(A1, tmp_path / "a.tsv")
    rows, vocab = read_triplets(tmp_path / "a.tsv")
    assert ("d0", "b", 2.0) in rows and len(rows) == 5
