"""Dictionary construction and bag-of-words / tf-idf document-term matrices."""
from __future__ import annotations

from collections import Counter
from dataclasses import dataclass
from typing import Iterator, Sequence

import numpy as np
import scipy.sparse as sp

from .corpus import corpus_fingerprint
from .errors import EmptyDocumentRow, EmptyVocabulary
from .preprocess import TokenizedDocument

__all__ = [
    "Dictionary",
    "DocTermMatrix",
    "build_dictionary",
    "bow_matrix",
    "tfidf_transform",
    "write_triplets",
    "read_triplets",
]


@dataclass(frozen=True)
class Dictionary:
    terms: tuple[str, ...]
    doc_freq: tuple[int, ...]
    n_docs: int

    def __post_init__(self):
        if len(set(self.terms)) != len(self.terms):
            raise ValueError("dictionary terms must be unique")
        if len(self.terms) != len(self.doc_freq):
            raise ValueError("terms and doc_freq lengths differ")

    def __len__(self):
        return len(self.terms)

    @property
    def index(self) -> dict[str, int]:
        return {t: j for j, t in enumerate(self.terms)}


@dataclass(frozen=True, eq=False)
class DocTermMatrix:
    """Sparse ``d x t`` weights with the row ids and column terms attached.

    ``kind == "bow"`` holds integer counts; ``"tfidf"`` holds real weights.
    ``doc_freq`` stores, per column, the number of documents containing the
    term.
    """

    data: sp.csr_matrix
    kind: str
    terms: tuple[str, ...]
    doc_ids: tuple[str, ...]
    doc_freq: tuple[int, ...]
    fingerprint: str

    @property
    def shape(self):
        return self.data.shape

    def toarray(self) -> np.ndarray:
        return self.data.toarray()

    def triplets(self) -> Iterator[tuple[int, int, float]]:
        """Yield ``(row, col, weight)`` for nonzero cells, row-major, columns ascending."""
        m = self.data
        for i in range(m.shape[0]):
            lo, hi = m.indptr[i], m.indptr[i + 1]
            for j, w in zip(m.indices[lo:hi], m.data[lo:hi]):
                yield i, int(j), w.item()


def build_dictionary(docs: Sequence[TokenizedDocument], max_df: float = 0.5) -> Dictionary:
    """Collect terms, excluding those present in more than ``max_df`` of documents.

    The cutoff is strict: a term in exactly half the documents survives the
    default ``max_df=0.5``. Terms come out sorted.
    """
    if not docs:
        raise ValueError("cannot build a dictionary from zero documents")
    if not 0 < max_df <= 1:
        raise ValueError(f"max_df must lie in (0, 1], got {max_df}")
    df = Counter()
    for d in docs:
        df.update(set(d.tokens))
    n = len(docs)
    kept = sorted(t for t, f in df.items() if f / n <= max_df)
    if not kept:
        raise EmptyVocabulary(f"all {len(df)} terms exceed max_df={max_df}")
    return Dictionary(tuple(kept), tuple(df[t] for t in kept), n)


def bow_matrix(docs: Sequence[TokenizedDocument], dictionary: Dictionary) -> DocTermMatrix:
    index = dictionary.index
    indptr = [0]
    indices = []
    values = []
    for d in docs:
        counts = Counter(index[t] for t in d.tokens if t in index)
        if not counts:
            raise EmptyDocumentRow(d.id)
        for j in sorted(counts):
            indices.append(j)
            values.append(counts[j])
        indptr.append(len(indices))
    data = sp.csr_matrix(
        (np.asarray(values, dtype=np.int64), np.asarray(indices, dtype=np.int64), np.asarray(indptr)),
        shape=(len(docs), len(dictionary)),
    )
    return DocTermMatrix(
        data=data,
        kind="bow",
        terms=dictionary.terms,
        doc_ids=tuple(d.id for d in docs),
        doc_freq=dictionary.doc_freq,
        fingerprint=corpus_fingerprint(docs),
    )


def tfidf_transform(A: DocTermMatrix) -> DocTermMatrix:
    """Scale counts by ``ln(d / f_j)``; columns whose weight vanishes are dropped."""
    if A.kind != "bow":
        raise ValueError("tfidf_transform expects a bow matrix")
    d = A.shape[0]
    f = np.asarray(A.doc_freq, dtype=np.float64)
    idf = np.log(d / f)
    keep = np.flatnonzero(idf > 0)
    if keep.size == 0:
        raise EmptyVocabulary("every term occurs in every document; tf-idf is all zero")
    scaled = A.data.astype(np.float64) @ sp.diags(idf)
    T = sp.csr_matrix(scaled)[:, keep]
    T.sort_indices()
    T.eliminate_zeros()
    empty = np.flatnonzero(np.diff(T.indptr) == 0)
    if empty.size:
        raise EmptyDocumentRow(A.doc_ids[empty[0]])
    return DocTermMatrix(
        data=T,
        kind="tfidf",
        terms=tuple(A.terms[j] for j in keep),
        doc_ids=A.doc_ids,
        doc_freq=tuple(A.doc_freq[j] for j in keep),
        fingerprint=A.fingerprint,
    )


def write_triplets(matrix: DocTermMatrix, path) -> None:
    """Write ``doc_id term weight`` lines plus a ``<path>.dict`` sidecar.

    The sidecar lists ``term doc_freq`` per column in column order.
    """
    with open(path, "w", encoding="utf-8", newline="\n") as fh:
        fh.write(f"# kind={matrix.kind} docs={matrix.shape[0]} terms={matrix.shape[1]}\n")
        for i, j, w in matrix.triplets():
            weight = str(int(w)) if matrix.kind == "bow" else repr(float(w))
            fh.write(f"{matrix.doc_ids[i]} {matrix.terms[j]} {weight}\n")
    with open(f"{path}.dict", "w", encoding="utf-8", newline="\n") as fh:
        for t, f in zip(matrix.terms, matrix.doc_freq):
            fh.write(f"{t} {f}\n")


def read_triplets(path) -> tuple[list[tuple[str, str, float]], list[tuple[str, int]]]:
    rows = []
    with open(path, encoding="utf-8") as fh:
        for line in fh:
            if line.startswith("#") or not line.strip():
                continue
            doc_id, term, w = line.split()
            rows.append((doc_id, term, float(w)))
    with open(f"{path}.dict", encoding="utf-8") as fh:
        vocab = [(t, int(f)) for t, f in (line.split() for line in fh if line.strip())]
    return rows, vocab
