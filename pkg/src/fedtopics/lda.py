"""Latent Dirichlet allocation fitted by collapsed Gibbs sampling.

Every nonzero cell of the document-term matrix becomes sampling sites. A
bag-of-words cell with count ``c`` expands to ``c`` unit-weight sites, so the
sampler is the textbook token-level one. A tf-idf cell is a single site of
real weight ``w``: its topic assignment moves ``w`` units of mass in the
document-topic and topic-word counts.

Randomness comes from one PCG64 stream per fit: the initial assignments are
drawn first, then one uniform per site per sweep. Given the same matrix and
hyperparameters the fitted model is bit-identical.
"""
from __future__ import annotations

import json
from dataclasses import asdict, dataclass, field
from typing import Callable, Sequence

import numba
import numpy as np
from scipy.special import gammaln

from .errors import (
    EmptyMatrix,
    IndexOutOfRange,
    InvalidHyperparams,
    UnknownVocabularyOnly,
)
from .preprocess import TokenizedDocument
from .vectorize import DocTermMatrix

__all__ = [
    "LdaHyperparams",
    "LdaModel",
    "fit",
    "infer_theta",
    "top_words",
    "joint_log_likelihood",
    "save_model",
    "load_model",
]

MODEL_FORMAT = "fedtopics-lda/1"


@dataclass(frozen=True)
class LdaHyperparams:
    # burn_in is recorded for provenance only: estimates use the final sample.
    K: int
    alpha: float
    eta: float
    iterations: int = 1000
    burn_in: int = 0
    seed: int = 42

    def validate(self):
        if int(self.K) != self.K or self.K < 2:
            raise InvalidHyperparams(f"K must be an integer >= 2, got {self.K}")
        if not self.alpha > 0:
            raise InvalidHyperparams(f"alpha must be positive, got {self.alpha}")
        if not self.eta > 0:
            raise InvalidHyperparams(f"eta must be positive, got {self.eta}")
        if self.iterations < 1:
            raise InvalidHyperparams("iterations must be positive")
        if not 0 <= self.burn_in < self.iterations:
            raise InvalidHyperparams("burn_in must satisfy 0 <= burn_in < iterations")
        if not 0 <= self.seed < 2**64:
            raise InvalidHyperparams("seed must be a 64-bit unsigned integer")


@dataclass(frozen=True, eq=False)
class LdaModel:
    """Fitted point estimates from the final Gibbs sample.

    ``phi`` is ``K x V`` (topic-word), ``theta`` is ``M x K`` (document-topic).
    """

    phi: np.ndarray
    theta: np.ndarray
    hyper: LdaHyperparams
    terms: tuple[str, ...]
    doc_ids: tuple[str, ...]
    fingerprint: str
    kind: str = "bow"
    loglik_trace: tuple[tuple[int, float], ...] = field(default=())

    @property
    def K(self):
        return self.phi.shape[0]

    @property
    def V(self):
        return self.phi.shape[1]

    @property
    def term_index(self) -> dict[str, int]:
        return {t: j for j, t in enumerate(self.terms)}


# -- sampling kernels ---------------------------------------------------------

@numba.njit(cache=True, nogil=True)
def _gibbs_sweep(doc, word, weight, z, ndk, nkw, nk, alpha, eta, v_eta, u, order, cdf):
    n_topics = nk.shape[0]
    for s in range(doc.shape[0]):
        d = doc[s]
        v = word[s]
        w = weight[s]
        k = z[s]
        ndk[d, k] -= w
        nkw[k, v] -= w
        nk[k] -= w
        total = 0.0
        for i in range(n_topics):
            kk = order[i]
            total += (ndk[d, kk] + alpha) * (nkw[kk, v] + eta) / (nk[kk] + v_eta)
            cdf[i] = total
        target = u[s] * total
        i = 0
        while i < n_topics - 1 and cdf[i] <= target:
            i += 1
        k = order[i]
        z[s] = k
        ndk[d, k] += w
        nkw[k, v] += w
        nk[k] += w


@numba.njit(cache=True, nogil=True)
def _fold_in_sweep(word, z, nk_doc, alpha, phi, u, cdf):
    n_topics = nk_doc.shape[0]
    for s in range(word.shape[0]):
        v = word[s]
        k = z[s]
        nk_doc[k] -= 1.0
        total = 0.0
        for kk in range(n_topics):
            total += (nk_doc[kk] + alpha) * phi[kk, v]
            cdf[kk] = total
        target = u[s] * total
        i = 0
        while i < n_topics - 1 and cdf[i] <= target:
            i += 1
        z[s] = i
        nk_doc[i] += 1.0


# -- fitting ------------------------------------------------------------------

def _sites(matrix: DocTermMatrix):
    m = matrix.data
    rows = np.repeat(np.arange(m.shape[0], dtype=np.int64), np.diff(m.indptr))
    cols = m.indices.astype(np.int64)
    vals = m.data
    if matrix.kind == "bow":
        reps = vals.astype(np.int64)
        doc = np.repeat(rows, reps)
        word = np.repeat(cols, reps)
        weight = np.ones(doc.shape[0], dtype=np.float64)
    else:
        doc, word, weight = rows, cols, vals.astype(np.float64)
    return doc, word, weight


def joint_log_likelihood(ndk, nkw, alpha, eta) -> float:
    """Collapsed ``log p(w, z)`` under symmetric priors; accepts real-valued counts."""
    K, V = nkw.shape
    M = ndk.shape[0]
    ll = K * (gammaln(V * eta) - V * gammaln(eta))
    ll += np.sum(gammaln(nkw + eta)) - np.sum(gammaln(nkw.sum(axis=1) + V * eta))
    ll += M * (gammaln(K * alpha) - K * gammaln(alpha))
    ll += np.sum(gammaln(ndk + alpha)) - np.sum(gammaln(ndk.sum(axis=1) + K * alpha))
    return float(ll)


def fit(
    matrix: DocTermMatrix,
    hyper: LdaHyperparams,
    *,
    loglik_every: int = 50,
    topic_permutation: Sequence[int] | None = None,
    callback: Callable | None = None,
) -> LdaModel:
    """Fit LDA by collapsed Gibbs sampling.

    Parameters
    ----------
    matrix : DocTermMatrix
        ``bow`` or ``tfidf`` weights.
    hyper : LdaHyperparams
    loglik_every : int
        Record the joint log-likelihood of the initial state, then every this
        many sweeps its mean over the sweeps since the previous record
        (0 disables).
    topic_permutation : sequence of int, optional
        Relabels topics: the initial assignment ``k`` becomes
        ``topic_permutation[k]`` and the sampler visits labels in the matching
        order, so the fitted model equals the unpermuted one with its topic
        axis permuted.
    callback : callable, optional
        Called as ``callback(sweep, ndk, nkw, nk)`` after every sweep.
    """
    hyper.validate()
    if matrix.data.nnz == 0 or matrix.shape[1] == 0:
        raise EmptyMatrix("matrix has no nonzero entries")
    K = int(hyper.K)
    M, V = matrix.shape
    order = np.arange(K, dtype=np.int64)
    if topic_permutation is not None:
        order = np.asarray(topic_permutation, dtype=np.int64)
        if sorted(order.tolist()) != list(range(K)):
            raise InvalidHyperparams("topic_permutation must be a permutation of range(K)")

    doc, word, weight = _sites(matrix)
    rng = np.random.Generator(np.random.PCG64(hyper.seed))
    z = order[rng.integers(0, K, size=doc.shape[0])]

    ndk = np.zeros((M, K))
    nkw = np.zeros((K, V))
    np.add.at(ndk, (doc, z), weight)
    np.add.at(nkw, (z, word), weight)
    nk = nkw.sum(axis=1)

    alpha, eta = float(hyper.alpha), float(hyper.eta)
    cdf = np.empty(K)
    trace = []
    block = 0.0
    if loglik_every:
        trace.append((0, joint_log_likelihood(ndk, nkw, alpha, eta)))
    for sweep in range(1, hyper.iterations + 1):
        u = rng.random(doc.shape[0])
        _gibbs_sweep(doc, word, weight, z, ndk, nkw, nk, alpha, eta, V * eta, u, order, cdf)
        if callback is not None:
            callback(sweep, ndk, nkw, nk)
        if loglik_every:
            block += joint_log_likelihood(ndk, nkw, alpha, eta)
            if sweep % loglik_every == 0:
                trace.append((sweep, block / loglik_every))
                block = 0.0

    nd = ndk.sum(axis=1, keepdims=True)
    theta = (ndk + alpha) / (nd + K * alpha)
    phi = (nkw + eta) / (nk[:, None] + V * eta)
    return LdaModel(
        phi=phi,
        theta=theta,
        hyper=hyper,
        terms=tuple(matrix.terms),
        doc_ids=tuple(matrix.doc_ids),
        fingerprint=matrix.fingerprint,
        kind=matrix.kind,
        loglik_trace=tuple(trace),
    )


def infer_theta(
    model: LdaModel,
    doc: TokenizedDocument,
    *,
    iterations: int = 200,
    seed: int | None = None,
) -> np.ndarray:
    """Topic mixture of an unseen document by fold-in Gibbs with ``phi`` held fixed."""
    index = model.term_index
    word = np.asarray([index[t] for t in doc.tokens if t in index], dtype=np.int64)
    if word.size == 0:
        raise UnknownVocabularyOnly(f"no token of {doc.id!r} is in the model vocabulary")
    K = model.K
    rng = np.random.Generator(np.random.PCG64(model.hyper.seed if seed is None else seed))
    z = rng.integers(0, K, size=word.size)
    nk_doc = np.bincount(z, minlength=K).astype(np.float64)
    phi = np.ascontiguousarray(model.phi)
    alpha = float(model.hyper.alpha)
    cdf = np.empty(K)
    for _ in range(iterations):
        _fold_in_sweep(word, z, nk_doc, alpha, phi, rng.random(word.size), cdf)
    return (nk_doc + alpha) / (word.size + K * alpha)


def top_words(model: LdaModel, topic: int, n: int) -> list[tuple[str, float]]:
    """The ``n`` most probable terms of a topic; ties go to the lexicographically smaller term."""
    if not 0 <= topic < model.K:
        raise IndexOutOfRange(f"topic {topic} outside [0, {model.K})")
    if not 1 <= n <= model.V:
        raise IndexOutOfRange(f"n={n} outside [1, {model.V}]")
    row = model.phi[topic]
    ranked = sorted(range(model.V), key=lambda j: (-row[j], model.terms[j]))
    return [(model.terms[j], float(row[j])) for j in ranked[:n]]


# -- persistence --------------------------------------------------------------

def _sig6(a):
    return [[float(f"{x:.6g}") for x in row] for row in np.asarray(a)]


def model_to_dict(model: LdaModel) -> dict:
    return {
        "format": MODEL_FORMAT,
        "kind": model.kind,
        "hyper": asdict(model.hyper),
        "fingerprint": model.fingerprint,
        "terms": list(model.terms),
        "doc_ids": list(model.doc_ids),
        "phi": _sig6(model.phi),
        "theta": _sig6(model.theta),
    }


def save_model(model: LdaModel, path) -> None:
    """Single JSON file; ``phi`` and ``theta`` rounded to 6 significant digits."""
    with open(path, "w", encoding="utf-8", newline="\n") as fh:
        json.dump(model_to_dict(model), fh, separators=(",", ":"))
        fh.write("\n")


def load_model(path) -> LdaModel:
    with open(path, encoding="utf-8") as fh:
        rec = json.load(fh)
    if rec.get("format") != MODEL_FORMAT:
        raise ValueError(f"{path}: not a {MODEL_FORMAT} file")
    return LdaModel(
        phi=np.asarray(rec["phi"], dtype=np.float64),
        theta=np.asarray(rec["theta"], dtype=np.float64),
        hyper=LdaHyperparams(**rec["hyper"]),
        terms=tuple(rec["terms"]),
        doc_ids=tuple(rec["doc_ids"]),
        fingerprint=rec["fingerprint"],
        kind=rec["kind"],
    )
