"""C_v topic coherence.

The measure is assembled from four parts:

* segmentation: one-set, each top word ``w`` paired with the whole word set ``W``;
* probability estimation: boolean sliding windows over the reference texts;
* confirmation: indirect cosine between NPMI context vectors;
* aggregation: arithmetic mean, first over a topic's words, then over topics.
"""
from __future__ import annotations

import csv
from dataclasses import dataclass
from typing import Iterable, Sequence

import numpy as np

from .errors import UnknownWord, WordNotInCorpus

__all__ = [
    "CoherenceConfig",
    "CoherenceScore",
    "WindowCounts",
    "sliding_window_counts",
    "npmi",
    "npmi_matrix",
    "cv_score",
    "write_npmi_table",
]


@dataclass(frozen=True)
class CoherenceConfig:
    top_n: int = 10
    window: int = 110
    epsilon: float = 1e-12
    gamma: float = 1.0

    def __post_init__(self):
        if self.top_n < 2:
            raise ValueError("top_n must be >= 2")
        if self.window < 2:
            raise ValueError("window must be >= 2")
        if not self.epsilon > 0:
            raise ValueError("epsilon must be positive")
        if not self.gamma > 0:
            raise ValueError("gamma must be positive")


@dataclass(frozen=True)
class CoherenceScore:
    value: float
    per_topic: tuple[float, ...]
    clamped: int = 0


@dataclass(frozen=True, eq=False)
class WindowCounts:
    """Window occurrence counts for a fixed set of words.

    ``single[i]`` is the number of windows containing ``words[i]`` and
    ``joint[i, j]`` the number containing both ``words[i]`` and ``words[j]``.
    """

    words: tuple[str, ...]
    single: np.ndarray
    joint: np.ndarray
    total: int

    @property
    def index(self) -> dict[str, int]:
        return {w: i for i, w in enumerate(self.words)}

    def windows(self, w: str) -> int:
        return int(self.single[self.index[w]])

    def windows_pair(self, w1: str, w2: str) -> int:
        idx = self.index
        return int(self.joint[idx[w1], idx[w2]])

    def prob(self, w: str) -> float:
        return self.windows(w) / self.total if self.total else 0.0

    def prob_pair(self, w1: str, w2: str) -> float:
        return self.windows_pair(w1, w2) / self.total if self.total else 0.0


def _tokens(doc):
    return doc.tokens if hasattr(doc, "tokens") else doc


def sliding_window_counts(docs: Iterable, window: int, words: Sequence[str] | None = None) -> WindowCounts:
    """Count boolean sliding windows of width ``window``.

    A document of length ``n > window`` contributes ``n - window + 1``
    windows; a shorter one contributes a single window holding all of it.
    ``words`` restricts counting to those words (default: every word seen).
    """
    if window < 2:
        raise ValueError("window must be >= 2")
    docs = [list(_tokens(d)) for d in docs]
    if words is None:
        words = sorted({t for d in docs for t in d})
    words = tuple(dict.fromkeys(words))
    index = {w: i for i, w in enumerate(words)}
    W = len(words)
    single = np.zeros(W, dtype=np.int64)
    joint = np.zeros((W, W), dtype=np.int64)
    total = 0
    for toks in docs:
        n = len(toks)
        if n == 0:
            continue
        n_windows = 1 if n <= window else n - window + 1
        width = min(n, window)
        total += n_windows
        pos = np.fromiter((index.get(t, -1) for t in toks), dtype=np.int64, count=n)
        hit = pos >= 0
        if not hit.any():
            continue
        onehot = np.zeros((n, W), dtype=np.int32)
        onehot[np.flatnonzero(hit), pos[hit]] = 1
        csum = np.vstack([np.zeros((1, W), dtype=np.int32), np.cumsum(onehot, axis=0)])
        present = (csum[width : width + n_windows] - csum[:n_windows]) > 0
        present = present.astype(np.int64)
        single += present.sum(axis=0)
        joint += present.T @ present
    return WindowCounts(words, single, joint, total)


def npmi(w1: str, w2: str, counts: WindowCounts, epsilon: float = 1e-12) -> float:
    """Normalized PMI of two words, ``log((P12 + eps) / (P1 P2)) / -log(P12 + eps)``."""
    idx = counts.index
    for w in (w1, w2):
        if w not in idx or counts.single[idx[w]] == 0:
            raise UnknownWord(w)
    p1 = counts.prob(w1)
    p2 = counts.prob(w2)
    p12 = counts.prob_pair(w1, w2) + epsilon
    return float(np.log(p12 / (p1 * p2)) / -np.log(p12))


def npmi_matrix(words: Sequence[str], counts: WindowCounts, epsilon: float = 1e-12) -> np.ndarray:
    idx = counts.index
    missing = [w for w in words if w not in idx or counts.single[idx[w]] == 0]
    if missing:
        raise UnknownWord(missing[0])
    ii = np.asarray([idx[w] for w in words])
    p = counts.single[ii] / counts.total
    p12 = counts.joint[np.ix_(ii, ii)] / counts.total + epsilon
    return np.log(p12 / np.outer(p, p)) / -np.log(p12)


def _topic_confirmation(N: np.ndarray, gamma: float) -> float:
    if gamma != 1.0:
        N = np.sign(N) * np.abs(N) ** gamma
    context_all = N.sum(axis=0)
    norm_all = np.linalg.norm(context_all)
    norms = np.linalg.norm(N, axis=1)
    denom = norms * norm_all
    dots = N @ context_all
    cos = np.divide(dots, denom, out=np.zeros_like(dots), where=denom > 0)
    return float(np.mean(cos))


def cv_score(
    topics: Sequence[Sequence[str]],
    docs: Iterable,
    cfg: CoherenceConfig | None = None,
    *,
    counts: WindowCounts | None = None,
) -> CoherenceScore:
    """C_v coherence of a set of topics against a tokenized reference corpus.

    Per-topic subscores outside ``[0, 1]`` are clamped and counted in
    ``CoherenceScore.clamped``. Pass precomputed ``counts`` to score several
    topic sets against the same corpus.
    """
    cfg = cfg or CoherenceConfig()
    topics = [list(t) for t in topics]
    if not topics:
        raise ValueError("no topics to score")
    for t in topics:
        if len(t) != cfg.top_n:
            raise ValueError(f"topic has {len(t)} words, expected top_n={cfg.top_n}")
    if counts is None:
        wanted = sorted({w for t in topics for w in t})
        counts = sliding_window_counts(docs, cfg.window, wanted)
    idx = counts.index
    for t in topics:
        for w in t:
            if w not in idx or counts.single[idx[w]] == 0:
                raise WordNotInCorpus(w)

    subscores = []
    clamped = 0
    for t in topics:
        s = _topic_confirmation(npmi_matrix(t, counts, cfg.epsilon), cfg.gamma)
        if s < 0.0 or s > 1.0:
            clamped += 1
            s = min(1.0, max(0.0, s))
        subscores.append(s)
    return CoherenceScore(float(np.mean(subscores)), tuple(subscores), clamped)


def write_npmi_table(words: Sequence[str], counts: WindowCounts, path, epsilon: float = 1e-12) -> None:
    """Debug dump of pairwise NPMI as ``w1,w2,npmi`` rows."""
    N = npmi_matrix(words, counts, epsilon)
    with open(path, "w", newline="", encoding="utf-8") as fh:
        out = csv.writer(fh, lineterminator="\n")
        out.writerow(["w1", "w2", "npmi"])
        for i, a in enumerate(words):
            for j, b in enumerate(words):
                out.writerow([a, b, repr(float(N[i, j]))])
