"""Analysis products of a fitted model: topic dominance over time, a 2-D
topic map and per-topic word weights, plus the report bundle that holds them.
"""
from __future__ import annotations

import csv
import datetime as dt
import json
import warnings
from dataclasses import dataclass
from pathlib import Path
from typing import NamedTuple, Sequence

import numpy as np

from .corpus import Corpus, corpus_fingerprint
from .errors import DimensionMismatch, FingerprintMismatch
from .lda import LdaModel, top_words

__all__ = [
    "DominanceSeries",
    "TopicEmbedding",
    "Period",
    "DegenerateSpectrum",
    "PALETTE",
    "dominance_series",
    "dominant_periods",
    "js_divergence",
    "js_matrix",
    "classical_mds",
    "mds_embed",
    "wordcloud_data",
    "write_report",
    "load_labels",
]

# tab10, fixed so figures do not depend on matplotlib style settings
PALETTE = (
    "#1f77b4", "#ff7f0e", "#2ca02c", "#d62728", "#9467bd",
    "#8c564b", "#e377c2", "#7f7f7f", "#bcbd22", "#17becf",
)


class DegenerateSpectrum(UserWarning):
    """The second MDS eigenvalue vanished; topics lie on a line."""


@dataclass(frozen=True, eq=False)
class DominanceSeries:
    dates: tuple[dt.date, ...]
    mixtures: np.ndarray

    def __post_init__(self):
        if len(self.dates) != self.mixtures.shape[0]:
            raise DimensionMismatch("one mixture row per date required")
        for a, b in zip(self.dates, self.dates[1:]):
            if b < a:
                raise ValueError("dates must be in chronological order")


@dataclass(frozen=True, eq=False)
class TopicEmbedding:
    coords: np.ndarray
    sizes: np.ndarray
    eigenvalues: np.ndarray
    degenerate: bool = False


class Period(NamedTuple):
    start: dt.date
    end: dt.date
    topic: int


def dominance_series(model: LdaModel, corpus: Corpus) -> DominanceSeries:
    if model.fingerprint != corpus_fingerprint(corpus):
        raise FingerprintMismatch("model was not fitted on this corpus")
    return DominanceSeries(tuple(corpus.dates), model.theta)


def dominant_periods(series: DominanceSeries, min_len: int = 1) -> list[Period]:
    """Maximal runs of a shared argmax topic.

    Runs shorter than ``min_len`` dates are absorbed by the run before them;
    a short leading run is absorbed by the one after it. Argmax ties go to
    the lower topic index.
    """
    if min_len < 1:
        raise ValueError("min_len must be positive")
    top = np.argmax(series.mixtures, axis=1)
    runs = []  # [start_idx, end_idx, topic]
    for i, k in enumerate(top):
        if runs and runs[-1][2] == k:
            runs[-1][1] = i
        else:
            runs.append([i, i, int(k)])
    merged = []
    for run in runs:
        length = run[1] - run[0] + 1
        if merged and length < min_len:
            merged[-1][1] = run[1]
        elif merged and merged[-1][2] == run[2]:
            merged[-1][1] = run[1]
        else:
            merged.append(list(run))
    if len(merged) > 1 and merged[0][1] - merged[0][0] + 1 < min_len:
        merged[1][0] = merged[0][0]
        merged.pop(0)
    d = series.dates
    return [Period(d[a], d[b], k) for a, b, k in merged]


def js_divergence(p, q) -> float:
    """Jensen-Shannon divergence in bits, so bounded by 1."""
    p = np.asarray(p, dtype=np.float64)
    q = np.asarray(q, dtype=np.float64)
    if p.shape != q.shape:
        raise DimensionMismatch(f"{p.shape} vs {q.shape}")
    m = 0.5 * (p + q)

    def kl(a):
        nz = a > 0
        return np.sum(a[nz] * np.log2(a[nz] / m[nz]))

    return float(max(0.0, 0.5 * kl(p) + 0.5 * kl(q)))


def js_matrix(rows: np.ndarray) -> np.ndarray:
    K = rows.shape[0]
    D = np.zeros((K, K))
    for i in range(K):
        for j in range(i + 1, K):
            D[i, j] = D[j, i] = js_divergence(rows[i], rows[j])
    return D


def classical_mds(D: np.ndarray, n_dims: int = 2) -> tuple[np.ndarray, np.ndarray]:
    """Torgerson scaling of a distance matrix.

    Returns coordinates and the eigenvalues of the double-centred matrix
    (descending). In each output axis the entry of largest magnitude is
    made positive.
    """
    n = D.shape[0]
    J = np.eye(n) - np.full((n, n), 1.0 / n)
    B = -0.5 * J @ (D ** 2) @ J
    B = 0.5 * (B + B.T)
    evals, evecs = np.linalg.eigh(B)
    order = np.argsort(evals)[::-1]
    evals = evals[order]
    evecs = evecs[:, order]
    coords = np.zeros((n, n_dims))
    for a in range(min(n_dims, n)):
        col = evecs[:, a] * np.sqrt(max(evals[a], 0.0))
        pivot = np.argmax(np.abs(col))
        if col[pivot] < 0:
            col = -col
        coords[:, a] = col
    return coords, evals


def mds_embed(model: LdaModel) -> TopicEmbedding:
    """2-D map of topics from JS divergences between ``phi`` rows.

    Sizes are the topics' average share of the document mixtures.
    """
    if model.K < 2:
        raise ValueError("need at least two topics")
    coords, evals = classical_mds(js_matrix(model.phi), 2)
    degenerate = evals[1] <= 1e-12
    if degenerate:
        warnings.warn(
            f"second eigenvalue {evals[1]:.3g} <= 1e-12; topics embed on a line",
            DegenerateSpectrum,
            stacklevel=2,
        )
    sizes = model.theta.sum(axis=0) / model.theta.shape[0]
    return TopicEmbedding(coords, sizes, evals, bool(degenerate))


def wordcloud_data(model: LdaModel, n: int = 15) -> list[list[tuple[str, float]]]:
    out = []
    for k in range(model.K):
        words = top_words(model, k, n)
        total = sum(w for _, w in words)
        out.append([(t, w / total) for t, w in words])
    return out


# -- report bundle ------------------------------------------------------------

def load_labels(path) -> dict[int, str]:
    """Topic labels from a JSON file: ``{"labels": {"0": "Credit", ...}}`` or a list."""
    with open(path, encoding="utf-8") as fh:
        rec = json.load(fh)
    labels = rec.get("labels", rec) if isinstance(rec, dict) else rec
    if isinstance(labels, list):
        return {i: str(s) for i, s in enumerate(labels)}
    return {int(k): str(v) for k, v in labels.items()}


def _label(labels, k):
    return labels.get(k, f"Topic {k + 1}") if labels else f"Topic {k + 1}"


def _svg_setup():
    import matplotlib

    matplotlib.use("Agg", force=False)
    import matplotlib.pyplot as plt

    plt.rcParams["svg.hashsalt"] = "fedtopics"
    plt.rcParams["svg.fonttype"] = "none"
    return plt


def _write_dominance_svg(series, labels, path):
    plt = _svg_setup()
    K = series.mixtures.shape[1]
    fig, ax = plt.subplots(figsize=(10, 4))
    x = np.arange(len(series.dates))
    ax.stackplot(
        x,
        series.mixtures.T,
        labels=[_label(labels, k) for k in range(K)],
        colors=[PALETTE[k % len(PALETTE)] for k in range(K)],
    )
    step = max(1, len(x) // 12)
    ax.set_xticks(x[::step])
    ax.set_xticklabels([d.isoformat() for d in series.dates[::step]], rotation=45, ha="right")
    ax.set_xlim(0, max(1, len(x) - 1))
    ax.set_ylim(0, 1)
    ax.set_ylabel("topic share")
    ax.legend(loc="upper left", bbox_to_anchor=(1.01, 1), fontsize="small")
    fig.tight_layout()
    fig.savefig(path, format="svg", metadata={"Date": None})
    plt.close(fig)


def _write_mds_svg(emb, labels, path):
    plt = _svg_setup()
    fig, ax = plt.subplots(figsize=(5, 5))
    K = emb.coords.shape[0]
    for k in range(K):
        x, y = emb.coords[k]
        ax.scatter([x], [y], s=3000 * emb.sizes[k], color=PALETTE[k % len(PALETTE)], alpha=0.6)
        ax.annotate(_label(labels, k), (x, y), ha="center", va="center", fontsize="small")
    ax.axhline(0, color="#cccccc", lw=0.5)
    ax.axvline(0, color="#cccccc", lw=0.5)
    ax.set_xlabel("PC1")
    ax.set_ylabel("PC2")
    pad = 0.1 + float(np.abs(emb.coords).max())
    ax.set_xlim(-pad, pad)
    ax.set_ylim(-pad, pad)
    fig.tight_layout()
    fig.savefig(path, format="svg", metadata={"Date": None})
    plt.close(fig)


def write_report(
    model: LdaModel,
    corpus: Corpus,
    out_dir,
    *,
    labels: dict[int, str] | None = None,
    ranking_csv=None,
    n_words: int = 15,
) -> list[Path]:
    """Write the report bundle and return the files written.

    ``dominance.csv``, ``dominance.svg``, ``mds.csv``, ``mds.svg``,
    ``topics.json`` and, when ``ranking_csv`` is given, a copy of it as
    ``ranking.csv``.
    """
    out = Path(out_dir)
    out.mkdir(parents=True, exist_ok=True)
    written = []
    K = model.K

    series = dominance_series(model, corpus)
    p = out / "dominance.csv"
    with open(p, "w", newline="", encoding="utf-8") as fh:
        w = csv.writer(fh, lineterminator="\n")
        w.writerow(["date"] + [f"topic_{k}" for k in range(K)])
        for d, row in zip(series.dates, series.mixtures):
            w.writerow([d.isoformat()] + [repr(float(v)) for v in row])
    written.append(p)
    p = out / "dominance.svg"
    _write_dominance_svg(series, labels, p)
    written.append(p)

    with warnings.catch_warnings():
        warnings.simplefilter("ignore", DegenerateSpectrum)
        emb = mds_embed(model)
    p = out / "mds.csv"
    with open(p, "w", newline="", encoding="utf-8") as fh:
        w = csv.writer(fh, lineterminator="\n")
        w.writerow(["topic", "x", "y", "size"])
        for k in range(K):
            w.writerow([k, repr(float(emb.coords[k, 0])), repr(float(emb.coords[k, 1])), repr(float(emb.sizes[k]))])
    written.append(p)
    p = out / "mds.svg"
    _write_mds_svg(emb, labels, p)
    written.append(p)

    n = min(n_words, model.V)
    clouds = wordcloud_data(model, n)
    p = out / "topics.json"
    payload = {
        "n_words": n,
        "topics": [
            {
                "topic": k,
                "label": _label(labels, k),
                "words": [t for t, _ in clouds[k]],
                "weights": [round(v, 8) for _, v in clouds[k]],
            }
            for k in range(K)
        ],
    }
    p.write_text(json.dumps(payload, indent=2) + "\n", encoding="utf-8")
    written.append(p)

    if ranking_csv is not None:
        p = out / "ranking.csv"
        p.write_bytes(Path(ranking_csv).read_bytes())
        written.append(p)
    return written
