"""Randomized grid search over (K, alpha, eta), scored by C_v coherence."""
from __future__ import annotations

import csv
import hashlib
import math
from concurrent.futures import ThreadPoolExecutor
from dataclasses import dataclass, field, replace
from pathlib import Path
from typing import Sequence

import numpy as np

from .coherence import CoherenceConfig, cv_score, sliding_window_counts
from .errors import AllConfigsFailed, FedTopicsError, InvalidRange, SampleTooLarge
from .lda import LdaHyperparams, fit, save_model, top_words
from .vectorize import DocTermMatrix

__all__ = [
    "IntRange",
    "FloatRange",
    "GridSpec",
    "FitOptions",
    "SearchResult",
    "enumerate_grid",
    "sample_configs",
    "config_seed",
    "search",
    "select_best",
    "write_ranking",
    "read_ranking",
]

_ROUND = 10


@dataclass(frozen=True)
class IntRange:
    """Inclusive integer range."""

    start: int
    stop: int
    step: int = 1

    def values(self) -> list[int]:
        if self.step <= 0 or self.stop < self.start:
            raise InvalidRange(f"bad integer range {self}")
        return list(range(self.start, self.stop + 1, self.step))


@dataclass(frozen=True)
class FloatRange:
    """Half-open real range ``[start, stop)`` generated as ``start + i * step``."""

    start: float
    stop: float
    step: float

    def values(self) -> list[float]:
        if not (self.step > 0 and self.stop > self.start):
            raise InvalidRange(f"bad real range {self}")
        n = math.ceil((self.stop - self.start) / self.step - 1e-9)
        return [round(self.start + i * self.step, _ROUND) for i in range(n)]


@dataclass(frozen=True)
class GridSpec:
    topics: IntRange = IntRange(3, 10, 1)
    alpha_range: FloatRange = FloatRange(0.05, 1.55, 0.1)
    eta_range: FloatRange = FloatRange(0.05, 1.55, 0.1)


def enumerate_grid(spec: GridSpec | None = None) -> list[tuple[int, float, float]]:
    """All ``(K, alpha, eta)`` tuples, K-major then alpha then eta."""
    spec = spec or GridSpec()
    alphas = spec.alpha_range.values()
    etas = spec.eta_range.values()
    return [(k, a, e) for k in spec.topics.values() for a in alphas for e in etas]


def sample_configs(grid: Sequence, n: int, seed: int) -> list:
    """Draw ``n`` grid points without replacement, in selection order."""
    if n > len(grid):
        raise SampleTooLarge(f"cannot draw {n} configurations from a grid of {len(grid)}")
    if n < 0:
        raise ValueError("n must be nonnegative")
    rng = np.random.Generator(np.random.PCG64(seed))
    picks = rng.choice(len(grid), size=n, replace=False)
    return [tuple(grid[i]) for i in picks]


def config_seed(global_seed: int, K: int, alpha: float, eta: float) -> int:
    """64-bit fit seed derived from the global seed and the configuration alone."""
    key = f"{int(global_seed)}|{int(K)}|{float(alpha)!r}|{float(eta)!r}".encode()
    return int.from_bytes(hashlib.sha256(key).digest()[:8], "little")


@dataclass(frozen=True)
class FitOptions:
    iterations: int = 1000
    burn_in: int = 0
    seed: int = 42


@dataclass(frozen=True)
class SearchResult:
    K: int
    alpha: float
    eta: float
    coherence: float | None
    kind: str
    model_path: str | None = None
    error: str | None = None
    per_topic: tuple[float, ...] = field(default=(), repr=False)

    @property
    def ok(self) -> bool:
        return self.error is None

    @property
    def sort_key(self):
        return (-self.coherence, self.K, self.alpha, self.eta)


def _rank(results):
    good = sorted((r for r in results if r.ok), key=lambda r: r.sort_key)
    bad = sorted((r for r in results if not r.ok), key=lambda r: (r.K, r.alpha, r.eta))
    return good + bad


def search(
    matrix: DocTermMatrix,
    configs: Sequence[tuple[int, float, float]],
    fit_opts: FitOptions | None = None,
    coherence_cfg: CoherenceConfig | None = None,
    *,
    reference: Sequence,
    model_dir=None,
    n_jobs: int = 1,
) -> list[SearchResult]:
    """Fit and score every configuration.

    ``reference`` is the tokenized corpus the coherence windows slide over.
    Successful results come first, ordered by coherence descending then K,
    alpha and eta ascending; failed configurations follow with their error
    message instead of a score. Each fit's seed depends only on
    ``fit_opts.seed`` and the configuration, so neither the order of
    ``configs`` nor ``n_jobs`` changes the outcome.
    """
    if not configs:
        raise ValueError("no configurations to search")
    fit_opts = fit_opts or FitOptions()
    coherence_cfg = coherence_cfg or CoherenceConfig()
    top_n = min(coherence_cfg.top_n, matrix.shape[1])
    cfg = replace(coherence_cfg, top_n=top_n)
    counts = sliding_window_counts(reference, cfg.window, matrix.terms)
    if model_dir is not None:
        Path(model_dir).mkdir(parents=True, exist_ok=True)

    def evaluate(conf):
        K, alpha, eta = conf
        hyper = LdaHyperparams(
            K=int(K),
            alpha=float(alpha),
            eta=float(eta),
            iterations=fit_opts.iterations,
            burn_in=fit_opts.burn_in,
            seed=config_seed(fit_opts.seed, K, alpha, eta),
        )
        try:
            model = fit(matrix, hyper, loglik_every=0)
            topics = [[w for w, _ in top_words(model, k, top_n)] for k in range(model.K)]
            score = cv_score(topics, None, cfg, counts=counts)
        except (FedTopicsError, ValueError, FloatingPointError) as exc:
            return SearchResult(int(K), float(alpha), float(eta), None, matrix.kind,
                                error=f"{type(exc).__name__}: {exc}")
        path = None
        if model_dir is not None:
            path = str(Path(model_dir) / f"k{int(K)}_a{float(alpha)!r}_e{float(eta)!r}.json")
            save_model(model, path)
        return SearchResult(int(K), float(alpha), float(eta), score.value, matrix.kind,
                            model_path=path, per_topic=score.per_topic)

    if n_jobs > 1:
        with ThreadPoolExecutor(max_workers=n_jobs) as pool:
            results = list(pool.map(evaluate, configs))
    else:
        results = [evaluate(c) for c in configs]
    return _rank(results)


def select_best(results: Sequence[SearchResult]) -> SearchResult:
    good = [r for r in results if r.ok]
    if not good:
        raise AllConfigsFailed(f"none of {len(results)} configurations produced a score")
    return min(good, key=lambda r: r.sort_key)


def write_ranking(results: Sequence[SearchResult], path) -> None:
    """CSV ``n_topics,alpha,eta,coherence`` for the successful results, in rank order."""
    with open(path, "w", newline="", encoding="utf-8") as fh:
        out = csv.writer(fh, lineterminator="\n")
        out.writerow(["n_topics", "alpha", "eta", "coherence"])
        for r in results:
            if r.ok:
                out.writerow([r.K, f"{r.alpha:.10g}", f"{r.eta:.10g}", f"{r.coherence:.6f}"])


def read_ranking(path) -> list[tuple[int, float, float, float]]:
    with open(path, newline="", encoding="utf-8") as fh:
        rows = list(csv.DictReader(fh))
    return [(int(r["n_topics"]), float(r["alpha"]), float(r["eta"]), float(r["coherence"])) for r in rows]
