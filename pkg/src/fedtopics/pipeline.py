"""End-to-end run: statements -> tokens -> bow/tf-idf -> search -> best model -> reports.

Every file a run writes is listed, with its SHA-256, in ``manifest.json``.
Paths in the manifest are relative to the output directory and the output
directory itself is not part of the recorded configuration, so the same
configuration reproduces the same manifest bytes wherever it is run.
"""
from __future__ import annotations

import dataclasses
import hashlib
import json
import logging
import shutil
from dataclasses import dataclass, field
from pathlib import Path

from .coherence import CoherenceConfig
from .corpus import load_corpus
from .errors import SampleTooLarge, StageError
from .hyperopt import (
    FitOptions,
    FloatRange,
    GridSpec,
    IntRange,
    config_seed,
    enumerate_grid,
    sample_configs,
    search,
    select_best,
    write_ranking,
)
from .lda import load_model
from .preprocess import PreprocessConfig, load_tokens, normalize_corpus, save_tokens
from .trends import load_labels, write_report
from .vectorize import bow_matrix, build_dictionary, tfidf_transform, write_triplets

__all__ = ["RunConfig", "run", "derive_seed", "sha256_file", "load_preprocess_config"]

log = logging.getLogger(__name__)

KINDS = ("bow", "tfidf")


@dataclass(frozen=True)
class RunConfig:
    corpus: str
    out: str
    corpus_format: str = "jsonl"
    preprocess: str | None = None
    max_df: float = 0.5
    grid: GridSpec = field(default_factory=GridSpec)
    samples: int = 100
    seed: int = 42
    kinds: tuple[str, ...] = KINDS
    iterations: int = 1000
    coherence: CoherenceConfig = field(default_factory=CoherenceConfig)
    shared_samples: bool = False
    labels: str | None = None
    n_words: int = 15
    n_jobs: int = 1

    def to_dict(self) -> dict:
        d = dataclasses.asdict(self)
        d.pop("out")
        d.pop("n_jobs")  # never changes results
        d["kinds"] = list(self.kinds)
        return d

    @classmethod
    def from_dict(cls, d: dict) -> "RunConfig":
        d = dict(d)
        if "grid" in d and isinstance(d["grid"], dict):
            g = d["grid"]
            d["grid"] = GridSpec(
                topics=IntRange(**g["topics"]),
                alpha_range=FloatRange(**g["alpha_range"]),
                eta_range=FloatRange(**g["eta_range"]),
            )
        if "coherence" in d and isinstance(d["coherence"], dict):
            d["coherence"] = CoherenceConfig(**d["coherence"])
        if "kinds" in d:
            d["kinds"] = tuple(d["kinds"])
        return cls(**d)


def load_preprocess_config(path=None) -> PreprocessConfig:
    """Read ``{"stopwords": path, "blocklist": path, "stem": bool}``.

    Every key is optional; list paths resolve relative to the JSON file and
    omitted lists fall back to the bundled ones.
    """
    if path is None:
        return PreprocessConfig()
    path = Path(path)
    rec = json.loads(path.read_text(encoding="utf-8"))
    unknown = set(rec) - {"stopwords", "blocklist", "stem"}
    if unknown:
        raise ValueError(f"unknown preprocess config keys: {sorted(unknown)}")

    def resolve(key):
        return path.parent / rec[key] if rec.get(key) else None

    return PreprocessConfig.from_files(resolve("stopwords"), resolve("blocklist"), bool(rec.get("stem", True)))


def derive_seed(seed: int, *parts) -> int:
    key = "|".join([str(int(seed))] + [str(p) for p in parts]).encode()
    return int.from_bytes(hashlib.sha256(key).digest()[:8], "little")


def sha256_file(path) -> str:
    h = hashlib.sha256()
    with open(path, "rb") as fh:
        for chunk in iter(lambda: fh.read(1 << 16), b""):
            h.update(chunk)
    return h.hexdigest()


class _Stage:
    def __init__(self, name):
        self.name = name

    def __enter__(self):
        log.info("stage %s", self.name)
        return self

    def __exit__(self, exc_type, exc, tb):
        if exc is not None and not isinstance(exc, StageError):
            raise StageError(self.name, exc) from exc
        return False


def run(cfg: RunConfig) -> dict:
    """Execute the full pipeline and return the manifest (also written to disk)."""
    out = Path(cfg.out)
    out.mkdir(parents=True, exist_ok=True)
    written: list[Path] = []
    config = cfg.to_dict()
    config_hash = hashlib.sha256(json.dumps(config, sort_keys=True).encode()).hexdigest()

    def rel(p):
        return Path(p).relative_to(out).as_posix()

    with _Stage("hyperopt"):
        for kind in cfg.kinds:
            if kind not in KINDS:
                raise ValueError(f"unknown matrix kind {kind!r}")
        grid = enumerate_grid(cfg.grid)
        if cfg.samples > len(grid):
            raise SampleTooLarge(f"cannot draw {cfg.samples} configurations from a grid of {len(grid)}")

    with _Stage("corpus"):
        corpus = load_corpus(cfg.corpus, cfg.corpus_format)

    with _Stage("preprocess"):
        pcfg = load_preprocess_config(cfg.preprocess)
        h = hashlib.sha256()
        for d in corpus:
            h.update(json.dumps([d.id, d.date.isoformat(), d.text]).encode())
        corpus_digest = h.hexdigest()
        key = hashlib.sha256(f"{corpus_digest}|{pcfg.digest()}".encode()).hexdigest()
        cache = out / "cache" / f"tokens-{key[:16]}.jsonl"
        cache.parent.mkdir(parents=True, exist_ok=True)
        if cache.exists():
            tokens = load_tokens(cache)
        else:
            tokens = normalize_corpus(corpus, pcfg)
            save_tokens(tokens, cache)
        written.append(cache)

    with _Stage("vectorize"):
        dictionary = build_dictionary(tokens, cfg.max_df)
        bow = bow_matrix(tokens, dictionary)
        matrices = {"bow": bow}
        if "tfidf" in cfg.kinds:
            matrices["tfidf"] = tfidf_transform(bow)

    labels = load_labels(cfg.labels) if cfg.labels else None
    seeds = {"global": cfg.seed}
    branches = {}
    for kind in cfg.kinds:
        kdir = out / kind
        kdir.mkdir(exist_ok=True)
        matrix = matrices[kind]
        with _Stage("vectorize"):
            mpath = kdir / "matrix.tsv"
            write_triplets(matrix, mpath)
            written += [mpath, Path(f"{mpath}.dict")]

        with _Stage("hyperopt"):
            sample_seed = cfg.seed if cfg.shared_samples else derive_seed(cfg.seed, "sample", kind)
            seeds[f"sample_{kind}"] = sample_seed
            configs = sample_configs(grid, cfg.samples, sample_seed)
            models_dir = kdir / "models"
            if models_dir.exists():
                shutil.rmtree(models_dir)
            results = search(
                matrix,
                configs,
                FitOptions(iterations=cfg.iterations, seed=cfg.seed),
                cfg.coherence,
                reference=tokens,
                model_dir=models_dir,
                n_jobs=cfg.n_jobs,
            )
            ranking = kdir / "ranking.csv"
            write_ranking(results, ranking)
            written.append(ranking)
            written += [Path(r.model_path) for r in results if r.model_path]
            failures = [
                {"n_topics": r.K, "alpha": r.alpha, "eta": r.eta, "error": r.error}
                for r in results if not r.ok
            ]

        with _Stage("select"):
            best = select_best(results)
            best_path = kdir / "model.json"
            shutil.copyfile(best.model_path, best_path)
            written.append(best_path)

        with _Stage("trends"):
            model = load_model(best_path)
            # reload so the report reflects exactly what model.json holds
            report_files = write_report(
                model,
                corpus,
                kdir / "report",
                labels=labels,
                ranking_csv=ranking,
                n_words=cfg.n_words,
            )
            written += report_files

        branches[kind] = {
            "matrix": rel(mpath),
            "ranking": rel(ranking),
            "model": rel(best_path),
            "report": sorted(rel(p) for p in report_files),
            "best": {
                "n_topics": best.K,
                "alpha": best.alpha,
                "eta": best.eta,
                "coherence": best.coherence,
                "fit_seed": config_seed(cfg.seed, best.K, best.alpha, best.eta),
            },
            "n_configs": len(results),
            "failures": failures,
        }

    manifest = {
        "format": "fedtopics-run/1",
        "config": config,
        "config_hash": config_hash,
        "seeds": seeds,
        "inputs": {
            "corpus_digest": corpus_digest,
            "preprocess_digest": pcfg.digest(),
            "n_documents": len(corpus),
        },
        "vocabulary": {kind: int(matrices[kind].shape[1]) for kind in cfg.kinds},
        "branches": branches,
        "artifacts": sorted(
            ({"path": rel(p), "sha256": sha256_file(p)} for p in set(map(Path, written))),
            key=lambda a: a["path"],
        ),
    }
    text = json.dumps(manifest, indent=2, sort_keys=True) + "\n"
    (out / "manifest.json").write_text(text, encoding="utf-8")
    manifest["manifest_sha256"] = hashlib.sha256(text.encode()).hexdigest()
    return manifest

