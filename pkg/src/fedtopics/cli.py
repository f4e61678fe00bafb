"""Command-line entry point: ``fedtopics <subcommand> ...``.

Failures print ``error: [stage] Type: message`` to stderr and exit with 1
(2 for usage errors, as argparse does).
"""
from __future__ import annotations

import argparse
import json
import logging
import sys
from pathlib import Path

from .coherence import CoherenceConfig
from .corpus import Corpus, fetch_statements, load_corpus, read_url_manifest, save_corpus, strip_markup
from .errors import StageError
from .hyperopt import (
    FitOptions,
    FloatRange,
    GridSpec,
    IntRange,
    enumerate_grid,
    sample_configs,
    search,
    select_best,
    write_ranking,
)
from .indicators import INDICATORS, extreme_summary, load_series_csv, parse_window, write_summary_csv
from .lda import LdaHyperparams, fit, load_model, save_model
from .pipeline import KINDS, RunConfig, derive_seed, load_preprocess_config, run
from .preprocess import normalize_corpus, save_tokens
from .trends import load_labels, write_report
from .vectorize import bow_matrix, build_dictionary, tfidf_transform

log = logging.getLogger("fedtopics")


def _int_range(text):
    a, _, b = text.partition(":")
    return IntRange(int(a), int(b or a))


def _float_range(text):
    parts = text.split(":")
    if len(parts) != 3:
        raise argparse.ArgumentTypeError("expected START:STOP:STEP")
    return FloatRange(*map(float, parts))


def _kinds(text):
    if text == "both":
        return KINDS
    if text not in KINDS:
        raise argparse.ArgumentTypeError("expected bow, tfidf or both")
    return (text,)


def _add_corpus_args(p):
    p.add_argument("--corpus", required=True, help="corpus JSONL or statement directory")
    p.add_argument("--format", default="jsonl", choices=("jsonl", "text_dir"))


def _add_preprocess_args(p):
    p.add_argument("--preprocess", metavar="JSON", help="preprocess config (stopwords, blocklist, stem)")
    p.add_argument("--max-df", type=float, default=0.5)


def _add_search_args(p):
    p.add_argument("--topics", type=_int_range, default=GridSpec().topics, metavar="MIN:MAX")
    p.add_argument("--alpha", type=_float_range, default=GridSpec().alpha_range, metavar="START:STOP:STEP")
    p.add_argument("--eta", type=_float_range, default=GridSpec().eta_range, metavar="START:STOP:STEP")
    p.add_argument("--samples", type=int, default=100)
    p.add_argument("--iterations", type=int, default=1000)
    p.add_argument("--window", type=int, default=110, help="coherence sliding window")
    p.add_argument("--top-n", type=int, default=10)
    p.add_argument("--shared-samples", action="store_true",
                   help="draw the same configurations for every matrix kind")
    p.add_argument("--jobs", type=int, default=1)


def _matrices(args, kinds):
    corpus = load_corpus(args.corpus, args.format)
    tokens = normalize_corpus(corpus, load_preprocess_config(args.preprocess))
    bow = bow_matrix(tokens, build_dictionary(tokens, args.max_df))
    out = {"bow": bow}
    if "tfidf" in kinds:
        out["tfidf"] = tfidf_transform(bow)
    return corpus, tokens, out


def cmd_fetch(args):
    urls = list(args.urls)
    if args.manifest:
        urls += read_url_manifest(args.manifest)
    if not urls:
        raise ValueError("no URLs given")
    docs, errors = fetch_statements(urls, out=args.out, timeout=args.timeout, max_workers=args.jobs)
    for e in errors:
        print(f"warning: {e}", file=sys.stderr)
    if not docs:
        raise RuntimeError("no statement could be fetched")
    corpus = Corpus.from_documents(strip_markup(d) for d in docs)
    save_corpus(corpus, Path(args.out) / "corpus.jsonl")
    print(f"fetched {len(docs)} of {len(urls)} statements into {args.out}")


def cmd_preprocess(args):
    corpus = load_corpus(args.corpus, args.format)
    tokens = normalize_corpus(corpus, load_preprocess_config(args.preprocess))
    save_tokens(tokens, args.out)
    print(f"wrote {len(tokens)} token lists to {args.out}")


def cmd_fit(args):
    kind = args.kind
    _, _, mats = _matrices(args, (kind,))
    hyper = LdaHyperparams(K=args.k, alpha=args.alpha, eta=args.eta,
                           iterations=args.iterations, seed=args.seed)
    model = fit(mats[kind], hyper)
    save_model(model, args.out)
    print(f"wrote {kind} model K={args.k} to {args.out}")


def cmd_search(args):
    grid = enumerate_grid(GridSpec(args.topics, args.alpha, args.eta))
    _, tokens, mats = _matrices(args, args.kind)
    out = Path(args.out)
    out.mkdir(parents=True, exist_ok=True)
    coh = CoherenceConfig(top_n=args.top_n, window=args.window)
    for kind in args.kind:
        seed = args.seed if args.shared_samples else derive_seed(args.seed, "sample", kind)
        configs = sample_configs(grid, args.samples, seed)
        results = search(mats[kind], configs, FitOptions(iterations=args.iterations, seed=args.seed),
                         coh, reference=tokens, model_dir=out / kind / "models", n_jobs=args.jobs)
        write_ranking(results, out / kind / "ranking.csv")
        best = select_best(results)
        print(f"{kind}: best K={best.K} alpha={best.alpha:g} eta={best.eta:g} coherence={best.coherence:.6f}")


def cmd_report(args):
    model = load_model(args.model)
    corpus = load_corpus(args.corpus, args.format)
    labels = load_labels(args.labels) if args.labels else None
    files = write_report(model, corpus, args.out, labels=labels,
                         ranking_csv=args.ranking, n_words=args.n_words)
    for f in files:
        print(f)


def cmd_indicators(args):
    series = []
    for spec in args.series:
        name, sep, path = spec.partition("=")
        if not sep:
            raise ValueError(f"--series expects NAME=PATH, got {spec!r}")
        series.append(load_series_csv(name, path))
    rows = extreme_summary(series, parse_window(args.window))
    if args.out:
        write_summary_csv(rows, args.out)
    for r in rows:
        print(f"{r.indicator},{r.extreme},{r.value:g},{r.date.isoformat()}")


def cmd_run(args):
    if args.config:
        base = json.loads(Path(args.config).read_text(encoding="utf-8"))
        base["out"] = args.out
        cfg = RunConfig.from_dict(base)
    else:
        cfg = RunConfig(
            corpus=args.corpus,
            out=args.out,
            corpus_format=args.format,
            preprocess=args.preprocess,
            max_df=args.max_df,
            grid=GridSpec(args.topics, args.alpha, args.eta),
            samples=args.samples,
            seed=args.seed,
            kinds=args.kind,
            iterations=args.iterations,
            coherence=CoherenceConfig(top_n=args.top_n, window=args.window),
            shared_samples=args.shared_samples,
            labels=args.labels,
            n_jobs=args.jobs,
        )
    manifest = run(cfg)
    for kind, b in manifest["branches"].items():
        best = b["best"]
        print(f"{kind}: best K={best['n_topics']} alpha={best['alpha']:g} "
              f"eta={best['eta']:g} coherence={best['coherence']:.6f}")
    print(f"manifest {Path(cfg.out) / 'manifest.json'} sha256={manifest['manifest_sha256']}")


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(prog="fedtopics", description="Topic trends in central-bank statements.")
    parser.add_argument("-v", "--verbose", action="store_true")
    sub = parser.add_subparsers(dest="command", required=True)

    p = sub.add_parser("fetch", help="download statement pages")
    p.add_argument("urls", nargs="*")
    p.add_argument("--manifest", help="file of URLs, one per line")
    p.add_argument("--out", required=True)
    p.add_argument("--timeout", type=float, default=30.0)
    p.add_argument("--jobs", type=int, default=4)
    p.set_defaults(func=cmd_fetch, stage="corpus")

    p = sub.add_parser("preprocess", help="normalize a corpus into token lists")
    _add_corpus_args(p)
    _add_preprocess_args(p)
    p.add_argument("--out", required=True, help="tokens JSONL")
    p.set_defaults(func=cmd_preprocess, stage="preprocess")

    p = sub.add_parser("fit", help="fit one LDA model")
    _add_corpus_args(p)
    _add_preprocess_args(p)
    p.add_argument("--kind", choices=KINDS, default="bow")
    p.add_argument("-k", "--topics", dest="k", type=int, required=True)
    p.add_argument("--alpha", type=float, required=True)
    p.add_argument("--eta", type=float, required=True)
    p.add_argument("--iterations", type=int, default=1000)
    p.add_argument("--seed", type=int, default=42)
    p.add_argument("--out", required=True, help="model JSON")
    p.set_defaults(func=cmd_fit, stage="lda")

    p = sub.add_parser("search", help="randomized grid search scored by coherence")
    _add_corpus_args(p)
    _add_preprocess_args(p)
    _add_search_args(p)
    p.add_argument("--kind", type=_kinds, default=KINDS, help="bow, tfidf or both")
    p.add_argument("--seed", type=int, default=42)
    p.add_argument("--out", required=True)
    p.set_defaults(func=cmd_search, stage="hyperopt")

    p = sub.add_parser("report", help="dominance, topic map and top words for a model")
    p.add_argument("--model", required=True)
    _add_corpus_args(p)
    p.add_argument("--labels", help="JSON topic labels")
    p.add_argument("--ranking", help="ranking CSV to include")
    p.add_argument("--n-words", type=int, default=15)
    p.add_argument("--out", required=True)
    p.set_defaults(func=cmd_report, stage="trends")

    p = sub.add_parser("indicators", help="indicator extremes inside a date window")
    p.add_argument("--series", action="append", default=[], required=True,
                   metavar="NAME=CSV", help=f"NAME in {', '.join(INDICATORS)}")
    p.add_argument("--window", required=True, metavar="START:END")
    p.add_argument("--out", help="summary CSV")
    p.set_defaults(func=cmd_indicators, stage="indicators")

    p = sub.add_parser("run", help="the whole pipeline")
    p.add_argument("--config", help="RunConfig JSON; other pipeline flags are ignored")
    p.add_argument("--corpus")
    p.add_argument("--format", default="jsonl", choices=("jsonl", "text_dir"))
    _add_preprocess_args(p)
    _add_search_args(p)
    p.add_argument("--kind", type=_kinds, default=KINDS, help="bow, tfidf or both")
    p.add_argument("--seed", type=int, default=42)
    p.add_argument("--labels")
    p.add_argument("--out", required=True)
    p.set_defaults(func=cmd_run, stage="pipeline")
    return parser


def main(argv=None) -> int:
    parser = build_parser()
    args = parser.parse_args(argv)
    logging.basicConfig(level=logging.INFO if args.verbose else logging.WARNING,
                        format="%(levelname)s %(name)s: %(message)s")
    if args.command == "run" and not (args.config or args.corpus):
        parser.error("run needs --corpus or --config")
    try:
        args.func(args)
    except StageError as exc:
        print(f"error: {exc}", file=sys.stderr)
        return 1
    except Exception as exc:  # noqa: BLE001 - every failure maps to a tagged exit
        print(f"error: {StageError(args.stage, exc)}", file=sys.stderr)
        return 1
    return 0


if __name__ == "__main__":
    sys.exit(main())
