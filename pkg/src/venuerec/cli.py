"""Command-line interface: ingest, train, evaluate, recommend, serve."""

from __future__ import annotations

import argparse
import sys
from typing import Sequence

from .bundle import BundleError, load_bundle, save_bundle
from .corpus import corpus_fingerprint, load_corpus, stratified_split
from .evaluation import format_report_table, write_reports_json
from .pipeline import RunConfig, config_hash, evaluate_methods, train_bundle
from .recommend import Explanation, recommend
from .service import serve


def _resolve_config(args: argparse.Namespace) -> RunConfig:
    config = RunConfig.from_toml(args.config) if args.config else RunConfig()
    return config.override(corpus_path=getattr(args, "corpus", None))


def _format_topics(explanation: Explanation, indent: str = "") -> list[str]:
    if not explanation.topics:
        return [f"{indent}(no recognized topical terms)"]
    return [
        f"{indent}topic {t.topic_id} ({t.weight:.2f}): {', '.join(t.terms)}"
        for t in explanation.topics
    ]


def _cmd_ingest(args: argparse.Namespace) -> int:
    config = _resolve_config(args)
    corpus = load_corpus(config.corpus_path)
    report = corpus.load_report
    assert report is not None
    print(report.summary())
    for lineno, reason in report.rejections[:10]:
        print(f"  line {lineno}: {reason}")
    if report.rejected > len(report.rejections):
        print(f"  ... and {report.rejected - len(report.rejections)} more")
    print(f"venues: {len(corpus.venues)}")
    print(f"fingerprint: {corpus_fingerprint(corpus)}")
    return 0


def _cmd_train(args: argparse.Namespace) -> int:
    config = _resolve_config(args).override(
        split_seed=args.seed, bundle_path=args.out
    )
    print(f"config hash: {config_hash(config)}")
    bundle = train_bundle(config)
    save_bundle(bundle, config.bundle_path)
    print(
        f"trained on {config.corpus_path}: {len(bundle.venues)} venues, "
        f"{len(bundle.tfidf.vocabulary)} terms, {bundle.nmf.num_topics} topics"
    )
    print(
        f"nmf relative error: {bundle.nmf.error_trace[-1]:.4f} "
        f"after {len(bundle.nmf.error_trace)} epoch(s)"
    )
    print(f"classifier loss: {bundle.logit.loss_trace[-1]:.4f}")
    print(f"bundle written to {config.bundle_path}")
    return 0


def _cmd_evaluate(args: argparse.Namespace) -> int:
    config = _resolve_config(args).override(
        bundle_path=args.model,
        report_path=args.out,
        random_runs=args.runs,
        random_seed=args.seed,
    )
    bundle = load_bundle(config.bundle_path)
    corpus = load_corpus(config.corpus_path)
    _, test = stratified_split(corpus, config.test_fraction, config.split_seed)
    reports = evaluate_methods(
        bundle,
        test,
        ks=config.eval_ks,
        methods=[args.method] if args.method else None,
        random_runs=config.random_runs,
        random_seed=config.random_seed,
    )
    print(f"test records: {len(test)}")
    print(format_report_table(reports))
    write_reports_json(
        config.report_path, reports, corpus_fingerprint(corpus), config_hash(config)
    )
    print(f"report written to {config.report_path}")
    return 0


def _cmd_recommend(args: argparse.Namespace) -> int:
    bundle = load_bundle(args.model)
    keywords = [k.strip() for k in args.keywords.split(",") if k.strip()]
    result = recommend(
        title=args.title,
        abstract=args.abstract,
        keywords=keywords,
        k=args.k,
        bundle=bundle,
    )
    print("query topics:")
    for line in _format_topics(result.query_topics, indent="  "):
        print(line)
    for rank, chosen in enumerate(result.venues, start=1):
        print(f"{rank}. {chosen.venue}  score={chosen.score:.4f}")
        for line in _format_topics(chosen.explanation, indent="     "):
            print(line)
    return 0


def _cmd_serve(args: argparse.Namespace) -> int:
    bundle = load_bundle(args.model)
    serve(bundle, addr=args.addr, port=args.port)
    return 0


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(
        prog="venuerec",
        description="Train and query an explainable venue recommender.",
    )
    commands = parser.add_subparsers(dest="command", required=True)

    def add_config(sub: argparse.ArgumentParser) -> None:
        sub.add_argument("--config", help="TOML run configuration")
        sub.add_argument("--corpus", help="corpus JSONL path, overrides the config")

    ingest = commands.add_parser("ingest", help="load a corpus and report its shape")
    add_config(ingest)
    ingest.set_defaults(handler=_cmd_ingest)

    train = commands.add_parser("train", help="train models and write a bundle")
    add_config(train)
    train.add_argument("--out", help="bundle output path, overrides the config")
    train.add_argument("--seed", type=int, help="train/test split seed override")
    train.set_defaults(handler=_cmd_train)

    evaluate = commands.add_parser("evaluate", help="score methods on the test split")
    add_config(evaluate)
    evaluate.add_argument("--model", help="bundle path, overrides the config")
    evaluate.add_argument(
        "--method",
        help=(
            "single method to evaluate: uniform-random, most-frequent, or "
            "logit; default evaluates all"
        ),
    )
    evaluate.add_argument(
        "--runs", type=int, help="runs averaged for the random baseline"
    )
    evaluate.add_argument("--seed", type=int, help="base seed of the random baseline")
    evaluate.add_argument("--out", help="report JSON path, overrides the config")
    evaluate.set_defaults(handler=_cmd_evaluate)

    rec = commands.add_parser("recommend", help="rank venues for one query")
    rec.add_argument("--model", default="bundle.bin", help="bundle path")
    rec.add_argument("--title", default="", help="paper title")
    rec.add_argument("--abstract", default="", help="paper abstract")
    rec.add_argument(
        "--keywords", default="", help="comma-separated keywords, optional"
    )
    rec.add_argument("--k", type=int, default=5, help="number of venues to return")
    rec.set_defaults(handler=_cmd_recommend)

    srv = commands.add_parser("serve", help="serve a bundle over HTTP")
    srv.add_argument("--model", default="bundle.bin", help="bundle path")
    srv.add_argument("--addr", default="127.0.0.1", help="bind address")
    srv.add_argument("--port", type=int, default=8000, help="bind port")
    srv.set_defaults(handler=_cmd_serve)

    return parser


def main(argv: Sequence[str] | None = None) -> int:
    args = build_parser().parse_args(argv)
    try:
        return args.handler(args)
    except BundleError as exc:
        print(f"error: {exc}", file=sys.stderr)
        return 1
    except (ValueError, OSError, KeyError, RuntimeError) as exc:
        print(f"error: {exc}", file=sys.stderr)
        return 1


if __name__ == "__main__":
    sys.exit(main())
