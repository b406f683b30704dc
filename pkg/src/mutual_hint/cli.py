"""mutual-hint command line: cluster, synth, eval, inspect."""

from __future__ import annotations

import argparse
import logging
import sys
from pathlib import Path
from typing import Any, Callable, Dict, List, Optional, Sequence

import numpy as np
import pandas as pd
from threadpoolctl import threadpool_limits

from mutual_hint.config import RunConfig, SearchParams, SynthConfig, build_run_config
from mutual_hint.errors import ConfigError, NumericalError, ValidationError
from mutual_hint.modules.corpus.anchors import AnchorSet
from mutual_hint.modules.corpus.documents import parse_corpus
from mutual_hint.modules.eval.metrics import evaluate
from mutual_hint.modules.mutual.experiments import (
    anchor_rate_sweep,
    parse_range,
    parse_sweep,
    summarize,
    theta_sweep,
)
from mutual_hint.modules.mutual.pipeline import prepare, run_hint
from mutual_hint.modules.mutual.tuning import DEFAULT_HOLDOUT, tune_theta
from mutual_hint.modules.synth.generator import generate, write_synthetic
from mutual_hint.network.schema import Source
from mutual_hint.utils import io_helper, logging_helper

logger = logging.getLogger(__name__)

EXIT_OK = 0
EXIT_VALIDATION = 2
EXIT_NUMERICAL = 3

CONFIG_KEYS = (
    set(RunConfig.model_fields) | set(SearchParams.model_fields) | set(SynthConfig.model_fields)
) - {"search", "synth"}


def _float_list(value: str) -> List[float]:
    try:
        return [float(v) for v in value.split(",") if v.strip()]
    except ValueError as e:
        raise argparse.ArgumentTypeError(f"expected comma-separated numbers, got '{value}'") from e


# -------------------------
# Parser
# -------------------------


def _add_common(parser: argparse.ArgumentParser) -> None:
    parser.add_argument("--config", type=Path, help="key = value configuration file")
    parser.add_argument("--seed", type=int)
    parser.add_argument("--threads", type=int, help="bound on worker and BLAS threads")
    parser.add_argument("-v", "--verbose", action="count", default=0)
    parser.add_argument("--quiet", action="store_true")


def _add_search(parser: argparse.ArgumentParser) -> None:
    group = parser.add_argument_group("curvilinear search")
    for name in ("rho1", "eta", "tau0", "tau_min", "tau_max", "tol_grad", "tol_obj"):
        group.add_argument(f"--{name.replace('_', '-')}", dest=name, type=float)
    for name in ("max_inner", "max_backtrack", "max_outer"):
        group.add_argument(f"--{name.replace('_', '-')}", dest=name, type=int)


def _add_model(parser: argparse.ArgumentParser) -> None:
    parser.add_argument("--k1", type=int)
    parser.add_argument("--k2", type=int)
    parser.add_argument("--theta", type=float)
    parser.add_argument("--alpha", type=float)
    parser.add_argument("--beta", type=float)
    parser.add_argument("--weights1", type=_float_list, help="tweet meta-path weights")
    parser.add_argument("--weights2", type=_float_list, help="news meta-path weights")
    parser.add_argument("--split-retweet", dest="split_retweet", action="store_true", default=None)
    parser.add_argument("--min-common", dest="min_common", type=int)
    parser.add_argument("--link-threshold", dest="link_threshold", type=float)


def _add_synth(parser: argparse.ArgumentParser) -> None:
    group = parser.add_argument_group("synthetic corpus")
    int_fields = (
        "k", "n1", "n2", "vocab_per_cluster", "shared_vocab",
        "words_per_doc1", "words_per_doc2", "link_pool",
    )
    for name in int_fields:
        group.add_argument(f"--{name.replace('_', '-')}", dest=name, type=int)
    for name in ("p_in", "p_out", "anchor_rate", "entity_fraction", "noise_rate", "retweet_rate"):
        group.add_argument(f"--{name.replace('_', '-')}", dest=name, type=float)


def _add_tracking(parser: argparse.ArgumentParser) -> None:
    parser.add_argument("--track", action="store_true", default=None, help="log to mlflow")
    parser.add_argument("--tracking-uri", dest="tracking_uri")
    parser.add_argument("--experiment-name", dest="experiment_name")


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(
        prog="mutual-hint",
        description="Mutual clustering of tweet and news collections over meta-path similarity.",
    )
    sub = parser.add_subparsers(dest="command", required=True)

    cluster = sub.add_parser("cluster", help="run the mutual clustering pipeline")
    cluster.add_argument("--t1", type=Path, help="tweet collection (JSON Lines)")
    cluster.add_argument("--t2", type=Path, help="news collection (JSON Lines)")
    cluster.add_argument("--out", type=Path)
    cluster.add_argument("--tune-theta", dest="tune_theta", help="theta grid start:step:stop")
    cluster.add_argument("--holdout", type=float, default=DEFAULT_HOLDOUT)
    _add_model(cluster)
    _add_search(cluster)
    _add_tracking(cluster)
    _add_common(cluster)
    cluster.set_defaults(func=cmd_cluster)

    synth = sub.add_parser("synth", help="generate a planted-partition corpus")
    synth.add_argument("--out", type=Path)
    _add_synth(synth)
    _add_common(synth)
    synth.set_defaults(func=cmd_synth)

    ev = sub.add_parser("eval", help="score a result against ground truth, or run a sweep")
    ev.add_argument("--result", type=Path, help="result.json written by 'cluster'")
    ev.add_argument("--truth", type=Path, help="truth.csv written by 'synth'")
    ev.add_argument("--average", choices=("geometric", "arithmetic"), default="geometric")
    ev.add_argument("--sweep", help="theta=start:step:stop or anchor_rate=start:step:stop")
    ev.add_argument("--seeds", type=int, default=5, help="seeds per swept value")
    ev.add_argument("--out", type=Path, help="CSV file for sweep rows")
    _add_model(ev)
    _add_synth(ev)
    _add_search(ev)
    _add_tracking(ev)
    _add_common(ev)
    ev.set_defaults(func=cmd_eval)

    inspect = sub.add_parser("inspect", help="dump similarity, transition and count matrices")
    inspect.add_argument("--t1", type=Path)
    inspect.add_argument("--t2", type=Path)
    inspect.add_argument("--out", type=Path)
    inspect.add_argument("--schema-html", dest="schema_html", type=Path)
    _add_model(inspect)
    _add_common(inspect)
    inspect.set_defaults(func=cmd_inspect)
    return parser


def resolve_config(args: argparse.Namespace) -> RunConfig:
    flags = {k: v for k, v in vars(args).items() if k in CONFIG_KEYS and v is not None}
    return build_run_config(flags, config_file=args.config)


# -------------------------
# Commands
# -------------------------


def _require_inputs(config: RunConfig) -> None:
    if config.t1 is None or config.t2 is None:
        raise ConfigError("both --t1 and --t2 are required")


def cmd_cluster(args: argparse.Namespace, config: RunConfig) -> int:
    _require_inputs(config)
    corpus = parse_corpus(config.t1, config.t2)
    prepared = prepare(
        corpus,
        config.weights1,
        config.weights2,
        config.min_common,
        config.split_retweet,
        config.threads,
    )
    options = dict(alpha=config.alpha, beta=config.beta, link_threshold=config.link_threshold)

    theta = config.theta
    tuning = None
    if args.tune_theta:
        tuning = tune_theta(
            prepared,
            config.k1,
            config.k2,
            parse_range(args.tune_theta),
            seed=config.seed,
            holdout=args.holdout,
            params=config.search,
            **options,
        )
        theta = tuning.best_theta
        logger.info(f"Selected theta={theta} by anchor hold-out")

    result = run_hint(
        prepared, config.k1, config.k2, theta=theta, seed=config.seed, params=config.search, **options
    )

    out = config.out
    ids1, ids2 = corpus.ids(Source.TYPE1), corpus.ids(Source.TYPE2)
    payload: Dict[str, Any] = {
        "config": config.resolved(),
        "theta": theta,
        "ids1": ids1,
        "ids2": ids2,
        "labels1": result.labels1,
        "labels2": result.labels2,
        "anchors": [list(pair) for pair in result.anchors],
        "links": [
            {
                "cluster1": link.cluster1,
                "cluster2": link.cluster2,
                "anchored_fraction": link.anchored_fraction,
            }
            for link in result.links
        ],
        "metrics": result.metrics,
        "trace": result.trace,
    }
    if tuning is not None:
        payload["theta_tuning"] = {
            "best_theta": tuning.best_theta,
            "scores": {str(t): s for t, s in tuning.scores.items()},
            "held_out": tuning.held_out.size,
        }
    files = [
        io_helper.write_json(payload, out / "result.json"),
        io_helper.write_trace(result.steps, out / "trace.csv"),
        io_helper.write_confidence(result.H1.H, ids1, out / "confidence1.csv"),
        io_helper.write_confidence(result.H2.H, ids2, out / "confidence2.csv"),
    ]
    logger.info(f"Wrote {', '.join(str(f) for f in files)}")

    if config.track:
        from mutual_hint.utils import mlflow_helper

        mlflow_helper.init(config.tracking_uri, config.experiment_name)
        mlflow_helper.log_run(config.resolved(), result.metrics, files, run_name="cluster")
    return EXIT_OK


def cmd_synth(args: argparse.Namespace, config: RunConfig) -> int:
    data = generate(config.synth)
    paths = write_synthetic(data, args.out or config.out)
    for path in paths:
        print(path)
    return EXIT_OK


def _truth_labels(truth: pd.DataFrame, collection: Source, ids: Sequence[str]) -> np.ndarray:
    rows = truth[truth["collection"] == collection.value]
    mapping = dict(zip(rows["id"].astype(str), rows["cluster"].astype(int)))
    for doc_id in ids:
        if doc_id not in mapping:
            raise ValidationError(f"{collection.value} id '{doc_id}' missing from truth file")
    if len(mapping) != len(ids):
        extra = sorted(set(mapping) - set(ids))[0]
        raise ValidationError(f"{collection.value} id '{extra}' missing from result")
    return np.array([mapping[doc_id] for doc_id in ids])


def _read_truth(path: Path) -> pd.DataFrame:
    if not path.is_file():
        raise FileNotFoundError(f"truth file not found: {path}")
    truth = pd.read_csv(path, dtype={"collection": str, "id": str})
    missing = {"collection", "id", "cluster"} - set(truth.columns)
    if missing:
        raise ValidationError(f"{path}: missing column(s) {sorted(missing)}")
    return truth


def cmd_eval(args: argparse.Namespace, config: RunConfig) -> int:
    if args.sweep:
        return _cmd_sweep(args, config)
    if args.result is None or args.truth is None:
        raise ConfigError("eval needs --result and --truth (or --sweep)")

    result = io_helper.read_json(args.result)
    truth = _read_truth(args.truth)
    try:
        ids1, ids2 = result["ids1"], result["ids2"]
        labels1, labels2 = result["labels1"], result["labels2"]
    except KeyError as e:
        raise ValidationError(f"{args.result}: missing field {e}") from e
    anchors = AnchorSet(tuple(tuple(p) for p in result.get("anchors", [])))
    metrics = result.get("metrics", {})
    report = evaluate(
        labels1,
        labels2,
        _truth_labels(truth, Source.TYPE1, ids1),
        _truth_labels(truth, Source.TYPE2, ids2),
        anchors=anchors,
        average=args.average,
        d=metrics.get("d"),
        Nd=metrics.get("Nd"),
        d_pairwise=metrics.get("d_pairwise"),
    )
    print(io_helper.dumps_json(report.model_dump()))
    return EXIT_OK


def _sweep_cluster_counts(config: RunConfig) -> tuple[Optional[int], Optional[int]]:
    """Cluster counts set explicitly anywhere; unset ones follow the corpus k."""
    k1 = config.k1 if "k1" in config.model_fields_set else None
    k2 = config.k2 if "k2" in config.model_fields_set else None
    return k1, k2


def _cmd_sweep(args: argparse.Namespace, config: RunConfig) -> int:
    parameter, values = parse_sweep(args.sweep)
    seeds = [config.seed + s for s in range(args.seeds)]
    k1, k2 = _sweep_cluster_counts(config)
    if parameter == "theta":
        rows = theta_sweep(config.synth, values, seeds, k1, k2, config.search)
    else:
        rows = anchor_rate_sweep(config.synth, values, seeds, config.theta, k1, k2, config.search)
    summary = summarize(rows)
    if args.out:
        io_helper.write_table(summary, args.out)
    summary.to_csv(sys.stdout, index=False, lineterminator="\n")

    if config.track:
        from mutual_hint.utils import mlflow_helper

        mlflow_helper.init(config.tracking_uri, config.experiment_name)
        for record in summary.to_dict(orient="records"):
            mlflow_helper.log_run(
                {**config.resolved(), "sweep": parameter, "value": record["value"]},
                record,
                [args.out] if args.out else [],
                run_name=f"{parameter}={record['value']}",
            )
    return EXIT_OK


def cmd_inspect(args: argparse.Namespace, config: RunConfig) -> int:
    if args.schema_html:
        from mutual_hint.network.visualizer import build_nx_graph, render_pyvis_network

        render_pyvis_network(build_nx_graph(), html_path=args.schema_html)
        print(args.schema_html)
        if config.t1 is None and config.t2 is None:
            return EXIT_OK
    _require_inputs(config)

    corpus = parse_corpus(config.t1, config.t2)
    prepared = prepare(
        corpus,
        config.weights1,
        config.weights2,
        config.min_common,
        config.split_retweet,
        config.threads,
    )
    out = args.out or config.out
    io_helper.write_matrix(prepared.tweets.similarity.S, out / "S1.csv")
    io_helper.write_matrix(prepared.news.similarity.S, out / "S2.csv")
    io_helper.write_triplets(prepared.transition.T12, out / "T12.csv")
    for side in (prepared.tweets, prepared.news):
        for counts in side.counts:
            io_helper.write_triplets(
                counts.A, out / f"counts_{side.side.value}_{counts.meta_path.id}.csv", "count"
            )
    print(out)
    return EXIT_OK


# -------------------------
# Entry point
# -------------------------


def run(argv: Optional[Sequence[str]] = None) -> int:
    parser = build_parser()
    args = parser.parse_args(argv)
    logging_helper.configure(args.verbose, args.quiet)
    func: Callable[[argparse.Namespace, RunConfig], int] = args.func
    try:
        config = resolve_config(args)
        with threadpool_limits(limits=config.threads):
            return func(args, config)
    except (ValidationError, FileNotFoundError) as e:
        print(f"error: {e}", file=sys.stderr)
        return EXIT_VALIDATION
    except NumericalError as e:
        print(f"numerical failure: {e}", file=sys.stderr)
        return EXIT_NUMERICAL
