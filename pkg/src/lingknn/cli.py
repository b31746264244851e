"""Command-line entry point: ``lingknn <command> [options]``."""

from __future__ import annotations

import argparse
import logging
import sys
from pathlib import Path

from . import reports
from .classifier import fit, predict_many, self_train
from .clustering import cluster_lexicon, group_coefficients
from .config import ConfigError, load_config
from .evaluation import evaluate, roc_report, split
from .lexicon import Lexicon, LexiconError, load_lexicon, read_queries, to_long_csv
from .metrics import SWEEP_THRESHOLDS, jaccard_sweep
from .phonetics import EncodingError

log = logging.getLogger("lingknn")

COMMANDS = (
    "ingest", "encode", "jaccard-sweep", "cluster", "coeff", "split",
    "train", "classify", "selftrain", "evaluate", "roc", "pipeline",
)

# config key -> flag type; flag names are the keys with dashes
CONFIG_FLAGS = {
    "eps": float,
    "min_samples": int,
    "edge_threshold": int,
    "jaccard_threshold": float,
    "soundex_threshold": float,
    "k": int,
    "test_fraction": float,
    "seed": int,
    "max_iters": int,
    "tol": float,
}


class StageError(Exception):
    def __init__(self, stage: str, message: str):
        self.stage = stage
        super().__init__(message)


class _Parser(argparse.ArgumentParser):
    def error(self, message):
        self.print_usage(sys.stderr)
        self.exit(1, f"ERROR cli: {message}\n")


def build_parser() -> argparse.ArgumentParser:
    common = argparse.ArgumentParser(add_help=False)
    common.add_argument("--input", type=Path, help="input CSV (wide or long lexicon)")
    common.add_argument("--out", type=Path, default=Path("."), help="output directory")
    common.add_argument("--config", type=Path, help="key = value config file")
    for key, typ in CONFIG_FLAGS.items():
        common.add_argument("--" + key.replace("_", "-"), dest=key, type=typ, default=None)
    common.add_argument("--use-meaning", dest="use_meaning", action=argparse.BooleanOptionalAction, default=None)
    common.add_argument("-v", "--verbose", action="store_true")

    parser = _Parser(prog="lingknn", description="Phonetic clustering and KNN language classification of word lists.")
    sub = parser.add_subparsers(dest="command", metavar="command")
    sub.required = True
    helps = {
        "ingest": "normalise a wide or long lexicon to long CSV",
        "encode": "soundex codes and embeddings",
        "jaccard-sweep": "bigram Jaccard pass/fail per translation pair",
        "cluster": "DBSCAN over soundex embeddings",
        "coeff": "word-graph edge density per language or category",
        "split": "stratified train/test split",
        "train": "store a KNN instance model",
        "classify": "predict languages for query words",
        "selftrain": "absorb correctly classified pool words",
        "evaluate": "accuracy, confusion matrix and outcome table",
        "roc": "one-vs-rest ROC curves",
        "pipeline": "run every stage end to end",
    }
    cmds = {name: sub.add_parser(name, parents=[common], help=helps[name]) for name in COMMANDS}
    cmds["coeff"].add_argument("--by", choices=("language", "category"), default="language")
    for name in ("classify", "selftrain", "evaluate", "roc"):
        cmds[name].add_argument("--model", type=Path, required=True, help="model directory or model.csv")
    cmds["selftrain"].add_argument("--pool", type=Path, required=True, help="labelled pool CSV")
    for name in ("evaluate", "roc"):
        cmds[name].add_argument("--lexicon", type=Path, help="full lexicon for shared-word lookup and class order")
    return parser


def _read(path: Path | None, stage: str) -> str:
    if path is None:
        raise StageError(stage, "--input is required")
    try:
        return path.read_text(encoding="utf-8")
    except OSError as exc:
        raise StageError(stage, f"cannot read {path}: {exc.strerror}") from None


def _write(out: Path, name: str, text: str) -> None:
    out.mkdir(parents=True, exist_ok=True)
    (out / name).write_text(text, encoding="utf-8")


def _records(args, stage: str, path: Path | None = None):
    return list(load_lexicon(_read(path or args.input, stage)))


def _reference(args, stage, fallback):
    """Lexicon used for the shared-word index and the class order."""
    if getattr(args, "lexicon", None):
        return load_lexicon(_read(args.lexicon, stage))
    seen, recs = set(), []
    for r in fallback:
        if r.id not in seen:
            seen.add(r.id)
            recs.append(r)
    return Lexicon(tuple(recs))


def cmd_ingest(args, cfg):
    _write(args.out, "lexicon.csv", to_long_csv(_records(args, "ingest")))


def cmd_encode(args, cfg):
    _write(args.out, "encoded.csv", reports.encoded_csv(_records(args, "encode")))


def cmd_jaccard_sweep(args, cfg):
    rows = jaccard_sweep(_records(args, "jaccard-sweep"), SWEEP_THRESHOLDS)
    _write(args.out, "jaccard.csv", reports.sweep_csv(rows, SWEEP_THRESHOLDS, cfg.ldm))


def cmd_cluster(args, cfg):
    report = cluster_lexicon(_records(args, "cluster"), cfg.cluster_params, cfg.edge_threshold)
    summary, members = reports.cluster_csvs(report)
    _write(args.out, "clusters.csv", summary)
    _write(args.out, "members.csv", members)
    log.info("%d clusters, %d noise words", len(report.rows), len(report.noise_ids))
    return report


def cmd_coeff(args, cfg):
    groups = group_coefficients(_records(args, "coeff"), by=getattr(args, "by", "language"), edge_threshold=cfg.edge_threshold)
    _write(args.out, "coefficients.csv", reports.coeff_csv(groups))


def cmd_split(args, cfg):
    train, test = split(_records(args, "split"), cfg.test_fraction, cfg.seed)
    _write(args.out, "train.csv", to_long_csv(train))
    _write(args.out, "test.csv", to_long_csv(test))


def cmd_train(args, cfg):
    model = fit(_records(args, "train"), cfg.knn)
    reports.write_model(model, args.out)


def _model(args, stage):
    try:
        return reports.read_model(args.model)
    except OSError as exc:
        raise StageError(stage, f"cannot read model {args.model}: {exc.strerror}") from None


def cmd_classify(args, cfg):
    model = _model(args, "classify")
    queries = read_queries(_read(args.input, "classify"))
    preds = predict_many(model, queries)
    if any(p.clamped for p in preds):
        log.warning("k=%d exceeds the %d stored instances; clamped", model.config.k, len(model))
    _write(args.out, "predictions.csv", reports.predictions_csv(queries, preds, model.languages))


def cmd_selftrain(args, cfg):
    model = _model(args, "selftrain")
    pool = _records(args, "selftrain", args.pool)
    model, history = self_train(model, pool, cfg.max_iters, cfg.tol)
    reports.write_model(model, args.out)
    _write(args.out, "history.csv", reports.history_csv(history))


def cmd_evaluate(args, cfg):
    model = _model(args, "evaluate")
    test = _records(args, "evaluate")
    ref = _reference(args, "evaluate", model.records + test)
    _evaluate_and_write(model, test, ref, args.out)


def cmd_roc(args, cfg):
    model = _model(args, "roc")
    test = _records(args, "roc")
    ref = _reference(args, "roc", model.records + test)
    roc = roc_report(model, test, ref.languages)
    _write(args.out, "roc.csv", reports.roc_csv(roc))
    _write(args.out, "classes.csv", reports.classes_csv(roc.languages))


def _evaluate_and_write(model, test, lexicon, out):
    if not test:
        raise StageError("evaluate", "empty test set")
    report = evaluate(model, test, lexicon.shared_index, lexicon.languages)
    roc = roc_report(model, test, report.languages, predictions=report.predictions)
    _write(out, "outcomes.csv", reports.outcomes_csv(report))
    _write(out, "confusion.csv", reports.confusion_csv(report))
    _write(out, "summary.csv", reports.summary_csv(report, roc))
    _write(out, "roc.csv", reports.roc_csv(roc))
    _write(out, "classes.csv", reports.classes_csv(roc.languages))
    return report, roc


def cmd_pipeline(args, cfg):
    lexicon = load_lexicon(_read(args.input, "ingest"))
    records = list(lexicon)
    out = args.out
    _write(out, "lexicon.csv", to_long_csv(records))
    _write(out, "encoded.csv", reports.encoded_csv(records))
    _write(out, "jaccard.csv", reports.sweep_csv(jaccard_sweep(records), SWEEP_THRESHOLDS, cfg.ldm))

    clusters = cluster_lexicon(records, cfg.cluster_params, cfg.edge_threshold)
    summary, members = reports.cluster_csvs(clusters)
    _write(out, "clusters.csv", summary)
    _write(out, "members.csv", members)
    _write(out, "coefficients.csv", reports.coeff_csv(group_coefficients(records, "language", cfg.edge_threshold)))

    train, test = split(records, cfg.test_fraction, cfg.seed)
    _write(out, "train.csv", to_long_csv(train))
    _write(out, "test.csv", to_long_csv(test))
    # a second stratified cut of the training half feeds self-training
    seed_set, pool = split(train, cfg.test_fraction, cfg.seed + 1)
    model = fit(seed_set, cfg.knn)
    model, history = self_train(model, pool, cfg.max_iters, cfg.tol)
    reports.write_model(model, out)
    _write(out, "history.csv", reports.history_csv(history))

    report, roc = _evaluate_and_write(model, test, lexicon, out)
    pool_acc = history[-1].accuracy if history else float("nan")
    _write(
        out,
        "accuracy.csv",
        "metric,value\n"
        f"heldout_accuracy,{report.accuracy!r}\n"
        f"final_pool_accuracy,{pool_acc!r}\n"
        f"n_clusters,{len(clusters.rows)}\n"
        f"mean_cluster_coefficient,{clusters.mean_coefficient!r}\n",
    )
    print(f"held-out accuracy {report.accuracy:.4f} on {len(test)} words; {len(clusters.rows)} clusters")


HANDLERS = {
    "ingest": cmd_ingest,
    "encode": cmd_encode,
    "jaccard-sweep": cmd_jaccard_sweep,
    "cluster": cmd_cluster,
    "coeff": cmd_coeff,
    "split": cmd_split,
    "train": cmd_train,
    "classify": cmd_classify,
    "selftrain": cmd_selftrain,
    "evaluate": cmd_evaluate,
    "roc": cmd_roc,
    "pipeline": cmd_pipeline,
}


def main(argv=None) -> int:
    args = build_parser().parse_args(argv)
    logging.basicConfig(level=logging.DEBUG if args.verbose else logging.WARNING, format="%(levelname)s %(message)s")
    stage = args.command
    try:
        overrides = {key: getattr(args, key) for key in (*CONFIG_FLAGS, "use_meaning")}
        try:
            cfg = load_config(args.config, overrides)
        except OSError as exc:
            raise StageError("config", f"cannot read {args.config}: {exc.strerror}") from None
        except ConfigError as exc:
            raise StageError("config", str(exc)) from None
        HANDLERS[stage](args, cfg)
    except StageError as exc:
        print(f"ERROR {exc.stage}: {exc}", file=sys.stderr)
        return 1
    except (LexiconError, EncodingError, ValueError, OSError) as exc:
        print(f"ERROR {stage}: {' '.join(str(exc).split())}", file=sys.stderr)
        return 1
    return 0


if __name__ == "__main__":
    sys.exit(main())
