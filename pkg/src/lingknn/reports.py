"""CSV serialisation of every stage's output. All writers use ``\\n`` line endings
so reruns are byte-identical."""

from __future__ import annotations

import csv
import io
from pathlib import Path
from typing import Iterable, Sequence

from .classifier import InstanceModel, KnnConfig, Prediction, SelfTrainStep, fit
from .clustering import ClusterReport
from .config import PipelineConfig, parse_config_text
from .evaluation import EvaluationReport, RocReport
from .lexicon import Language, WordRecord, ingest_long, to_long_csv
from .metrics import LdmConfig, SweepRow
from .phonetics import soundex_encode, soundex_vector


def _csv(header: Sequence[str], rows: Iterable[Sequence]) -> str:
    buf = io.StringIO()
    w = csv.writer(buf, lineterminator="\n")
    w.writerow(header)
    w.writerows(rows)
    return buf.getvalue()


def _num(x: float) -> str:
    return repr(float(x))


def encoded_csv(records: Sequence[WordRecord]) -> str:
    rows = []
    for r in records:
        code = soundex_encode(r.surface)
        rows.append([r.id, r.surface, code, *(_num(v) for v in soundex_vector(code))])
    return _csv(["id", "surface", "soundex", "vector0", "vector1", "vector2", "vector3"], rows)


def sweep_csv(rows: Sequence[SweepRow], thresholds: Sequence[float], cfg: LdmConfig) -> str:
    header = ["concept_id", "id_a", "surface_a", "language_a", "id_b", "surface_b", "language_b", "jaccard"]
    header += [f"pass_{t}" for t in thresholds]
    header += ["selected", "soundex_similarity", "soundex_pass"]
    out = []
    for row in rows:
        out.append(
            [row.concept_id, row.a.id, row.a.surface, row.a.language, row.b.id, row.b.surface, row.b.language,
             _num(row.jaccard), *(int(p) for p in row.passes),
             int(row.jaccard >= cfg.jaccard_threshold),
             _num(row.soundex_similarity), int(row.soundex_similarity >= cfg.soundex_threshold)]
        )
    return _csv(header, out)


def cluster_csvs(report: ClusterReport) -> tuple[str, str]:
    summary = _csv(
        ["cluster_id", "label", "short_code", "size", "coefficient"],
        [[r.cluster_id, r.label.name, r.label.short_code, r.size, _num(r.coefficient)] for r in report.rows],
    )
    members = _csv(
        ["record_id", "cluster_id"],
        zip(report.record_ids, report.assignment.labels),
    )
    return summary, members


def coeff_csv(groups) -> str:
    return _csv(["group", "size", "edges", "coefficient"], [[g, n, e, _num(c)] for g, n, e, c in groups])


def predictions_csv(queries: Sequence[WordRecord], preds: Sequence[Prediction], languages: Sequence[Language]) -> str:
    header = ["id", "surface", "predicted", "score", *(str(l) for l in languages)]
    rows = [
        [q.id, q.surface, p.language, _num(p.scores[p.language]), *(_num(p.scores.get(l, 0.0)) for l in languages)]
        for q, p in zip(queries, preds)
    ]
    return _csv(header, rows)


def history_csv(history: Sequence[SelfTrainStep]) -> str:
    return _csv(["iter", "pool_size", "accuracy"], [[h.iteration, h.pool_size, _num(h.accuracy)] for h in history])


def outcomes_csv(report: EvaluationReport) -> str:
    return _csv(
        ["id", "word", "meaning", "original", "predicted", "outcome"],
        [[r.id, r.word, r.meaning or "", r.original, r.predicted, r.outcome.value] for r in report.rows],
    )


def confusion_csv(report: EvaluationReport) -> str:
    langs = [str(l) for l in report.languages]
    return _csv(["original", *langs], [[lang, *row] for lang, row in zip(langs, report.confusion)])


def classes_csv(languages: Sequence[Language]) -> str:
    return _csv(["class", "language"], [[i, l] for i, l in enumerate(languages)])


def roc_csv(roc: RocReport) -> str:
    index = {lang: i for i, lang in enumerate(roc.languages)}
    rows = []
    for lang, curve in roc.curves.items():
        rows.extend([index[lang], _num(t), _num(f), _num(tp)] for t, f, tp in curve.points)
    return _csv(["class", "threshold", "fpr", "tpr"], rows)


def summary_csv(report: EvaluationReport, roc: RocReport) -> str:
    rows = []
    for lang in report.languages:
        curve = roc.curves.get(lang)
        auc = _num(curve.auc) if curve else "NA"
        rows.append([lang, auc, _num(report.precision[lang]), _num(report.recall[lang])])
    return _csv(["language", "auc", "precision", "recall"], rows)


def write_model(model: InstanceModel, out_dir: Path) -> None:
    out_dir.mkdir(parents=True, exist_ok=True)
    (out_dir / "model.csv").write_text(to_long_csv(model.records), encoding="utf-8")
    ldm = model.config.ldm
    (out_dir / "model.cfg").write_text(
        f"k = {model.config.k}\n"
        f"use_meaning = {'true' if ldm.use_meaning else 'false'}\n"
        f"jaccard_threshold = {ldm.jaccard_threshold!r}\n"
        f"soundex_threshold = {ldm.soundex_threshold!r}\n"
        f"edge_threshold = {ldm.edge_threshold}\n",
        encoding="utf-8",
    )


def read_model(path: Path) -> InstanceModel:
    """Load a model from a directory holding ``model.csv`` + ``model.cfg``, or
    from the CSV itself with its sidecar next to it."""
    csv_path = path / "model.csv" if path.is_dir() else path
    cfg_path = csv_path.with_suffix(".cfg")
    cfg = PipelineConfig()
    if cfg_path.exists():
        cfg = cfg.updated(parse_config_text(cfg_path.read_text(encoding="utf-8")))
    lexicon = ingest_long(csv_path.read_text(encoding="utf-8"))
    return fit(list(lexicon), KnnConfig(cfg.k, cfg.ldm))
