"""Stratified splitting, classification reports, and one-vs-rest ROC curves."""

from __future__ import annotations

import math
import random
import warnings
from dataclasses import dataclass
from enum import Enum
from typing import Mapping, Sequence

from .classifier import InstanceModel, Prediction, predict_many
from .lexicon import Language, WordRecord


def _round_half_up(x: float) -> int:
    return int(math.floor(x + 0.5))


def split(records: Sequence[WordRecord], test_fraction: float, seed: int) -> tuple[list[WordRecord], list[WordRecord]]:
    """Per-language seeded shuffle; ``round(count * test_fraction)`` words of each
    language go to test. Both halves keep the input order."""
    if not 0.0 < test_fraction < 1.0:
        raise ValueError(f"test_fraction must lie in (0, 1), got {test_fraction}")
    rng = random.Random(seed)
    by_lang: dict[Language, list[int]] = {}
    for i, rec in enumerate(records):
        by_lang.setdefault(rec.language, []).append(i)
    test_idx: set[int] = set()
    for lang, idx in by_lang.items():
        if len(idx) < 2:
            warnings.warn(f"{lang}: fewer than 2 records, all kept for training", stacklevel=2)
            continue
        shuffled = list(idx)
        rng.shuffle(shuffled)
        n_test = min(_round_half_up(len(idx) * test_fraction), len(idx) - 1)
        test_idx.update(shuffled[:n_test])
    train = [r for i, r in enumerate(records) if i not in test_idx]
    test = [r for i, r in enumerate(records) if i in test_idx]
    return train, test


class Outcome(str, Enum):
    CORRECT = "correct"
    MISCLASSIFIED = "misclassified"
    COMMON = "common"


@dataclass(frozen=True)
class OutcomeRow:
    id: str
    word: str
    meaning: str | None
    original: Language
    predicted: Language
    outcome: Outcome


def classify_outcome(record: WordRecord, predicted: Language, shared: Mapping[str, frozenset]) -> Outcome:
    if predicted == record.language:
        return Outcome.CORRECT
    if predicted in shared.get(record.key, ()):
        return Outcome.COMMON
    return Outcome.MISCLASSIFIED


@dataclass(frozen=True)
class EvaluationReport:
    languages: tuple[Language, ...]
    accuracy: float
    precision: dict[Language, float]
    recall: dict[Language, float]
    confusion: list[list[int]]
    rows: list[OutcomeRow]
    predictions: list[Prediction]


def confusion_matrix(truths: Sequence[Language], preds: Sequence[Language], languages: Sequence[Language]):
    pos = {lang: i for i, lang in enumerate(languages)}
    m = [[0] * len(languages) for _ in languages]
    for t, p in zip(truths, preds):
        m[pos[t]][pos[p]] += 1
    return m


def evaluate(
    model: InstanceModel,
    test: Sequence[WordRecord],
    shared: Mapping[str, frozenset],
    languages: Sequence[Language] | None = None,
) -> EvaluationReport:
    if not test:
        raise ValueError("empty test set")
    preds = predict_many(model, test)
    truths = [r.language for r in test]
    predicted = [p.language for p in preds]
    langs = list(languages or ())
    for lang in list(model.languages) + truths:
        if lang not in langs:
            langs.append(lang)
    cm = confusion_matrix(truths, predicted, langs)
    precision, recall = {}, {}
    for i, lang in enumerate(langs):
        col = sum(row[i] for row in cm)
        precision[lang] = cm[i][i] / col if col else 0.0
        recall[lang] = cm[i][i] / sum(cm[i]) if sum(cm[i]) else 0.0
    rows = [
        OutcomeRow(r.id, r.surface, r.meaning, r.language, p, classify_outcome(r, p, shared))
        for r, p in zip(test, predicted)
    ]
    correct = sum(t == p for t, p in zip(truths, predicted))
    return EvaluationReport(tuple(langs), correct / len(test), precision, recall, cm, rows, preds)


class UndefinedCurveError(ValueError):
    pass


@dataclass(frozen=True)
class RocCurve:
    cls: Language
    points: tuple[tuple[float, float, float], ...]  # (threshold, fpr, tpr)
    auc: float


def roc_one_vs_rest(scores: Sequence[Mapping[Language, float]], truths: Sequence[Language], cls: Language) -> RocCurve:
    """Threshold sweep over the distinct scores for ``cls``, highest first,
    with a +inf sentinel so the curve starts at (0, 0). Area by trapezoids."""
    s = [sc.get(cls, 0.0) for sc in scores]
    pos = [t == cls for t in truths]
    n_pos = sum(pos)
    n_neg = len(pos) - n_pos
    if n_pos == 0 or n_neg == 0:
        raise UndefinedCurveError(f"{cls}: need at least one positive and one negative record")
    ranked = sorted(zip(s, pos), key=lambda x: -x[0])
    points = [(math.inf, 0.0, 0.0)]
    tp = fp = 0
    auc = 0.0
    i = 0
    while i < len(ranked):
        thr = ranked[i][0]
        while i < len(ranked) and ranked[i][0] == thr:
            if ranked[i][1]:
                tp += 1
            else:
                fp += 1
            i += 1
        fpr, tpr = fp / n_neg, tp / n_pos
        _, x0, y0 = points[-1]
        auc += (fpr - x0) * (tpr + y0) / 2
        points.append((thr, fpr, tpr))
    return RocCurve(cls, tuple(points), auc)


@dataclass(frozen=True)
class RocReport:
    languages: tuple[Language, ...]
    curves: dict[Language, RocCurve]
    warnings: list[str]


def roc_report(
    model: InstanceModel,
    test: Sequence[WordRecord],
    languages: Sequence[Language] | None = None,
    predictions: Sequence[Prediction] | None = None,
) -> RocReport:
    """One curve per language present in ``test``; classes with no positives or
    no negatives are skipped and reported in ``warnings``."""
    preds = list(predictions) if predictions is not None else predict_many(model, test)
    truths = [r.language for r in test]
    langs = list(languages or ())
    for lang in truths:
        if lang not in langs:
            langs.append(lang)
    curves, notes = {}, []
    present = set(truths)
    for lang in langs:
        if lang not in present:
            continue
        try:
            curves[lang] = roc_one_vs_rest([p.scores for p in preds], truths, lang)
        except UndefinedCurveError as exc:
            warnings.warn(str(exc), stacklevel=2)
            notes.append(str(exc))
    return RocReport(tuple(langs), curves, notes)
