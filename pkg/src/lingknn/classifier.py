"""Instance-based language classifier (KNN under the LDM) and the self-training loop."""

from __future__ import annotations

import logging
from collections import Counter
from dataclasses import dataclass, field
from typing import Sequence

from .lexicon import Language, WordRecord
from .metrics import Instance, LdmConfig, ldm, make_instance
from .phonetics import EncodingError

log = logging.getLogger(__name__)


@dataclass(frozen=True)
class KnnConfig:
    k: int = 5
    ldm: LdmConfig = field(default_factory=LdmConfig)

    def __post_init__(self):
        if self.k < 1:
            raise ValueError(f"k must be >= 1, got {self.k}")


@dataclass(frozen=True)
class InstanceModel:
    instances: tuple[Instance, ...]
    config: KnnConfig = field(default_factory=KnnConfig)

    @property
    def languages(self) -> tuple[Language, ...]:
        return tuple(dict.fromkeys(inst.record.language for inst in self.instances))

    @property
    def records(self) -> list[WordRecord]:
        return [inst.record for inst in self.instances]

    def __len__(self) -> int:
        return len(self.instances)


@dataclass(frozen=True)
class Prediction:
    language: Language
    scores: dict[Language, float]
    neighbor_ids: tuple[str, ...]
    distances: tuple[float, ...] = ()
    clamped: bool = False


def _instances(records: Sequence[WordRecord]) -> list[Instance]:
    out, bad = [], []
    for rec in records:
        if not isinstance(rec.language, Language):
            raise ValueError(f"training record {rec.id!r} has no language label")
        try:
            out.append(make_instance(rec))
        except EncodingError:
            bad.append(rec.id)
    if bad:
        raise EncodingError(f"unencodable records: {', '.join(bad)}")
    return out


def fit(records: Sequence[WordRecord], config: KnnConfig = KnnConfig()) -> InstanceModel:
    """Store the training words with their soundex embeddings. Duplicates are kept."""
    if not records:
        raise ValueError("cannot fit on an empty training set")
    return InstanceModel(tuple(_instances(records)), config)


def vote(model: InstanceModel, order: Sequence[int], dists: Sequence[float]) -> Prediction:
    """Majority vote over neighbour indices ``order`` (already k-limited)."""
    k = len(order)
    langs = [model.instances[i].record.language for i in order]
    counts = Counter(langs)
    mean_dist = {lang: sum(d for l, d in zip(langs, dists) if l == lang) / counts[lang] for lang in counts}
    winner = min(counts, key=lambda lang: (-counts[lang], mean_dist[lang], lang.value))
    scores = {lang: counts.get(lang, 0) / k for lang in model.languages}
    return Prediction(
        language=winner,
        scores=scores,
        neighbor_ids=tuple(model.instances[i].record.id for i in order),
        distances=tuple(dists),
    )


def predict(model: InstanceModel, query: WordRecord) -> Prediction:
    q = make_instance(query)
    cfg = model.config
    dists = [ldm(q, inst, cfg.ldm) for inst in model.instances]
    k = min(cfg.k, len(dists))
    # sorted() is stable, so equal distances keep instance order
    order = sorted(range(len(dists)), key=dists.__getitem__)[:k]
    pred = vote(model, order, [dists[i] for i in order])
    if k < cfg.k:
        return Prediction(pred.language, pred.scores, pred.neighbor_ids, pred.distances, clamped=True)
    return pred


def predict_many(model: InstanceModel, queries: Sequence[WordRecord]) -> list[Prediction]:
    return [predict(model, q) for q in queries]


@dataclass(frozen=True)
class SelfTrainStep:
    iteration: int
    pool_size: int
    accuracy: float
    absorbed: int


def self_train(
    model: InstanceModel,
    pool: Sequence[WordRecord],
    max_iters: int = 10,
    tol: float = 1e-4,
) -> tuple[InstanceModel, list[SelfTrainStep]]:
    """Repeatedly classify the pool and absorb correctly predicted words.

    Stops when nothing moves, the pool empties, pool accuracy changes by less
    than ``tol``, or after ``max_iters`` rounds. ``pool_size`` in the history
    is the number of words classified in that round.
    """
    if max_iters < 1:
        raise ValueError("max_iters must be >= 1")
    remaining = list(pool)
    history: list[SelfTrainStep] = []
    for it in range(1, max_iters + 1):
        if not remaining:
            break
        preds = predict_many(model, remaining)
        hits = [p.language == r.language for p, r in zip(preds, remaining)]
        accuracy = sum(hits) / len(remaining)
        absorbed = [r for r, h in zip(remaining, hits) if h]
        history.append(SelfTrainStep(it, len(remaining), accuracy, len(absorbed)))
        log.debug("self-train iter %d: pool=%d acc=%.4f absorbed=%d", it, len(remaining), accuracy, len(absorbed))
        if not absorbed:
            break
        model = InstanceModel(model.instances + tuple(_instances(absorbed)), model.config)
        remaining = [r for r, h in zip(remaining, hits) if not h]
        if len(history) >= 2 and abs(history[-1].accuracy - history[-2].accuracy) < tol:
            break
    return model, history
