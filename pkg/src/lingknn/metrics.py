"""String and vector distances, and the linguistic distance metric (LDM) used by KNN."""

from __future__ import annotations

import math
import unicodedata
from dataclasses import dataclass
from typing import NamedTuple, Sequence

from .lexicon import WordRecord
from .phonetics import SoundexVector, soundex_encode, soundex_similarity, soundex_vector


@dataclass(frozen=True)
class LdmConfig:
    use_meaning: bool = True
    jaccard_threshold: float = 0.4
    soundex_threshold: float = 0.8
    edge_threshold: int = 2

    def __post_init__(self):
        for name in ("jaccard_threshold", "soundex_threshold"):
            value = getattr(self, name)
            if not 0.0 <= value <= 1.0:
                raise ValueError(f"{name} must lie in [0, 1], got {value}")
        if self.edge_threshold < 0:
            raise ValueError(f"edge_threshold must be >= 0, got {self.edge_threshold}")


class Instance(NamedTuple):
    """A word record paired with its precomputed soundex embedding."""

    record: WordRecord
    vector: SoundexVector


def make_instance(record: WordRecord) -> Instance:
    return Instance(record, soundex_vector(soundex_encode(record.surface)))


def levenshtein(a: str, b: str) -> int:
    a = unicodedata.normalize("NFC", a)
    b = unicodedata.normalize("NFC", b)
    if a == b:
        return 0
    # strip shared prefix/suffix, they never contribute
    start = 0
    while start < len(a) and start < len(b) and a[start] == b[start]:
        start += 1
    a, b = a[start:], b[start:]
    while a and b and a[-1] == b[-1]:
        a, b = a[:-1], b[:-1]
    if len(a) < len(b):
        a, b = b, a
    if not b:
        return len(a)
    prev = list(range(len(b) + 1))
    for i, ca in enumerate(a, 1):
        cur = [i]
        for j, cb in enumerate(b, 1):
            cur.append(min(prev[j] + 1, cur[j - 1] + 1, prev[j - 1] + (ca != cb)))
        prev = cur
    return prev[-1]


def bigrams(s: str) -> set[str]:
    padded = "^" + unicodedata.normalize("NFC", s) + "$"
    return {padded[i : i + 2] for i in range(len(padded) - 1)}


def jaccard_bigram(a: str, b: str) -> float:
    sa, sb = bigrams(a), bigrams(b)
    return len(sa & sb) / len(sa | sb)


def euclidean(u: Sequence[float], v: Sequence[float]) -> float:
    if len(u) != len(v):
        raise ValueError("vectors differ in dimension")
    return math.dist(u, v)


def ldm(p: Instance, q: Instance, cfg: LdmConfig = LdmConfig()) -> float:
    total = levenshtein(p.record.surface, q.record.surface)
    if cfg.use_meaning and p.record.meaning is not None and q.record.meaning is not None:
        total += levenshtein(p.record.meaning, q.record.meaning)
    return math.sqrt(total + euclidean(p.vector, q.vector))


SWEEP_THRESHOLDS = (0.2, 0.4, 0.5)


@dataclass(frozen=True)
class SweepRow:
    concept_id: str
    a: WordRecord
    b: WordRecord
    jaccard: float
    passes: tuple[bool, ...]
    soundex_similarity: float


def jaccard_sweep(records: Sequence[WordRecord], thresholds=SWEEP_THRESHOLDS) -> list[SweepRow]:
    """Bigram Jaccard for every pair of translations of the same concept.

    A pair passes a threshold when its score is at least that threshold.
    """
    by_concept: dict[str, list[WordRecord]] = {}
    for rec in records:
        by_concept.setdefault(rec.concept_id, []).append(rec)
    rows = []
    for concept, members in by_concept.items():
        codes = [soundex_encode(m.surface) for m in members]
        for i in range(len(members)):
            for j in range(i + 1, len(members)):
                score = jaccard_bigram(members[i].key, members[j].key)
                rows.append(
                    SweepRow(
                        concept,
                        members[i],
                        members[j],
                        score,
                        tuple(score >= t for t in thresholds),
                        soundex_similarity(codes[i], codes[j]),
                    )
                )
    return rows
