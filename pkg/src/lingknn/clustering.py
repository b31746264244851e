"""DBSCAN over soundex embeddings, cluster naming, and word-graph edge density."""

from __future__ import annotations

from collections import Counter, deque
from dataclasses import dataclass, field
from typing import Sequence

import numpy as np

from .lexicon import Category, Language, Lexicon, WordRecord
from .metrics import levenshtein
from .phonetics import EncodingError, soundex_encode, soundex_vector

NOISE = -1
_CHUNK = 1024


@dataclass(frozen=True)
class ClusterParams:
    eps: float = 0.0375
    min_samples: int = 10

    def __post_init__(self):
        if not self.eps > 0:
            raise ValueError(f"eps must be positive, got {self.eps}")
        if self.min_samples < 1:
            raise ValueError(f"min_samples must be >= 1, got {self.min_samples}")


@dataclass(frozen=True)
class ClusterAssignment:
    labels: tuple[int, ...]
    core: tuple[bool, ...] = ()

    @property
    def n_clusters(self) -> int:
        return max(self.labels, default=NOISE) + 1

    @property
    def clusters(self) -> list[list[int]]:
        """Member indices per cluster id."""
        out: list[list[int]] = [[] for _ in range(self.n_clusters)]
        for i, lab in enumerate(self.labels):
            if lab != NOISE:
                out[lab].append(i)
        return out


def dbscan(points, params: ClusterParams = ClusterParams()) -> ClusterAssignment:
    """Density-based clustering with Euclidean neighbourhoods.

    A point is core when at least ``min_samples`` points (itself included)
    lie within ``eps``. Clusters are discovered and expanded in input order,
    so a border point reachable from several clusters joins the earliest one.
    """
    X = np.asarray(points, dtype=float).reshape(len(points), -1) if len(points) else np.empty((0, 4))
    n = len(X)
    if n == 0:
        return ClusterAssignment((), ())
    neighbours: list[np.ndarray] = []
    for lo in range(0, n, _CHUNK):
        block = X[lo : lo + _CHUNK]
        sq = ((block[:, None, :] - X[None, :, :]) ** 2).sum(axis=-1)
        neighbours.extend(np.flatnonzero(row) for row in sq <= params.eps**2)
    is_core = np.array([len(nb) >= params.min_samples for nb in neighbours])

    labels = np.full(n, NOISE, dtype=int)
    cluster = 0
    for start in range(n):
        if labels[start] != NOISE or not is_core[start]:
            continue
        labels[start] = cluster
        queue = deque([start])
        while queue:
            p = queue.popleft()
            for q in neighbours[p]:
                if labels[q] == NOISE:
                    labels[q] = cluster
                    if is_core[q]:
                        queue.append(q)
        cluster += 1
    return ClusterAssignment(tuple(int(x) for x in labels), tuple(bool(c) for c in is_core))


@dataclass(frozen=True)
class ClusterLabel:
    majority_language: Language
    majority_category: Category

    @property
    def short_code(self) -> str:
        return self.majority_language.value[:2] + self.majority_category.title[:3]

    @property
    def name(self) -> str:
        return f"{self.majority_language.value} + {self.majority_category.title}"


def _majority(values):
    counts = Counter(values)
    return min(counts, key=lambda v: (-counts[v], v.value))


def label_cluster(members: Sequence[WordRecord]) -> ClusterLabel:
    """Most frequent language and category; ties go to the alphabetically first name."""
    if not members:
        raise ValueError("cannot label an empty cluster")
    return ClusterLabel(_majority(m.language for m in members), _majority(m.category for m in members))


@dataclass(frozen=True)
class WordGraph:
    n: int
    edges: frozenset[tuple[int, int]] = field(default_factory=frozenset)

    def __post_init__(self):
        for i, j in self.edges:
            if i == j:
                raise ValueError("self-loops are not allowed")
            if not (0 <= i < self.n and 0 <= j < self.n):
                raise ValueError(f"edge ({i}, {j}) out of range")
        object.__setattr__(self, "edges", frozenset((min(e), max(e)) for e in self.edges))


def build_word_graph(members: Sequence[WordRecord], edge_threshold: int = 2) -> WordGraph:
    surfaces = [m.surface for m in members]
    edges = {
        (i, j)
        for i in range(len(surfaces))
        for j in range(i + 1, len(surfaces))
        if levenshtein(surfaces[i], surfaces[j]) <= edge_threshold
    }
    return WordGraph(len(surfaces), frozenset(edges))


def clustering_coefficient(g: WordGraph) -> float:
    """Undirected edge count over n(n-1)/2; graphs with fewer than two nodes score 0."""
    if g.n < 2:
        return 0.0
    return len(g.edges) / (g.n * (g.n - 1) / 2)


@dataclass(frozen=True)
class ClusterRow:
    cluster_id: int
    label: ClusterLabel
    size: int
    coefficient: float
    member_ids: tuple[str, ...]


@dataclass(frozen=True)
class ClusterReport:
    rows: tuple[ClusterRow, ...]
    assignment: ClusterAssignment
    record_ids: tuple[str, ...]

    @property
    def noise_ids(self) -> list[str]:
        return [rid for rid, lab in zip(self.record_ids, self.assignment.labels) if lab == NOISE]

    @property
    def mean_coefficient(self) -> float:
        return float(np.mean([r.coefficient for r in self.rows])) if self.rows else 0.0


def encode_records(records: Sequence[WordRecord]) -> list[tuple[float, ...]]:
    vectors, bad = [], []
    for rec in records:
        try:
            vectors.append(tuple(soundex_vector(soundex_encode(rec.surface))))
        except EncodingError:
            bad.append(rec.id)
    if bad:
        raise EncodingError(f"unencodable records: {', '.join(bad)}")
    return vectors


def cluster_lexicon(
    lexicon: Lexicon | Sequence[WordRecord],
    params: ClusterParams = ClusterParams(),
    edge_threshold: int = 2,
) -> ClusterReport:
    records = list(lexicon)
    assignment = dbscan(encode_records(records), params)
    rows = []
    for cid, idx in enumerate(assignment.clusters):
        members = [records[i] for i in idx]
        rows.append(
            ClusterRow(
                cid,
                label_cluster(members),
                len(members),
                clustering_coefficient(build_word_graph(members, edge_threshold)),
                tuple(m.id for m in members),
            )
        )
    return ClusterReport(tuple(rows), assignment, tuple(r.id for r in records))


def group_coefficients(records: Sequence[WordRecord], by: str = "language", edge_threshold: int = 2):
    """Edge density of the word graph within each language (or category)."""
    groups: dict[str, list[WordRecord]] = {}
    for rec in records:
        key = getattr(rec, by)
        groups.setdefault(key.value, []).append(rec)
    out = []
    for name, members in groups.items():
        g = build_word_graph(members, edge_threshold)
        out.append((name, g.n, len(g.edges), clustering_coefficient(g)))
    return out
