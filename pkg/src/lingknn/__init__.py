"""Phonetic clustering and instance-based language classification of multilingual word lists."""

from .classifier import InstanceModel, KnnConfig, Prediction, fit, predict, self_train
from .clustering import (
    ClusterParams,
    build_word_graph,
    cluster_lexicon,
    clustering_coefficient,
    dbscan,
    label_cluster,
)
from .evaluation import evaluate, roc_one_vs_rest, roc_report, split
from .lexicon import Category, Language, Lexicon, WordRecord, ingest_long, ingest_wide, shared_words
from .metrics import LdmConfig, euclidean, jaccard_bigram, ldm, levenshtein
from .phonetics import nysiis_encode, soundex_encode, soundex_similarity, soundex_vector

__version__ = "0.1.0"
