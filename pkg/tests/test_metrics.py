import math

import pytest
from hypothesis import given
from hypothesis import strategies as st

from conftest import rec
from lingknn.lexicon import Language
from lingknn.metrics import (
    Instance,
    LdmConfig,
    euclidean,
    jaccard_bigram,
    jaccard_sweep,
    ldm,
    levenshtein,
    make_instance,
)
from lingknn.phonetics import SoundexVector
from oracles import dp_levenshtein

words = st.text(alphabet="abcdeāēkṇ", max_size=10)


def test_levenshtein_examples():
    assert levenshtein("kitten", "sitting") == 3
    assert levenshtein("", "abc") == 3
    assert levenshtein("abc", "") == 3
    assert levenshtein("mēle", "mēle") == 0


def test_levenshtein_nfc():
    assert levenshtein("mēle", "mēle") == 0


@given(words, words)
def test_levenshtein_matches_dp_table(a, b):
    assert levenshtein(a, b) == dp_levenshtein(a, b)


@given(words, words, words)
def test_levenshtein_metric_properties(a, b, c):
    ab = levenshtein(a, b)
    assert ab == levenshtein(b, a)
    assert abs(len(a) - len(b)) <= ab <= max(len(a), len(b))
    assert levenshtein(a, c) <= ab + levenshtein(b, c)


def test_jaccard_examples():
    assert jaccard_bigram("kala", "kala") == 1.0
    assert jaccard_bigram("ab", "xy") == 0.0
    assert jaccard_bigram("", "") == 1.0
    # ^n ni ig gh ht t$ vs ^n na ac ch ht t$: 3 shared of 9
    assert jaccard_bigram("night", "nacht") == pytest.approx(1 / 3, abs=1e-15)


@given(words, words)
def test_jaccard_properties(a, b):
    j = jaccard_bigram(a, b)
    assert 0.0 <= j <= 1.0
    assert j == jaccard_bigram(b, a)
    if a == b:
        assert j == 1.0


def test_euclidean_examples():
    x = (0.3, 0.1, 0.5, 0.9)
    assert euclidean(x, x) == 0
    assert euclidean((0, 0, 0, 0), (1, 0, 0, 0)) == 1
    assert euclidean((0, 0, 0, 0), (1, 1, 1, 1)) == 2
    with pytest.raises(ValueError):
        euclidean((0, 0), (0, 0, 0))


def _inst(surface, meaning, vec):
    return Instance(rec(surface, surface, meaning=meaning), SoundexVector(*vec))


def test_ldm_examples():
    p = make_instance(rec("p", "arogya", meaning="health"))
    assert ldm(p, p) == 0.0
    # Lev("kitten","sitting") = 3, no meanings, ED = 1 -> sqrt(4)
    a = _inst("kitten", None, (0, 0, 0, 0))
    b = _inst("sitting", None, (1, 0, 0, 0))
    assert ldm(a, b) == 2.0
    assert ldm(b, a) == 2.0


def test_ldm_meaning_term():
    a = _inst("kala", "art", (0, 0, 0, 0))
    b = _inst("kala", "arts", (0, 0, 0, 0))
    assert ldm(a, b) == 1.0
    assert ldm(a, b, LdmConfig(use_meaning=False)) == 0.0
    c = _inst("kala", None, (0, 0, 0, 0))
    assert ldm(a, c) == 0.0


def test_ldm_config_validation():
    with pytest.raises(ValueError):
        LdmConfig(jaccard_threshold=1.5)
    with pytest.raises(ValueError):
        LdmConfig(edge_threshold=-1)


unit = st.floats(0, 1)
vec = st.tuples(unit, unit, unit, unit)
gloss = st.one_of(st.none(), st.text(alphabet="abc ", max_size=6))


@given(words, gloss, vec, words, gloss, vec, st.booleans())
def test_ldm_properties(s1, m1, v1, s2, m2, v2, use_meaning):
    cfg = LdmConfig(use_meaning=use_meaning)
    p, q = _inst(s1, m1, v1), _inst(s2, m2, v2)
    d = ldm(p, q, cfg)
    assert d >= 0
    assert d == ldm(q, p, cfg)
    assert ldm(p, p, cfg) == 0
    if d == 0:
        assert s1 == s2


def test_jaccard_sweep_pairs_within_concept():
    records = [
        rec("a", "peechhe", Language.HINDI, concept="behind"),
        rec("b", "pichē", Language.PUNJABI, concept="behind"),
        rec("c", "hinde", Language.KANNADA, concept="behind"),
        rec("d", "kala", Language.HINDI, concept="art"),
    ]
    rows = jaccard_sweep(records)
    assert len(rows) == 3
    for row in rows:
        assert row.passes == tuple(row.jaccard >= t for t in (0.2, 0.4, 0.5))
        assert 0 <= row.soundex_similarity <= 1
    assert math.isclose(rows[0].jaccard, jaccard_bigram("peechhe", "pichē"))
