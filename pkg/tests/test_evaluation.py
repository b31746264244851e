import math
import random
import warnings

import pytest
from hypothesis import given
from hypothesis import strategies as st

from conftest import rec
from lingknn.classifier import KnnConfig, fit, predict
from lingknn.evaluation import (
    Outcome,
    UndefinedCurveError,
    classify_outcome,
    evaluate,
    roc_one_vs_rest,
    roc_report,
    split,
)
from lingknn.lexicon import Language, Lexicon
from oracles import mann_whitney_auc

L = list(Language)[:5]


def _balanced(n_per=20):
    return [rec(f"{lang.value}{i}", f"w{lang.value[:2].lower()}{i}", lang) for lang in L for i in range(n_per)]


def test_split_counts():
    train, test = split(_balanced(), 0.2, seed=1)
    assert len(train) == 80 and len(test) == 20
    for lang in L:
        assert sum(r.language is lang for r in test) == 4


def test_split_deterministic_and_seeded():
    records = _balanced()
    assert split(records, 0.2, 3) == split(records, 0.2, 3)
    assert split(records, 0.2, 3)[1] != split(records, 0.2, 4)[1]


def test_split_small_language_warns():
    records = _balanced(5) + [rec("lonely", "kala", Language.ENGLISH)]
    with pytest.warns(UserWarning, match="English"):
        train, test = split(records, 0.2, 0)
    assert records[-1] in train


def test_split_rejects_bad_fraction():
    for f in (0, 1, -0.1):
        with pytest.raises(ValueError):
            split(_balanced(), f, 0)


@given(st.lists(st.sampled_from(L), max_size=60), st.floats(0.05, 0.95), st.integers(0, 99))
def test_split_partition(langs, frac, seed):
    records = [rec(f"r{i}", "kala", lang) for i, lang in enumerate(langs)]
    with warnings.catch_warnings():
        warnings.simplefilter("ignore")
        train, test = split(records, frac, seed)
    ids_train, ids_test = {r.id for r in train}, {r.id for r in test}
    assert ids_train | ids_test == {r.id for r in records}
    assert not ids_train & ids_test


def test_outcome_rules():
    shared = {"hatya": frozenset({Language.TELUGU, Language.KANNADA})}
    r = rec("x", "hatya", Language.TELUGU)
    assert classify_outcome(r, Language.KANNADA, shared) is Outcome.COMMON
    assert classify_outcome(r, Language.TELUGU, shared) is Outcome.CORRECT
    assert classify_outcome(r, Language.HINDI, shared) is Outcome.MISCLASSIFIED


def test_evaluate_hatya_common():
    lexicon = Lexicon((rec("k", "hatya", Language.KANNADA), rec("t", "hatya", Language.TELUGU), rec("h", "maa", Language.HINDI)))
    model = fit([lexicon.records[0], lexicon.records[2]], KnnConfig(k=1))
    report = evaluate(model, [lexicon.records[1]], lexicon.shared_index)
    assert report.rows[0].predicted is Language.KANNADA
    assert report.rows[0].outcome is Outcome.COMMON
    assert report.accuracy == 0.0


def test_evaluate_perfect():
    train = [rec("a", "kala", Language.HINDI), rec("b", "mēlē", Language.TAMIL)]
    model = fit(train, KnnConfig(k=1))
    report = evaluate(model, [rec("q1", "kala", Language.HINDI), rec("q2", "mēlē", Language.TAMIL)], {})
    assert report.accuracy == 1.0
    n = len(report.languages)
    assert all(report.confusion[i][j] == 0 for i in range(n) for j in range(n) if i != j)


def test_evaluate_hand_tallied_fixture():
    # 10 test words; the model is exact on surfaces, three test labels are wrong on purpose
    words = ["kala", "mata", "pita", "nadi", "jala", "agni", "vayu", "surya", "chandra", "appa"]
    langs = [Language.HINDI, Language.TAMIL] * 5
    model = fit([rec(f"m{i}", w, langs[i]) for i, w in enumerate(words)], KnnConfig(k=1))
    truth = list(langs)
    truth[0], truth[3], truth[4] = Language.TAMIL, Language.HINDI, Language.TAMIL
    test = [rec(f"t{i}", w, truth[i]) for i, w in enumerate(words)]
    report = evaluate(model, test, {})
    assert report.accuracy == 0.7
    h, t = report.languages.index(Language.HINDI), report.languages.index(Language.TAMIL)
    # truth Hindi: t2, t3(predicted Tamil), t6, t8 -> 3 right, 1 wrong
    assert report.confusion[h][h] == 3 and report.confusion[h][t] == 1
    # truth Tamil: t0, t1, t4, t5, t7, t9 -> t0 and t4 predicted Hindi
    assert report.confusion[t][t] == 4 and report.confusion[t][h] == 2
    assert sum(map(sum, report.confusion)) == 10
    assert sum(report.confusion[i][i] for i in range(len(report.languages))) / 10 == report.accuracy
    assert report.recall[Language.HINDI] == 3 / 4
    assert report.precision[Language.HINDI] == 3 / 5


def _curve_checks(curve):
    pts = curve.points
    assert pts[0][1:] == (0.0, 0.0) and pts[-1][1:] == (1.0, 1.0)
    assert pts[0][0] == math.inf
    assert all(a[0] > b[0] for a, b in zip(pts, pts[1:]))
    assert all(a[1] <= b[1] and a[2] <= b[2] for a, b in zip(pts, pts[1:]))
    assert 0.0 <= curve.auc <= 1.0


def test_roc_perfect_and_uninformative():
    truths = [Language.HINDI] * 3 + [Language.TAMIL] * 3
    perfect = [{Language.HINDI: s} for s in (1.0, 0.8, 0.6, 0.4, 0.2, 0.0)]
    curve = roc_one_vs_rest(perfect, truths, Language.HINDI)
    assert curve.auc == 1.0
    _curve_checks(curve)
    flat = [{Language.HINDI: 0.4}] * 6
    curve = roc_one_vs_rest(flat, truths, Language.HINDI)
    assert [p[1:] for p in curve.points] == [(0.0, 0.0), (1.0, 1.0)]
    assert curve.auc == 0.5


def test_roc_undefined():
    with pytest.raises(UndefinedCurveError, match="Hindi"):
        roc_one_vs_rest([{Language.HINDI: 1.0}], [Language.HINDI], Language.HINDI)
    with pytest.raises(UndefinedCurveError):
        roc_one_vs_rest([{Language.HINDI: 1.0}], [Language.TAMIL], Language.HINDI)


def test_roc_random_matches_mann_whitney():
    rng = random.Random(30)
    scores = [rng.choice([0, 0.2, 0.4, 0.6, 0.8, 1.0]) for _ in range(30)]
    truths = [Language.HINDI if rng.random() < 0.4 else Language.TAMIL for _ in range(30)]
    curve = roc_one_vs_rest([{Language.HINDI: s} for s in scores], truths, Language.HINDI)
    assert abs(curve.auc - mann_whitney_auc(scores, [t is Language.HINDI for t in truths])) < 1e-9
    _curve_checks(curve)


@given(st.lists(st.tuples(st.sampled_from([0.0, 0.2, 0.4, 0.6, 0.8, 1.0]), st.booleans()), min_size=2, max_size=40))
def test_roc_auc_property(pairs):
    positives = [p for _, p in pairs]
    if all(positives) or not any(positives):
        return
    scores = [s for s, _ in pairs]
    truths = [Language.HINDI if p else Language.TAMIL for p in positives]
    curve = roc_one_vs_rest([{Language.HINDI: s} for s in scores], truths, Language.HINDI)
    assert abs(curve.auc - mann_whitney_auc(scores, positives)) < 1e-9
    _curve_checks(curve)


def test_roc_report_seven_languages():
    rng = random.Random(4)
    langs = [l for l in Language if l is not Language.ENGLISH]
    train = [rec(f"m{i}", "".join(rng.choice("aekmnprt") for _ in range(4)), langs[i % 7]) for i in range(70)]
    test = [rec(f"t{i}", "".join(rng.choice("aekmnprt") for _ in range(4)), langs[i % 7]) for i in range(35)]
    model = fit(train, KnnConfig(k=5))
    report = roc_report(model, test, langs)
    assert len(report.curves) == 7 and not report.warnings
    preds = [predict(model, q) for q in test]
    for lang, curve in report.curves.items():
        _curve_checks(curve)
        expected = mann_whitney_auc([p.scores[lang] for p in preds], [q.language is lang for q in test])
        assert abs(curve.auc - expected) < 1e-9


def test_roc_report_single_language_warns():
    model = fit([rec("a", "kala", Language.HINDI), rec("b", "mata", Language.TAMIL)], KnnConfig(k=1))
    with pytest.warns(UserWarning):
        report = roc_report(model, [rec("q", "kala", Language.HINDI), rec("r", "pita", Language.HINDI)])
    assert report.curves == {}
    assert len(report.warnings) == 1
