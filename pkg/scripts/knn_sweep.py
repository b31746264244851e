"""Held-out accuracy of the KNN classifier for several k, with and without the
gloss term, before and after self-training.

    python scripts/knn_sweep.py src/lingknn/data/toy_lexicon.csv --seed 42
"""

import argparse
from pathlib import Path

from lingknn.classifier import KnnConfig, fit, self_train
from lingknn.evaluation import evaluate, split
from lingknn.lexicon import load_lexicon
from lingknn.metrics import LdmConfig


def main():
    ap = argparse.ArgumentParser()
    ap.add_argument("lexicon", type=Path)
    ap.add_argument("--k", type=int, nargs="+", default=[1, 3, 5, 7, 9])
    ap.add_argument("--seed", type=int, default=42)
    ap.add_argument("--test-fraction", type=float, default=0.2)
    args = ap.parse_args()

    lexicon = load_lexicon(args.lexicon.read_text(encoding="utf-8"))
    train, test = split(list(lexicon), args.test_fraction, args.seed)
    seed_set, pool = split(train, args.test_fraction, args.seed + 1)
    print("k,use_meaning,accuracy,accuracy_after_selftrain,absorbed")
    for use_meaning in (True, False):
        for k in args.k:
            cfg = KnnConfig(k, LdmConfig(use_meaning=use_meaning))
            model = fit(seed_set, cfg)
            before = evaluate(model, test, lexicon.shared_index).accuracy
            grown, _ = self_train(model, pool)
            after = evaluate(grown, test, lexicon.shared_index).accuracy
            print(f"{k},{use_meaning},{before:.4f},{after:.4f},{len(grown) - len(model)}")


if __name__ == "__main__":
    main()
