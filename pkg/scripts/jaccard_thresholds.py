"""Fraction of translation pairs grouped together at each Jaccard threshold,
per language pair and overall.

    python scripts/jaccard_thresholds.py src/lingknn/data/toy_lexicon.csv --thresholds 0.2 0.3 0.4 0.5
"""

import argparse
from collections import defaultdict
from pathlib import Path

from lingknn.lexicon import load_lexicon
from lingknn.metrics import jaccard_sweep


def main():
    ap = argparse.ArgumentParser()
    ap.add_argument("lexicon", type=Path)
    ap.add_argument("--thresholds", type=float, nargs="+", default=[0.2, 0.4, 0.5])
    args = ap.parse_args()

    rows = jaccard_sweep(list(load_lexicon(args.lexicon.read_text(encoding="utf-8"))), args.thresholds)
    by_pair = defaultdict(list)
    for r in rows:
        key = tuple(sorted((r.a.language.value, r.b.language.value)))
        by_pair[key].append(r.passes)
    print("pair,n," + ",".join(f"pass@{t}" for t in args.thresholds))
    for key in sorted(by_pair):
        passes = by_pair[key]
        rates = [sum(p[i] for p in passes) / len(passes) for i in range(len(args.thresholds))]
        print(f"{key[0]}-{key[1]},{len(passes)}," + ",".join(f"{x:.3f}" for x in rates))
    overall = [sum(r.passes[i] for r in rows) / len(rows) for i in range(len(args.thresholds))]
    print(f"all,{len(rows)}," + ",".join(f"{x:.3f}" for x in overall))


if __name__ == "__main__":
    main()
