"""Cluster count and mean edge density over an (eps, min_samples) grid.

    python scripts/eps_sweep.py src/lingknn/data/toy_lexicon.csv
"""

import argparse
import itertools
from pathlib import Path

from lingknn.clustering import ClusterParams, cluster_lexicon
from lingknn.lexicon import load_lexicon


def main():
    ap = argparse.ArgumentParser()
    ap.add_argument("lexicon", type=Path)
    ap.add_argument("--eps", type=float, nargs="+", default=[0.02, 0.0375, 0.05, 0.1, 0.2])
    ap.add_argument("--min-samples", type=int, nargs="+", default=[2, 3, 5, 10])
    ap.add_argument("--edge-threshold", type=int, default=2)
    args = ap.parse_args()

    records = list(load_lexicon(args.lexicon.read_text(encoding="utf-8")))
    print("eps,min_samples,clusters,noise,mean_coefficient")
    for eps, ms in itertools.product(args.eps, args.min_samples):
        report = cluster_lexicon(records, ClusterParams(eps, ms), args.edge_threshold)
        print(f"{eps},{ms},{len(report.rows)},{len(report.noise_ids)},{report.mean_coefficient:.4f}")


if __name__ == "__main__":
    main()
