"""Couniserial dimension of every p-group partition up to a given weight,
laid out by weight, next to the u.dim and length bounds.

    python scripts/dimension_table.py --max-weight 12
"""
import argparse
from collections import Counter

from couniserial.abtype import AbelianType, partitions_of
from couniserial.dimension import cudim


def main():
    ap = argparse.ArgumentParser()
    ap.add_argument("--max-weight", type=int, default=10)
    ap.add_argument("--prime", type=int, default=2)
    args = ap.parse_args()

    for w in range(1, args.max_weight + 1):
        values = []
        for lam in partitions_of(w):
            d = int(cudim(AbelianType(((args.prime, lam),))))
            assert len(lam) <= d <= w
            values.append((lam, d))
        hist = Counter(d for _, d in values)
        print(f"weight {w:2}: {len(values):3} partitions, cudim histogram "
              f"{dict(sorted(hist.items()))}, cudim = length for {hist[w]}")


if __name__ == "__main__":
    main()
