#!/usr/bin/env python3
"""Census of geometric types among corank-1 Gram matrices at q = 2.

Exhausts every 2x2 Gram of rank 1 and every 3x3 Gram of rank 2 over
GF(4), classifies each, and reports the frequency of the generic type
(N2 plus units).  The resulting fractions justify the majority threshold
frozen in tests/fixtures/generic_type_calibration.json for the seeded
random-form genericity tests.

Usage: python3 scripts/calibrate_generic_type.py [--out PATH]
"""

import argparse
import itertools
import json
from collections import Counter

from qbic import MatrixGF, QBicForm, classify, make_field


def census(dim: int, rank: int) -> Counter:
    ctx = make_field(2, 2)
    counts: Counter = Counter()
    for entries in itertools.product(ctx.elements(), repeat=dim * dim):
        M = MatrixGF(ctx, [list(entries[i * dim:(i + 1) * dim]) for i in range(dim)])
        if M.rank() != rank:
            continue
        counts[classify(QBicForm(ctx, 1, M)).format()] += 1
    return counts


def main():
    ap = argparse.ArgumentParser()
    ap.add_argument("--out", default=None)
    args = ap.parse_args()

    results = {}
    for dim, rank, generic in ((2, 1, "N2"), (3, 2, "N2+1")):
        counts = census(dim, rank)
        total = sum(counts.values())
        frac = counts[generic] / total
        results[f"dim{dim}_rank{rank}"] = {
            "counts": dict(sorted(counts.items())),
            "total": total,
            "generic_type": generic,
            "generic_fraction": frac,
        }
        print(f"dim {dim} rank {rank}: {dict(counts)}  generic {generic} fraction {frac:.4f}")

    fixture = {
        "q": 2,
        "census": results,
        "majority_threshold": 0.5,
        "note": "threshold for seeded random-form genericity tests; justified by the census fractions above",
    }
    if args.out:
        with open(args.out, "w", encoding="utf-8") as fh:
            json.dump(fixture, fh, indent=2, sort_keys=True)
            fh.write("\n")
        print(f"wrote {args.out}")


if __name__ == "__main__":
    main()
