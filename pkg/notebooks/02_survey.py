"""Classify every cluster of size p^2 inside a small box, up to translation.

For p = 2 and the 3x3x3 box this is 17550 subsets; the default run uses the
2x2x2 box and finishes in seconds.  Each constructive verdict is rechecked by
verifying its tiling.

    python3 notebooks/02_survey.py --side 2
    python3 notebooks/02_survey.py --side 3 --limit 2000
"""

import argparse
import itertools
import time
from collections import Counter

from latile import Cluster, classify
from latile.trichotomy import check_embedded


def survey(side: int, p: int, limit: int | None, cap: int) -> Counter:
    box = list(itertools.product(range(side), repeat=3))
    seen = set()
    counts: Counter = Counter()
    for pts in itertools.combinations(box, p * p):
        key = Cluster(pts).normalized()[0]
        if key in seen:
            continue
        seen.add(key)
        result = classify(key, p, cap)
        assert check_embedded(result), key
        counts[result.case] += 1
        if result.constructive and result.tiling is None:
            counts["no tiling within cap"] += 1
        if limit and len(seen) >= limit:
            break
    counts["translation classes"] = len(seen)
    return counts


def main() -> None:
    parser = argparse.ArgumentParser(description=__doc__.splitlines()[0])
    parser.add_argument("--side", type=int, default=2)
    parser.add_argument("--prime", type=int, default=2)
    parser.add_argument("--limit", type=int)
    parser.add_argument("--search-cap", type=int, default=32)
    args = parser.parse_args()
    start = time.perf_counter()
    counts = survey(args.side, args.prime, args.limit, args.search_cap)
    for k, v in sorted(counts.items()):
        print(f"{k:>22}: {v}")
    print(f"{time.perf_counter() - start:.1f} s")


if __name__ == "__main__":
    main()
