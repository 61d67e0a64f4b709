"""Longest-coloring table for a list of clique-order pairs.

Runs the full census for every requested pair and prints one row per
pair: the longest order reached, the peak of the per-order population,
and the wall time.  Pairs with k = 3 go through the compiled kernel
when numba is installed, which keeps even (3,13) under a minute.

    python3 scripts/longest_by_pair.py 3,3,3,5 3,4,4,8 4,5,8,24
"""

import argparse
import sys
import time

sys.path.insert(0, "src")

from ramseykit.coloring import SearchParams
from ramseykit.fullenum import enumerate_colorings


def parse_pair(text):
    parts = [int(x) for x in text.split(",")]
    if len(parts) != 4:
        raise argparse.ArgumentTypeError(f"want k,j,s,d, got {text!r}")
    return parts


def main(argv=None):
    parser = argparse.ArgumentParser(description=__doc__.splitlines()[0])
    parser.add_argument("pairs", nargs="+", type=parse_pair,
                        metavar="k,j,s,d")
    parser.add_argument("--engine", choices=("auto", "python", "jit"),
                        default="auto")
    args = parser.parse_args(argv)

    print(f"{'pair':>8} {'longest':>8} {'peak':>14} {'seconds':>8}")
    for k, j, s, d in args.pairs:
        t0 = time.perf_counter()
        census = enumerate_colorings(SearchParams(k, j, s=s, d=d),
                                     engine=args.engine)
        secs = time.perf_counter() - t0
        peak = max(census.counts, key=census.counts.get)
        print(f"{f'({k},{j})':>8} {census.longest:>8} "
              f"{census.counts[peak]:>8} @{peak:<4} {secs:>8.1f}")
    return 0


if __name__ == "__main__":
    sys.exit(main())
