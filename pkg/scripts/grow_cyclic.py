"""Cyclic lower-bound campaign: rounds of local search with reseeding.

Every round runs the batch local search for a slice of the time budget,
folds the discoveries into a relabeling-aware database, and reseeds the
next round from the highest orders found so far.  Varying the rng seed
per round buys fresh sampling of the move grid without losing the
accumulated classes.

    python3 scripts/grow_cyclic.py --k 5 --j 9 --seeds seeds.txt \
        --db found.txt --rounds 4 --budget 120
"""

import argparse
import sys

sys.path.insert(0, "src")

from ramseykit.coloring import DistanceColoring
from ramseykit.cyclic import CyclicSearchConfig, cyclic_local_search
from ramseykit.db import ColoringDatabase
from ramseykit.formats import read_records, record_coloring


def main(argv=None):
    parser = argparse.ArgumentParser(description=__doc__.splitlines()[0])
    parser.add_argument("--k", type=int, required=True)
    parser.add_argument("--j", type=int, required=True)
    parser.add_argument("--seeds", required=True)
    parser.add_argument("--db", required=True)
    parser.add_argument("--rounds", type=int, default=4)
    parser.add_argument("--budget", type=float, default=120.0,
                        help="seconds per round")
    parser.add_argument("--reseed", type=int, default=40,
                        help="colorings carried into the next round")
    parser.add_argument("--rng-seed", type=int, default=0)
    args = parser.parse_args(argv)

    seeds = [record_coloring(r) for r in read_records(args.seeds)]
    db = ColoringDatabase(args.db)
    best = 0
    for rnd in range(args.rounds):
        cfg = CyclicSearchConfig(args.k, args.j, time_budget=args.budget,
                                 rng_seed=args.rng_seed + rnd)
        out = cyclic_local_search(seeds, cfg)
        fresh = 0
        pool = []
        for order in sorted(out.colorings, reverse=True):
            for value in out.colorings[order]:
                c = DistanceColoring.complete(order, value)
                fresh += db.insert(c) == "inserted"
                if len(pool) < args.reseed:
                    pool.append(c)
        best = max(best, max(out.colorings, default=0))
        print(f"round {rnd}: processed {out.stats.processed} "
              f"tested {out.stats.tested} new classes {fresh} "
              f"best order {best}")
        if pool:
            seeds = pool
    counts = db.stats()["canonical"]
    for order in sorted(counts):
        print(f"{order} {counts[order]}")
    return 0


if __name__ == "__main__":
    sys.exit(main())
