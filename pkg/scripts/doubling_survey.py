"""Block-doubling survey over a coloring file.

Doubles every record with both diagonal choices, screens the results
with the incremental clique engine under the requested claim, and runs
the reference verifier on the survivors.  Prints one line per doubling
and optionally writes the confirmed ones back out as certificates.

    python3 scripts/doubling_survey.py certs.txt --k 7 --j 7 --out doubled.txt
"""

import argparse
import sys

sys.path.insert(0, "src")

from ramseykit.cliques import is_valid_coloring
from ramseykit.coloring import to_certificate
from ramseykit.constructors import block_double
from ramseykit.formats import read_records, record_coloring, write_records
from ramseykit.verify import verify_coloring


def main(argv=None):
    parser = argparse.ArgumentParser(description=__doc__.splitlines()[0])
    parser.add_argument("input")
    parser.add_argument("--k", type=int, required=True)
    parser.add_argument("--j", type=int, required=True)
    parser.add_argument("--out", default=None)
    args = parser.parse_args(argv)

    confirmed = []
    for rec in read_records(args.input):
        base = record_coloring(rec)
        if not base.is_cyclic():
            print(f"order {base.order}: skipped, not cyclic")
            continue
        for diag in (0, 1):
            c = block_double(base, diag=diag)
            if not is_valid_coloring(c, args.k, args.j):
                print(f"order {base.order} diag {diag}: screened out")
                continue
            v = verify_coloring(c, args.k, args.j)
            word = "confirmed" if v.passes else "refuted"
            print(f"order {base.order} diag {diag}: {word} "
                  f"order {c.order} cliques {v.clique0}/{v.clique1} "
                  f"{v.seconds:.1f}s")
            if v.passes:
                confirmed.append(to_certificate(
                    c, k=args.k, j=args.j,
                    label=f"double-{c.order}-d{diag}"))
    if args.out and confirmed:
        write_records(args.out, confirmed)
    return 0 if confirmed else 1


if __name__ == "__main__":
    sys.exit(main())
