"""Command line front end.

Exit codes are stable for scripting: 0 success (and, for verify, all
records passing), 1 at least one verification failure, 2 usage errors or
malformed input files, 3 unexpected internal errors.
"""

from __future__ import annotations

import argparse
import json
import sys

from .coloring import SearchParams, Signature, to_certificate
from .db import ColoringDatabase
from .formats import (FormatError, read_records, record_coloring,
                      write_census, write_records)
from .fullenum import enumerate_colorings
from .sigsearch import component_search
from .verify import verify_certificate, verify_coloring
from .coloring import Certificate, DistanceColoring


def _params(args, need_sd: bool = True) -> SearchParams:
    kwargs = {}
    if args.threshold is not None:
        kwargs["abort_threshold"] = args.threshold
    if need_sd:
        kwargs["s"] = args.s
        kwargs["d"] = args.d
    return SearchParams(args.k, args.j, **kwargs)


def _cmd_enumerate(args) -> int:
    params = _params(args)
    census = enumerate_colorings(params, budget=args.budget,
                                 journal=args.journal, jobs=args.jobs,
                                 engine=args.engine)
    for order in sorted(census.counts):
        print(f"{order} {census.counts[order]}")
    print(f"longest {census.longest} tests {census.tests} "
          f"complete {int(census.complete)}")
    if args.out:
        write_census(args.out, census)
    return 0


def _cmd_connect(args) -> int:
    params = _params(args)
    seeds = []
    for rec in read_records(args.seeds):
        c = record_coloring(rec)
        if c.order != params.s:
            raise FormatError(
                f"seed order {c.order} does not match s={params.s}")
        seeds.append(Signature(params.s, c.colors))
    store = component_search(seeds, params, threshold=args.threshold)
    counts = store.status_counts()
    for status in ("extensible", "not", "aborted"):
        print(f"{status} {counts.get(status, 0)}")
    print(f"tests {store.total_tests()}")
    store.save(args.out)
    return 0


def _cmd_cyclic(args) -> int:
    from .cyclic import CyclicSearchConfig, cyclic_local_search

    seeds = [record_coloring(r) for r in read_records(args.seeds)]
    cfg = CyclicSearchConfig(
        args.k, args.j, l_min=args.lmin_fixed, fixed_l_min=args.lmin_fixed
        is not None, time_budget=args.budget,
        max_processed=args.max_processed, rng_seed=args.rng_seed)
    result = cyclic_local_search(seeds, cfg)
    out = []
    for order in sorted(result.colorings, reverse=True):
        values = result.colorings[order]
        print(f"{order} {len(values)}")
        out.extend(DistanceColoring.complete(order, v) for v in values)
    s = result.stats
    print(f"processed {s.processed} tested {s.tested} classes {s.classes}")
    if args.out:
        write_records(args.out, out)
    return 0


def _cmd_construct(args) -> int:
    from . import constructors as con

    claim = args.claim or (None, None)
    if args.kind in ("paley", "degenerate") and args.n is None:
        raise FormatError(f"construct {args.kind} needs --n")
    if args.kind in ("block", "quadruple") and args.input is None:
        raise FormatError(f"construct {args.kind} needs --input")
    if args.kind == "paley":
        colorings = [con.paley(args.n)]
    elif args.kind == "degenerate":
        from sympy import isprime

        if args.generators:
            gens = tuple(int(g) for g in args.generators.split(","))
            colorings = con.degenerate_quotient(args.n, gens)
        elif isprime(args.n):
            colorings = con.degenerate_prime(args.n, q=args.q)
        elif args.n % 2 == 0 and isprime(args.n // 2):
            colorings = con.degenerate_2p(args.n // 2, q=args.q)
        else:
            raise FormatError(f"no degenerate family at order {args.n}")
    elif args.kind == "block":
        colorings = [con.block_double(record_coloring(r), diag=args.diag)
                     for r in read_records(args.input)]
    else:
        if args.k is None or args.j is None:
            raise FormatError("construct quadruple needs --k and --j")
        source = record_coloring(read_records(args.input)[0])
        colorings = con.quadruple_candidates(
            source, args.k, args.j, budget=args.budget)
    certs = [to_certificate(c, k=claim[0], j=claim[1],
                            label=f"{args.kind}-{c.order}-{i}")
             for i, c in enumerate(colorings)]
    for cert in certs:
        print(f"order {cert.order} set size {len(cert.connection_set)}")
    write_records(args.out, certs)
    return 0


def _cmd_verify(args) -> int:
    verdicts = []
    for path in args.files:
        for rec in read_records(path):
            if isinstance(rec, Certificate) and args.k is None:
                v = verify_certificate(rec)
            else:
                if args.k is None or args.j is None:
                    raise FormatError(
                        "record carries no (k, j) claim, pass --k and --j")
                label = rec.label if isinstance(rec, Certificate) else ""
                v = verify_coloring(record_coloring(rec), args.k, args.j,
                                    label=label)
            verdicts.append(v)
    if args.json:
        print(json.dumps({"verdicts": [v.to_dict() for v in verdicts]},
                         indent=1))
    else:
        for v in verdicts:
            word = "PASS" if v.passes else "FAIL"
            print(f"{word} order {v.order} ({v.k},{v.j}) "
                  f"cliques {v.clique0}/{v.clique1} {v.seconds:.1f}s "
                  f"{v.label}".rstrip())
    return 0 if all(v.passes for v in verdicts) else 1


def _cmd_stats(args) -> int:
    db = ColoringDatabase(args.file, reflect_colors=args.reflect)
    stats = db.stats()
    orders = sorted(set(stats["raw"]) | set(stats["canonical"]))
    for order in orders:
        print(f"{order} raw {stats['raw'].get(order, 0)} "
              f"canonical {stats['canonical'].get(order, 0)}")
    return 0


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(
        prog="ramseykit",
        description="search and verification for cyclic Ramsey colorings")
    sub = parser.add_subparsers(dest="command", required=True)

    p = sub.add_parser("enumerate", help="full census of valid colorings")
    p.add_argument("--k", type=int, required=True)
    p.add_argument("--j", type=int, required=True)
    p.add_argument("--s", type=int, required=True)
    p.add_argument("--d", type=int, required=True)
    p.add_argument("--threshold", type=int, default=None)
    p.add_argument("--jobs", type=int, default=1)
    p.add_argument("--budget", type=int, default=None)
    p.add_argument("--journal", default=None)
    p.add_argument("--engine", choices=("auto", "python", "jit"),
                   default="auto")
    p.add_argument("--out", default=None)
    p.set_defaults(func=_cmd_enumerate)

    p = sub.add_parser("connect", help="signature component search")
    p.add_argument("--k", type=int, required=True)
    p.add_argument("--j", type=int, required=True)
    p.add_argument("--s", type=int, required=True)
    p.add_argument("--d", type=int, required=True)
    p.add_argument("--threshold", type=int, default=None)
    p.add_argument("--seeds", required=True)
    p.add_argument("--out", required=True)
    p.set_defaults(func=_cmd_connect)

    p = sub.add_parser("cyclic", help="local search on symmetric masks")
    p.add_argument("--k", type=int, required=True)
    p.add_argument("--j", type=int, required=True)
    p.add_argument("--seeds", required=True)
    p.add_argument("--lmin-fixed", type=int, default=None)
    p.add_argument("--budget", type=float, default=None)
    p.add_argument("--max-processed", type=int, default=None)
    p.add_argument("--rng-seed", type=int, default=0)
    p.add_argument("--out", default=None)
    p.set_defaults(func=_cmd_cyclic)

    p = sub.add_parser("construct", help="algebraic coloring families")
    p.add_argument("kind",
                   choices=("paley", "degenerate", "block", "quadruple"))
    p.add_argument("--n", type=int, default=None)
    p.add_argument("--q", type=int, default=None)
    p.add_argument("--generators", default=None)
    p.add_argument("--input", default=None)
    p.add_argument("--diag", type=int, choices=(0, 1), default=1)
    p.add_argument("--k", type=int, default=None)
    p.add_argument("--j", type=int, default=None)
    p.add_argument("--budget", type=int, default=None)
    p.add_argument("--claim", type=int, nargs=2, default=None,
                   metavar=("K", "J"))
    p.add_argument("--out", required=True)
    p.set_defaults(func=_cmd_construct)

    p = sub.add_parser("verify", help="reference-check records")
    p.add_argument("files", nargs="+")
    p.add_argument("--k", type=int, default=None)
    p.add_argument("--j", type=int, default=None)
    p.add_argument("--json", action="store_true")
    p.set_defaults(func=_cmd_verify)

    p = sub.add_parser("stats", help="database per-order counts")
    p.add_argument("file")
    p.add_argument("--reflect", action="store_true")
    p.set_defaults(func=_cmd_stats)
    return parser


def main(argv=None) -> int:
    args = build_parser().parse_args(argv)
    try:
        return args.func(args)
    except (FormatError, OSError, ValueError) as exc:
        print(f"error: {exc}", file=sys.stderr)
        return 2
    except Exception as exc:
        print(f"internal error: {exc!r}", file=sys.stderr)
        return 3


if __name__ == "__main__":
    sys.exit(main())
