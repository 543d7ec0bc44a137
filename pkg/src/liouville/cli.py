"""Command-line entry point: ``liouville <subcommand> ...``.

Exit status is 0 on success, 1 when a certificate fails verification (the
certificate is still written) and 2 on usage errors.
"""

from __future__ import annotations

import argparse
import csv
import io
import json
import logging
import os
import sys
from fractions import Fraction

from . import combsearch
from .action import CoFolnerCertificate, PointSet, recheck
from .cofolner import build_cofolner, restrict_to_F
from .dyadic import parse
from .errors import BudgetExceeded, LiouvilleError
from .plgroup import IDENTITY, ProbMeasure, T, default_measure, invert, measure_from_json
from .textio import dumps, fraction_to_text
from .walks import simulate

OUT_DIR_ENV = "LIOUVILLE_OUT_DIR"

log = logging.getLogger("liouville")


class UsageError(Exception):
    pass


def _fraction(text: str) -> Fraction:
    try:
        return Fraction(text)
    except (ValueError, ZeroDivisionError):
        raise argparse.ArgumentTypeError(f"expected p/q, got {text!r}")


def _support(text: str) -> list:
    try:
        return [parse(t) for t in text.split(",") if t.strip()]
    except ValueError as e:
        raise argparse.ArgumentTypeError(str(e))


def _ints(text: str) -> list[int]:
    try:
        return [int(t) for t in text.split(",") if t.strip()]
    except ValueError:
        raise argparse.ArgumentTypeError(f"expected comma-separated integers, got {text!r}")


def _rows(text: str) -> list[tuple[int, ...]]:
    return [tuple(_ints(r)) for r in text.split(";") if r.strip()]


def _positive(name, value, lo=1):
    if value is not None and value < lo:
        raise UsageError(f"--{name} must be >= {lo}, got {value}")


def _emit(args, text: str, default_name: str):
    out = args.out
    if out is None and os.environ.get(OUT_DIR_ENV):
        out = os.path.join(os.environ[OUT_DIR_ENV], default_name)
    if out is None or out == "-":
        sys.stdout.write(text)
    else:
        with open(out, "w") as fh:
            fh.write(text)
        log.info("wrote %s", out)


def cmd_build_cofolner(args) -> int:
    if args.n not in (1, 2):
        raise UsageError(f"--n must be 1 or 2, got {args.n}")
    if args.epsilon <= 0:
        raise UsageError("--epsilon must be positive")
    if not args.support:
        raise UsageError("--support must list at least one point")
    _positive("L", args.L)
    _positive("N", args.N)
    cert = build_cofolner(args.support, args.n, args.epsilon, L=args.L, N=args.N, r=args.r,
                          escalate=not args.no_escalate, max_steps=args.max_steps)
    if args.group == "F":
        cert = restrict_to_F(cert)
    _emit(args, dumps(cert.to_json()), "cofolner.json")
    return 0 if cert.verified else 1


def cmd_verify_cofolner(args) -> int:
    with open(args.certificate) as fh:
        claimed = CoFolnerCertificate.from_json(json.load(fh))
    cert = recheck(claimed)
    consistent = cert.achieved == claimed.achieved and cert.verified == claimed.verified
    report = {
        "epsilon": fraction_to_text(cert.epsilon),
        "achieved": fraction_to_text(cert.achieved),
        "claimed_achieved": fraction_to_text(claimed.achieved),
        "verified": cert.verified,
        "consistent": consistent,
        "size_E": len(cert.E),
        "size_F": len(cert.F),
    }
    _emit(args, dumps(report), "verify.json")
    return 0 if cert.verified and consistent else 1


def _objective(args):
    try:
        return combsearch.get_objective(args.objective, args.dim)
    except ValueError as e:
        raise UsageError(str(e))


def cmd_search(args) -> int:
    obj = _objective(args)
    _positive("B", args.B)
    _positive("k", args.k)
    rows = combsearch.row_pool(obj, args.B, diagonal=True) if args.diagonal else None
    if args.format == "csv":
        cells = combsearch.sweep(obj, range(1, args.B + 1), range(1, args.k + 1), rows=rows,
                                 workers=args.workers) if obj.id != "SEQUENCE" else \
            combsearch.sweep(obj, range(1, args.B + 1), range(3, args.k + 1),
                             workers=args.workers)
        buf = io.StringIO()
        w = csv.DictWriter(buf, fieldnames=["B", "k", "best_ratio"], lineterminator="\n")
        w.writeheader()
        w.writerows(cells)
        _emit(args, buf.getvalue(), "search.csv")
        return 0
    if args.method == "exhaustive":
        res = combsearch.exhaustive_search(obj, args.B, args.k, rows=rows, budget=args.budget,
                                           workers=args.workers)
    else:
        res = combsearch.anneal_search(obj, args.B, args.k, steps=args.steps, seed=args.seed)
    obj_json = res.to_json()
    obj_json["note"] = "maximum certified only within the stated bounds"
    _emit(args, dumps(obj_json), "search.json")
    return 0


def cmd_eval_objective(args) -> int:
    obj = _objective(args)
    if obj.id == "SEQUENCE":
        data = args.sequence or []
    else:
        data = args.rows or []
    value = obj(data, args.semantics)
    _emit(args, dumps({"objective": obj.name, "semantics": args.semantics,
                       "ratio": fraction_to_text(value)}), "objective.json")
    return 0


def _measure(name: str) -> ProbMeasure:
    if name == "lazy-T":
        return ProbMeasure(((IDENTITY, Fraction(1, 2)), (T, Fraction(1, 4)),
                            (invert(T), Fraction(1, 4))), symmetric=True,
                           description="1/2 id + 1/4 T + 1/4 T^-1")
    if name in ("F", "F_R"):
        return default_measure(name)
    with open(name) as fh:
        return measure_from_json(json.load(fh))


def cmd_simulate_walk(args) -> int:
    _positive("k", args.k, 0)
    _positive("trials", args.trials)
    mu = _measure(args.measure)
    dist = simulate(mu, PointSet(args.start), args.k, args.trials, args.seed,
                    workers=args.workers)
    _emit(args, dumps(dist.to_json()), "walk.json")
    return 0


def build_parser() -> argparse.ArgumentParser:
    p = argparse.ArgumentParser(prog="liouville", description=__doc__.splitlines()[0])
    p.add_argument("-v", "--verbose", action="store_true")
    sub = p.add_subparsers(dest="command", required=True)

    def common(sp):
        sp.add_argument("--out", help="output path ('-' for stdout)")
        sp.add_argument("--workers", type=int, default=os.cpu_count() or 1)
        sp.add_argument("--seed", type=int, default=0)

    b = sub.add_parser("build-cofolner", help="build and verify a co-Folner certificate")
    b.add_argument("--support", type=_support, required=True)
    b.add_argument("--n", type=int, default=2)
    b.add_argument("--epsilon", type=_fraction, required=True)
    b.add_argument("--L", type=int)
    b.add_argument("--N", type=int)
    b.add_argument("--r", type=_ints)
    b.add_argument("--max-steps", type=int, default=4)
    b.add_argument("--no-escalate", action="store_true")
    b.add_argument("--group", choices=["F_R", "F"], default="F_R")
    common(b)
    b.set_defaults(func=cmd_build_cofolner)

    v = sub.add_parser("verify-cofolner", help="re-verify a certificate file")
    v.add_argument("--certificate", required=True)
    common(v)
    v.set_defaults(func=cmd_verify_cofolner)

    s = sub.add_parser("search", help="search for high-ratio candidate sets")
    s.add_argument("--objective", choices=["pair3", "general", "chain", "sequence"],
                   required=True)
    s.add_argument("--dim", type=int, help="n for general, d for chain")
    s.add_argument("--B", type=int, required=True)
    s.add_argument("--k", type=int, required=True)
    s.add_argument("--method", choices=["exhaustive", "anneal"], default="exhaustive")
    s.add_argument("--steps", type=int, default=10_000)
    s.add_argument("--budget", type=int, default=5_000_000)
    s.add_argument("--diagonal", action="store_true", help="only constant rows (a, ..., a)")
    s.add_argument("--format", choices=["json", "csv"], default="json")
    common(s)
    s.set_defaults(func=cmd_search)

    e = sub.add_parser("eval-objective", help="evaluate an objective on given rows")
    e.add_argument("--objective", choices=["pair3", "general", "chain", "sequence"],
                   required=True)
    e.add_argument("--dim", type=int)
    e.add_argument("--rows", type=_rows, help="rows as '1,1,2;2,1,1'")
    e.add_argument("--sequence", type=_ints)
    e.add_argument("--semantics", choices=["weak", "matched"], default="weak")
    common(e)
    e.set_defaults(func=cmd_eval_objective)

    w = sub.add_parser("simulate-walk", help="sample the induced walk on point sets")
    w.add_argument("--measure", default="lazy-T",
                   help="lazy-T, F, F_R, or a measure JSON file")
    w.add_argument("--start", type=_support, required=True)
    w.add_argument("--k", type=int, required=True)
    w.add_argument("--trials", type=int, default=10_000)
    common(w)
    w.set_defaults(func=cmd_simulate_walk)
    return p


def main(argv=None) -> int:
    parser = build_parser()
    args = parser.parse_args(argv)
    logging.basicConfig(level=logging.INFO if args.verbose else logging.WARNING,
                        format="%(levelname)s %(name)s: %(message)s")
    try:
        return args.func(args)
    except UsageError as e:
        parser.print_usage(sys.stderr)
        print(f"{parser.prog}: error: {e}", file=sys.stderr)
        return 2
    except BudgetExceeded as e:
        print(f"{parser.prog}: budget exceeded: {e}", file=sys.stderr)
        return 2
    except LiouvilleError as e:
        print(f"{parser.prog}: error: {e}", file=sys.stderr)
        return 2


if __name__ == "__main__":
    sys.exit(main())
