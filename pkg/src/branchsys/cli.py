"""Command-line interface.

One command per invocation; reports go to stdout as deterministic JSON,
sample tables go to ``-o`` (or stdout) as TSV.  Exit codes separate
"computed and the check failed" (1) from "could not compute" (2):

    0  success / verification passed
    1  verification failed (relations, duality, square identity,
       condition (K) violation, invalid system)
    2  input error (missing file, malformed JSON, schema violation,
       unusable arguments)
"""

from __future__ import annotations

import argparse
import sys
from fractions import Fraction
from pathlib import Path

from . import serialize
from .branching import build_default, nonsingular_map, validate_system
from .errors import BranchSysError, InvalidSystemError, SchemaError
from .graphs import check_condition_k, parse_graph
from .intervals import IntervalSet, as_rational
from .ppoly import PPoly
from .representation import apply_word, parse_word, verify_relations
from .transfer import TransferOperator, iterate, verify_duality, verify_square_identity

FAIL, BAD_INPUT = 1, 2


def _read(path: str) -> str:
    return Path(path).read_text(encoding="utf-8")


def _emit(obj) -> None:
    sys.stdout.write(serialize.dumps(obj) + "\n")


def _open_out(path: str | None):
    if path is None or path == "-":
        return sys.stdout, False
    return open(path, "w", encoding="utf-8"), True


def _sample_grid(region: IntervalSet, count: int) -> list[float]:
    """Deterministic midpoint grid over a region, proportional per part;
    midpoints avoid the rational breakpoints every object here uses."""
    total = region.measure()
    if total == 0 or count <= 0:
        return []
    xs: list[float] = []
    remaining = count
    parts = list(region)
    for i, part in enumerate(parts):
        if i == len(parts) - 1:
            n = remaining
        else:
            n = max(1, round(count * part.length / total))
            n = min(n, remaining - (len(parts) - 1 - i))
        remaining -= n
        flo, flen = float(part.lo), float(part.length)
        xs.extend(flo + flen * (k + 0.5) / n for k in range(n))
    return xs


def _parse_interval_pair(text: str) -> IntervalSet:
    bits = text.split(",")
    if len(bits) != 2:
        raise SchemaError(f"--set expects 'lo,hi', got {text!r}")
    lo, hi = (as_rational(b.strip()) for b in bits)
    if lo >= hi:
        raise SchemaError(f"--set: empty interval [{lo}, {hi})")
    return IntervalSet.of((lo, hi))


# -- command handlers ---------------------------------------------------------


def _cmd_check_k(args) -> int:
    report = check_condition_k(parse_graph(_read(args.graph)))
    _emit(
        {
            "satisfied": report.satisfied,
            "per_vertex": report.per_vertex,
            "witnesses": {
                v: [list(a), list(b)] for v, (a, b) in sorted(report.witnesses.items())
            },
        }
    )
    return 0 if report.satisfied else FAIL


def _cmd_build(args) -> int:
    bs = build_default(parse_graph(_read(args.graph)))
    text = serialize.save_system(bs)
    if args.output:
        Path(args.output).write_text(text + "\n", encoding="utf-8")
    else:
        sys.stdout.write(text + "\n")
    return 0


def _cmd_validate(args) -> int:
    violations = validate_system(serialize.load_system(_read(args.system)))
    _emit(
        {
            "valid": not violations,
            "violations": [v.to_obj() for v in violations],
        }
    )
    return 0 if not violations else FAIL


def _cmd_verify(args) -> int:
    bs = serialize.load_system(_read(args.system))
    report = verify_relations(
        bs, trials=args.trials, degree=args.degree, tol=args.tol, seed=args.seed
    )
    _emit(report.to_obj())
    return 0 if report.passed else FAIL


def _cmd_apply(args) -> int:
    bs = serialize.load_system(_read(args.system))
    phi = serialize.load_ppoly(_read(args.func))
    word = parse_word(args.word)
    result = apply_word(bs, word, phi)
    xs = _sample_grid(bs.X, args.samples)
    stream, owned = _open_out(args.output)
    try:
        serialize.write_samples_tsv(stream, xs, [result(x) for x in xs])
    finally:
        if owned:
            stream.close()
    return 0


def _cmd_pf(args) -> int:
    bs = serialize.load_system(_read(args.system))
    if args.func:
        psi = serialize.load_ppoly(_read(args.func))
    else:
        # default start density: normalized indicator of the edge intervals
        union_r = bs.union_R()
        psi = (1.0 / float(union_r.measure())) * PPoly.indicator(union_r)
    op = TransferOperator(nonsingular_map(bs))
    traj = iterate(op, psi, args.iters)
    xs = _sample_grid(bs.X, args.samples)
    stream, owned = _open_out(args.output)
    try:
        stream.write("step\tx\tre\tim\ttotal_mass\ty_mass\n")
        for step, fn in enumerate(traj.functions):
            mass = traj.masses[step]
            y_mass = traj.identity_region_masses[step]
            for x in xs:
                v = fn(x)
                stream.write(
                    "%d\t%.17g\t%.17g\t%.17g\t%.17g\t%.17g\n"
                    % (step, x, v.real, v.imag, mass.real, y_mass.real)
                )
    finally:
        if owned:
            stream.close()
    _emit(
        {
            "steps": args.iters,
            "total_mass": [m.real for m in traj.masses],
            "identity_region_mass": [m.real for m in traj.identity_region_masses],
        }
    )
    return 0


def _cmd_thm44(args) -> int:
    bs = serialize.load_system(_read(args.system))
    phi = serialize.load_ppoly(_read(args.func))
    result = verify_square_identity(bs, phi, tol=args.tol)
    _emit(result.to_obj())
    return 0 if result.passed else FAIL


def _cmd_duality(args) -> int:
    bs = serialize.load_system(_read(args.system))
    psi = serialize.load_ppoly(_read(args.func))
    region = _parse_interval_pair(args.set)
    op = TransferOperator(nonsingular_map(bs))
    result = verify_duality(op, psi, region, tol=args.tol)
    _emit(result.to_obj())
    return 0 if result.passed else FAIL


def _cmd_export(args) -> int:
    bs = serialize.load_system(_read(args.system))
    ns = nonsingular_map(bs)
    stream, owned = _open_out(args.output)
    try:
        stream.write("record\tid\tx0\tx1\n")
        for e in bs.graph.edges:
            for part in bs.R[e.id]:
                stream.write("R\t%s\t%.17g\t%.17g\n" % (e.id, part.lo, part.hi))
        for v in bs.graph.vertices:
            for part in bs.D[v]:
                stream.write("D\t%s\t%.17g\t%.17g\n" % (v, part.lo, part.hi))
        for x in _sample_grid(bs.X, args.samples):
            fx = ns.map_point(Fraction(x))
            stream.write("F\t\t%.17g\t%.17g\n" % (x, float(fx)))
    finally:
        if owned:
            stream.close()
    return 0


def _build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(
        prog="branchsys",
        description="Branching systems, graph-algebra generator actions, "
        "and transfer operators on the line.",
    )
    sub = parser.add_subparsers(dest="command", required=True)

    p = sub.add_parser("check-k", help="decide condition (K) for a graph")
    p.add_argument("graph")
    p.set_defaults(handler=_cmd_check_k)

    p = sub.add_parser("build", help="build the default branching system")
    p.add_argument("graph")
    p.add_argument("-o", "--output")
    p.set_defaults(handler=_cmd_build)

    p = sub.add_parser("validate", help="check the branching-system axioms")
    p.add_argument("system")
    p.set_defaults(handler=_cmd_validate)

    p = sub.add_parser("verify", help="run the Cuntz-Krieger relation suite")
    p.add_argument("system")
    p.add_argument("--trials", type=int, default=20)
    p.add_argument("--degree", type=int, default=3)
    p.add_argument("--tol", type=float, default=1e-9)
    p.add_argument("--seed", type=int, default=42)
    p.set_defaults(handler=_cmd_verify)

    p = sub.add_parser("apply", help="apply an operator word to a function")
    p.add_argument("system")
    p.add_argument("--word", required=True)
    p.add_argument("--func", required=True)
    p.add_argument("--samples", type=int, default=200)
    p.add_argument("-o", "--output")
    p.set_defaults(handler=_cmd_apply)

    p = sub.add_parser("pf", help="iterate the transfer operator")
    p.add_argument("system")
    p.add_argument("--func", help="start density (default: normalized indicator of the edge intervals)")
    p.add_argument("--iters", type=int, default=1)
    p.add_argument("--samples", type=int, default=200)
    p.add_argument("-o", "--output")
    p.set_defaults(handler=_cmd_pf)

    p = sub.add_parser(
        "thm44", help="verify the square identity for the transfer operator"
    )
    p.add_argument("system")
    p.add_argument("--func", required=True)
    p.add_argument("--tol", type=float, default=1e-9)
    p.set_defaults(handler=_cmd_thm44)

    p = sub.add_parser("duality", help="verify the transfer duality on a set")
    p.add_argument("system")
    p.add_argument("--func", required=True)
    p.add_argument("--set", required=True, help="interval as 'lo,hi' rationals")
    p.add_argument("--tol", type=float, default=1e-9)
    p.set_defaults(handler=_cmd_duality)

    p = sub.add_parser("export", help="dump the interval layout and F samples")
    p.add_argument("system")
    p.add_argument("--samples", type=int, default=200)
    p.add_argument("-o", "--output")
    p.set_defaults(handler=_cmd_export)

    return parser


def main(argv=None) -> int:
    parser = _build_parser()
    args = parser.parse_args(argv)
    try:
        return args.handler(args)
    except InvalidSystemError as exc:
        print(f"error: {exc}", file=sys.stderr)
        for v in exc.violations:
            print(f"  item {v.item}: {v.detail} ({', '.join(v.ids)})", file=sys.stderr)
        return BAD_INPUT
    except (BranchSysError, OSError, ValueError, KeyError) as exc:
        print(f"error: {exc}", file=sys.stderr)
        return BAD_INPUT


if __name__ == "__main__":
    sys.exit(main())
