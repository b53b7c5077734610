"""Command-line front end.

Subcommands: enumerate, map, count, moments, transform, verify.  Human
output is meant for eyes; ``--json`` emits one JSON object per line and is
byte-deterministic.  Exit codes: 0 success, 1 verification failure, 2 usage
error, 3 domain precondition failure, 4 normalization failure.

Sizes are guarded by a limit (default 12) to prevent accidental
combinatorial explosion; override with ``--limit`` or the NCLAB_LIMIT
environment variable.
"""

from __future__ import annotations

import argparse
import json
import os
import re
import sys
from fractions import Fraction

from . import linked, partitions, polynomials, series, verify

EXIT_OK = 0
EXIT_VERIFY_FAILED = 1
EXIT_USAGE = 2
EXIT_DOMAIN = 3
EXIT_NORMALIZATION = 4

DEFAULT_LIMIT = 12

_RATIONAL_RE = re.compile(r"[+-]?\d+(?:/\d+)?\Z")


class UsageError(Exception):
    pass


def _parse_rational(text: str) -> Fraction:
    if not _RATIONAL_RE.fullmatch(text):
        raise UsageError(f"cannot parse rational {text!r} (use p or p/q, no decimals)")
    return Fraction(text)


def _parse_rational_list(text: str) -> list[Fraction]:
    return [_parse_rational(part) for part in text.split(",")]


def _emit_json(obj) -> None:
    print(json.dumps(obj, separators=(",", ":")))


def _resolve_limit(flag_value: int | None) -> int:
    if flag_value is not None:
        return flag_value
    env = os.environ.get("NCLAB_LIMIT")
    if env is not None:
        try:
            return int(env)
        except ValueError:
            raise UsageError(f"NCLAB_LIMIT={env!r} is not an integer") from None
    return DEFAULT_LIMIT


def _check_size(n: int, limit: int, what: str = "n") -> None:
    if n < 1:
        raise UsageError(f"{what} must be at least 1")
    if n > limit:
        raise UsageError(f"{what}={n} exceeds the size limit {limit} "
                         f"(raise it with --limit or NCLAB_LIMIT)")


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(
        prog="nclab",
        description="Non-crossing (linked) partition combinatorics and the "
        "exact moment-transform calculus built on them.",
    )
    parser.add_argument(
        "--limit", type=int, default=None,
        help=f"size guard for all n arguments (default {DEFAULT_LIMIT}; "
        "env NCLAB_LIMIT)",
    )
    sub = parser.add_subparsers(dest="command", required=True)

    p = sub.add_parser("enumerate", help="list all objects of a given size")
    p.add_argument("kind", choices=["nc", "ncl"],
                   help="nc: non-crossing partitions; ncl: non-crossing linked")
    p.add_argument("n", type=int)
    p.add_argument("--json", action="store_true")

    p = sub.add_parser("map", help="apply the linked-partition bijection")
    p.add_argument("direction", choices=["to-pair", "from-pair"])
    p.add_argument("objects", nargs="+", metavar="OBJECT",
                   help="to-pair: one linked partition; from-pair: alpha beta")
    p.add_argument("--details", action="store_true",
                   help="also print the unlinking and the block-cycle permutation")
    p.add_argument("--json", action="store_true")

    p = sub.add_parser("count", help="exact counts")
    p.add_argument("kind",
                   choices=["nc", "ncl", "coloured", "below-ll", "above-ll"])
    p.add_argument("argument",
                   help="a size for nc/ncl/coloured, a partition for the rest")
    p.add_argument("--json", action="store_true")

    p = sub.add_parser("moments", help="moment sequences and moment polynomials")
    p.add_argument("--t", dest="t_coeffs", metavar="LIST",
                   help="reciprocal-s coefficients t0,t1,... (t0 must be 1; "
                   "missing tail coefficients are taken as 0)")
    p.add_argument("--cumulants", metavar="LIST",
                   help="free cumulants k1,k2,... (missing tail taken as 0)")
    p.add_argument("--symbolic", type=int, metavar="N",
                   help="print the N-th moment polynomial in t1, t2, ...")
    p.add_argument("--n", dest="n_max", type=int, help="number of moments")
    p.add_argument("--json", action="store_true")

    p = sub.add_parser("transform", help="convert a moment sequence")
    p.add_argument("--moments", required=True, metavar="LIST")
    p.add_argument("--to", required=True, choices=["s", "t", "r"])
    p.add_argument("--order", type=int, default=None)
    p.add_argument("--json", action="store_true")

    p = sub.add_parser("verify", help="run the exhaustive identity suites")
    p.add_argument("suite", choices=["bijection", "counts", "moments", "all"])
    p.add_argument("n", type=int, help="largest ground-set size to check")
    p.add_argument("--json", action="store_true")

    return parser


def _cmd_enumerate(args, limit: int) -> int:
    _check_size(args.n, limit)
    gen = partitions.enumerate_nc(args.n) if args.kind == "nc" \
        else linked.enumerate_ncl(args.n)
    count = 0
    for obj in gen:
        count += 1
        if args.json:
            _emit_json(obj.to_json_dict())
        else:
            print(obj.to_text())
    if args.json:
        _emit_json({"count": count})
    else:
        print(f"count={count}")
    return EXIT_OK


def _cmd_map(args, limit: int) -> int:
    if args.direction == "to-pair":
        if len(args.objects) != 1:
            raise UsageError("to-pair takes exactly one linked partition")
        p = linked.LinkedPartition.from_text(args.objects[0])
        _check_size(p.n, limit)
        beta = linked.generated_partition(p)
        perm = partitions.block_cycles(beta)
        unlinking = linked.unlink(p)
        alpha = partitions.act(perm.inverse(), unlinking)
        if args.json:
            record = {}
            if args.details:
                record["unlinking"] = unlinking.to_json_dict()
                record["permutation"] = perm.to_json_dict()
            record["alpha"] = alpha.to_json_dict()
            record["beta"] = beta.to_json_dict()
            _emit_json(record)
        else:
            if args.details:
                print(f"unlinking: {unlinking.to_text()}")
                print(f"permutation: {perm.to_cycle_text()}")
                print(f"alpha: {alpha.to_text()}")
                print(f"beta: {beta.to_text()}")
            else:
                print(alpha.to_text())
                print(beta.to_text())
        return EXIT_OK

    if len(args.objects) != 2:
        raise UsageError("from-pair takes exactly two partitions: alpha beta")
    a = partitions.Partition.from_text(args.objects[0])
    b = partitions.Partition.from_text(args.objects[1])
    _check_size(max(a.n, b.n), limit)
    p = linked.from_pair(a, b)
    if args.json:
        record = {}
        if args.details:
            perm = partitions.block_cycles(b)
            record["permutation"] = perm.to_json_dict()
            record["unlinking"] = linked.unlink(p).to_json_dict()
        record.update(p.to_json_dict())
        _emit_json(record)
    else:
        if args.details:
            perm = partitions.block_cycles(b)
            print(f"permutation: {perm.to_cycle_text()}")
            print(f"unlinking: {linked.unlink(p).to_text()}")
            print(f"linked: {p.to_text()}")
        else:
            print(p.to_text())
    return EXIT_OK


def _cmd_count(args, limit: int) -> int:
    if args.kind in ("nc", "ncl", "coloured"):
        try:
            n = int(args.argument)
        except ValueError:
            raise UsageError(f"{args.kind} needs an integer size, "
                             f"got {args.argument!r}") from None
        _check_size(n, limit)
        if args.kind == "nc":
            value = partitions.catalan(n)
        elif args.kind == "ncl":
            value = linked.ncl_count(n)
        else:
            value = linked.coloured_count(n)
    else:
        p = partitions.Partition.from_text(args.argument)
        _check_size(p.n, limit)
        if args.kind == "below-ll":
            value = partitions.count_endpoint_refinements(p)
        else:
            value = partitions.count_endpoint_coarsenings(p)
    if args.json:
        _emit_json({"count": value})
    else:
        print(value)
    return EXIT_OK


def _cmd_moments(args, limit: int) -> int:
    sources = [s for s in (args.t_coeffs, args.cumulants) if s is not None]
    if args.symbolic is not None:
        if sources or args.n_max is not None:
            raise UsageError("--symbolic excludes --t/--cumulants/--n")
        _check_size(args.symbolic, limit)
        poly = polynomials.moment_poly_inner_outer(args.symbolic)
        if args.json:
            _emit_json(poly.to_json_dict())
        else:
            print(poly.to_text())
        return EXIT_OK
    if len(sources) != 1:
        raise UsageError("pass exactly one of --t, --cumulants, --symbolic")
    if args.n_max is None:
        raise UsageError("--n is required with --t/--cumulants")
    _check_size(args.n_max, limit)
    if args.t_coeffs is not None:
        coeffs = _parse_rational_list(args.t_coeffs)
        coeffs += [Fraction(0)] * (args.n_max - len(coeffs))
        m = series.moments_from_t(coeffs, args.n_max)
    else:
        coeffs = _parse_rational_list(args.cumulants)
        coeffs += [Fraction(0)] * (args.n_max - len(coeffs))
        m = series.moments_from_cumulants(coeffs, args.n_max)
    if args.json:
        _emit_json({"moments": [str(v) for v in m.values]})
    else:
        print(str(m))
    return EXIT_OK


def _cmd_transform(args, limit: int) -> int:
    values = _parse_rational_list(args.moments)
    _check_size(len(values), limit, "depth")
    m = series.MomentSequence.of(values)
    if args.to == "r":
        kappa = series.cumulants_from_moments(m)
        if args.order is not None:
            if not 0 <= args.order <= m.depth:
                raise UsageError(f"--order must be 0..{m.depth} for r")
            kappa = kappa[: args.order]
        if args.json:
            _emit_json({"order": len(kappa),
                        "coeffs": ["0"] + [str(k) for k in kappa]})
        else:
            print(", ".join(str(k) for k in kappa))
        return EXIT_OK
    s = series.s_transform(m) if args.to == "s" else series.t_transform(m)
    if args.order is not None:
        if not 0 <= args.order <= s.order:
            raise UsageError(f"--order must be 0..{s.order} "
                             f"for depth {m.depth}")
        s = s.truncate(args.order)
    if args.json:
        _emit_json(s.to_json_dict())
    else:
        print(str(s))
    return EXIT_OK


def _cmd_verify(args, limit: int) -> int:
    _check_size(args.n, limit)
    results = verify.run_suite(args.suite, args.n)
    failed = 0
    for r in results:
        if not r.passed:
            failed += 1
        if args.json:
            record = {
                "suite": r.suite,
                "identity": r.identity,
                "range": r.scope,
                "checked": r.checked,
                "pass": r.passed,
            }
            if r.detail:
                record["detail"] = r.detail
            if r.failures:
                record["failures"] = r.failures
            _emit_json(record)
        else:
            line = (f"{'PASS' if r.passed else 'FAIL'} {r.suite}.{r.identity} "
                    f"{r.scope} checked={r.checked}")
            if r.detail:
                line += f" {r.detail}"
            print(line)
            for msg in r.failures:
                print(f"    {msg}")
    if args.json:
        _emit_json({"summary": {"checks": len(results),
                                "passed": len(results) - failed,
                                "failed": failed}})
    else:
        print(f"summary: {len(results)} checks, {len(results) - failed} passed")
    return EXIT_VERIFY_FAILED if failed else EXIT_OK


_DISPATCH = {
    "enumerate": _cmd_enumerate,
    "map": _cmd_map,
    "count": _cmd_count,
    "moments": _cmd_moments,
    "transform": _cmd_transform,
    "verify": _cmd_verify,
}


def main(argv: list[str] | None = None) -> int:
    parser = build_parser()
    args = parser.parse_args(argv)
    try:
        limit = _resolve_limit(args.limit)
        return _DISPATCH[args.command](args, limit)
    except UsageError as exc:
        print(f"error: {exc}", file=sys.stderr)
        return EXIT_USAGE
    except partitions.ParseError as exc:
        print(f"error: {exc}", file=sys.stderr)
        return EXIT_USAGE
    except series.NormalizationError as exc:
        print(f"error: {exc}", file=sys.stderr)
        return EXIT_NORMALIZATION
    except ValueError as exc:
        print(f"error: {exc}", file=sys.stderr)
        return EXIT_DOMAIN


def run() -> None:  # console-script entry point
    sys.exit(main())


if __name__ == "__main__":
    sys.exit(main())
