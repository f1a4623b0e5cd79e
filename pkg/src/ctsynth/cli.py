"""Command-line interface.

Exit codes: 0 success, 1 usage error, 2 synthesis failure, 3 verification failure.
The environment variable CTSYNTH_PRECISION sets the default verification
precision in bits.
"""

from __future__ import annotations

import argparse
import json
import os
import random
import sys
from fractions import Fraction

import mpmath

from .angle import AngleSyntaxError, parse_angle
from .approx import Limits, SynthesisError, approximate_su2, synthesize_rz
from .bench import benchmark, write_jsonl, write_table
from .exact import count_distinct_normal_forms, evaluate_word, parse_word
from .verify import op_norm_error, verification_precision

EXIT_OK, EXIT_USAGE, EXIT_SYNTH, EXIT_VERIFY = 0, 1, 2, 3


class UsageError(Exception):
    pass


class _Parser(argparse.ArgumentParser):
    def error(self, message):
        self.print_usage(sys.stderr)
        print(f"{self.prog}: error: {message}", file=sys.stderr)
        raise SystemExit(EXIT_USAGE)


def _epsilon(text: str, upper: Fraction | None = Fraction(1, 2)) -> Fraction:
    try:
        eps = Fraction(text.strip())
    except (ValueError, ZeroDivisionError):
        raise UsageError(f"cannot parse epsilon {text!r}") from None
    if eps <= 0 or (upper is not None and eps > upper):
        bound = f"(0, {upper}]" if upper is not None else "(0, ∞)"
        raise UsageError(f"epsilon must lie in {bound}, got {text}")
    return eps


def _angle(text: str):
    try:
        return parse_angle(text)
    except AngleSyntaxError as e:
        raise UsageError(str(e)) from None


def _precision(arg: int | None, k: int) -> int:
    if arg is not None:
        return arg
    env = os.environ.get("CTSYNTH_PRECISION")
    if env:
        try:
            return max(int(env), verification_precision(k))
        except ValueError:
            raise UsageError(f"CTSYNTH_PRECISION must be an integer, got {env!r}") from None
    return verification_precision(k)


def _limits(args) -> Limits:
    return Limits(max_candidates_per_k=args.max_candidates, workers=max(1, args.parallel))


def _add_search_flags(p):
    p.add_argument("--seed", type=int, default=None, help="random seed (default: fresh entropy)")
    p.add_argument("--parallel", type=int, default=1, metavar="N", help="worker processes")
    p.add_argument("--max-candidates", type=int, default=None, metavar="N",
                   help="candidate budget per k before escalating (default 64·k)")


def cmd_synth(args) -> int:
    theta = _angle(args.theta)
    eps = _epsilon(args.epsilon)
    rng = random.Random(args.seed)
    try:
        res = synthesize_rz(theta, eps, rng, _limits(args))
    except SynthesisError as e:
        print(f"synthesis failed: {e}", file=sys.stderr)
        if args.json:
            print(json.dumps(e.stats.record()))
        return EXIT_SYNTH
    print(res.word.render())
    status = EXIT_OK
    if args.verify:
        u = evaluate_word(res.word)
        bound = op_norm_error(u, theta, _precision(args.precision, u.k))
        ok = u == res.unitary and bound.surely_le(eps)
        print(f"verified: {'yes' if ok else 'NO'}  error ≤ {mpmath.nstr(bound.to_mpf(), 6)}")
        status = EXIT_OK if ok else EXIT_VERIFY
    if args.stats:
        s = res.stats
        print(f"k = {s.k} (initial {s.k_initial}, escalations {s.escalations})")
        print(f"T-count = {s.t_count}")
        print(f"error bound = {mpmath.nstr(s.error_bound.to_mpf(), 6)}")
        print(f"candidates = {s.candidates_tried}, norm-equation failures = {s.norm_failures}")
        print(f"time = {s.wall_time:.3f} s")
    if args.json:
        rec = res.stats.record()
        rec["word"] = res.word.render()
        print(json.dumps(rec))
    return status


def _complex_entries(text: str) -> list[list]:
    parts = [p for p in text.replace(",", " ").replace(";", " ").split() if p]
    if len(parts) != 4:
        raise UsageError("--matrix needs 4 complex entries (row-major)")
    vals = []
    with mpmath.workprec(256):
        for p in parts:
            try:
                vals.append(mpmath.mpmathify(p.replace("i", "j")))
            except (ValueError, TypeError):
                raise UsageError(f"cannot parse matrix entry {p!r}") from None
    return [vals[:2], vals[2:]]


def cmd_su2(args) -> int:
    m = _complex_entries(args.matrix)
    eps = _epsilon(args.epsilon)
    try:
        res = approximate_su2(m, eps, random.Random(args.seed), _limits(args))
    except ValueError as e:
        raise UsageError(str(e)) from None
    except SynthesisError as e:
        print(f"synthesis failed: {e}", file=sys.stderr)
        return EXIT_SYNTH
    print(res.word.render())
    ok = res.error_bound.surely_le(eps)
    print(f"T-count = {res.t_count}")
    print(f"verified: {'yes' if ok else 'NO'}  error ≤ {mpmath.nstr(res.error_bound.to_mpf(), 6)}")
    return EXIT_OK if ok else EXIT_VERIFY


def cmd_bench(args) -> int:
    theta = _angle(args.theta)
    eps_list = [_epsilon(e) for e in args.epsilons.replace(",", " ").split()]
    rows = benchmark(theta, eps_list, args.runs, random.Random(args.seed), _limits(args))
    if args.format == "jsonl":
        write_jsonl(rows, sys.stdout)
    else:
        write_table(rows, sys.stdout, "\t" if args.format == "tsv" else ",")
    for r in rows:
        if r.failures:
            print(f"epsilon {r.epsilon}: {r.failures} failed runs ({r.error})", file=sys.stderr)
    return EXIT_SYNTH if any(r.failures for r in rows) else EXIT_OK


def cmd_verify(args) -> int:
    try:
        word = parse_word(args.word)
    except ValueError as e:
        raise UsageError(str(e)) from None
    theta = _angle(args.theta)
    u = evaluate_word(word)
    bound = op_norm_error(u, theta, _precision(args.precision, u.k))
    print(f"T-count = {word.t_count}")
    print(f"error ≤ {mpmath.nstr(bound.to_mpf(), 6)}")
    if args.epsilon is not None:
        eps = _epsilon(args.epsilon, upper=None)
        if not bound.surely_le(eps):
            print(f"verification failed: bound exceeds {args.epsilon}", file=sys.stderr)
            return EXIT_VERIFY
    return EXIT_OK


def cmd_enumerate(args) -> int:
    if args.tcount < 0:
        raise UsageError("--tcount must be non-negative")
    total, distinct = count_distinct_normal_forms(args.tcount)
    print(distinct)
    return EXIT_OK if total == distinct else EXIT_VERIFY


def build_parser() -> argparse.ArgumentParser:
    p = _Parser(prog="ctsynth", description="Clifford+T approximation of single-qubit rotations")
    sub = p.add_subparsers(dest="cmd", required=True, parser_class=_Parser)

    s = sub.add_parser("synth", help="approximate Rz(theta) and print a gate word")
    s.add_argument("--theta", required=True, help="angle expression, e.g. pi/128")
    s.add_argument("--epsilon", required=True, help="tolerance in (0, 1/2], e.g. 1e-10")
    _add_search_flags(s)
    s.add_argument("--stats", action="store_true", help="print human-readable statistics")
    s.add_argument("--verify", action="store_true", help="re-evaluate the word and certify the error")
    s.add_argument("--json", action="store_true", help="print the statistics record as JSON")
    s.add_argument("--precision", type=int, default=None, help="verification precision in bits")
    s.set_defaults(func=cmd_synth)

    s = sub.add_parser("su2", help="approximate a special unitary given by 4 complex entries")
    s.add_argument("--matrix", required=True, help='row-major entries, e.g. "0.6 0.8i 0.8i 0.6"')
    s.add_argument("--epsilon", required=True)
    _add_search_flags(s)
    s.set_defaults(func=cmd_su2)

    s = sub.add_parser("bench", help="repeated synthesis with one row per epsilon")
    s.add_argument("--theta", required=True)
    s.add_argument("--epsilons", required=True, help="comma- or space-separated list")
    s.add_argument("--runs", type=int, default=10)
    s.add_argument("--format", choices=("csv", "tsv", "jsonl"), default="csv")
    _add_search_flags(s)
    s.set_defaults(func=cmd_bench)

    s = sub.add_parser("verify", help="certified error of a gate word against Rz(theta)")
    s.add_argument("--word", required=True)
    s.add_argument("--theta", required=True)
    s.add_argument("--epsilon", default=None, help="fail with exit code 3 if the bound exceeds this")
    s.add_argument("--precision", type=int, default=None, help="verification precision in bits")
    s.set_defaults(func=cmd_verify)

    s = sub.add_parser("enumerate", help="count distinct normal forms up to a T-count")
    s.add_argument("--tcount", type=int, required=True)
    s.set_defaults(func=cmd_enumerate)
    return p


def main(argv: list[str] | None = None) -> int:
    parser = build_parser()
    try:
        args = parser.parse_args(argv)
    except SystemExit as e:
        return EXIT_OK if e.code in (0, None) else EXIT_USAGE
    try:
        return args.func(args)
    except UsageError as e:
        print(f"ctsynth: error: {e}", file=sys.stderr)
        return EXIT_USAGE


if __name__ == "__main__":  # pragma: no cover
    sys.exit(main())
