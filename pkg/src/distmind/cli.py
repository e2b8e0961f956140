"""Command-line driver: recovery experiments, benchmarks, bound tables,
adversary demonstrations, and exhaustive verification.

All randomness flows through random.Random(seed), so a fixed configuration
reproduces its output byte for byte.
"""

from __future__ import annotations

import argparse
import json
import math
import random
import sys
from typing import Sequence

from . import bounds as bounds_mod
from .codebreaker import choose_strategy, run_strategy, solve_separable
from .codemaker import HiddenVector, make_honest_oracle, make_noisy_adversary
from .detecting import RadixProfile, construct, load_matrix, plan_size, save_matrix, size_bound_terms
from .measures import ChebyshevDistance, build_odd_profile, parse_measure
from .verification import detecting_property_check, exhaustive_recovery_check


def _emit(rows: list[dict], fmt: str, stream) -> None:
    """Rows share a key order; csv prints a header, json prints one object per line."""
    if fmt == "json":
        for row in rows:
            stream.write(json.dumps(row) + "\n")
        return
    if rows:
        header = list(rows[0].keys())
        stream.write(",".join(header) + "\n")
        for row in rows:
            stream.write(",".join(_csv_cell(row.get(key, "")) for key in header) + "\n")


def _csv_cell(value) -> str:
    if isinstance(value, bool):
        return "1" if value else "0"
    if isinstance(value, float):
        return repr(value)
    return str(value)


def _sample_hidden(rng: random.Random, n: int, k: int) -> HiddenVector:
    return HiddenVector.from_values([rng.randint(-k, k) for _ in range(n)], k)


def _cmd_recover(args, out) -> int:
    measure = parse_measure(args.measure)
    rng = random.Random(args.seed)
    if isinstance(measure, ChebyshevDistance):
        strategy = "linf"
    elif args.strategy == "auto":
        strategy = choose_strategy(measure, args.n, args.k)
    else:
        strategy = args.strategy
    matrix = None
    if args.load_matrix:
        matrix = load_matrix(args.load_matrix)
    if args.save_matrix:
        profile = build_odd_profile(measure, args.k)
        save_matrix(construct(RadixProfile(profile.radices(args.n))), args.save_matrix)
    rows = []
    failures = 0
    total_queries = 0
    for trial in range(args.trials):
        hidden = _sample_hidden(rng, args.n, args.k)
        oracle = make_honest_oracle(hidden, measure)
        try:
            if strategy == "separable" and matrix is not None:
                result = solve_separable(measure, args.n, args.k, oracle, matrix=matrix)
            else:
                result = run_strategy(measure, args.n, args.k, oracle, strategy)
            success = result.recovered == hidden.y
            queries_used, label = result.queries_used, result.strategy
        except Exception as exc:  # noqa: BLE001 - a failed trial, not a crash
            print(f"trial {trial}: {exc}", file=sys.stderr)
            success, queries_used, label = False, 0, strategy
        failures += not success
        total_queries += queries_used
        rows.append({"trial": trial, "queries_used": queries_used,
                     "success": success, "strategy": label})
    rows.append({"trial": "summary", "queries_used": total_queries,
                 "success": (args.trials - failures) / args.trials if args.trials else 1.0,
                 "strategy": strategy})
    _emit(rows, args.format, out)
    return 1 if failures else 0


def _cmd_bench(args, out) -> int:
    measure = parse_measure(args.measure)
    rng = random.Random(args.seed)
    rows = []
    status = 0
    for n in args.n_list:
        for k in args.k_list:
            profile = build_odd_profile(measure, k)
            radices = RadixProfile(profile.radices(n))
            s = 1 << plan_size(radices)
            lhs, rhs = size_bound_terms(s, radices)
            strategy = choose_strategy(measure, n, k)
            hidden = _sample_hidden(rng, n, k)
            oracle = make_honest_oracle(hidden, measure)
            result = run_strategy(measure, n, k, oracle, strategy)
            if result.recovered != hidden.y:
                status = 1
            rows.append({
                "n": n, "k": k, "measure": measure.label(), "strategy": result.strategy,
                "queries_used": result.queries_used, "naive_budget": n + 2,
                "matrix_rows": s, "bound_lhs": lhs, "bound_rhs": rhs,
            })
    _emit(rows, args.format, out)
    return status


def _cmd_bounds(args, out) -> int:
    rows = []
    for n in args.n:
        for k in args.k:
            for p in args.p:
                for radius in args.R:
                    if math.isinf(p):
                        report = bounds_mod.lower_bound_linf(n, k, radius)
                    else:
                        report = bounds_mod.lower_bound_lp(n, k, p, radius)
                    rows.append({
                        "n": n, "k": k, "p": "inf" if math.isinf(p) else p, "R": radius,
                        "log_volume": report.log_volume, "volume": report.volume,
                        "s_min": report.s_min, "formula": report.formula,
                    })
    _emit(rows, args.format, out)
    return 0


def _exhibit_hidden(n: int, k: int) -> HiddenVector:
    """A deterministic vector whose squared norm matches the uniform mean."""
    target = round(n * k * (k + 1) / 3)
    values = [0] * n
    budget = target
    i = 0
    while i < n - 1 and budget >= k * k:
        values[i] = k if i % 2 == 0 else -k
        budget -= k * k
        i += 1
    if i < n and budget > 0:
        values[i] = int(math.isqrt(budget))
    return HiddenVector.from_values(values, k)


def _exhibit_plan(n: int, k: int, count: int) -> list[list[int]]:
    """Low-norm queries: few +-1 entries, so the blur band always covers them."""
    nnz = max(1, n // 10)
    plan = []
    for j in range(count):
        q = [0] * n
        for i in range(nnz):
            q[(j * nnz + i) % n] = 1 if (i + j) % 2 == 0 else -1
        plan.append(q)
    return plan


def _cmd_adversary(args, out) -> int:
    rng = random.Random(args.seed)
    blurred = 0
    for _ in range(args.pairs):
        hidden = _sample_hidden(rng, args.n, args.k)
        adversary = make_noisy_adversary(hidden, args.p, args.eps)
        query = [rng.randint(-args.k, args.k) for _ in range(args.n)]
        adversary(query)
        blurred += adversary.transcript.entries[-1].blurred
    y1 = _exhibit_hidden(args.n, args.k)
    y2 = HiddenVector.from_values(y1.y[1:] + y1.y[:1], args.k)
    plan = _exhibit_plan(args.n, args.k, args.plan_queries)
    adv1 = make_noisy_adversary(y1, args.p, args.eps)
    adv2 = make_noisy_adversary(y2, args.p, args.eps)
    answers1 = [adv1(q) for q in plan]
    answers2 = [adv2(q) for q in plan]
    fully_blurred = (all(e.blurred for e in adv1.transcript.entries)
                     and all(e.blurred for e in adv2.transcript.entries))
    identical = answers1 == answers2
    if args.transcript_out:
        with open(args.transcript_out, "w") as fp:
            fp.write(adv1.transcript.to_jsonl())
    rows = [{
        "n": args.n, "k": args.k, "p": args.p, "eps": args.eps,
        "pairs": args.pairs, "blur_rate": blurred / args.pairs,
        "exhibit_queries": args.plan_queries, "exhibit_fully_blurred": fully_blurred,
        "exhibit_identical": identical,
        "bound_exponent": bounds_mod.noisy_bound_exponent(args.n, args.k, args.p, args.eps),
    }]
    _emit(rows, args.format, out)
    return 0 if (fully_blurred and identical) else 1


def _cmd_verify(args, out) -> int:
    checks = []
    if args.measure:
        checks.append((args.measure, args.n, args.k, args.solver))
    else:
        checks = [
            ("lp:2", 2, 2, "separable"),
            ("lp:1", 2, 1, "naive"),
            ("huber:1", 2, 1, "separable"),
            ("linf", 3, 1, "linf"),
            ("lp:2", 3, 1, "l2"),
        ]
    status = 0
    for spec, n, k, solver in checks:
        measure = parse_measure(spec)
        oracle_measure = None if isinstance(measure, ChebyshevDistance) else measure
        report = exhaustive_recovery_check(oracle_measure, n, k, solver)
        line = f"recovery {spec} n={n} k={k} solver={solver}: "
        line += f"{report.total - len(report.failures)}/{report.total} exact"
        out.write(line + ("\n" if report.passed else "  FAIL\n"))
        status |= not report.passed
    for radices in [(2, 2), (3, 3), (2, 3, 4), (4, 4, 4)]:
        profile = RadixProfile(radices)
        report = detecting_property_check(construct(profile), profile)
        line = f"detecting {radices}: {report.total} images distinct"
        out.write(line + ("\n" if report.passed else "  FAIL\n"))
        status |= not report.passed
    return status


def _float_or_inf(text: str) -> float:
    return math.inf if text.lower() in ("inf", "infinity") else float(text)


def _int_list(text: str) -> list[int]:
    return [int(v) for v in text.split(",") if v]


def _float_list(text: str) -> list[float]:
    return [_float_or_inf(v) for v in text.split(",") if v]


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(
        prog="distmind",
        description="Recover hidden bounded integer vectors from separable distance queries.")
    sub = parser.add_subparsers(dest="command", required=True)

    rec = sub.add_parser("recover", help="run seeded recovery trials")
    rec.add_argument("--n", type=int, required=True)
    rec.add_argument("--k", type=int, required=True)
    rec.add_argument("--measure", default="lp:2",
                     help="lp:P, huber:TAU, fair:C, l1l2, smoothmax, or linf")
    rec.add_argument("--trials", type=int, default=10)
    rec.add_argument("--seed", type=int, default=0)
    rec.add_argument("--strategy", default="auto",
                     choices=["auto", "separable", "naive", "l2", "linf"])
    rec.add_argument("--format", default="csv", choices=["csv", "json"])
    rec.add_argument("--save-matrix", default=None, metavar="PATH")
    rec.add_argument("--load-matrix", default=None, metavar="PATH")
    rec.set_defaults(func=_cmd_recover)

    ben = sub.add_parser("bench", help="sweep (n, k) and compare budgets")
    ben.add_argument("--n-list", type=_int_list, default=[16, 64, 256])
    ben.add_argument("--k-list", type=_int_list, default=[2, 4, 8])
    ben.add_argument("--measure", default="lp:2")
    ben.add_argument("--seed", type=int, default=0)
    ben.add_argument("--format", default="csv", choices=["csv", "json"])
    ben.set_defaults(func=_cmd_bench)

    bnd = sub.add_parser("bounds", help="print lower-bound tables")
    bnd.add_argument("--n", type=_int_list, required=True)
    bnd.add_argument("--k", type=_int_list, required=True)
    bnd.add_argument("--p", type=_float_list, default=[2.0])
    bnd.add_argument("--R", type=_float_list, default=[1.0])
    bnd.add_argument("--format", default="csv", choices=["csv", "json"])
    bnd.set_defaults(func=_cmd_bounds)

    adv = sub.add_parser("adversary", help="noisy-oracle demonstration")
    adv.add_argument("--n", type=int, default=100)
    adv.add_argument("--k", type=int, default=4)
    adv.add_argument("--p", type=float, default=2.0)
    adv.add_argument("--eps", type=float, default=0.1)
    adv.add_argument("--pairs", type=int, default=10000)
    adv.add_argument("--plan-queries", type=int, default=50)
    adv.add_argument("--seed", type=int, default=0)
    adv.add_argument("--format", default="csv", choices=["csv", "json"])
    adv.add_argument("--transcript-out", default=None, metavar="PATH",
                     help="write the exhibit transcript as JSON lines")
    adv.set_defaults(func=_cmd_adversary)

    ver = sub.add_parser("verify", help="exhaustive small-instance ground truth")
    ver.add_argument("--measure", default=None)
    ver.add_argument("--n", type=int, default=2)
    ver.add_argument("--k", type=int, default=1)
    ver.add_argument("--solver", default="separable",
                     choices=["separable", "naive", "l2", "linf"])
    ver.set_defaults(func=_cmd_verify)
    return parser


def main(argv: Sequence[str] | None = None) -> int:
    args = build_parser().parse_args(argv)
    return args.func(args, sys.stdout)


if __name__ == "__main__":
    sys.exit(main())
