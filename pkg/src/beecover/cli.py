"""Command-line front end: generate, bench, verify, tuples.

The bench subcommand repeats the generation protocol used for the published
size tables: N independent seeded runs per configuration, every produced set
re-checked by the brute-force verifier before its size counts, best and
average reported (averages to 5 decimals).

Exit codes: 0 ok, 2 spec syntax error, 3 validation error, 4 verification
failure, 5 I/O error.
"""

from __future__ import annotations

import argparse
import csv
import io
import math
import sys
import time
from concurrent.futures import ThreadPoolExecutor
from dataclasses import dataclass, replace

from .generator import GenerationReport, generate_test_set
from .model import (SpecSemanticError, SpecSyntaxError, TestCase, TestSet,
                    parse_spec, validate_test_case)
from .oracle import verify_coverage
from .coverage import build_universe
from .rng import MASK64
from .swarm import SearchConfig

EXIT_OK = 0
EXIT_PARSE = 2
EXIT_VALIDATION = 3
EXIT_VERIFY = 4
EXIT_IO = 5


class BenchmarkError(RuntimeError):
    """A benchmark run produced an incomplete set (a defect, not a statistic)."""


@dataclass
class BenchmarkResult:
    spec_text: str
    runs: int
    best_size: int
    avg_size: float
    stddev: float
    sizes: list[int]
    seeds: list[int]
    wall_time: float


def run_benchmark(spec_text: str, runs: int, cfg: SearchConfig,
                  jobs: int = 1, backend: str | None = None) -> BenchmarkResult:
    """Execute `runs` independent generations with seeds cfg.seed + index;
    results merge by run index, so the jobs count never changes the output."""
    if runs < 1:
        raise ValueError("runs must be >= 1")
    system, spec = parse_spec(spec_text)
    seeds = [(cfg.seed + i) & MASK64 for i in range(runs)]

    def one(i: int) -> GenerationReport:
        report = generate_test_set(system, spec, replace(cfg, seed=seeds[i]), backend)
        check = verify_coverage(report.test_set, system, spec)
        if not check.complete:
            raise BenchmarkError(
                f"run {i} (seed {seeds[i]}) produced an incomplete set:\n"
                + check.describe())
        return report

    start = time.perf_counter()
    if jobs > 1:
        with ThreadPoolExecutor(max_workers=jobs) as pool:
            reports = list(pool.map(one, range(runs)))
    else:
        reports = [one(i) for i in range(runs)]
    wall = time.perf_counter() - start

    sizes = [r.size for r in reports]
    avg = sum(sizes) / len(sizes)
    var = sum((s - avg) ** 2 for s in sizes) / len(sizes)
    return BenchmarkResult(
        spec_text=spec_text,
        runs=runs,
        best_size=min(sizes),
        avg_size=avg,
        stddev=math.sqrt(var),
        sizes=sizes,
        seeds=seeds,
        wall_time=wall,
    )


# --- output formats ---------------------------------------------------------

def format_test_set_csv(ts: TestSet) -> str:
    if not ts.rows:
        return ""
    p = len(ts.rows[0])
    lines = [",".join(f"p{j}" for j in range(p))]
    lines.extend(",".join(str(x) for x in row.values) for row in ts.rows)
    return "\n".join(lines) + "\n"


def format_test_set_text(spec_text: str, ts: TestSet) -> str:
    lines = [f"# {spec_text}", f"# size={len(ts)}"]
    lines.extend(" ".join(str(x) for x in row.values) for row in ts.rows)
    return "\n".join(lines) + "\n"


def format_benchmark_csv(result: BenchmarkResult) -> str:
    buf = io.StringIO()
    writer = csv.writer(buf, lineterminator="\n")
    writer.writerow(["spec", "runs", "best", "avg", "stddev"])
    writer.writerow([result.spec_text, result.runs, result.best_size,
                     f"{result.avg_size:.5f}", f"{result.stddev:.5f}"])
    return buf.getvalue()


def format_benchmark_text(result: BenchmarkResult) -> str:
    lines = [
        f"# {result.spec_text}",
        f"runs={result.runs} best={result.best_size} "
        f"avg={result.avg_size:.5f} stddev={result.stddev:.5f}",
        "sizes=" + " ".join(str(s) for s in result.sizes),
        f"base_seed={result.seeds[0]}",
    ]
    return "\n".join(lines) + "\n"


def load_test_set(path: str) -> TestSet:
    """Read either emitted format back in (text lines start with '#')."""
    with open(path, "r", encoding="ascii") as fh:
        raw = [line.strip() for line in fh]
    rows = []
    for line in raw:
        if not line or line.startswith("#"):
            continue
        if line and line[0] == "p" and "," in line:  # csv header
            continue
        parts = line.split(",") if "," in line else line.split()
        rows.append(TestCase(tuple(int(x) for x in parts)))
    return TestSet(rows=rows)


def _emit(text: str, out: str | None) -> None:
    if out is None:
        sys.stdout.write(text)
    else:
        with open(out, "w", encoding="ascii", newline="") as fh:
            fh.write(text)


# --- argument parsing -------------------------------------------------------

def _add_search_flags(p: argparse.ArgumentParser) -> None:
    p.add_argument("--seed", type=int, default=0, help="base seed (default 0)")
    p.add_argument("--nbee", type=int, default=5, help="bee population (default 5)")
    p.add_argument("--nfood", type=int, default=None,
                   help="food sources (default ceil(nbee/2))")
    p.add_argument("--mcn", type=int, default=1000, help="cycles per row (default 1000)")
    p.add_argument("--limit", type=int, default=100, help="scout trial limit (default 100)")
    p.add_argument("--c1", type=float, default=2.0)
    p.add_argument("--c2", type=float, default=2.0)
    p.add_argument("--w", type=float, default=0.9, help="inertia weight (default 0.9)")
    p.add_argument("--distance-metric", choices=["hamming", "numeric"], default="hamming",
                   help="tie-break row distance (default hamming)")
    p.add_argument("--distance-aggregate", choices=["sum", "min"], default="sum",
                   help="distance aggregation over prior rows (default sum)")


def _config_from(args: argparse.Namespace) -> SearchConfig:
    return SearchConfig(
        n_bee=args.nbee, n_food=args.nfood, mcn=args.mcn, limit=args.limit,
        c1=args.c1, c2=args.c2, w=args.w, seed=args.seed,
        distance_metric=args.distance_metric,
        distance_aggregate=args.distance_aggregate,
    )


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(
        prog="beecover",
        description="Minimal t-way covering array generation via hybrid "
                    "bee-colony/particle-swarm search.")
    sub = parser.add_subparsers(dest="command", required=True)

    g = sub.add_parser("generate", help="generate one test set")
    g.add_argument("spec", help='e.g. "CA(N;2,3^4)" or "VSCA(N;2,3^15,{CA(3,3^3)})"')
    _add_search_flags(g)
    g.add_argument("--out", default=None, help="output path (default stdout)")
    g.add_argument("--format", choices=["csv", "text"], default="csv")

    b = sub.add_parser("bench", help="repeat generation and report best/avg size")
    b.add_argument("spec")
    b.add_argument("--runs", type=int, default=20, help="independent runs (default 20)")
    b.add_argument("--jobs", type=int, default=1, help="concurrent runs (default 1)")
    _add_search_flags(b)
    b.add_argument("--out", default=None)
    b.add_argument("--format", choices=["csv", "text"], default="csv")

    v = sub.add_parser("verify", help="check a test-set file for full coverage")
    v.add_argument("spec")
    v.add_argument("--set", required=True, dest="set_path", help="test-set file")

    t = sub.add_parser("tuples", help="print combination and tuple counts")
    t.add_argument("spec")
    return parser


def _cmd_generate(args: argparse.Namespace) -> int:
    system, spec = parse_spec(args.spec)
    report = generate_test_set(system, spec, _config_from(args))
    if args.format == "csv":
        text = format_test_set_csv(report.test_set)
    else:
        text = format_test_set_text(args.spec, report.test_set)
    _emit(text, args.out)
    print(f"size={report.size} seed={report.seed} "
          f"wall={report.wall_time:.3f}s", file=sys.stderr)
    return EXIT_OK


def _cmd_bench(args: argparse.Namespace) -> int:
    result = run_benchmark(args.spec, args.runs, _config_from(args), jobs=args.jobs)
    if args.format == "csv":
        text = format_benchmark_csv(result)
    else:
        text = format_benchmark_text(result)
    _emit(text, args.out)
    print(f"best={result.best_size} avg={result.avg_size:.5f} "
          f"wall={result.wall_time:.1f}s", file=sys.stderr)
    return EXIT_OK


def _cmd_verify(args: argparse.Namespace) -> int:
    system, spec = parse_spec(args.spec)
    ts = load_test_set(args.set_path)
    for i, row in enumerate(ts.rows):
        problems = validate_test_case(row, system)
        if problems:
            print(f"row {i} invalid: {'; '.join(problems)}", file=sys.stderr)
            return EXIT_VALIDATION
    report = verify_coverage(ts, system, spec)
    print(report.describe())
    return EXIT_OK if report.complete else EXIT_VERIFY


def _cmd_tuples(args: argparse.Namespace) -> int:
    system, spec = parse_spec(args.spec)
    universe = build_universe(system, spec)
    print(f"combinations: {len(universe.combinations)}")
    print(f"tuples: {universe.total}")
    return EXIT_OK


def main(argv: list[str] | None = None) -> int:
    args = build_parser().parse_args(argv)
    try:
        if args.command == "generate":
            return _cmd_generate(args)
        if args.command == "bench":
            return _cmd_bench(args)
        if args.command == "verify":
            return _cmd_verify(args)
        if args.command == "tuples":
            return _cmd_tuples(args)
        raise AssertionError(f"unhandled command {args.command}")
    except SpecSyntaxError as exc:
        print(f"spec syntax error: {exc}", file=sys.stderr)
        return EXIT_PARSE
    except (SpecSemanticError, ValueError) as exc:
        print(f"validation error: {exc}", file=sys.stderr)
        return EXIT_VALIDATION
    except BenchmarkError as exc:
        print(f"verification failure: {exc}", file=sys.stderr)
        return EXIT_VERIFY
    except OSError as exc:
        print(f"i/o error: {exc}", file=sys.stderr)
        return EXIT_IO


if __name__ == "__main__":
    sys.exit(main())
