"""Command line interface: `trimap bench`, `trimap verify` and `trimap sqrt-range`."""
from __future__ import annotations

from typing import Optional, Sequence
import argparse
import logging
from pathlib import Path

from trimap.bench.report import ReportWriteError, emit_csv, emit_plotdata
from trimap.bench.runner import (
    BenchmarkPlan,
    BenchmarkRefusedError,
    BenchmarkSuite,
    SkippedConfiguration,
    estimate_map_penalty,
    run_benchmark,
    tetrahedral_ceiling,
)
from trimap.bench.verify import VerificationSuite
from trimap.core.models import BenchmarkRecord, SqrtKind, Strategy, Workload
from trimap.core.utils import get_default, parse_int_list, parse_name_list
from trimap.roots.sqrt import SqrtStrategy
from trimap.roots.validation import block_range, validate_sqrt_range
from trimap.simulator.dispatch import Simulator


logger = logging.getLogger(__name__)

CPU_CAVEAT = (
    "# Simulated dispatch timed on the CPU. Improvement factors show the trend of the grid maps;\n"
    "# they do not reproduce GPU percentages."
)


def _add_common(parser: argparse.ArgumentParser) -> None:
    parser.add_argument("-v", "--verbose", action="store_true", help="Log debug messages.")


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(
        prog="trimap", description="Grid-to-domain maps for triangular and tetrahedral problems."
    )
    subparsers = parser.add_subparsers(dest="command", required=True)

    bench = subparsers.add_parser("bench", help="Time strategies against the bounding box.")
    bench.add_argument("--workload", default="dummy", help="Comma-separated workloads.")
    bench.add_argument("--strategy", default="bb,ltm,rb,rec,utm", help="Comma-separated strategies.")
    bench.add_argument("--sizes", default=None, help="Comma-separated 2D sizes.")
    bench.add_argument("--sizes-3d", default=None, help="Comma-separated numbers of 3D layers.")
    bench.add_argument("--rho", type=int, default=None, help="2D block size.")
    bench.add_argument("--rho-3d", type=int, default=None, help="3D block size.")
    bench.add_argument("--sqrt", default="exact", help="Comma-separated square-root strategies.")
    bench.add_argument("--reps", type=int, default=None, help="Timed repetitions, at least 3.")
    bench.add_argument("--warmups", type=int, default=None, help="Untimed dispatches per configuration.")
    bench.add_argument("--seed", type=int, default=None, help="Seed of the workload data.")
    bench.add_argument("--tiled", action="store_true", help="Stage collision records through tiles.")
    bench.add_argument("--single-thread", action="store_true", help="Dispatch with one worker.")
    bench.add_argument("--out", type=Path, default=None, help="CSV output file.")
    bench.add_argument("--plot-dir", type=Path, default=None, help="Directory of plot series files.")
    _add_common(bench)

    verify = subparsers.add_parser("verify", help="Run the oracle and property checks.")
    verify.add_argument("--sizes", default=None, help="Comma-separated 2D sizes.")
    verify.add_argument("--sizes-3d", default=None, help="Comma-separated numbers of 3D layers.")
    verify.add_argument("--rho", type=int, default=None, help="2D block size.")
    verify.add_argument("--rho-3d", type=int, default=None, help="3D block size.")
    verify.add_argument("--seed", type=int, default=None, help="Seed of the workload data.")
    verify.add_argument(
        "--sqrt-elements", type=int, default=None, help="Elements per side of the square-root range scan."
    )
    verify.add_argument(
        "--sqrt-samples", type=int, default=None, help="Random indices of the corrected square roots."
    )
    _add_common(verify)

    sqrt_range = subparsers.add_parser("sqrt-range", help="Find where a fast square root breaks the map.")
    sqrt_range.add_argument("--sqrt", default="newton", choices=[k.value for k in SqrtKind])
    sqrt_range.add_argument("--epsilon", type=float, default=None, help="Offset added before flooring.")
    sqrt_range.add_argument(
        "--precision",
        default=None,
        choices=["float64", "float32"],
        help="Floating point type; float32 for the fast roots unless given.",
    )
    sqrt_range.add_argument(
        "--elements",
        type=int,
        default=int(get_default("roots", "range_elements")),
        help="Elements per side of the scanned triangle.",
    )
    sqrt_range.add_argument(
        "--rho", type=int, default=int(get_default("bench", "rho_2d")), help="Block size."
    )
    sqrt_range.add_argument("--no-diagonal", action="store_true", help="Scan the diagonal-free map.")
    _add_common(sqrt_range)

    return parser


def _configure_logging(verbose: bool) -> None:
    logging.basicConfig(
        level=logging.DEBUG if verbose else logging.WARNING,
        format="%(asctime)s %(levelname)s %(name)s: %(message)s",
    )


def _optional(**kwargs: object) -> dict[str, object]:
    """Keyword arguments that were given on the command line."""
    return {k: v for k, v in kwargs.items() if v is not None}


def format_table(records: Sequence[BenchmarkRecord]) -> str:
    lines = [
        f"{'series':<16}{'workload':<14}{'n':>7}{'rho':>5}{'median_ns':>14}"
        f"{'I':>8}{'waste':>8}{'rsd':>7}"
    ]
    for r in records:
        lines.append(
            f"{r.label:<16}{r.workload.value:<14}{r.n:>7}{r.rho:>5}{r.median_time:>14}"
            f"{r.improvement_I:>8.3f}{r.waste_fraction:>8.3f}{r.rsd:>7.3f}{' *' if r.flagged else ''}"
        )
    return "\n".join(lines)


def _print_summary(
    records: Sequence[BenchmarkRecord], skipped: Sequence[SkippedConfiguration] = ()
) -> None:
    if skipped:
        print(f"\n{len(skipped)} configurations skipped:")
        for s in skipped:
            print(f"  {s.strategy.value} {s.workload.value} n={s.n}: {s.reason}")

    flagged = [r for r in records if r.flagged]
    if flagged:
        print(f"\n{len(flagged)} unstable records (*), rsd above threshold:")
        for r in flagged:
            print(f"  {r.label} {r.workload.value} n={r.n} rsd={r.rsd:.3f}")

    penalty = estimate_map_penalty(records)
    if penalty:
        print("\nltm per-block cost relative to bb:")
        for n, k in penalty.items():
            print(f"  n={n}: {k:.3f}")

    ceiling = tetrahedral_ceiling(records)
    if ceiling:
        print("\ntet improvement ceiling 6 alpha / gamma:")
        for n, value in ceiling.items():
            print(f"  m={n}: {value:.3f}")


def run_bench(args: argparse.Namespace) -> int:
    plan = BenchmarkPlan(
        workloads=[Workload(w) for w in parse_name_list(args.workload)],
        strategies=[Strategy(s) for s in parse_name_list(args.strategy)],
        sqrt_kinds=[SqrtKind(s) for s in parse_name_list(args.sqrt)],
        tiled=args.tiled,
        **_optional(
            sizes_2d=None if args.sizes is None else parse_int_list(args.sizes),
            sizes_3d=None if args.sizes_3d is None else parse_int_list(args.sizes_3d),
            rho_2d=args.rho,
            rho_3d=args.rho_3d,
            seed=args.seed,
        ),
    )
    suite = BenchmarkSuite.from_env(**_optional(repetitions=args.reps, warmups=args.warmups))
    simulator = Simulator.from_env(**_optional(num_workers=1 if args.single_thread else None))

    skipped: list[SkippedConfiguration] = []
    records = run_benchmark(plan, suite=suite, simulator=simulator, on_skip=skipped.append)

    print(CPU_CAVEAT)
    print(format_table(records))
    _print_summary(records, skipped)

    if args.out is not None:
        emit_csv(records, args.out)
        print(f"\nwrote {args.out}")
    if args.plot_dir is not None:
        paths = emit_plotdata(records, args.plot_dir)
        print(f"wrote {len(paths)} series to {args.plot_dir}")
    return 0


def run_verify(args: argparse.Namespace) -> int:
    suite = VerificationSuite(
        **_optional(
            sizes_2d=None if args.sizes is None else parse_int_list(args.sizes),
            sizes_3d=None if args.sizes_3d is None else parse_int_list(args.sizes_3d),
            rho_2d=args.rho,
            rho_3d=args.rho_3d,
            seed=args.seed,
            sqrt_elements=args.sqrt_elements,
            sqrt_samples=args.sqrt_samples,
        )
    )
    results = suite.run()
    for result in results:
        status = "ok" if result.passed else "FAIL"
        print(f"{status:<5}{result.name}{': ' + result.detail if result.detail else ''}")

    failed = sum(not r.passed for r in results)
    print(f"\n{len(results) - failed} passed, {failed} failed")
    return 1 if failed else 0


def run_sqrt_range(args: argparse.Namespace) -> int:
    s = SqrtStrategy.from_tag(args.sqrt, args.epsilon, **_optional(precision=args.precision))
    omega_max = block_range(args.elements, args.rho)
    first = validate_sqrt_range(s, omega_max, include_diagonal=not args.no_diagonal)

    if first is None:
        print(f"{s.kind.value} ({s.precision}, epsilon={s.epsilon}) exact for omega <= {omega_max}")
        return 0
    print(
        f"{s.kind.value} ({s.precision}, epsilon={s.epsilon}) first failure at omega={first}"
        f" (scanned up to {omega_max})"
    )
    return 1


COMMANDS = {"bench": run_bench, "verify": run_verify, "sqrt-range": run_sqrt_range}


def main(argv: Optional[Sequence[str]] = None) -> int:
    """Entry point of the `trimap` command; returns the process exit code."""
    parser = build_parser()
    args = parser.parse_args(argv)
    _configure_logging(args.verbose)

    try:
        return COMMANDS[args.command](args)
    except (BenchmarkRefusedError, ReportWriteError) as e:
        logger.error(str(e))
        return 1
    except ValueError as e:
        logger.error(f"Invalid arguments: {e}")
        return 2
