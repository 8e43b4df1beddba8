from trimap.bench.report import PLOT_HEADER, ReportWriteError, emit_csv, emit_plotdata, read_csv
from trimap.bench.runner import (
    BenchmarkPlan,
    BenchmarkRefusedError,
    BenchmarkSuite,
    SkippedConfiguration,
    estimate_map_penalty,
    run_benchmark,
    tetrahedral_ceiling,
    theoretical_improvement,
    theoretical_improvement_3d,
)
from trimap.bench.verify import VerificationResult, VerificationSuite, run_checks


__all__ = [
    "PLOT_HEADER",
    "BenchmarkPlan",
    "BenchmarkRefusedError",
    "BenchmarkSuite",
    "ReportWriteError",
    "SkippedConfiguration",
    "VerificationResult",
    "VerificationSuite",
    "emit_csv",
    "emit_plotdata",
    "estimate_map_penalty",
    "read_csv",
    "run_benchmark",
    "run_checks",
    "tetrahedral_ceiling",
    "theoretical_improvement",
    "theoretical_improvement_3d",
]
