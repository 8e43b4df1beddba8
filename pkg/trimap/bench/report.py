"""CSV and plot-data output of benchmark records."""
from __future__ import annotations

from typing import Sequence
import csv
import errno
import logging
from pathlib import Path

from trimap.core.io import CSV_COLUMNS, csv_converter
from trimap.core.models import BenchmarkRecord


logger = logging.getLogger(__name__)

PLOT_HEADER = "# n improvement\n"
REFERENCE_SERIES = "reference"


class ReportWriteError(OSError):
    """Raised when a report destination cannot be written."""

    def __init__(self, path: str | Path, cause: OSError) -> None:
        reason = cause.strerror or str(cause)
        super().__init__(cause.errno or errno.EIO, f"Cannot write report: {reason}", str(path))


def emit_csv(records: Sequence[BenchmarkRecord], destination: str | Path) -> Path:
    """Write benchmark records as CSV.

    The header is always written, so an empty sequence produces a header-only file.

    :param records: Records in output order.
    :param destination: Output file.
    :returns: Path of the written file.
    :raises ReportWriteError: The destination is not writable.
    """
    destination = Path(destination)
    try:
        with open(destination, "wt", encoding="utf-8", newline="") as f:
            writer = csv.DictWriter(f, fieldnames=CSV_COLUMNS, lineterminator="\n")
            writer.writeheader()
            for record in records:
                writer.writerow(csv_converter.unstructure(record))
    except OSError as e:
        raise ReportWriteError(destination, e) from e

    logger.debug(f"Wrote {len(records)} records to {destination}.")
    return destination


def read_csv(path: str | Path) -> tuple[BenchmarkRecord, ...]:
    """Parse a file written by `emit_csv`."""
    with open(path, "rt", encoding="utf-8", newline="") as f:
        reader = csv.DictReader(f)
        if tuple(reader.fieldnames or ()) != CSV_COLUMNS:
            raise ValueError(f"Unexpected CSV columns {reader.fieldnames} in {path}.")
        return tuple(csv_converter.structure(row, BenchmarkRecord) for row in reader)


def _series(records: Sequence[BenchmarkRecord]) -> dict[tuple[str, str], list[BenchmarkRecord]]:
    series: dict[tuple[str, str], list[BenchmarkRecord]] = {}
    for record in records:
        series.setdefault((record.workload.value, record.label), []).append(record)
    return series


def _write_series(path: Path, points: Sequence[tuple[int, float]]) -> None:
    try:
        with open(path, "wt", encoding="utf-8") as f:
            f.write(PLOT_HEADER)
            for n, improvement in points:
                f.write(f"{n} {improvement!r}\n")
    except OSError as e:
        raise ReportWriteError(path, e) from e


def emit_plotdata(records: Sequence[BenchmarkRecord], directory: str | Path) -> tuple[Path, ...]:
    """Write one whitespace-separated `n improvement` file per (workload, series).

    Files are named `{workload}_{label}.dat`. For every workload a `{workload}_reference.dat`
    file holds the `I = 1` line over the sizes of that workload.

    :param records: Benchmark records.
    :param directory: Output directory, created when missing.
    :returns: Paths of the written files, series first, sorted by name.
    :raises ReportWriteError: The directory or a file is not writable.
    """
    directory = Path(directory)
    try:
        directory.mkdir(parents=True, exist_ok=True)
    except OSError as e:
        raise ReportWriteError(directory, e) from e

    series_paths = []
    sizes: dict[str, set[int]] = {}
    for (workload, label), members in sorted(_series(records).items()):
        path = directory / f"{workload}_{label}.dat"
        _write_series(path, sorted((r.n, r.improvement_I) for r in members))
        series_paths.append(path)
        sizes.setdefault(workload, set()).update(r.n for r in members)

    reference_paths = []
    for workload, ns in sorted(sizes.items()):
        path = directory / f"{workload}_{REFERENCE_SERIES}.dat"
        _write_series(path, [(n, 1.0) for n in sorted(ns)])
        reference_paths.append(path)

    return tuple(series_paths + reference_paths)
