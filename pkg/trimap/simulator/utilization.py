"""Thread utilization accounting.

Discarded threads fall in one of three disjoint categories:

- `above_diagonal`: threads inside the `n x n` square (`n^3` cube) of blocks that hold no domain
  element, including blocks the map discards as a whole;
- `diagonal_block`: threads inside the square that miss the domain in blocks that do hold domain
  elements (the diagonal blocks);
- `padding`: threads outside the square or without a data-space coordinate.
"""
from __future__ import annotations

from trimap.core import typing as types
from trimap.core.models import Domain, SimulationReport, TetDomain, WasteBreakdown
from trimap.domain.figurate import icbrt_ceil, isqrt_ceil, tet_number, tri_number
from trimap.simulator.kernels import ThreadBatch


def classify_batch(
    batch: ThreadBatch, domain: Domain
) -> tuple[types.BoolArray, WasteBreakdown, int]:
    """Apply the per-thread domain predicate to a batch and account its waste.

    :param batch: Threads of a batch of blocks.
    :param domain: Problem domain.
    :returns: In-domain mask of the batch threads, waste of the batch (skipped blocks included)
        and the number of blocks without any in-domain thread.
    """
    n = domain.n
    i, j, k = batch.i, batch.j, batch.k

    in_bounds = (i >= 0) & (i < n) & (j >= 0) & (j < n)
    if batch.addressed is not None:
        in_bounds &= batch.addressed

    if isinstance(domain, TetDomain):
        in_bounds &= (k >= 0) & (k < n)
        in_domain = in_bounds & (j <= i) & (i <= k)
    elif domain.include_diagonal:
        in_domain = in_bounds & (j <= i)
    else:
        in_domain = in_bounds & (j < i)

    has_work = in_domain.any(axis=1)
    idle = in_bounds & ~has_work[:, None]
    waste = WasteBreakdown(
        above_diagonal=int(idle.sum()) + batch.skipped_in_bounds,
        diagonal_block=int((in_bounds & ~in_domain).sum()) - int(idle.sum()),
        padding=int((~in_bounds).sum()) + batch.skipped_padding,
    )
    return in_domain, waste, int((~has_work).sum()) + batch.skipped_blocks


def utilization(report: SimulationReport) -> WasteBreakdown:
    """Discarded threads of a dispatch split by category.

    The categories add up to `dispatched_threads - useful_threads`.
    """
    waste = report.waste
    if waste.total != report.dispatched_threads - report.useful_threads:
        raise ValueError(f"Waste {waste} does not match the report {report}.")
    return waste


def bb_out_of_domain(n: int, include_diagonal: bool = True) -> int:
    """In-square threads of the bounding box outside the triangle, `n(n-1)/2` with the diagonal."""
    return tri_number(n - 1) if include_diagonal else tri_number(n)


def ltm_diagonal_bound(n: int, rho: int) -> int:
    """Upper bound of the intra-block waste of the lambda map, `rho(rho-1)/2 ceil(n/rho)`."""
    return rho * (rho - 1) // 2 * -(-n // rho)


def ltm_padding_threads(n: int, rho: int) -> int:
    """Threads of the grid blocks the lambda map leaves unused, `(m'^2 - m(m+1)/2) rho^2`."""
    blocks = tri_number(-(-n // rho))
    return (isqrt_ceil(blocks) ** 2 - blocks) * rho * rho


def tet_padding_threads(n: int, rho: int) -> int:
    """Threads of the cubic grid blocks beyond `tet_number(m)`, each block costing `rho^3`."""
    blocks = tet_number(-(-n // rho))
    return (icbrt_ceil(blocks) ** 3 - blocks) * rho**3


def bb3_tet_ratio(n: int, rho: int) -> float:
    """Dispatched threads of the 3D bounding box over those of the tetrahedral map."""
    m = -(-n // rho)
    return m**3 / icbrt_ceil(tet_number(m)) ** 3
