from __future__ import annotations

from typing import Optional

from trimap.core.models import GridSpec, Strategy
from trimap.domain.figurate import icbrt_ceil, isqrt_ceil, tet_number, tri_number
from trimap.maps.recursive import rec_decompose, rec_total_blocks
from trimap.maps.thread import rb_extents, utm_size


class StrategyMismatchError(ValueError):
    """Raised when a strategy cannot be used with the given domain, workload or grid."""


def _ceil_div(a: int, b: int) -> int:
    return -(-a // b)


def ltm_nodiag_blocks(m: int, rho: int) -> int:
    """Blocks of the diagonal-free lambda map: the strict block triangle plus the diagonal blocks."""
    return tri_number(m - 1) + (m if rho > 1 else 0)


def grid_dims(
    strategy: Strategy | str,
    n: int,
    rho: int,
    include_diagonal: bool = True,
    levels: Optional[int] = None,
) -> GridSpec:
    """Launch grid of a strategy for a domain of size `n`.

    For 2D strategies `n` is the side of the triangle, for `bb3` and `tet` the number of layers.
    With `m = ceil(n / rho)` blocks per side:

    - `bb`: `m x m`; `bb3`: `m x m x m`.
    - `ltm`: `m' x m'` with `m' = ceil(sqrt(m(m+1)/2))`.
    - `ltm-nodiag`: square grid holding `m(m-1)/2` strict blocks plus `m` diagonal blocks.
    - `rb`: the RB thread rectangle rounded up to blocks, extents (columns, rows).
    - `utm`: one dimension of `ceil(P / rho^2)` blocks, `P` the number of UTM threads.
    - `rec`: one dimension holding every block of the recursive layout.
    - `tet`: cube of side `ceil(cbrt(tet_number(m)))`.

    Example:
        >>> grid_dims("ltm", 8, 2).extents
        (4, 4)

    :param strategy: Strategy tag.
    :param n: Domain size.
    :param rho: Block size.
    :param include_diagonal: Whether the diagonal belongs to a triangular domain.
    :param levels: Number of REC levels; by default the largest admissible one.
    :raises StrategyMismatchError: The strategy cannot cover the domain.
    :raises RecursiveLayoutError: `rec` with `n` that is not `m 2^k`, `m` a multiple of `rho`.
    """
    strategy = Strategy(strategy)
    if n < 1 or rho < 1:
        raise ValueError(f"Domain size and block size must be positive, got n={n}, rho={rho}.")
    m = _ceil_div(n, rho)

    if strategy is Strategy.BB:
        return GridSpec(strategy, rho, (m, m))
    if strategy is Strategy.LTM:
        side = isqrt_ceil(tri_number(m))
        return GridSpec(strategy, rho, (side, side))
    if strategy is Strategy.LTM_NODIAG:
        if include_diagonal:
            raise StrategyMismatchError("ltm-nodiag covers the strict triangle only, use ltm instead.")
        side = isqrt_ceil(ltm_nodiag_blocks(m, rho))
        return GridSpec(strategy, rho, (side, side))
    if strategy is Strategy.RB:
        rows, cols = rb_extents(n, include_diagonal)
        return GridSpec(strategy, rho, (_ceil_div(cols, rho), _ceil_div(rows, rho)))
    if strategy is Strategy.UTM:
        return GridSpec(strategy, rho, (_ceil_div(utm_size(n, include_diagonal), rho * rho),))
    if strategy is Strategy.REC:
        base, k = rec_decompose(n, rho, levels)
        return GridSpec(strategy, rho, (rec_total_blocks(n, rho, k),), base=base, levels=k)
    if strategy is Strategy.BB3:
        return GridSpec(strategy, rho, (m, m, m))
    if strategy is Strategy.TET:
        side = icbrt_ceil(tet_number(m))
        return GridSpec(strategy, rho, (side, side, side))

    raise StrategyMismatchError(f"Unknown strategy {strategy}.")  # pragma: no cover
