"""Recursive partition (REC) of the lower triangle.

A domain of size `n = m 2^k` is split bottom-up into `k` levels of off-diagonal squares and a
diagonal pass:

- level 0 (diagonal pass): `2^k` diagonal `m x m` squares; only their block-lower triangles are
  dispatched, so diagonal blocks launch `rho(rho-1)/2` threads above the diagonal each.
- level `l` in `[1, k]`: `2^(k-l)` squares of side `s = m 2^(l-1)`; square `q` covers rows
  `[(2q+1)s, (2q+2)s)` and columns `[2qs, (2q+1)s)`.

Block origins are computed from the block index at run time.
"""
from __future__ import annotations

from typing import Optional

from attrs import field, frozen
from attrs.validators import deep_iterable, ge, instance_of
import numpy as np

from trimap.core import typing as types
from trimap.core.models import Coord2
from trimap.domain.figurate import tri_number
from trimap.maps.block import IndexRangeError, ltm_rows


class RecursiveLayoutError(ValueError):
    """Raised when a size cannot be written as `m 2^k` with `m` a multiple of the block size."""


@frozen
class RecLevel:
    """One level of the recursive layout.

    :param level: Level number, 0 is the diagonal pass.
    :param size: Side of the squares of the level in elements.
    :param origins: Upper-left element coordinate (row, column) of every square of the level.
    """

    level: int = field(validator=ge(0))
    size: int = field(validator=ge(1))
    origins: tuple[Coord2, ...] = field(converter=tuple, validator=deep_iterable(instance_of(Coord2)))

    def blocks_per_square(self, rho: int) -> int:
        """Number of blocks dispatched for one square."""
        side = self.size // rho
        return tri_number(side) if self.level == 0 else side * side


def rec_decompose(n: int, rho: int, levels: Optional[int] = None) -> tuple[int, int]:
    """Write `n` as `m 2^k` with `m` a multiple of `rho`.

    :param n: Domain size.
    :param rho: Block size.
    :param levels: Number of levels `k`; by default the largest admissible one.
    :returns: Base size `m` and number of levels `k`.
    :raises RecursiveLayoutError: No admissible decomposition exists.
    """
    if n < 1 or rho < 1 or n % rho != 0:
        raise RecursiveLayoutError(f"n={n} is not a positive multiple of the block size rho={rho}.")

    if levels is not None:
        if levels < 0 or n % (1 << levels) != 0 or (n >> levels) % rho != 0:
            raise RecursiveLayoutError(f"n={n} cannot be split into {levels} levels with rho={rho}.")
        return n >> levels, levels

    k = 0
    while n % (1 << (k + 1)) == 0 and (n >> (k + 1)) % rho == 0:
        k += 1
    return n >> k, k


def rec_layout(n: int, rho: int, levels: Optional[int] = None) -> tuple[RecLevel, ...]:
    """Levels of the recursive layout, diagonal pass first.

    Example:
        >>> [(lvl.level, lvl.size, len(lvl.origins)) for lvl in rec_layout(32, 8)]
        [(0, 8, 4), (1, 8, 2), (2, 16, 1)]

    :raises RecursiveLayoutError: `n` is not `m 2^k` with `m` a multiple of `rho`.
    """
    m, k = rec_decompose(n, rho, levels)
    layout = [RecLevel(0, m, tuple(Coord2(q * m, q * m) for q in range(1 << k)))]
    for level in range(1, k + 1):
        s = m << (level - 1)
        origins = tuple(Coord2((2 * q + 1) * s, 2 * q * s) for q in range(1 << (k - level)))
        layout.append(RecLevel(level, s, origins))
    return tuple(layout)


def rec_total_blocks(n: int, rho: int, levels: Optional[int] = None) -> int:
    """Number of blocks dispatched by the recursive layout."""
    m, k = rec_decompose(n, rho, levels)
    total = (1 << k) * tri_number(m // rho)
    for level in range(1, k + 1):
        side = (m << (level - 1)) // rho
        total += (1 << (k - level)) * side * side
    return total


def rec_blocks(
    b: types.IntArray, n: int, rho: int, levels: Optional[int] = None
) -> tuple[types.IntArray, types.IntArray]:
    """Element origins (row, column) of linear REC blocks.

    Blocks are numbered level after level, diagonal pass first; inside a level square after square,
    inside a square row-major (block-lower triangle for the diagonal pass).
    """
    m, k = rec_decompose(n, rho, levels)
    b = np.asarray(b, dtype=np.int64)
    total = rec_total_blocks(n, rho, k)
    if np.any(b >= total) or np.any(b < 0):
        raise IndexRangeError(f"REC block index outside [0, {total}).")
    rows = np.empty_like(b)
    cols = np.empty_like(b)

    diag_side = m // rho
    per_square = tri_number(diag_side)
    stop = (1 << k) * per_square
    sel = b < stop
    q, local = np.divmod(b[sel], per_square)
    bi, bj = ltm_rows(local)
    rows[sel] = q * m + bi * rho
    cols[sel] = q * m + bj * rho

    for level in range(1, k + 1):
        s = m << (level - 1)
        side = s // rho
        start, stop = stop, stop + (1 << (k - level)) * side * side
        sel = (b >= start) & (b < stop)
        q, local = np.divmod(b[sel] - start, side * side)
        bi, bj = np.divmod(local, side)
        rows[sel] = (2 * q + 1) * s + bi * rho
        cols[sel] = 2 * q * s + bj * rho

    return rows, cols
