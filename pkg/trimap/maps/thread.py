"""Thread-space maps: rectangular box (RB) and upper-triangular map (UTM).

RB folds the triangle into a rectangle of `ceil(n/2)` rows. Thread `(tx, ty)` of the lower half
`tx <= h + ty` keeps its row `h + ty`; the rest is rotated onto the upper rows `h - ty - 1`
(with `h = n // 2`):

    n = 4                     rectangle (rows x cols = 2 x 5)
    0,0                       2,0  2,1  2,2 | 1,1  1,0
    1,0  1,1                  3,0  3,1  3,2   3,3 | 0,0
    2,0  2,1  2,2
    3,0  3,1  3,2  3,3

The rectangle holds exactly `n(n+1)/2` threads for even and odd `n`.

UTM places linear thread `t` on the strict upper triangle of an `N x N` matrix in 1-based
row-major order `(a, b)`, `1 <= a < b <= N`, and reports it as the lower-triangular `(b-1, a-1)`.
"""
from __future__ import annotations

import numpy as np

from trimap.core import typing as types
from trimap.core.models import Coord2
from trimap.domain.figurate import tri_root
from trimap.maps.block import IndexRangeError, correct_rows, floor_rows
from trimap.roots.sqrt import EXACT, SqrtStrategy, sqrt_array


def _triangle_side(n: int, include_diagonal: bool) -> int:
    """Side of the inclusive triangle that is folded (the strict triangle of n is that of n-1)."""
    if n < 1:
        raise ValueError(f"Domain size must be positive, got {n}.")
    return n if include_diagonal else n - 1


def rb_extents(n: int, include_diagonal: bool = True) -> tuple[int, int]:
    """Thread rectangle of the RB map as (rows, columns)."""
    side = _triangle_side(n, include_diagonal)
    h = side // 2
    # ceil(side/2) x (side+1) for even side, ceil(side/2) x side for odd side: both hold side(side+1)/2
    return side - h, side + 1 - side % 2 if side > 0 else 0


def rb_threads(
    tx: types.IntArray, ty: types.IntArray, n: int, include_diagonal: bool = True
) -> tuple[types.IntArray, types.IntArray]:
    """Vectorized `rb_map` for threads inside the rectangle."""
    side = _triangle_side(n, include_diagonal)
    h = side // 2
    _, cols = rb_extents(n, include_diagonal)
    tx = np.asarray(tx, dtype=np.int64)
    ty = np.asarray(ty, dtype=np.int64)

    lower_row = h + ty
    lower = tx <= lower_row
    i = np.where(lower, lower_row, h - ty - 1)
    j = np.where(lower, tx, cols - 1 - tx)
    if not include_diagonal:
        i = i + 1
    return i, j


def rb_map(tx: int, ty: int, n: int, include_diagonal: bool = True) -> Coord2:
    """Map thread `(tx, ty)` of the RB rectangle onto the triangle of size `n`.

    :param tx: Thread column.
    :param ty: Thread row.
    :param n: Domain size.
    :param include_diagonal: Whether the diagonal belongs to the domain.
    :raises IndexRangeError: The thread lies outside the rectangle.
    """
    rows, cols = rb_extents(n, include_diagonal)
    if not (0 <= tx < cols and 0 <= ty < rows):
        raise IndexRangeError(f"Thread ({tx}, {ty}) is outside the {rows} x {cols} RB rectangle of n={n}.")
    i, j = rb_threads(np.array([tx]), np.array([ty]), n, include_diagonal)
    return Coord2(int(i[0]), int(j[0]))


def _utm_start(a: types.IntArray, big_n: int) -> types.IntArray:
    """Number of pairs in the upper-triangular rows before 1-based row `a`."""
    return (a - 1) * (2 * big_n - a) // 2


def _utm_row(t: int, big_n: int) -> int:
    """Row of thread `t` in exact integer arithmetic, counted from the last row backwards."""
    return big_n - 1 - tri_root(big_n * (big_n - 1) // 2 - 1 - t)


def utm_pairs(
    t: types.IntArray, big_n: int, sqrt: SqrtStrategy = EXACT, correct: bool = True
) -> tuple[types.IntArray, types.IntArray]:
    """1-based upper-triangular pairs `(a, b)` of linear thread indices for an `N x N` matrix."""
    t = np.asarray(t, dtype=np.int64)
    radicand = 4.0 * big_n * big_n - 4.0 * big_n - 8.0 * t.astype(np.float64) + 1.0
    a = floor_rows(((2 * big_n + 1) - sqrt_array(sqrt, radicand)) / 2.0, 1, max(big_n - 1, 1))
    if correct:
        a = correct_rows(
            t, a, lambda rows: _utm_start(rows, big_n), lambda w: _utm_row(w, big_n), lowest=1
        )
    b = (a + 1) + t - _utm_start(a, big_n)
    return a, b


def utm_threads(
    t: types.IntArray,
    n: int,
    include_diagonal: bool = False,
    sqrt: SqrtStrategy = EXACT,
    correct: bool = True,
) -> tuple[types.IntArray, types.IntArray]:
    """Vectorized `utm_map`; returns 0-based lower-triangular rows and columns."""
    big_n = n + 1 if include_diagonal else n
    a, b = utm_pairs(t, big_n, sqrt, correct)
    i, j = b - 1, a - 1
    if include_diagonal:
        i = i - 1
    return i, j


def utm_size(n: int, include_diagonal: bool = False) -> int:
    """Number of threads UTM needs for a domain of size `n`."""
    big_n = n + 1 if include_diagonal else n
    return big_n * (big_n - 1) // 2


def utm_pair(t: int, n: int) -> tuple[int, int]:
    """1-based upper-triangular pair `(a, b)` of thread `t` in an `n x n` matrix.

    Example:
        >>> utm_pair(0, 4)
        (1, 2)
    """
    if not 0 <= t < utm_size(n):
        raise IndexRangeError(f"Thread index must satisfy 0 <= t < {utm_size(n)}, got {t}.")
    a, b = utm_pairs(np.array([t]), n)
    return int(a[0]), int(b[0])


def utm_map(
    t: int, n: int, include_diagonal: bool = False, sqrt: SqrtStrategy = EXACT, correct: bool = True
) -> Coord2:
    """Map linear thread index `t` onto the lower triangle of size `n`.

    Without the diagonal `(i, j) = (b - 1, a - 1)`. With the diagonal the strict triangle of
    size `n + 1` is used and its rows are shifted up by one.

    :param t: Linear thread index.
    :param n: Domain size.
    :param include_diagonal: Whether the diagonal belongs to the domain.
    :param sqrt: Square-root strategy.
    :param correct: Apply the integer row correction.
    :raises IndexRangeError: `t` is outside the triangle.
    """
    size = utm_size(n, include_diagonal)
    if not 0 <= t < size:
        raise IndexRangeError(f"Thread index must satisfy 0 <= t < {size}, got {t}.")
    i, j = utm_threads(np.array([t]), n, include_diagonal, sqrt, correct)
    return Coord2(int(i[0]), int(j[0]))


def utm_index(
    i: types.IntOrArray, j: types.IntOrArray, n: int, include_diagonal: bool = False
) -> types.IntOrArray:
    """Inverse of `utm_map`: linear thread index of the lower-triangular element `(i, j)`."""
    big_n = n + 1 if include_diagonal else n
    b = i + 2 if include_diagonal else i + 1
    a = j + 1
    return (a - 1) * (2 * big_n - a) // 2 + (b - a - 1)
