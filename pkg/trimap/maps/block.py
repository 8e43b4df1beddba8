"""Block-space maps: bounding box, lambda(omega) with and without diagonal, tetrahedral lambda.

The linear block index `omega` of the lambda maps is turned into a lower-triangular block
coordinate with one square root:

    i = floor(sqrt(1/4 + 2 omega) - 1/2),    j = omega - i(i+1)/2

Floating point can put `i` one row off near row boundaries, and a coarse square root several rows
off. Unless `correct=False`, the row is moved until `tri_number(i) <= omega < tri_number(i+1)`
holds in integer arithmetic. Indices are limited to the range in which every row visited by
that correction stays inside int64.
"""
from __future__ import annotations

from typing import Callable, Optional

import numpy as np

from trimap.core import typing as types
from trimap.core.models import DISCARD, Coord2, Coord3, MapResult
from trimap.domain.figurate import (
    TET_LAYER_CAPACITY,
    TRI_ROW_CAPACITY,
    CapacityError,
    tet_number,
    tet_numbers,
    tet_root,
    tri_number,
    tri_numbers,
    tri_root,
)
from trimap.roots.sqrt import EXACT, SqrtStrategy, sqrt_array


# exclusive upper bounds of omega
LTM_OMEGA_CAPACITY = tri_number(TRI_ROW_CAPACITY)
LTM_NODIAG_OMEGA_CAPACITY = tri_number(TRI_ROW_CAPACITY - 1)
TET_OMEGA_CAPACITY = tet_number(TET_LAYER_CAPACITY)

# single-row moves of the correction before rows fall back to the exact integer root
LADDER_STEPS = 8


class IndexRangeError(ValueError):
    """Raised when a linear index or coordinate lies outside the domain of a map."""


def _check_index(value: int, upper: Optional[int], what: str) -> int:
    value = int(value)
    if value < 0 or (upper is not None and value >= upper):
        bound = "" if upper is None else f" < {upper}"
        raise IndexRangeError(f"{what} must satisfy 0 <= {what}{bound}, got {value}.")
    return value


def _check_omega_capacity(omega: types.IntArray, capacity: int) -> types.IntArray:
    if omega.size > 0 and int(omega.max()) >= capacity:
        raise CapacityError(
            f"omega={int(omega.max())} exceeds the largest index {capacity - 1} resolvable in int64."
        )
    return omega


def floor_rows(estimate: types.FloatArray, lowest: int, highest: int) -> types.IntArray:
    """Floor of real row estimates clipped to `[lowest, highest]`; NaN counts as `lowest`."""
    estimate = np.nan_to_num(estimate, nan=lowest, posinf=highest, neginf=lowest)
    return np.floor(np.clip(estimate, lowest, highest)).astype(np.int64)


def correct_rows(
    omega: types.IntArray,
    rows: types.IntArray,
    first: Callable[[types.IntArray], types.IntArray],
    exact: Callable[[int], int],
    lowest: int = 0,
    steps: int = LADDER_STEPS,
) -> types.IntArray:
    """Move estimated rows until `first(row) <= omega < first(row + 1)`.

    Rows move one step at a time, at most `steps` times; rows still off after that are replaced by
    `exact(omega)`. Estimates must not exceed the row of the largest admissible `omega`.

    :param omega: Linear indices.
    :param rows: Row estimates, modified in place.
    :param first: Linear index of the first element of a row.
    :param exact: Row of a single index in exact integer arithmetic.
    :param lowest: Smallest admissible row.
    :param steps: Number of single-row moves.
    :returns: Corrected rows.
    """
    np.maximum(rows, lowest, out=rows)
    for _ in range(steps):
        over = first(rows) > omega
        under = first(rows + 1) <= omega
        if not (over.any() or under.any()):
            return rows
        rows[over] -= 1
        rows[under] += 1

    off = np.flatnonzero((first(rows) > omega) | (first(rows + 1) <= omega))
    if off.size > 0:
        rows[off] = [exact(int(w)) for w in omega[off]]
    return rows


def _tri_first_nodiag(rows: types.IntArray) -> types.IntArray:
    return rows * (rows - 1) // 2


def _tri_row_nodiag(omega: int) -> int:
    return tri_root(omega) + 1


def ltm_rows(
    omega: types.IntArray, sqrt: SqrtStrategy = EXACT, correct: bool = True
) -> tuple[types.IntArray, types.IntArray]:
    """Vectorized `ltm_map`; returns row and column arrays.

    :raises CapacityError: Some `omega` is not below `LTM_OMEGA_CAPACITY`.
    """
    omega = _check_omega_capacity(np.asarray(omega, dtype=np.int64), LTM_OMEGA_CAPACITY)
    root = sqrt_array(sqrt, 0.25 + 2.0 * omega.astype(np.float64))
    i = floor_rows(root - 0.5, 0, TRI_ROW_CAPACITY - 1)
    if correct:
        i = correct_rows(omega, i, tri_numbers, tri_root)
    return i, omega - tri_numbers(i)


def ltm_rows_nodiag(
    omega: types.IntArray, sqrt: SqrtStrategy = EXACT, correct: bool = True
) -> tuple[types.IntArray, types.IntArray]:
    """Vectorized `ltm_map_nodiag`; returns row and column arrays.

    :raises CapacityError: Some `omega` is not below `LTM_NODIAG_OMEGA_CAPACITY`.
    """
    omega = _check_omega_capacity(np.asarray(omega, dtype=np.int64), LTM_NODIAG_OMEGA_CAPACITY)
    root = sqrt_array(sqrt, 0.25 + 2.0 * omega.astype(np.float64))
    i = floor_rows(root + 0.5, 1, TRI_ROW_CAPACITY - 1)
    if correct:
        i = correct_rows(omega, i, _tri_first_nodiag, _tri_row_nodiag, lowest=1)
    return i, omega - _tri_first_nodiag(i)


def ltm_map(omega: int, m: Optional[int] = None, sqrt: SqrtStrategy = EXACT, correct: bool = True) -> Coord2:
    """Map a linear block index onto the lower triangle including the diagonal.

    Example:
        >>> ltm_map(7)
        Coord2(i=3, j=1)

    :param omega: Linear block index.
    :param m: Blocks per side of the triangle; when given, `omega < m(m+1)/2` is enforced.
    :param sqrt: Square-root strategy.
    :param correct: Apply the integer row correction.
    :raises IndexRangeError: `omega` is outside the triangle.
    :raises CapacityError: `omega` is not below `LTM_OMEGA_CAPACITY`.
    """
    omega = _check_index(omega, None if m is None else tri_number(m), "omega")
    i, j = ltm_rows(np.array([omega], dtype=np.int64), sqrt, correct)
    return Coord2(int(i[0]), int(j[0]))


def ltm_map_nodiag(
    omega: int, m: Optional[int] = None, sqrt: SqrtStrategy = EXACT, correct: bool = True
) -> Coord2:
    """Map a linear block index onto the strict lower triangle.

    Rows start at 1: `i = floor(sqrt(1/4 + 2 omega) + 1/2)`, `j = omega - i(i-1)/2`.

    :param omega: Linear block index.
    :param m: Blocks per side; when given, `omega < m(m-1)/2` is enforced.
    :param sqrt: Square-root strategy.
    :param correct: Apply the integer row correction.
    :raises IndexRangeError: `omega` is outside the triangle.
    :raises CapacityError: `omega` is not below `LTM_NODIAG_OMEGA_CAPACITY`.
    """
    omega = _check_index(omega, None if m is None else tri_number(m - 1), "omega")
    i, j = ltm_rows_nodiag(np.array([omega], dtype=np.int64), sqrt, correct)
    return Coord2(int(i[0]), int(j[0]))


def bb_keep(bx: types.IntOrArray, by: types.IntOrArray) -> types.BoolArray:
    """Vectorized block filter of `bb_map`: the block intersects the lower triangle."""
    return np.asarray(by) >= np.asarray(bx)


def bb_map(
    bx: int, by: int, diag: bool = True, m: Optional[int] = None, rho: Optional[int] = None
) -> MapResult:
    """Bounding-box map of grid block `(bx, by)`.

    Blocks that intersect the triangle are kept as data-space block `(by, bx)`. Blocks straddling
    the diagonal are kept; their threads are filtered one by one.

    :param bx: Block column.
    :param by: Block row.
    :param diag: Whether the diagonal belongs to the domain.
    :param m: Blocks per side; when given, the coordinates are range checked.
    :param rho: Block size; a diagonal block of a diagonal-free domain is discarded when it is 1.
    :returns: Data-space block coordinate or `DISCARD`.
    """
    bx = _check_index(bx, m, "bx")
    by = _check_index(by, m, "by")
    if not bb_keep(bx, by) or (by == bx and not diag and rho == 1):
        return DISCARD
    return Coord2(by, bx)


def _tet_layers_estimate(omega: types.IntArray, sqrt: SqrtStrategy) -> types.IntArray:
    """Layer of the real root of `x^3 + 3x^2 + 2x - 6 omega = 0` by the closed form."""
    w = np.maximum(omega, 1).astype(np.float64)
    inner = np.cbrt(sqrt_array(sqrt, 729.0 * w * w - 3.0) + 27.0 * w)
    x = inner / 3.0 ** (2.0 / 3.0) + 1.0 / (np.cbrt(3.0) * inner) - 1.0
    k = floor_rows(x, 0, TET_LAYER_CAPACITY - 1)
    # the radicand is negative at omega = 0
    k[omega == 0] = 0
    return k


def tet_blocks(
    omega: types.IntArray, sqrt: SqrtStrategy = EXACT, correct: bool = True
) -> tuple[types.IntArray, types.IntArray, types.IntArray]:
    """Vectorized `tet_map`; returns row, column and layer arrays.

    :raises CapacityError: Some `omega` is not below `TET_OMEGA_CAPACITY`.
    """
    omega = _check_omega_capacity(np.asarray(omega, dtype=np.int64), TET_OMEGA_CAPACITY)
    k = _tet_layers_estimate(omega, sqrt)
    if correct:
        k = correct_rows(omega, k, tet_numbers, tet_root)
    omega_2d = omega - tet_numbers(k)
    i, j = ltm_rows(omega_2d, sqrt, correct)
    return i, j, k


def tet_map(omega: int, m: Optional[int] = None, sqrt: SqrtStrategy = EXACT, correct: bool = True) -> Coord3:
    """Map a linear block index onto the tetrahedron.

    The layer `k` solves `tet_number(k) <= omega < tet_number(k+1)`; the remainder
    `omega - tet_number(k)` is placed inside layer `k` by `ltm_map`.

    Example:
        >>> tet_map(9)
        Coord3(i=2, j=2, k=2)

    :param omega: Linear block index.
    :param m: Layers of blocks; when given, `omega < tet_number(m)` is enforced.
    :param sqrt: Square-root strategy.
    :param correct: Apply the integer layer and row corrections.
    :raises IndexRangeError: `omega` is outside the tetrahedron.
    :raises CapacityError: `omega` is not below `TET_OMEGA_CAPACITY`.
    """
    omega = _check_index(omega, None if m is None else tet_number(m), "omega")
    i, j, k = tet_blocks(np.array([omega], dtype=np.int64), sqrt, correct)
    return Coord3(int(i[0]), int(j[0]), int(k[0]))
