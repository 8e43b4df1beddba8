"""Triangular and tetrahedral numbers and their integer inverses.

All index arithmetic of the package is bounded by the signed 64-bit range, since coordinates are
processed as `numpy.int64` arrays. Scalar functions check that capacity explicitly.
"""
from __future__ import annotations

from typing import Callable
import math

import numpy as np

from trimap.core import typing as types


INDEX_CAPACITY = int(np.iinfo(np.int64).max)


class CapacityError(OverflowError):
    """Raised when a figurate number does not fit into the 64-bit index capacity."""


def _check_capacity(value: int, what: str) -> int:
    if value > INDEX_CAPACITY:
        raise CapacityError(f"{what} = {value} exceeds the 64-bit index capacity {INDEX_CAPACITY}.")
    return value


def _largest_argument(product: Callable[[int], int], start: int) -> int:
    """Largest `r` whose unreduced `product(r)` fits into the index capacity."""
    r = start
    while product(r) > INDEX_CAPACITY:
        r -= 1
    while product(r + 1) <= INDEX_CAPACITY:
        r += 1
    return r


# largest arguments of the vectorized functions, whose numerators are formed in int64
TRI_ROW_CAPACITY = _largest_argument(lambda r: r * (r + 1), math.isqrt(INDEX_CAPACITY))
TET_LAYER_CAPACITY = _largest_argument(lambda r: r * (r + 1) * (r + 2), round(INDEX_CAPACITY ** (1 / 3)))


def _check_arguments(r: types.IntArray, capacity: int, what: str) -> types.IntArray:
    if r.size > 0 and int(r.max()) > capacity:
        raise CapacityError(f"{what}({int(r.max())}) overflows int64, arguments are limited to {capacity}.")
    return r


def tri_number(r: int) -> int:
    """Triangular number `r(r+1)/2`.

    :param r: Non-negative integer.
    :returns: Sum of `1..r`.
    :raises ValueError: `r` is negative.
    :raises CapacityError: The result does not fit into a signed 64-bit integer.
    """
    r = int(r)
    if r < 0:
        raise ValueError(f"Triangular number of a negative integer {r} is not defined.")
    return _check_capacity(r * (r + 1) // 2, f"tri_number({r})")


def tet_number(r: int) -> int:
    """Tetrahedral number `r(r+1)(r+2)/6`.

    :param r: Non-negative integer.
    :returns: Sum of `tri_number(1..r)`.
    :raises ValueError: `r` is negative.
    :raises CapacityError: The result does not fit into a signed 64-bit integer.
    """
    r = int(r)
    if r < 0:
        raise ValueError(f"Tetrahedral number of a negative integer {r} is not defined.")
    return _check_capacity(r * (r + 1) * (r + 2) // 6, f"tet_number({r})")


def tri_numbers(r: types.IntArray) -> types.IntArray:
    """Vectorized `tri_number` on int64 arrays.

    :raises CapacityError: Some argument exceeds `TRI_ROW_CAPACITY`.
    """
    r = _check_arguments(np.asarray(r, dtype=np.int64), TRI_ROW_CAPACITY, "tri_numbers")
    return r * (r + 1) // 2


def tet_numbers(r: types.IntArray) -> types.IntArray:
    """Vectorized `tet_number` on int64 arrays.

    :raises CapacityError: Some argument exceeds `TET_LAYER_CAPACITY`.
    """
    r = _check_arguments(np.asarray(r, dtype=np.int64), TET_LAYER_CAPACITY, "tet_numbers")
    return r * (r + 1) * (r + 2) // 6


def tri_root(value: int) -> int:
    """Largest `r` with `tri_number(r) <= value`, in exact integer arithmetic."""
    if value < 0:
        raise ValueError(f"Expected a non-negative value, got {value}.")
    r = (math.isqrt(8 * value + 1) - 1) // 2
    return r


def tet_root(value: int) -> int:
    """Largest `r` with `tet_number(r) <= value`, in exact integer arithmetic."""
    if value < 0:
        raise ValueError(f"Expected a non-negative value, got {value}.")
    r = int(round((6 * value) ** (1 / 3)))
    while r > 0 and r * (r + 1) * (r + 2) // 6 > value:
        r -= 1
    while (r + 1) * (r + 2) * (r + 3) // 6 <= value:
        r += 1
    return r


def icbrt_ceil(value: int) -> int:
    """Smallest `s` with `s**3 >= value`."""
    if value < 0:
        raise ValueError(f"Expected a non-negative value, got {value}.")
    s = int(round(value ** (1 / 3)))
    while s > 0 and (s - 1) ** 3 >= value:
        s -= 1
    while s**3 < value:
        s += 1
    return s


def isqrt_ceil(value: int) -> int:
    """Smallest `s` with `s**2 >= value`."""
    if value < 0:
        raise ValueError(f"Expected a non-negative value, got {value}.")
    s = math.isqrt(value)
    return s if s * s == value else s + 1
