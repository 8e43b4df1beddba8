"""Exhaustive enumeration of the problem domains.

The enumerations are the ground truth every map is validated against. Position `w` of an
enumeration holds the element whose linear index is `w`:

    0,0                      0
    1,0  1,1                 1  2
    2,0  2,1  2,2            3  4  5
    ...  i,j                 i(i+1)/2 + j

Without the diagonal the strict lower triangle is enumerated in the same row-major order starting
at `(1, 0)`. A tetrahedron is enumerated layer after layer, each layer `k` in the triangular order.
"""
from __future__ import annotations

import numpy as np

from trimap.core import typing as types
from trimap.core.models import Coord2, Coord3, TetDomain, TriDomain
from trimap.domain.figurate import tet_numbers, tri_numbers


def tri_coords(d: TriDomain) -> tuple[types.IntArray, types.IntArray]:
    """Row and column arrays of the enumeration of a triangular domain."""
    rows = np.arange(d.n, dtype=np.int64)
    lengths = rows + 1 if d.include_diagonal else rows
    i = np.repeat(rows, lengths)
    starts = np.repeat(np.cumsum(lengths) - lengths, lengths)
    j = np.arange(i.size, dtype=np.int64) - starts
    return i, j


def tet_coords(d: TetDomain) -> tuple[types.IntArray, types.IntArray, types.IntArray]:
    """Row, column and layer arrays of the enumeration of a tetrahedral domain."""
    layers = np.arange(d.n, dtype=np.int64)
    layer_sizes = tri_numbers(layers + 1)
    k = np.repeat(layers, layer_sizes)
    omega_2d = np.arange(k.size, dtype=np.int64) - np.repeat(tet_numbers(layers), layer_sizes)
    # the triangle of the largest layer contains every smaller layer as its prefix
    i_all, j_all = tri_coords(TriDomain(d.n))
    return i_all[omega_2d], j_all[omega_2d], k


def tri_linear_index(
    i: types.IntOrArray, j: types.IntOrArray, include_diagonal: bool = True
) -> types.IntOrArray:
    """Inverse of the triangular enumeration: linear index of `(i, j)`."""
    row = i if include_diagonal else i - 1
    return row * (row + 1) // 2 + j


def tet_linear_index(i: types.IntOrArray, j: types.IntOrArray, k: types.IntOrArray) -> types.IntOrArray:
    """Inverse of the tetrahedral enumeration: linear index of `(i, j, k)`."""
    return k * (k + 1) * (k + 2) // 6 + i * (i + 1) // 2 + j


def enumerate_tri(d: TriDomain) -> tuple[Coord2, ...]:
    """Elements of a triangular domain in linear-index order.

    :param d: Triangular domain.
    :returns: Coordinates; position `w` holds the element with linear index `w`.
    """
    i, j = tri_coords(d)
    return tuple(Coord2(int(a), int(b)) for a, b in zip(i, j))


def enumerate_tet(d: TetDomain) -> tuple[Coord3, ...]:
    """Elements of a tetrahedral domain in linear-index order.

    :param d: Tetrahedral domain.
    :returns: Coordinates; position `w` holds the element with linear index `w`.
    """
    i, j, k = tet_coords(d)
    return tuple(Coord3(int(a), int(b), int(c)) for a, b, c in zip(i, j, k))
