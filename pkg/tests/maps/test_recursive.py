from __future__ import annotations

import pytest


@pytest.mark.parametrize(
    "n,rho,m,k", [(16, 16, 16, 0), (32, 8, 8, 2), (48, 4, 12, 2), (64, 1, 1, 6), (1024, 16, 16, 6)]
)
def test_rec_decompose(n: int, rho: int, m: int, k: int) -> None:
    from trimap.maps.recursive import rec_decompose

    assert rec_decompose(n, rho) == (m, k)
    assert rec_decompose(n, rho, levels=0) == (n, 0)


@pytest.mark.parametrize("n,rho,levels", [(30, 4, None), (7, 2, None), (32, 8, 3), (32, 8, -1)])
def test_rec_invalid(n: int, rho: int, levels: int | None) -> None:
    from trimap.maps import RecursiveLayoutError, grid_dims, rec_layout

    with pytest.raises(RecursiveLayoutError):
        rec_layout(n, rho, levels)
    with pytest.raises(RecursiveLayoutError):
        grid_dims("rec", n, rho, levels=levels)


def test_rec_layout() -> None:
    from trimap import Coord2, rec_layout

    layout = rec_layout(32, 8)
    assert [(lvl.level, lvl.size) for lvl in layout] == [(0, 8), (1, 8), (2, 16)]
    assert layout[0].origins == (Coord2(0, 0), Coord2(8, 8), Coord2(16, 16), Coord2(24, 24))
    assert layout[1].origins == (Coord2(8, 0), Coord2(24, 16))
    assert layout[2].origins == (Coord2(16, 0),)
    assert [lvl.blocks_per_square(8) for lvl in layout] == [1, 1, 4]


@pytest.mark.parametrize(
    "n,rho,levels",
    [(8, 1, None), (16, 4, None), (32, 8, None), (64, 4, 1), (96, 4, None), (256, 16, None), (320, 16, 2)],
)
def test_rec_blocks_cover_block_triangle(n: int, rho: int, levels: int | None) -> None:
    import numpy as np

    from trimap.domain import tri_linear_index, tri_number
    from trimap.maps.recursive import rec_blocks, rec_total_blocks

    total = rec_total_blocks(n, rho, levels)
    assert total == tri_number(n // rho)

    rows, cols = rec_blocks(np.arange(total), n, rho, levels)
    assert (rows % rho == 0).all() and (cols % rho == 0).all()
    bi, bj = rows // rho, cols // rho
    assert (bj <= bi).all()
    np.testing.assert_array_equal(np.sort(tri_linear_index(bi, bj)), np.arange(total))


def test_rec_blocks_range() -> None:
    import numpy as np

    from trimap.maps import IndexRangeError
    from trimap.maps.recursive import rec_blocks

    with pytest.raises(IndexRangeError):
        rec_blocks(np.array([10]), 32, 8)
