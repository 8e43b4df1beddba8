from __future__ import annotations

import pytest


def test_enumerate_tri_small() -> None:
    from trimap import Coord2, TriDomain, enumerate_tri

    assert enumerate_tri(TriDomain(3)) == (
        Coord2(0, 0),
        Coord2(1, 0),
        Coord2(1, 1),
        Coord2(2, 0),
        Coord2(2, 1),
        Coord2(2, 2),
    )
    assert enumerate_tri(TriDomain(3, include_diagonal=False)) == (Coord2(1, 0), Coord2(2, 0), Coord2(2, 1))
    assert enumerate_tri(TriDomain(1, include_diagonal=False)) == ()


def test_enumerate_tet_small() -> None:
    from trimap import Coord3, TetDomain, enumerate_tet

    elements = enumerate_tet(TetDomain(3))
    assert len(elements) == 10
    assert elements[:5] == (
        Coord3(0, 0, 0),
        Coord3(0, 0, 1),
        Coord3(1, 0, 1),
        Coord3(1, 1, 1),
        Coord3(0, 0, 2),
    )


@pytest.mark.parametrize("n", [1, 2, 7, 16, 33])
@pytest.mark.parametrize("include_diagonal", [True, False], ids=["diag", "nodiag"])
def test_tri_enumeration_is_linear_index_order(n: int, include_diagonal: bool) -> None:
    import numpy as np

    from trimap import Coord2, TriDomain
    from trimap.domain import tri_coords, tri_linear_index

    domain = TriDomain(n, include_diagonal=include_diagonal)
    i, j = tri_coords(domain)

    assert i.size == domain.size
    assert ((j <= i) if include_diagonal else (j < i)).all()
    np.testing.assert_array_equal(tri_linear_index(i, j, include_diagonal), np.arange(domain.size))
    for w in range(0, domain.size, max(domain.size // 3, 1)):
        assert domain.linear_index(Coord2(i[w], j[w])) == w


@pytest.mark.parametrize("n", [1, 2, 5, 12])
def test_tet_enumeration_is_linear_index_order(n: int) -> None:
    import numpy as np

    from trimap import Coord3, TetDomain
    from trimap.domain import tet_coords, tet_linear_index

    domain = TetDomain(n)
    i, j, k = tet_coords(domain)

    assert i.size == domain.size
    assert ((j <= i) & (i <= k) & (k < n)).all()
    np.testing.assert_array_equal(tet_linear_index(i, j, k), np.arange(domain.size))
    assert domain.linear_index(Coord3(i[-1], j[-1], k[-1])) == domain.size - 1


def test_domain_contains() -> None:
    from trimap import Coord2, Coord3, TetDomain, TriDomain

    assert TriDomain(4).contains(Coord2(3, 3))
    assert not TriDomain(4, include_diagonal=False).contains(Coord2(3, 3))
    assert not TriDomain(4).contains(Coord2(1, 2))
    assert TetDomain(4).contains(Coord3(1, 0, 3))
    assert not TetDomain(4).contains(Coord3(2, 0, 1))

    with pytest.raises(ValueError):
        TriDomain(4).linear_index(Coord2(0, 1))
    with pytest.raises(ValueError):
        TriDomain(0)
