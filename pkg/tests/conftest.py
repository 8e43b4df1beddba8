from __future__ import annotations

from typing import TYPE_CHECKING

import pytest
from pytest_cases import fixture, param_fixture


if TYPE_CHECKING:
    from trimap import Simulator


# sizes of the exhaustive oracle sweeps: odd sizes, powers of two and non-multiples of the block size
SIZES_2D = (
    1, 2, 3, 4, 5, 7, 8, 15, 16, 17, 31, 32, 33, 63, 64, 100, 127, 128, 255, 256, 511, 777, 1000, 1024
)
SIZES_2D_SLOW = (1536, 2047, 2048)
SIZES_3D = (1, 2, 3, 4, 5, 8, 13, 16, 31, 32, 64)


n_2d = param_fixture("n_2d", SIZES_2D)
include_diagonal = param_fixture("include_diagonal", [True, False], ids=["diag", "nodiag"])
rho = param_fixture("rho", [1, 2, 4, 16])


@fixture
def simulator() -> "Simulator":
    """Single-worker simulator with small batches so that dispatches span several batches."""
    from trimap import Simulator

    return Simulator(num_workers=1, batch_blocks=7)


@pytest.fixture
def parallel_simulator() -> "Simulator":
    from trimap import Simulator

    return Simulator(num_workers=3, batch_blocks=5, backend="threading")
