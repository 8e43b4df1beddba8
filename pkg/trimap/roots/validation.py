from __future__ import annotations

from typing import Optional
import logging

import numpy as np

from trimap.domain.figurate import tri_number
from trimap.maps.block import ltm_rows, ltm_rows_nodiag
from trimap.roots.sqrt import EXACT, SqrtStrategy


logger = logging.getLogger(__name__)

_CHUNK = 1 << 20


def validate_sqrt_range(
    s: SqrtStrategy,
    omega_max: int,
    include_diagonal: bool = True,
    chunk: int = _CHUNK,
    correct: bool = False,
) -> Optional[int]:
    """Find the first linear block index that a lambda map with square root `s` gets wrong.

    Every `omega` in `[0, omega_max]` is mapped with square-root strategy `s`, by default without the
    integer row correction; the result is compared with the exact map.

    :param s: Square-root strategy.
    :param omega_max: Largest index to scan (inclusive).
    :param include_diagonal: Scan the map with or without the diagonal.
    :param chunk: Number of indices evaluated at once.
    :param correct: Apply the integer row correction to the strategy under test.
    :returns: Smallest failing `omega`, None if the whole range is mapped exactly.
    """
    if omega_max < 0:
        raise ValueError(f"omega_max must be non-negative, got {omega_max}.")
    rows = ltm_rows if include_diagonal else ltm_rows_nodiag

    for start in range(0, omega_max + 1, chunk):
        omega = np.arange(start, min(start + chunk, omega_max + 1), dtype=np.int64)
        i, j = rows(omega, s, correct=correct)
        i_ref, j_ref = rows(omega, EXACT, correct=True)
        wrong = np.flatnonzero((i != i_ref) | (j != j_ref))
        if wrong.size > 0:
            first = int(omega[wrong[0]])
            logger.warning(
                f"{s.kind.value} square root maps omega={first} to row {i[wrong[0]]}"
                f" instead of {i_ref[wrong[0]]}."
            )
            return first
        logger.debug(f"{s.kind.value} square root exact up to omega={int(omega[-1])}")

    return None


def block_range(elements: int, rho: int) -> int:
    """Largest linear block index of a triangle with `elements` elements per side and block size `rho`."""
    m = -(-elements // rho)
    return tri_number(m) - 1


def sample_sqrt_range(s: SqrtStrategy, omega_max: int, samples: int, seed: int = 0) -> Optional[int]:
    """Corrected lambda map on random indices in `[0, omega_max]`; returns a failing index or None.

    Checks the row-boundary property `tri_number(i) <= omega < tri_number(i+1)` directly.
    """
    rng = np.random.default_rng(seed)
    omega = np.sort(rng.integers(0, omega_max, size=samples, endpoint=True, dtype=np.int64))
    i, j = ltm_rows(omega, s, correct=True)
    wrong = np.flatnonzero((j < 0) | (j > i))
    return None if wrong.size == 0 else int(omega[wrong[0]])
