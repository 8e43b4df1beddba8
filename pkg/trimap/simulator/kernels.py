"""Per-strategy expansion of launched blocks into thread coordinates.

A kernel turns a range of linear block ids of the grid into a `ThreadBatch`: the data-space
coordinate of every thread of the blocks the map keeps. Blocks the map discards exit before any
per-thread work and are only counted.

Threads are numbered row-major inside a block: `ly = l // rho`, `lx = l % rho` in 2D and
`lz = l // rho^2` in front in 3D. Grid blocks are numbered row-major over the grid extents.
"""
from __future__ import annotations

from typing import TYPE_CHECKING, Callable, Optional

from attrs import field, frozen
import numpy as np

from trimap.core import typing as types
from trimap.core.models import Strategy
from trimap.domain.figurate import tet_number, tri_number
from trimap.maps.block import bb_keep, ltm_rows, ltm_rows_nodiag, tet_blocks
from trimap.maps.grid import ltm_nodiag_blocks
from trimap.maps.recursive import rec_blocks
from trimap.maps.thread import rb_extents, rb_threads, utm_size, utm_threads


if TYPE_CHECKING:
    from trimap.simulator.dispatch import LaunchConfig


@frozen(slots=False, eq=False)
class ThreadBatch:
    """Threads of a batch of kept blocks.

    :param i: Row of every thread, shape `(blocks, threads_per_block)`.
    :param j: Column of every thread.
    :param k: Layer of every thread (3D only).
    :param addressed: The thread has a data-space coordinate.
    :param row_origin: First data-space row of every block (block-space strategies only).
    :param col_origin: First data-space column of every block (block-space strategies only).
    :param skipped_blocks: Launched blocks discarded by the map.
    :param skipped_in_bounds: Threads of the skipped blocks inside the `n x n` square (`n^3` cube).
    :param skipped_padding: Remaining threads of the skipped blocks.
    """

    i: types.IntArray = field()
    j: types.IntArray = field()
    k: Optional[types.IntArray] = field(default=None)
    addressed: Optional[types.BoolArray] = field(default=None)
    row_origin: Optional[types.IntArray] = field(default=None)
    col_origin: Optional[types.IntArray] = field(default=None)
    skipped_blocks: int = field(default=0)
    skipped_in_bounds: int = field(default=0)
    skipped_padding: int = field(default=0)

    @property
    def blocks(self) -> int:
        return self.i.shape[0]


def _blocks_per_side(cfg: LaunchConfig) -> int:
    return -(-cfg.domain.n // cfg.grid.rho)


def _include_diagonal(cfg: LaunchConfig) -> bool:
    return getattr(cfg.domain, "include_diagonal", True)


def _local_2d(rho: int) -> tuple[types.IntArray, types.IntArray]:
    return np.divmod(np.arange(rho * rho, dtype=np.int64), rho)


def _local_3d(rho: int) -> tuple[types.IntArray, types.IntArray, types.IntArray]:
    lz, rest = np.divmod(np.arange(rho**3, dtype=np.int64), rho * rho)
    ly, lx = np.divmod(rest, rho)
    return ly, lx, lz


def _in_bounds(origin: types.IntArray, n: int, rho: int) -> types.IntArray:
    """Threads of a block side inside `[0, n)`."""
    return np.clip(n - origin, 0, rho)


def _block_space_2d(
    rows: types.IntArray, cols: types.IntArray, rho: int, **skipped: int
) -> ThreadBatch:
    ly, lx = _local_2d(rho)
    return ThreadBatch(
        i=rows[:, None] + ly,
        j=cols[:, None] + lx,
        row_origin=rows,
        col_origin=cols,
        **skipped,  # type: ignore[arg-type]
    )


def _padding_only(blocks: int, threads_per_block: int) -> dict[str, int]:
    return {"skipped_blocks": blocks, "skipped_padding": blocks * threads_per_block}


def expand_bb(cfg: LaunchConfig, b: types.IntArray) -> ThreadBatch:
    n, rho = cfg.domain.n, cfg.grid.rho
    by, bx = np.divmod(b, cfg.grid.extents[0])
    keep = bb_keep(bx, by)
    if not _include_diagonal(cfg) and rho == 1:
        keep &= by != bx

    in_bounds = _in_bounds(by[~keep] * rho, n, rho) * _in_bounds(bx[~keep] * rho, n, rho)
    skipped = int((~keep).sum())
    skipped_in_bounds = int(in_bounds.sum())
    return _block_space_2d(
        by[keep] * rho,
        bx[keep] * rho,
        rho,
        skipped_blocks=skipped,
        skipped_in_bounds=skipped_in_bounds,
        skipped_padding=skipped * rho * rho - skipped_in_bounds,
    )


def expand_ltm(cfg: LaunchConfig, b: types.IntArray) -> ThreadBatch:
    rho = cfg.grid.rho
    valid = b < tri_number(_blocks_per_side(cfg))
    bi, bj = ltm_rows(b[valid], cfg.sqrt)
    return _block_space_2d(bi * rho, bj * rho, rho, **_padding_only(int((~valid).sum()), rho * rho))


def expand_ltm_nodiag(cfg: LaunchConfig, b: types.IntArray) -> ThreadBatch:
    rho = cfg.grid.rho
    m = _blocks_per_side(cfg)
    strict = tri_number(m - 1)
    valid = b < ltm_nodiag_blocks(m, rho)

    omega = b[valid]
    below = omega < strict
    bi = np.empty_like(omega)
    bj = np.empty_like(omega)
    bi[below], bj[below] = ltm_rows_nodiag(omega[below], cfg.sqrt)
    # diagonal blocks follow the strict block triangle
    bi[~below] = bj[~below] = omega[~below] - strict
    return _block_space_2d(bi * rho, bj * rho, rho, **_padding_only(int((~valid).sum()), rho * rho))


def expand_rec(cfg: LaunchConfig, b: types.IntArray) -> ThreadBatch:
    rows, cols = rec_blocks(b, cfg.domain.n, cfg.grid.rho, cfg.grid.levels)
    return _block_space_2d(rows, cols, cfg.grid.rho)


def expand_rb(cfg: LaunchConfig, b: types.IntArray) -> ThreadBatch:
    n, rho = cfg.domain.n, cfg.grid.rho
    diag = _include_diagonal(cfg)
    rows, cols = rb_extents(n, diag)
    by, bx = np.divmod(b, cfg.grid.extents[0])
    ly, lx = _local_2d(rho)
    tx = bx[:, None] * rho + lx
    ty = by[:, None] * rho + ly
    addressed = (tx < cols) & (ty < rows)
    i, j = rb_threads(np.where(addressed, tx, 0), np.where(addressed, ty, 0), n, diag)
    return ThreadBatch(i=i, j=j, addressed=addressed)


def expand_utm(cfg: LaunchConfig, b: types.IntArray) -> ThreadBatch:
    n, rho = cfg.domain.n, cfg.grid.rho
    diag = _include_diagonal(cfg)
    t = b[:, None] * (rho * rho) + np.arange(rho * rho, dtype=np.int64)
    addressed = t < utm_size(n, diag)
    i, j = utm_threads(np.where(addressed, t, 0), n, diag, cfg.sqrt)
    return ThreadBatch(i=i, j=j, addressed=addressed)


def _block_space_3d(
    bi: types.IntArray, bj: types.IntArray, bk: types.IntArray, rho: int, **skipped: int
) -> ThreadBatch:
    ly, lx, lz = _local_3d(rho)
    return ThreadBatch(
        i=bi[:, None] * rho + ly,
        j=bj[:, None] * rho + lx,
        k=bk[:, None] * rho + lz,
        **skipped,  # type: ignore[arg-type]
    )


def expand_bb3(cfg: LaunchConfig, b: types.IntArray) -> ThreadBatch:
    n, rho = cfg.domain.n, cfg.grid.rho
    m = cfg.grid.extents[0]
    bz, rest = np.divmod(b, m * m)
    by, bx = np.divmod(rest, m)
    keep = (bx <= by) & (by <= bz)

    drop = ~keep
    in_bounds = _in_bounds(bx[drop] * rho, n, rho) * _in_bounds(by[drop] * rho, n, rho)
    in_bounds *= _in_bounds(bz[drop] * rho, n, rho)
    skipped = int(drop.sum())
    skipped_in_bounds = int(in_bounds.sum())
    return _block_space_3d(
        by[keep],
        bx[keep],
        bz[keep],
        rho,
        skipped_blocks=skipped,
        skipped_in_bounds=skipped_in_bounds,
        skipped_padding=skipped * rho**3 - skipped_in_bounds,
    )


def expand_tet(cfg: LaunchConfig, b: types.IntArray) -> ThreadBatch:
    rho = cfg.grid.rho
    valid = b < tet_number(_blocks_per_side(cfg))
    bi, bj, bk = tet_blocks(b[valid], cfg.sqrt)
    return _block_space_3d(bi, bj, bk, rho, **_padding_only(int((~valid).sum()), rho**3))


KERNELS: dict[Strategy, Callable[[LaunchConfig, types.IntArray], ThreadBatch]] = {
    Strategy.BB: expand_bb,
    Strategy.LTM: expand_ltm,
    Strategy.LTM_NODIAG: expand_ltm_nodiag,
    Strategy.RB: expand_rb,
    Strategy.REC: expand_rec,
    Strategy.UTM: expand_utm,
    Strategy.BB3: expand_bb3,
    Strategy.TET: expand_tet,
}


def expand(cfg: LaunchConfig, start: int, stop: int) -> ThreadBatch:
    """Threads of grid blocks `[start, stop)` under the strategy of `cfg`."""
    b = np.arange(start, stop, dtype=np.int64)
    return KERNELS[cfg.strategy](cfg, b)
