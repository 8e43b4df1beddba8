from __future__ import annotations

from attrs import field, frozen
from attrs.validators import ge
import numpy as np

from trimap.core import typing as types


@frozen(slots=False, eq=False)
class Tile:
    """Block-local staging buffer, the simulator's model of shared memory.

    A block covering rows `[r0, r0 + rho)` and columns `[c0, c0 + rho)` stages the `rho` row
    records and the `rho` column records it touches. Thread `(ly, lx)` then reads its pair from
    the tile instead of the global array, which gives `rho x rho` record pairs per block.

    :param rows: Staged row records, shape `(blocks, rho, record)`.
    :param cols: Staged column records, shape `(blocks, rho, record)`.
    :param rho: Block size.
    """

    rows: types.FloatArray = field()
    cols: types.FloatArray = field()
    rho: int = field(validator=ge(1))

    @classmethod
    def stage(
        cls, data: types.FloatArray, row_origin: types.IntArray, col_origin: types.IntArray, rho: int
    ) -> Tile:
        """Load the footprint of every block from the global records.

        Entries past the last record are zero filled.
        """
        return cls(_load(data, row_origin, rho), _load(data, col_origin, rho), rho)

    @property
    def size(self) -> int:
        """Record pairs addressable per block."""
        return self.rho * self.rho

    def records(
        self, block: types.IntArray, local: types.IntArray
    ) -> tuple[types.FloatArray, types.FloatArray]:
        """Row and column records of threads `local` (row-major in the block) of blocks `block`."""
        ly, lx = np.divmod(local, self.rho)
        return self.rows[block, ly], self.cols[block, lx]


def _load(data: types.FloatArray, origin: types.IntArray, rho: int) -> types.FloatArray:
    index = np.asarray(origin, dtype=np.int64)[:, None] + np.arange(rho, dtype=np.int64)
    inside = index < data.shape[0]
    staged = data[np.minimum(index, data.shape[0] - 1)]
    staged[~inside] = 0.0
    return staged
