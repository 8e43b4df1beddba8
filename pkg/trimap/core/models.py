from __future__ import annotations

from typing import Any, Iterator, Optional, Union
from enum import Enum
import math

from attrs import converters, field, frozen
from attrs.validators import and_, deep_iterable, ge, gt, instance_of


class Strategy(str, Enum):
    """Grid-to-domain mapping strategy."""

    BB = "bb"
    LTM = "ltm"
    LTM_NODIAG = "ltm-nodiag"
    RB = "rb"
    REC = "rec"
    UTM = "utm"
    BB3 = "bb3"
    TET = "tet"

    @property
    def dims(self) -> int:
        """Dimension of the data space and of a block."""
        return 3 if self in (Strategy.BB3, Strategy.TET) else 2

    @property
    def thread_space(self) -> bool:
        """Does the strategy map individual threads rather than whole blocks?"""
        return self in (Strategy.RB, Strategy.UTM)

    @property
    def uses_sqrt(self) -> bool:
        """Does the map evaluate a square root (and so depend on the square-root strategy)?"""
        return self in (Strategy.LTM, Strategy.LTM_NODIAG, Strategy.UTM, Strategy.TET)


class Workload(str, Enum):
    """Work executed by every thread that survives the domain filter."""

    DUMMY = "dummy"
    EDM = "edm"
    COLLISION_3D = "collision-3d"
    COLLISION_1D = "collision-1d"

    @property
    def collision_dim(self) -> int | None:
        """Spatial dimension of a collision workload, None for the others."""
        return {Workload.COLLISION_3D: 3, Workload.COLLISION_1D: 1}.get(self)


class SqrtKind(str, Enum):
    """Square-root evaluation used inside the maps."""

    EXACT = "exact"
    NEWTON = "newton"
    RSQRT = "rsqrt"


class Discard(Enum):
    """Marker returned by a block map for a launched block that does no work."""

    BLOCK = "discard"


DISCARD = Discard.BLOCK


@frozen
class Coord2:
    """Block or element coordinate in a triangular data space (row `i`, column `j`)."""

    i: int = field(converter=int, validator=ge(0))
    j: int = field(converter=int, validator=ge(0))

    def __add__(self, other: Coord2) -> Coord2:
        return Coord2(self.i + other.i, self.j + other.j)

    def __iter__(self) -> Iterator[int]:
        return iter((self.i, self.j))


@frozen
class Coord3:
    """Coordinate in a tetrahedral data space: row `i` and column `j` inside layer `k`."""

    i: int = field(converter=int, validator=ge(0))
    j: int = field(converter=int, validator=ge(0))
    k: int = field(converter=int, validator=ge(0))

    def __iter__(self) -> Iterator[int]:
        return iter((self.i, self.j, self.k))


MapResult = Union[Coord2, Coord3, Discard]


@frozen
class TriDomain:
    """Triangular problem domain of `n` rows.

    Elements are `(i, j)` with `0 <= j <= i < n`, or `0 <= j < i < n` without the diagonal.

    :param n: Linear size (number of rows).
    :param include_diagonal: Whether the diagonal `i == j` belongs to the domain.
    """

    n: int = field(converter=int, validator=ge(1))
    include_diagonal: bool = field(default=True, converter=bool)

    @property
    def size(self) -> int:
        """Number of elements."""
        from trimap.domain.figurate import tri_number

        return tri_number(self.n) if self.include_diagonal else tri_number(self.n - 1)

    def contains(self, coord: Coord2) -> bool:
        """Is the coordinate an element of the domain?"""
        if self.include_diagonal:
            return coord.j <= coord.i < self.n
        return coord.j < coord.i < self.n

    def linear_index(self, coord: Coord2) -> int:
        """Position of an element in the row-major enumeration of the domain."""
        if not self.contains(coord):
            raise ValueError(f"{coord} is not an element of {self}.")
        row = coord.i if self.include_diagonal else coord.i - 1
        return row * (row + 1) // 2 + coord.j


@frozen
class TetDomain:
    """Tetrahedral problem domain made of `n` stacked triangular layers.

    Layer `k` holds the elements `(i, j, k)` with `0 <= j <= i <= k`.

    :param n: Number of layers.
    """

    n: int = field(converter=int, validator=ge(1))

    @property
    def size(self) -> int:
        """Number of elements."""
        from trimap.domain.figurate import tet_number

        return tet_number(self.n)

    def contains(self, coord: Coord3) -> bool:
        """Is the coordinate an element of the domain?"""
        return coord.j <= coord.i <= coord.k < self.n

    def linear_index(self, coord: Coord3) -> int:
        """Position of an element in the layer-major enumeration of the domain."""
        from trimap.domain.figurate import tet_number, tri_number

        if not self.contains(coord):
            raise ValueError(f"{coord} is not an element of {self}.")
        return tet_number(coord.k) + tri_number(coord.i) + coord.j


Domain = Union[TriDomain, TetDomain]


@frozen
class GridSpec:
    """Launch grid of a strategy.

    :param strategy: Strategy the grid was sized for.
    :param rho: Dimensional block size (threads per block per dimension).
    :param extents: Number of blocks along each grid dimension.
    :param base: Base size `m` of the recursive layout (REC only).
    :param levels: Number of recursion levels `k` of the recursive layout (REC only).
    """

    strategy: Strategy = field(converter=Strategy)
    rho: int = field(converter=int, validator=ge(1))
    extents: tuple[int, ...] = field(
        converter=tuple, validator=deep_iterable(member_validator=and_(instance_of(int), ge(0)))
    )
    base: Optional[int] = field(default=None, converter=converters.optional(int), kw_only=True)
    levels: Optional[int] = field(default=None, converter=converters.optional(int), kw_only=True)

    @property
    def blocks(self) -> int:
        """Number of launched blocks."""
        return math.prod(self.extents)

    @property
    def threads_per_block(self) -> int:
        """Number of threads in one block."""
        return self.rho**self.strategy.dims

    @property
    def threads(self) -> int:
        """Number of launched threads."""
        return self.blocks * self.threads_per_block


@frozen
class WasteBreakdown:
    """Unnecessary threads of a dispatch, split by where they were launched.

    :param above_diagonal: In-bounds threads of blocks that hold no domain element.
    :param diagonal_block: In-bounds, out-of-domain threads of blocks that do hold domain elements.
    :param padding: Threads outside the `n x n` square (`n^3` cube) or without a data-space coordinate.
    """

    above_diagonal: int = field(default=0, converter=int, validator=ge(0))
    diagonal_block: int = field(default=0, converter=int, validator=ge(0))
    padding: int = field(default=0, converter=int, validator=ge(0))

    @property
    def total(self) -> int:
        return self.above_diagonal + self.diagonal_block + self.padding

    @property
    def out_of_domain(self) -> int:
        """In-bounds threads that fall outside the domain."""
        return self.above_diagonal + self.diagonal_block

    def __add__(self, other: WasteBreakdown) -> WasteBreakdown:
        return WasteBreakdown(
            above_diagonal=self.above_diagonal + other.above_diagonal,
            diagonal_block=self.diagonal_block + other.diagonal_block,
            padding=self.padding + other.padding,
        )


@frozen(slots=False)
class SimulationReport:
    """Outcome of one simulated kernel launch.

    Two reports of identical launches compare equal; timing and raw outputs are not compared.

    :param strategy: Strategy that was dispatched.
    :param workload: Workload executed per surviving thread.
    :param dispatched_threads: Threads launched by the grid.
    :param useful_threads: Threads that executed the workload.
    :param discarded_threads: Threads that did no work.
    :param dispatched_blocks: Blocks launched by the grid.
    :param discarded_blocks: Blocks in which no thread executed the workload.
    :param output_digest: SHA-256 of the workload output.
    :param waste: Discarded threads split by category.
    :param wall_time_ns: Duration of the dispatch in nanoseconds.
    :param output: Workload output (digest sum, packed distances or colliding pair indices).
    :param element_counts: Per-element execution counters, when requested.
    """

    strategy: Strategy = field(converter=Strategy)
    workload: Workload = field(converter=Workload)
    dispatched_threads: int = field(converter=int, validator=ge(0))
    useful_threads: int = field(converter=int, validator=ge(0))
    discarded_threads: int = field(converter=int, validator=ge(0))
    dispatched_blocks: int = field(converter=int, validator=ge(0))
    discarded_blocks: int = field(converter=int, validator=ge(0))
    output_digest: str = field(validator=instance_of(str))
    waste: WasteBreakdown = field(validator=instance_of(WasteBreakdown))
    wall_time_ns: int = field(default=0, converter=int, eq=False)
    output: Any = field(default=None, eq=False, repr=False)
    element_counts: Any = field(default=None, eq=False, repr=False)

    def __attrs_post_init__(self) -> None:
        if self.dispatched_threads != self.useful_threads + self.discarded_threads:
            raise ValueError(
                f"Dispatched threads {self.dispatched_threads} != useful {self.useful_threads}"
                f" + discarded {self.discarded_threads}."
            )
        if self.waste.total != self.discarded_threads:
            raise ValueError(f"Waste {self.waste} does not add up to {self.discarded_threads} threads.")

    @property
    def waste_fraction(self) -> float:
        """Share of dispatched threads that did no work."""
        if self.dispatched_threads == 0:
            return 0.0
        return self.discarded_threads / self.dispatched_threads


@frozen(slots=False)
class BenchmarkRecord:
    """Timing of one (strategy, workload, n) configuration.

    Only the measured fields are part of the CSV row; `rsd` and `flagged` describe timing stability.

    :param strategy: Strategy tag.
    :param workload: Workload tag.
    :param n: Domain size.
    :param rho: Dimensional block size.
    :param sqrt_strategy: Square-root strategy used by the map.
    :param repetitions: Number of timed repetitions.
    :param median_time: Median wall time in nanoseconds.
    :param improvement_I: `t_BB / t_strategy` for the same workload, n and rho.
    :param waste_fraction: Discarded share of dispatched threads.
    :param rsd: Relative standard deviation of the repetitions.
    :param flagged: The rsd exceeded the configured stability threshold.
    """

    strategy: Strategy = field(converter=Strategy)
    workload: Workload = field(converter=Workload)
    n: int = field(converter=int, validator=ge(1))
    rho: int = field(converter=int, validator=ge(1))
    sqrt_strategy: SqrtKind = field(converter=SqrtKind)
    repetitions: int = field(converter=int, validator=ge(1))
    median_time: int = field(converter=int, validator=ge(0))
    improvement_I: float = field(converter=float, validator=gt(0))
    waste_fraction: float = field(converter=float, validator=ge(0))
    rsd: float = field(default=0.0, converter=float, eq=False)
    flagged: bool = field(default=False, converter=bool, eq=False)

    @property
    def label(self) -> str:
        """Series label: strategy tag, qualified by the square root when it is not exact."""
        if self.sqrt_strategy is SqrtKind.EXACT or not self.strategy.uses_sqrt:
            return self.strategy.value
        return f"{self.strategy.value}-{self.sqrt_strategy.value}"
