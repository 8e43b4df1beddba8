from __future__ import annotations

from typing import Any, Optional
from functools import partial
import logging
import time

from attrs import field, frozen
from attrs.validators import ge, in_, instance_of
import numpy as np

from trimap.core import typing as types
from trimap.core.context import RunContext
from trimap.core.models import (
    Domain,
    GridSpec,
    SimulationReport,
    Strategy,
    TetDomain,
    TriDomain,
    WasteBreakdown,
    Workload,
)
from trimap.core.platform import FromEnvMixin
from trimap.core.utils import get_default
from trimap.domain.oracle import tet_linear_index, tri_linear_index
from trimap.maps.grid import StrategyMismatchError, grid_dims
from trimap.roots.sqrt import EXACT, SqrtStrategy
from trimap.simulator.kernels import expand
from trimap.simulator.tile import Tile
from trimap.simulator.utilization import classify_batch
from trimap.simulator.workloads import (
    collide,
    digest,
    workload_collision,
    workload_data,
    workload_dummy,
    workload_edm,
)


@frozen(slots=False)
class LaunchConfig:
    """Everything a simulated kernel launch depends on.

    :param grid: Launch grid, as produced by `grid_dims`.
    :param strategy: Mapping strategy.
    :param workload: Workload executed by the in-domain threads.
    :param domain: Triangular or tetrahedral problem domain.
    :param seed: Seed of the workload data.
    :param sqrt: Square-root strategy used by the maps.
    :param tiled: Stage collision records through a block-local `Tile`.
    :raises StrategyMismatchError: The combination of grid, strategy, domain and workload is invalid.
    """

    grid: GridSpec = field(validator=instance_of(GridSpec))
    strategy: Strategy = field(converter=Strategy)
    workload: Workload = field(converter=Workload)
    domain: Domain = field(validator=instance_of((TriDomain, TetDomain)))
    seed: int = field(factory=lambda: int(get_default("bench", "seed")), converter=int)
    sqrt: SqrtStrategy = field(default=EXACT, validator=instance_of(SqrtStrategy))
    tiled: bool = field(default=False, converter=bool)

    def __attrs_post_init__(self) -> None:
        if self.grid.strategy is not self.strategy:
            raise StrategyMismatchError(f"Grid of {self.grid.strategy.value} used for {self.strategy.value}.")

        is_3d = isinstance(self.domain, TetDomain)
        if (self.strategy.dims == 3) != is_3d:
            raise StrategyMismatchError(f"{self.strategy.value} cannot map {self.domain}.")
        if is_3d and self.workload is not Workload.DUMMY:
            raise StrategyMismatchError(
                f"Tetrahedral domains support the dummy workload only, got {self.workload.value}."
            )
        if self.workload.collision_dim is not None and self.include_diagonal:
            raise StrategyMismatchError(
                f"{self.workload.value} compares distinct pairs; use a domain without diagonal."
            )

        expected = grid_dims(
            self.strategy, self.domain.n, self.grid.rho, self.include_diagonal, levels=self.grid.levels
        )
        if expected != self.grid:
            raise StrategyMismatchError(f"Grid {self.grid} does not match {expected} for {self.domain}.")

    @property
    def include_diagonal(self) -> bool:
        return getattr(self.domain, "include_diagonal", True)

    @classmethod
    def build(
        cls,
        strategy: Strategy | str,
        workload: Workload | str,
        domain: Domain,
        rho: int,
        seed: Optional[int] = None,
        sqrt: SqrtStrategy = EXACT,
        tiled: bool = False,
        levels: Optional[int] = None,
    ) -> LaunchConfig:
        """Launch configuration with the grid sized by `grid_dims`."""
        include_diagonal = getattr(domain, "include_diagonal", True)
        grid = grid_dims(strategy, domain.n, rho, include_diagonal, levels=levels)
        kwargs: dict[str, Any] = {} if seed is None else {"seed": seed}
        return cls(grid, strategy, workload, domain, sqrt=sqrt, tiled=tiled, **kwargs)

    @property
    def domain_size(self) -> int:
        return self.domain.size


@frozen(slots=False)
class BatchResult:
    """Outcome of one batch of blocks."""

    useful: int
    waste: WasteBreakdown
    discarded_blocks: int
    elements: Optional[types.IntArray]
    payload: Any


def _linear_index(
    cfg: LaunchConfig, i: types.IntArray, j: types.IntArray, k: Optional[types.IntArray]
) -> types.IntArray:
    if k is not None:
        return tet_linear_index(i, j, k)
    return tri_linear_index(i, j, cfg.include_diagonal)


def run_batch(
    cfg: LaunchConfig, data: Optional[types.FloatArray], keep_elements: bool, bounds: tuple[int, int]
) -> BatchResult:
    """Expand, filter and execute the blocks `[start, stop)` of a launch."""
    batch = expand(cfg, *bounds)
    in_domain, waste, discarded_blocks = classify_batch(batch, cfg.domain)

    i = batch.i[in_domain]
    j = batch.j[in_domain]
    k = None if batch.k is None else batch.k[in_domain]

    elements = None
    if keep_elements or cfg.workload is not Workload.DUMMY:
        elements = _linear_index(cfg, i, j, k)

    payload: Any
    if cfg.workload is Workload.DUMMY:
        payload = workload_dummy(i, j, k)
    elif cfg.workload is Workload.EDM:
        payload = workload_edm(i, j, data)
    elif cfg.tiled and batch.row_origin is not None:
        tile = Tile.stage(data, batch.row_origin, batch.col_origin, cfg.grid.rho)
        block, local = np.nonzero(in_domain)
        payload = elements[collide(*tile.records(block, local))]
    else:
        payload = elements[workload_collision(i, j, data)]

    return BatchResult(int(in_domain.sum()), waste, discarded_blocks, elements, payload)


@frozen(slots=False)
class Simulator(FromEnvMixin):
    """Deterministic emulation of a grid dispatch.

    Launched blocks are processed in batches of `batch_blocks` consecutive block ids. Batches are
    independent; they run serially for one worker and through joblib otherwise. Results are merged
    in batch order, so every schedule gives the same report.

    :param num_workers: Number of parallel workers, 1 is the single-threaded reference mode.
    :param batch_blocks: Blocks expanded at once.
    :param backend: joblib backend.
    """

    num_workers: int = field(
        factory=lambda: int(get_default("simulator", "num_workers")), converter=int, validator=ge(1)
    )
    batch_blocks: int = field(
        factory=lambda: int(get_default("simulator", "batch_blocks")), converter=int, validator=ge(1)
    )
    backend: str = field(
        factory=lambda: str(get_default("simulator", "backend")),
        validator=in_(("threading", "loky", "multiprocessing")),
    )

    _logger: logging.Logger = field(init=False, eq=False, repr=False)

    def __attrs_post_init__(self) -> None:
        # create logger local to the class
        object.__setattr__(self, "_logger", logging.getLogger(self.__class__.__name__))

    def dispatch(
        self, cfg: LaunchConfig, count_elements: bool = False, data: Optional[types.FloatArray] = None
    ) -> SimulationReport:
        """Launch every block of the grid and run the workload on the in-domain threads.

        :param cfg: Launch configuration.
        :param count_elements: Attach per-element execution counters to the report.
        :param data: Workload records; drawn from `cfg.seed` when not given.
        :returns: Counts, waste breakdown, output and its digest.
        """
        if data is None:
            data = workload_data(cfg.workload, cfg.domain.n, cfg.seed)

        bounds = [
            (start, min(start + self.batch_blocks, cfg.grid.blocks))
            for start in range(0, cfg.grid.blocks, self.batch_blocks)
        ]
        context = RunContext(num_workers=self.num_workers, backend=self.backend)
        self._logger.debug(
            f"dispatching {cfg.strategy.value}/{cfg.workload.value} n={cfg.domain.n}: "
            f"{cfg.grid.blocks} blocks in {len(bounds)} batches"
        )
        if cfg.tiled and cfg.strategy.thread_space:
            self._logger.debug(f"{cfg.strategy.value} has no block footprint, gathering records per thread")

        start_time = time.perf_counter_ns()
        results = context.map(partial(run_batch, cfg, data, count_elements), bounds)
        output = self._merge(cfg, results)
        wall_time = time.perf_counter_ns() - start_time

        useful = sum(r.useful for r in results)
        waste = sum((r.waste for r in results), WasteBreakdown())
        element_counts = None
        if count_elements:
            element_counts = np.bincount(
                np.concatenate([r.elements for r in results] + [np.empty(0, dtype=np.int64)]),
                minlength=cfg.domain_size,
            )

        return SimulationReport(
            strategy=cfg.strategy,
            workload=cfg.workload,
            dispatched_threads=cfg.grid.threads,
            useful_threads=useful,
            discarded_threads=cfg.grid.threads - useful,
            dispatched_blocks=cfg.grid.blocks,
            discarded_blocks=sum(r.discarded_blocks for r in results),
            output_digest=digest(output),
            waste=waste,
            wall_time_ns=wall_time,
            output=output,
            element_counts=element_counts,
        )

    def _merge(self, cfg: LaunchConfig, results: tuple[BatchResult, ...]) -> Any:
        """Combine batch payloads into the workload output."""
        if cfg.workload is Workload.DUMMY:
            return sum(r.payload for r in results)

        if cfg.workload is Workload.EDM:
            distances = np.zeros(cfg.domain_size, dtype=np.float64)
            for r in results:
                distances[r.elements] = r.payload
            return distances

        pairs = np.concatenate([r.payload for r in results] + [np.empty(0, dtype=np.int64)])
        return np.unique(pairs)


def dispatch(cfg: LaunchConfig, count_elements: bool = False) -> SimulationReport:
    """Dispatch with the simulator configured by the environment."""
    return Simulator.from_env().dispatch(cfg, count_elements=count_elements)
