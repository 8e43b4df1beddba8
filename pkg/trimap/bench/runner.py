from __future__ import annotations

from typing import Callable, Iterator, Optional, Sequence
import logging

from attrs import field, frozen
from attrs.validators import deep_iterable, ge, gt, instance_of
import numpy as np

from trimap.core.models import BenchmarkRecord, Domain, SqrtKind, Strategy, TetDomain, TriDomain, Workload
from trimap.core.platform import FromEnvMixin
from trimap.core.utils import get_default
from trimap.maps.grid import StrategyMismatchError, grid_dims
from trimap.maps.recursive import RecursiveLayoutError
from trimap.roots.sqrt import SqrtStrategy
from trimap.simulator.dispatch import LaunchConfig, Simulator


class BenchmarkRefusedError(RuntimeError):
    """Raised when a strategy does not reproduce the output of the bounding-box reference."""


def _workloads(values: Sequence[Workload | str]) -> tuple[Workload, ...]:
    return tuple(Workload(v) for v in values)


def _strategies(values: Sequence[Strategy | str]) -> tuple[Strategy, ...]:
    return tuple(Strategy(v) for v in values)


def _sqrt_kinds(values: Sequence[SqrtKind | str]) -> tuple[SqrtKind, ...]:
    return tuple(SqrtKind(v) for v in values)


def _sizes(values: Sequence[int]) -> tuple[int, ...]:
    return tuple(int(v) for v in values)


@frozen(slots=False)
class BenchmarkPlan:
    """What to benchmark.

    :param workloads: Workloads to run.
    :param strategies: Strategies to time; the bounding-box reference is always timed.
    :param sizes_2d: Domain sizes of the 2D strategies.
    :param sizes_3d: Numbers of layers of the 3D strategies.
    :param rho_2d: Block size of the 2D strategies.
    :param rho_3d: Block size of the 3D strategies.
    :param sqrt_kinds: Square-root strategies of the maps that take a square root.
    :param seed: Seed of the workload data.
    :param tiled: Stage collision records through block tiles.
    """

    workloads: tuple[Workload, ...] = field(
        converter=_workloads, validator=deep_iterable(instance_of(Workload))
    )
    strategies: tuple[Strategy, ...] = field(
        converter=_strategies, validator=deep_iterable(instance_of(Strategy))
    )
    sizes_2d: tuple[int, ...] = field(
        factory=lambda: _sizes(get_default("bench", "sizes_2d")), converter=_sizes
    )
    sizes_3d: tuple[int, ...] = field(
        factory=lambda: _sizes(get_default("bench", "sizes_3d")), converter=_sizes
    )
    rho_2d: int = field(factory=lambda: int(get_default("bench", "rho_2d")), converter=int, validator=ge(1))
    rho_3d: int = field(factory=lambda: int(get_default("bench", "rho_3d")), converter=int, validator=ge(1))
    sqrt_kinds: tuple[SqrtKind, ...] = field(
        default=(SqrtKind.EXACT,),
        converter=_sqrt_kinds,
        validator=deep_iterable(instance_of(SqrtKind)),
    )
    seed: int = field(factory=lambda: int(get_default("bench", "seed")), converter=int)
    tiled: bool = field(default=False, converter=bool)

    def __attrs_post_init__(self) -> None:
        if len(self.workloads) == 0 or len(self.strategies) == 0:
            raise ValueError("At least one workload and one strategy are required.")
        if (any(s.dims == 2 for s in self.strategies) and len(self.sizes_2d) == 0) or (
            any(s.dims == 3 for s in self.strategies) and len(self.sizes_3d) == 0
        ):
            raise ValueError("The size list of a benchmarked dimension is empty.")


def reference_strategy(strategy: Strategy) -> Strategy:
    """Bounding box of the dimension of `strategy`."""
    return Strategy.BB3 if strategy.dims == 3 else Strategy.BB


def benchmark_domain(strategy: Strategy, workload: Workload, n: int) -> Domain:
    """Domain a strategy is benchmarked on: collisions skip the diagonal, 3D maps cover a tetrahedron."""
    if strategy.dims == 3:
        return TetDomain(n)
    return TriDomain(n, include_diagonal=workload.collision_dim is None)


@frozen
class SkippedConfiguration:
    """Benchmark configuration that was not timed, with the reason."""

    strategy: Strategy
    workload: Workload
    n: int
    reason: str


SkipHandler = Callable[[SkippedConfiguration], None]


def _ignore_skip(skipped: SkippedConfiguration) -> None:  # noqa: U100
    pass


@frozen(slots=False)
class BenchmarkSuite(FromEnvMixin):
    """Timing protocol of the benchmark.

    :param repetitions: Timed repetitions per configuration, at least 3.
    :param warmups: Untimed dispatches before the repetitions.
    :param rsd_threshold: Relative standard deviation above which a record is flagged as unstable.
    """

    repetitions: int = field(
        factory=lambda: int(get_default("bench", "repetitions")), converter=int, validator=ge(3)
    )
    warmups: int = field(factory=lambda: int(get_default("bench", "warmups")), converter=int, validator=ge(0))
    rsd_threshold: float = field(
        factory=lambda: float(get_default("bench", "rsd_threshold")), converter=float, validator=gt(0)
    )

    _logger: logging.Logger = field(init=False, eq=False, repr=False)

    def __attrs_post_init__(self) -> None:
        # create logger local to the class
        object.__setattr__(self, "_logger", logging.getLogger(self.__class__.__name__))

    def time(self, simulator: Simulator, cfg: LaunchConfig) -> tuple[int, float]:
        """Median wall time in nanoseconds and relative standard deviation of `cfg`."""
        for _ in range(self.warmups):
            simulator.dispatch(cfg)
        times = np.array(
            [simulator.dispatch(cfg).wall_time_ns for _ in range(self.repetitions)], dtype=np.float64
        )
        mean = float(times.mean())
        rsd = float(times.std() / mean) if mean > 0 else 0.0
        return int(np.median(times)), rsd

    def _configurations(
        self, plan: BenchmarkPlan, on_skip: SkipHandler
    ) -> Iterator[tuple[Workload, int, int, tuple[Strategy, ...]]]:
        """(workload, n, rho, strategies) groups sharing one bounding-box reference, in run order."""
        for workload in plan.workloads:
            for dims, sizes, rho in ((2, plan.sizes_2d, plan.rho_2d), (3, plan.sizes_3d, plan.rho_3d)):
                strategies = tuple(s for s in plan.strategies if s.dims == dims)
                if len(strategies) == 0:
                    continue
                if dims == 3 and workload is not Workload.DUMMY:
                    self._logger.warning(f"Skipping 3D strategies for {workload.value}: dummy workload only.")
                    reason = "3D maps run the dummy workload only"
                    for strategy in strategies:
                        for n in sizes:
                            on_skip(SkippedConfiguration(strategy, workload, n, reason))
                    continue
                for n in sizes:
                    yield workload, n, rho, strategies

    def run(
        self,
        plan: BenchmarkPlan,
        simulator: Optional[Simulator] = None,
        on_skip: Optional[SkipHandler] = None,
    ) -> tuple[BenchmarkRecord, ...]:
        """Time every (workload, n, strategy, square root) of the plan.

        Every configuration is first checked to reproduce the digest of the bounding-box reference.

        :param plan: What to benchmark.
        :param simulator: Simulator used for the dispatches; configured from the environment by default.
        :param on_skip: Called with every configuration that cannot be built and is not timed.
        :returns: Records ordered by workload, dimension, size and the plan's strategy order.
        :raises BenchmarkRefusedError: A strategy produced a different output than the reference.
        """
        simulator = simulator if simulator is not None else Simulator.from_env()
        on_skip = on_skip if on_skip is not None else _ignore_skip
        records: list[BenchmarkRecord] = []

        for workload, n, rho, strategies in self._configurations(plan, on_skip):
            reference = reference_strategy(strategies[0])
            ref_cfg = LaunchConfig.build(
                reference, workload, benchmark_domain(reference, workload, n), rho, seed=plan.seed
            )
            ref_report = simulator.dispatch(ref_cfg)
            ref_time, ref_rsd = self.time(simulator, ref_cfg)
            self._logger.debug(f"{reference.value} {workload.value} n={n}: {ref_time} ns")

            for strategy in strategies:
                kinds = plan.sqrt_kinds if strategy.uses_sqrt else (SqrtKind.EXACT,)
                for kind in kinds:
                    if strategy is reference:
                        median, rsd, report = ref_time, ref_rsd, ref_report
                    else:
                        try:
                            cfg = LaunchConfig.build(
                                strategy,
                                workload,
                                benchmark_domain(strategy, workload, n),
                                rho,
                                seed=plan.seed,
                                sqrt=SqrtStrategy(kind),
                                tiled=plan.tiled,
                            )
                        except (RecursiveLayoutError, StrategyMismatchError) as e:
                            self._logger.warning(f"Skipping {strategy.value} {workload.value} n={n}: {e}")
                            on_skip(SkippedConfiguration(strategy, workload, n, str(e)))
                            break

                        report = simulator.dispatch(cfg)
                        if report.output_digest != ref_report.output_digest:
                            raise BenchmarkRefusedError(
                                f"{strategy.value} ({kind.value}) output differs from {reference.value}"
                                f" for {workload.value} n={n}."
                            )
                        median, rsd = self.time(simulator, cfg)

                    record = BenchmarkRecord(
                        strategy=strategy,
                        workload=workload,
                        n=n,
                        rho=rho,
                        sqrt_strategy=kind,
                        repetitions=self.repetitions,
                        median_time=median,
                        improvement_I=ref_time / max(median, 1),
                        waste_fraction=report.waste_fraction,
                        rsd=rsd,
                        flagged=rsd > self.rsd_threshold,
                    )
                    if record.flagged:
                        self._logger.warning(
                            f"Unstable timing of {record.label} {workload.value} n={n}: rsd={rsd:.3f}"
                        )
                    records.append(record)

        return tuple(records)


def run_benchmark(
    plan: BenchmarkPlan,
    suite: Optional[BenchmarkSuite] = None,
    simulator: Optional[Simulator] = None,
    on_skip: Optional[SkipHandler] = None,
) -> tuple[BenchmarkRecord, ...]:
    """Run a benchmark plan with the suite configured by the environment."""
    suite = suite if suite is not None else BenchmarkSuite.from_env()
    return suite.run(plan, simulator, on_skip)


def theoretical_improvement(n: int, rho: int, penalty: float = 1.0) -> float:
    """Improvement of the lambda map over the bounding box counted in blocks.

    `I = 2 m^2 / (penalty (m^2 + m))` with `m = ceil(n / rho)`; the lambda map launches
    `m(m+1)/2` blocks at `penalty` times the per-block cost of the bounding box. For large `n` it
    tends to `2 / penalty`.
    """
    if penalty <= 0:
        raise ValueError(f"Penalty must be positive, got {penalty}.")
    m = -(-n // rho)
    return 2 * m * m / (penalty * (m * m + m))


def theoretical_improvement_3d(n: int, rho: int, penalty: float = 1.0) -> float:
    """Improvement of the tetrahedral map over the 3D bounding box, tending to `6 / penalty`."""
    if penalty <= 0:
        raise ValueError(f"Penalty must be positive, got {penalty}.")
    m = -(-n // rho)
    return 6 * m**3 / (penalty * (m**3 + 3 * m * m + 2 * m))


def _per_block_time(record: BenchmarkRecord) -> float:
    domain = benchmark_domain(record.strategy, record.workload, record.n)
    grid = grid_dims(record.strategy, record.n, record.rho, getattr(domain, "include_diagonal", True))
    return record.median_time / max(grid.blocks, 1)


def _pair_ratios(
    records: Sequence[BenchmarkRecord], strategy: Strategy, reference: Strategy
) -> dict[int, float]:
    timed = {
        (r.n, r.strategy): r
        for r in records
        if r.workload is Workload.DUMMY and r.sqrt_strategy is SqrtKind.EXACT
    }
    ratios = {}
    for (n, s), record in sorted(timed.items(), key=lambda item: item[0][0]):
        if s is strategy and (n, reference) in timed:
            ratios[n] = _per_block_time(record) / _per_block_time(timed[(n, reference)])
    return ratios


def estimate_map_penalty(records: Sequence[BenchmarkRecord]) -> dict[int, float]:
    """Per-block cost of the lambda map relative to the bounding box, from dummy-kernel timings."""
    return _pair_ratios(records, Strategy.LTM, Strategy.BB)


def tetrahedral_ceiling(records: Sequence[BenchmarkRecord]) -> dict[int, float]:
    """Improvement ceiling `6 alpha / gamma` of the tetrahedral map from dummy-kernel timings.

    `alpha` and `gamma` are the measured per-block costs of the 3D bounding box and the tetrahedral map.
    """
    return {n: 6.0 / ratio for n, ratio in _pair_ratios(records, Strategy.TET, Strategy.BB3).items()}
