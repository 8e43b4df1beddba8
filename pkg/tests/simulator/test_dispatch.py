from __future__ import annotations

from typing import TYPE_CHECKING

import pytest
from pytest_cases import parametrize


if TYPE_CHECKING:
    from trimap import Simulator


STRATEGIES_DIAG = ("bb", "ltm", "rb", "utm", "rec")
STRATEGIES_NODIAG = ("bb", "ltm", "ltm-nodiag", "rb", "utm", "rec")


def test_bb_counts(simulator: "Simulator") -> None:
    from trimap import LaunchConfig, TriDomain, WasteBreakdown, utilization

    report = simulator.dispatch(LaunchConfig.build("bb", "dummy", TriDomain(8), 2))

    assert report.dispatched_threads == 64
    assert report.useful_threads == 36
    assert report.discarded_threads == 28
    assert report.dispatched_blocks == 16
    assert report.discarded_blocks == 6
    assert utilization(report) == WasteBreakdown(above_diagonal=24, diagonal_block=4, padding=0)
    assert report.waste_fraction == pytest.approx(28 / 64)


def test_ltm_counts(simulator: "Simulator") -> None:
    from trimap import LaunchConfig, TriDomain, WasteBreakdown

    report = simulator.dispatch(LaunchConfig.build("ltm", "dummy", TriDomain(8), 2))

    assert report.dispatched_threads == 64
    assert report.useful_threads == 36
    assert report.discarded_blocks == 6
    assert report.waste == WasteBreakdown(above_diagonal=0, diagonal_block=4, padding=24)


def test_rb_has_no_in_square_waste(simulator: "Simulator") -> None:
    from trimap import LaunchConfig, TriDomain

    # 4 x 9 thread rectangle of n = 8 fits 2 x 5 blocks of 2 x 2 threads
    report = simulator.dispatch(LaunchConfig.build("rb", "dummy", TriDomain(8), 2))

    assert report.dispatched_threads == 40
    assert report.useful_threads == 36
    assert report.waste.out_of_domain == 0
    assert report.waste.padding == 4


def test_dummy_output(simulator: "Simulator") -> None:
    import numpy as np

    from trimap import LaunchConfig, TetDomain, TriDomain
    from trimap.domain import tet_coords, tri_coords

    report = simulator.dispatch(LaunchConfig.build("ltm", "dummy", TriDomain(10), 4))
    assert report.output == int(np.sum(tri_coords(TriDomain(10))))

    report = simulator.dispatch(LaunchConfig.build("tet", "dummy", TetDomain(6), 2))
    assert report.output == int(np.sum(tet_coords(TetDomain(6))))


def _configs(n: int, rho: int, include_diagonal: bool):  # type: ignore[no-untyped-def]
    from trimap import LaunchConfig, TriDomain
    from trimap.maps import RecursiveLayoutError, StrategyMismatchError

    domain = TriDomain(n, include_diagonal=include_diagonal)
    for strategy in STRATEGIES_DIAG if include_diagonal else STRATEGIES_NODIAG:
        try:
            yield LaunchConfig.build(strategy, "dummy", domain, rho)
        except (RecursiveLayoutError, StrategyMismatchError):
            continue


@parametrize("n", [1, 2, 3, 8, 17, 32, 33, 64, 100])
def test_exactly_once(simulator: "Simulator", n: int, rho: int, include_diagonal: bool) -> None:
    import numpy as np

    for cfg in _configs(n, rho, include_diagonal):
        report = simulator.dispatch(cfg, count_elements=True)

        assert report.useful_threads == cfg.domain.size, cfg.strategy
        np.testing.assert_array_equal(report.element_counts, np.ones(cfg.domain.size, dtype=np.int64))
        assert report.waste.total == report.dispatched_threads - report.useful_threads


@parametrize("m", [1, 2, 3, 8, 9, 16])
@parametrize("rho3", [1, 2, 4])
def test_exactly_once_3d(simulator: "Simulator", m: int, rho3: int) -> None:
    import numpy as np

    from trimap import LaunchConfig, TetDomain

    for strategy in ("bb3", "tet"):
        report = simulator.dispatch(LaunchConfig.build(strategy, "dummy", TetDomain(m), rho3), True)
        np.testing.assert_array_equal(report.element_counts, np.ones(TetDomain(m).size, dtype=np.int64))


def test_bb3_tet_counts(simulator: "Simulator") -> None:
    from trimap import LaunchConfig, TetDomain
    from trimap.simulator.utilization import bb3_tet_ratio, tet_padding_threads

    bb3 = simulator.dispatch(LaunchConfig.build("bb3", "dummy", TetDomain(16), 4))
    tet = simulator.dispatch(LaunchConfig.build("tet", "dummy", TetDomain(16), 4))

    assert bb3.dispatched_threads == 16**3
    assert tet.dispatched_threads == 27 * 4**3
    assert bb3.output_digest == tet.output_digest
    assert tet.waste.padding == tet_padding_threads(16, 4)
    assert bb3.dispatched_threads / tet.dispatched_threads == bb3_tet_ratio(16, 4)

    # the parallel space ratio approaches 6
    assert bb3_tet_ratio(64, 1) == pytest.approx(6, rel=0.1)
    assert bb3_tet_ratio(256, 1) > bb3_tet_ratio(64, 1)


@parametrize("seed", [7, 42])
@parametrize("n", [4, 64, 256, pytest.param(1000, marks=pytest.mark.slow)])
def test_edm_matches_brute_force(simulator: "Simulator", n: int, seed: int) -> None:
    import numpy as np

    from trimap import LaunchConfig, TriDomain
    from trimap.simulator import workload_data

    points = workload_data("edm", n, seed)
    rows, cols = np.tril_indices(n)
    expected = np.linalg.norm(points[rows] - points[cols], axis=1)

    for strategy in STRATEGIES_DIAG:
        report = simulator.dispatch(LaunchConfig.build(strategy, "edm", TriDomain(n), 4, seed=seed))
        np.testing.assert_allclose(report.output, expected, rtol=1e-6, atol=1e-12)


@parametrize("seed", [7, 42])
@parametrize("n", [4, 64, 256, pytest.param(1000, marks=pytest.mark.slow)])
@parametrize("workload", ["collision-3d", "collision-1d"])
def test_collision_matches_brute_force(simulator: "Simulator", n: int, seed: int, workload: str) -> None:
    import numpy as np

    from trimap import LaunchConfig, TriDomain
    from trimap.simulator import workload_data

    spheres = workload_data(workload, n, seed)
    rows, cols = np.tril_indices(n, -1)
    gap = np.sum((spheres[rows, :-1] - spheres[cols, :-1]) ** 2, axis=1)
    expected = np.flatnonzero(gap < (spheres[rows, -1] + spheres[cols, -1]) ** 2)

    domain = TriDomain(n, include_diagonal=False)
    for strategy in STRATEGIES_NODIAG:
        for tiled in (False, True):
            report = simulator.dispatch(
                LaunchConfig.build(strategy, workload, domain, 4, seed=seed, tiled=tiled)
            )
            np.testing.assert_array_equal(report.output, expected)


def test_collision_data_shared_between_dimensions() -> None:
    import numpy as np

    from trimap.simulator import workload_data

    spheres = workload_data("collision-3d", 50, 7)
    intervals = workload_data("collision-1d", 50, 7)
    assert spheres.shape == (50, 4)
    assert intervals.shape == (50, 2)
    np.testing.assert_array_equal(intervals[:, 0], spheres[:, 0])
    assert workload_data("dummy", 50, 7) is None


@parametrize("strategy", ["bb", "ltm-nodiag", "rec", "ltm"])
def test_tiled_equals_untiled(simulator: "Simulator", strategy: str) -> None:
    from trimap import LaunchConfig, TriDomain

    domain = TriDomain(96, include_diagonal=False)
    untiled = simulator.dispatch(LaunchConfig.build(strategy, "collision-3d", domain, 8, seed=3))
    tiled = simulator.dispatch(LaunchConfig.build(strategy, "collision-3d", domain, 8, seed=3, tiled=True))
    assert tiled == untiled


def test_parallel_dispatch_is_deterministic(simulator: "Simulator", parallel_simulator: "Simulator") -> None:
    from trimap import LaunchConfig, TriDomain

    for strategy in STRATEGIES_DIAG:
        cfg = LaunchConfig.build(strategy, "edm", TriDomain(64), 4, seed=11)
        assert parallel_simulator.dispatch(cfg) == simulator.dispatch(cfg)


def test_digest_equivalence_across_strategies(simulator: "Simulator") -> None:
    from trimap import LaunchConfig, TriDomain

    digests = {
        simulator.dispatch(LaunchConfig.build(strategy, "edm", TriDomain(48), 4, seed=5)).output_digest
        for strategy in STRATEGIES_DIAG
    }
    assert len(digests) == 1

    # a different seed changes the output
    other = simulator.dispatch(LaunchConfig.build("bb", "edm", TriDomain(48), 4, seed=6))
    assert other.output_digest not in digests


@parametrize("kind", ["newton", "rsqrt"])
def test_fast_sqrt_dispatch(simulator: "Simulator", kind: str) -> None:
    from trimap import LaunchConfig, SqrtStrategy, TriDomain

    reference = simulator.dispatch(LaunchConfig.build("bb", "edm", TriDomain(100), 4))
    for strategy in ("ltm", "utm"):
        cfg = LaunchConfig.build(strategy, "edm", TriDomain(100), 4, sqrt=SqrtStrategy(kind))
        assert simulator.dispatch(cfg).output_digest == reference.output_digest


def test_launch_config_invalid() -> None:
    from trimap import LaunchConfig, TetDomain, TriDomain, grid_dims
    from trimap.maps import StrategyMismatchError

    # grid sized for another strategy
    with pytest.raises(StrategyMismatchError):
        LaunchConfig(grid_dims("bb", 8, 2), "ltm", "dummy", TriDomain(8))
    # grid sized for another domain
    with pytest.raises(StrategyMismatchError):
        LaunchConfig(grid_dims("bb", 16, 2), "bb", "dummy", TriDomain(8))
    # 2D strategy on a tetrahedron
    with pytest.raises(StrategyMismatchError):
        LaunchConfig.build("ltm", "dummy", TetDomain(8), 2)
    # tetrahedra run the dummy workload only
    with pytest.raises(StrategyMismatchError):
        LaunchConfig.build("tet", "edm", TetDomain(8), 2)
    # collisions compare distinct pairs
    with pytest.raises(StrategyMismatchError):
        LaunchConfig.build("bb", "collision-3d", TriDomain(8), 2)
    # the strict-triangle lambda map needs a domain without diagonal
    with pytest.raises(StrategyMismatchError):
        LaunchConfig.build("ltm-nodiag", "dummy", TriDomain(8), 2)


def test_module_dispatch() -> None:
    from trimap import LaunchConfig, TriDomain, dispatch

    report = dispatch(LaunchConfig.build("bb", "dummy", TriDomain(8), 2), count_elements=True)
    assert report.useful_threads == 36
    assert report.wall_time_ns >= 0
