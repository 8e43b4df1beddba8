from __future__ import annotations

from typing import TYPE_CHECKING, Callable

import pytest
from pytest_cases import fixture
from pytest_mock import MockerFixture


if TYPE_CHECKING:
    from trimap import LaunchConfig, SimulationReport


def fake_dispatch(
    times: dict[str, list[int]], digests: dict[str, str] | None = None
) -> Callable[["LaunchConfig"], "SimulationReport"]:
    """Dispatch stand-in returning the given wall times per strategy in turn."""
    from trimap import SimulationReport, WasteBreakdown

    calls: dict[str, int] = {}

    def dispatch(cfg: "LaunchConfig", count_elements: bool = False) -> "SimulationReport":  # noqa: U100
        tag = cfg.strategy.value
        calls[tag] = calls.get(tag, 0) + 1
        series = times[tag]
        useful = cfg.domain.size
        return SimulationReport(
            cfg.strategy,
            cfg.workload,
            cfg.grid.threads,
            useful,
            cfg.grid.threads - useful,
            cfg.grid.blocks,
            0,
            (digests or {}).get(tag, "same"),
            WasteBreakdown(padding=cfg.grid.threads - useful),
            wall_time_ns=series[(calls[tag] - 1) % len(series)],
        )

    return dispatch


@fixture
def suite():  # type: ignore[no-untyped-def]
    from trimap.bench import BenchmarkSuite

    return BenchmarkSuite(repetitions=3, warmups=0)


def test_plan_defaults_and_validation() -> None:
    from trimap import Strategy, Workload
    from trimap.bench import BenchmarkPlan

    plan = BenchmarkPlan(workloads=["dummy"], strategies=["bb", "tet"])
    assert plan.workloads == (Workload.DUMMY,)
    assert plan.strategies == (Strategy.BB, Strategy.TET)
    assert plan.sizes_2d == (256, 512, 1024, 2048, 4096, 8192)
    assert plan.sizes_3d == (32, 64, 128, 256)
    assert (plan.rho_2d, plan.rho_3d) == (16, 8)

    with pytest.raises(ValueError):
        BenchmarkPlan(workloads=[], strategies=["bb"])
    with pytest.raises(ValueError):
        BenchmarkPlan(workloads=["dummy"], strategies=["ltm"], sizes_2d=[])
    with pytest.raises(ValueError):
        BenchmarkPlan(workloads=["dummy"], strategies=["zigzag"])


def test_suite_requires_three_repetitions() -> None:
    from trimap.bench import BenchmarkSuite

    with pytest.raises(ValueError):
        BenchmarkSuite(repetitions=2)


def test_improvement_factor(mocker: MockerFixture, suite) -> None:  # type: ignore[no-untyped-def]
    from trimap import SqrtKind, Strategy
    from trimap.bench import BenchmarkPlan, estimate_map_penalty

    simulator = mocker.Mock()
    simulator.dispatch.side_effect = fake_dispatch({"bb": [200], "ltm": [100], "rb": [80, 80, 240]})
    plan = BenchmarkPlan(workloads=["dummy"], strategies=["bb", "ltm", "rb"], sizes_2d=[64, 128], rho_2d=16)

    records = suite.run(plan, simulator)

    assert [(r.strategy, r.n) for r in records] == [
        (Strategy.BB, 64),
        (Strategy.LTM, 64),
        (Strategy.RB, 64),
        (Strategy.BB, 128),
        (Strategy.LTM, 128),
        (Strategy.RB, 128),
    ]
    assert [r.improvement_I for r in records[:3]] == [1.0, 2.0, 2.5]
    assert all(r.sqrt_strategy is SqrtKind.EXACT for r in records)
    assert all(r.repetitions == 3 for r in records)

    # unstable timings are flagged, not dropped
    assert [r.flagged for r in records[:3]] == [False, False, True]

    # ltm launches 16 blocks at n=64 like bb, so its per-block cost is half of bb's
    assert estimate_map_penalty(records)[64] == pytest.approx(0.5)


def test_reference_always_timed(mocker: MockerFixture, suite) -> None:  # type: ignore[no-untyped-def]
    from trimap import Strategy
    from trimap.bench import BenchmarkPlan

    simulator = mocker.Mock()
    simulator.dispatch.side_effect = fake_dispatch({"bb": [300], "ltm": [150]})
    plan = BenchmarkPlan(workloads=["edm"], strategies=["ltm"], sizes_2d=[32], rho_2d=8)

    records = suite.run(plan, simulator)
    assert [r.strategy for r in records] == [Strategy.LTM]
    assert records[0].improvement_I == 2.0


def test_sqrt_variants(mocker: MockerFixture, suite) -> None:  # type: ignore[no-untyped-def]
    from trimap.bench import BenchmarkPlan

    simulator = mocker.Mock()
    simulator.dispatch.side_effect = fake_dispatch({"bb": [100], "ltm": [90], "rb": [80]})
    plan = BenchmarkPlan(
        workloads=["dummy"],
        strategies=["bb", "ltm", "rb"],
        sizes_2d=[32],
        rho_2d=8,
        sqrt_kinds=["exact", "newton"],
    )

    records = suite.run(plan, simulator)
    # only maps that take a square root are timed per square root
    assert [r.label for r in records] == ["bb", "ltm", "ltm-newton", "rb"]


def test_refuses_different_output(mocker: MockerFixture, suite) -> None:  # type: ignore[no-untyped-def]
    from trimap.bench import BenchmarkPlan, BenchmarkRefusedError

    simulator = mocker.Mock()
    simulator.dispatch.side_effect = fake_dispatch({"bb": [100], "ltm": [50]}, digests={"ltm": "broken"})
    plan = BenchmarkPlan(workloads=["dummy"], strategies=["bb", "ltm"], sizes_2d=[32], rho_2d=8)

    with pytest.raises(BenchmarkRefusedError):
        suite.run(plan, simulator)


def test_skipped_configurations(
    mocker: MockerFixture, suite, caplog: pytest.LogCaptureFixture  # type: ignore[no-untyped-def]
) -> None:
    import logging

    from trimap import Strategy, Workload
    from trimap.bench import BenchmarkPlan, SkippedConfiguration

    simulator = mocker.Mock()
    simulator.dispatch.side_effect = fake_dispatch({"bb": [100], "rec": [60], "bb3": [100], "tet": [40]})
    skipped: list[SkippedConfiguration] = []

    with caplog.at_level(logging.WARNING):
        # 100 is not m 2^k with m a multiple of 16
        plan = BenchmarkPlan(workloads=["dummy"], strategies=["bb", "rec"], sizes_2d=[64, 100], rho_2d=16)
        records = suite.run(plan, simulator, on_skip=skipped.append)
        expected = [(Strategy.BB, 64), (Strategy.REC, 64), (Strategy.BB, 100)]
        assert [(r.strategy, r.n) for r in records] == expected
        assert "Skipping rec" in caplog.text
        assert [(s.strategy, s.workload, s.n) for s in skipped] == [(Strategy.REC, Workload.DUMMY, 100)]

        # tetrahedra run the dummy workload only
        skipped.clear()
        plan = BenchmarkPlan(workloads=["edm"], strategies=["tet"], sizes_3d=[8, 16], rho_3d=2)
        assert suite.run(plan, simulator, on_skip=skipped.append) == ()
        assert "Skipping 3D strategies" in caplog.text
        assert [(s.strategy, s.n) for s in skipped] == [(Strategy.TET, 8), (Strategy.TET, 16)]
        assert skipped[0].reason == "3D maps run the dummy workload only"


def test_tetrahedral_ceiling(mocker: MockerFixture, suite) -> None:  # type: ignore[no-untyped-def]
    from trimap.bench import BenchmarkPlan, tetrahedral_ceiling

    simulator = mocker.Mock()
    simulator.dispatch.side_effect = fake_dispatch({"bb3": [6400], "tet": [2700]})
    plan = BenchmarkPlan(workloads=["dummy"], strategies=["bb3", "tet"], sizes_3d=[16], rho_3d=4)

    records = suite.run(plan, simulator)
    # 64 bb3 blocks and 27 tet blocks cost 100 ns each: the ceiling is 6
    assert tetrahedral_ceiling(records) == {16: pytest.approx(6.0)}


def test_theoretical_improvement() -> None:
    from trimap.bench import theoretical_improvement, theoretical_improvement_3d

    assert theoretical_improvement(16, 16) == 1.0
    assert theoretical_improvement_3d(8, 8) == 1.0
    values = [theoretical_improvement(n, 16) for n in (256, 1024, 8192, 30720)]
    assert values == sorted(values)
    assert all(0 < v < 2 for v in values)
    assert theoretical_improvement(10**6, 1) == pytest.approx(2, rel=1e-5)
    assert theoretical_improvement(10**6, 1, penalty=1.25) == pytest.approx(1.6, rel=1e-5)
    assert theoretical_improvement_3d(10**5, 1) == pytest.approx(6, rel=1e-4)

    with pytest.raises(ValueError):
        theoretical_improvement(64, 16, penalty=0)


@pytest.mark.slow
def test_dummy_benchmark_improvement_bounds() -> None:
    from trimap import Simulator, Strategy
    from trimap.bench import BenchmarkPlan, BenchmarkSuite, run_benchmark

    plan = BenchmarkPlan(workloads=["dummy"], strategies=["bb", "ltm"], sizes_2d=[256, 512, 1024], rho_2d=16)
    records = run_benchmark(plan, BenchmarkSuite(repetitions=5, warmups=2), Simulator(num_workers=1))

    for record in records:
        if record.strategy is Strategy.BB:
            assert record.improvement_I == 1.0
        else:
            assert 0 < record.improvement_I < 2
