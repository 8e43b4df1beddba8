from pathlib import Path


def test_maps() -> None:
    # --- Maps
    from trimap import Coord2, Coord3, ltm_map, tet_map, utm_map

    assert ltm_map(7) == Coord2(3, 1)
    assert tet_map(4) == Coord3(0, 0, 2)
    assert utm_map(5, 4) == Coord2(3, 2)

    from trimap import SqrtStrategy

    newton = SqrtStrategy.from_tag("newton")
    assert ltm_map(123456, sqrt=newton) == ltm_map(123456)


def test_grids() -> None:
    # --- Grids
    from trimap import grid_dims

    assert grid_dims("bb", 1024, 16).blocks == 4096
    assert grid_dims("ltm", 1024, 16).blocks == 2116


def test_simulated_dispatch() -> None:
    # --- Simulated dispatch
    from trimap import LaunchConfig, Simulator, TriDomain, WasteBreakdown

    simulator = Simulator.from_env(num_workers=4)

    cfg = LaunchConfig.build("ltm", "edm", TriDomain(512), rho=16, seed=42)
    report = simulator.dispatch(cfg)

    assert report.useful_threads == 131328
    assert report.waste == WasteBreakdown(above_diagonal=0, diagonal_block=3840, padding=256)

    cfg = LaunchConfig.build("rb", "collision-3d", TriDomain(512, include_diagonal=False), rho=16, tiled=True)
    pairs = simulator.dispatch(cfg).output
    assert pairs is not None


def test_validity_range() -> None:
    # --- Validity range of the fast square roots
    from trimap import SqrtStrategy
    from trimap.roots.validation import block_range, validate_sqrt_range

    omega_max = block_range(30720, 16)
    assert validate_sqrt_range(SqrtStrategy.from_tag("newton", precision="float64"), omega_max) is None

    first = validate_sqrt_range(SqrtStrategy.from_tag("rsqrt"), omega_max)
    assert first is not None and first <= omega_max


def test_benchmark(tmp_path: Path) -> None:
    # --- Benchmark
    from trimap.bench import BenchmarkPlan, BenchmarkSuite, emit_csv, run_benchmark

    plan = BenchmarkPlan(workloads=["dummy", "edm"], strategies=["bb", "ltm", "rb"], sizes_2d=[64, 128])
    records = run_benchmark(plan, BenchmarkSuite(repetitions=3, warmups=0))
    emit_csv(records, tmp_path / "results.csv")

    assert len(records) == 2 * 2 * 3
