"""Self-checks of the maps and of the simulator against the enumeration oracle.

Every check returns a `VerificationResult`; a check that raises is reported as failed with the
exception as its detail.
"""
from __future__ import annotations

from typing import Callable, Iterator, Optional, Sequence
import logging

from attrs import field, frozen
from attrs.validators import ge
import numpy as np

from trimap.core.models import Coord2, Coord3, Domain, SqrtKind, Strategy, TetDomain, TriDomain, Workload
from trimap.core.utils import get_default
from trimap.domain.figurate import tet_number, tet_numbers, tri_number, tri_numbers
from trimap.domain.oracle import tet_coords, tri_coords, tri_linear_index
from trimap.maps.block import ltm_map, ltm_rows, ltm_rows_nodiag, tet_blocks, tet_map
from trimap.maps.grid import grid_dims
from trimap.maps.recursive import RecursiveLayoutError, rec_blocks, rec_decompose
from trimap.maps.thread import rb_extents, rb_threads, utm_size, utm_threads
from trimap.roots.sqrt import SqrtStrategy
from trimap.roots.validation import block_range, sample_sqrt_range, validate_sqrt_range
from trimap.simulator.dispatch import LaunchConfig, Simulator
from trimap.simulator.utilization import (
    bb3_tet_ratio,
    bb_out_of_domain,
    ltm_diagonal_bound,
    ltm_padding_threads,
    tet_padding_threads,
)


@frozen
class VerificationResult:
    """Outcome of one named check."""

    name: str
    passed: bool
    detail: str = ""


def _sizes(values: Sequence[int]) -> tuple[int, ...]:
    return tuple(int(v) for v in values)


def _same(actual: Sequence[np.ndarray], expected: Sequence[np.ndarray]) -> bool:
    return all(np.array_equal(a, e) for a, e in zip(actual, expected))


def _covers_once(linear: np.ndarray, size: int) -> bool:
    """Linear indices hit every position of `[0, size)` exactly once."""
    return linear.size == size and np.array_equal(np.sort(linear), np.arange(size, dtype=np.int64))


@frozen(slots=False)
class VerificationSuite:
    """Oracle and property checks over a set of sizes.

    :param sizes_2d: Triangle sizes.
    :param sizes_3d: Numbers of tetrahedron layers.
    :param rho_2d: Block size of the 2D dispatches.
    :param rho_3d: Block size of the 3D dispatches.
    :param seed: Seed of the workload data.
    :param figurate_limit: Largest argument of the figurate identities.
    :param tet_ratio_size: Tetrahedron side of the bb3 / tet comparison.
    :param sqrt_elements: Elements per side of the range the fast square roots are scanned over.
    :param sqrt_rho: Block size of that range.
    :param sqrt_samples: Random indices of the corrected fast square roots.
    :param sqrt_sample_max: Largest random index.
    :param simulator: Simulator of the dispatch checks; single worker by default.
    """

    sizes_2d: tuple[int, ...] = field(
        factory=lambda: _sizes(get_default("verify", "sizes_2d")), converter=_sizes
    )
    sizes_3d: tuple[int, ...] = field(
        factory=lambda: _sizes(get_default("verify", "sizes_3d")), converter=_sizes
    )
    rho_2d: int = field(factory=lambda: int(get_default("verify", "rho_2d")), converter=int, validator=ge(1))
    rho_3d: int = field(factory=lambda: int(get_default("verify", "rho_3d")), converter=int, validator=ge(1))
    seed: int = field(factory=lambda: int(get_default("verify", "seed")), converter=int)
    figurate_limit: int = field(
        factory=lambda: int(get_default("verify", "figurate_limit")), converter=int, validator=ge(1)
    )
    tet_ratio_size: int = field(
        factory=lambda: int(get_default("verify", "tet_ratio_size")), converter=int, validator=ge(1)
    )
    sqrt_elements: int = field(
        factory=lambda: int(get_default("roots", "range_elements")), converter=int, validator=ge(1)
    )
    sqrt_rho: int = field(factory=lambda: int(get_default("bench", "rho_2d")), converter=int, validator=ge(1))
    sqrt_samples: int = field(
        factory=lambda: int(get_default("verify", "sqrt_samples")), converter=int, validator=ge(1)
    )
    sqrt_sample_max: int = field(
        factory=lambda: int(get_default("verify", "sqrt_sample_max")), converter=int, validator=ge(0)
    )
    simulator: Simulator = field(factory=lambda: Simulator(num_workers=1))

    _logger: logging.Logger = field(init=False, eq=False, repr=False)

    def __attrs_post_init__(self) -> None:
        # create logger local to the class
        object.__setattr__(self, "_logger", logging.getLogger(self.__class__.__name__))

    def checks(self) -> Iterator[tuple[str, Callable[[], Optional[str]]]]:
        """Named checks in run order; a check returns a failure message or None."""
        yield "figurate-identities", self.check_figurate
        yield "witness-values", self.check_witnesses
        yield "bijection-ltm", self.check_ltm
        yield "bijection-rb", self.check_rb
        yield "bijection-utm", self.check_utm
        yield "bijection-rec", self.check_rec
        yield "bijection-tet", self.check_tet
        yield "exactly-once", self.check_exactly_once
        yield "digest-equivalence", self.check_digests
        yield "waste-bounds", self.check_waste
        yield "tet-parallel-space", self.check_tet_ratio
        yield "sqrt-range", self.check_sqrt

    def run(self) -> tuple[VerificationResult, ...]:
        results = []
        for name, check in self.checks():
            try:
                failure = check()
            except Exception as e:
                failure = f"{type(e).__name__}: {e}"

            result = VerificationResult(name, failure is None, failure or "")
            if result.passed:
                self._logger.info(f"{name}: ok")
            else:
                self._logger.error(f"{name}: {result.detail}")
            results.append(result)
        return tuple(results)

    def check_figurate(self) -> Optional[str]:
        r = np.arange(self.figurate_limit + 1, dtype=np.int64)
        tri, tet = tri_numbers(r), tet_numbers(r)
        if not np.array_equal(tri[1:] - tri[:-1], r[1:]):
            return "tri_number(r) - tri_number(r-1) != r"
        if not np.array_equal(tet[1:] - tet[:-1], tri[1:]):
            return "tet_number(r) - tet_number(r-1) != tri_number(r)"
        for x in (0, 1, self.figurate_limit):
            if tri_number(x) != int(tri[x]) or tet_number(x) != int(tet[x]):
                return f"scalar and vectorized figurate numbers differ at {x}"
        return None

    def check_witnesses(self) -> Optional[str]:
        if ltm_map(7) != Coord2(3, 1):
            return f"ltm_map(7) = {ltm_map(7)}, expected (3, 1)"
        if ltm_map(4) + ltm_map(3) != Coord2(4, 1):
            return f"ltm_map(4) + ltm_map(3) = {ltm_map(4) + ltm_map(3)}, expected (4, 1)"
        if tet_map(4) != Coord3(0, 0, 2):
            return f"tet_map(4) = {tet_map(4)}, expected (0, 0, 2)"
        if [tet_number(r) for r in range(1, 5)] != [1, 4, 10, 20]:
            return "tetrahedral numbers do not start with 1, 4, 10, 20"
        return None

    def check_ltm(self) -> Optional[str]:
        for n in self.sizes_2d:
            omega = np.arange(tri_number(n), dtype=np.int64)
            if not _same(ltm_rows(omega), tri_coords(TriDomain(n))):
                return f"ltm_map is not the enumeration of n={n}"
            omega = np.arange(tri_number(n - 1), dtype=np.int64)
            if not _same(ltm_rows_nodiag(omega), tri_coords(TriDomain(n, include_diagonal=False))):
                return f"ltm_map_nodiag is not the enumeration of n={n}"
        return None

    def check_rb(self) -> Optional[str]:
        for n in self.sizes_2d:
            for diag in (True, False):
                rows, cols = rb_extents(n, diag)
                ty, tx = np.divmod(np.arange(rows * cols, dtype=np.int64), max(cols, 1))
                i, j = rb_threads(tx, ty, n, diag)
                if not _covers_once(tri_linear_index(i, j, diag), TriDomain(n, diag).size):
                    return f"rb_map does not cover n={n} (diagonal={diag}) exactly once"
        return None

    def check_utm(self) -> Optional[str]:
        for n in self.sizes_2d:
            for diag in (True, False):
                i, j = utm_threads(np.arange(utm_size(n, diag), dtype=np.int64), n, diag)
                inside = (j <= i) if diag else (j < i)
                if not inside.all() or not _covers_once(
                    tri_linear_index(i, j, diag), TriDomain(n, diag).size
                ):
                    return f"utm_map does not cover n={n} (diagonal={diag}) exactly once"
        return None

    def check_rec(self) -> Optional[str]:
        for n in self.sizes_2d:
            try:
                rec_decompose(n, self.rho_2d)
            except RecursiveLayoutError:
                self._logger.debug(f"REC skips n={n} with rho={self.rho_2d}")
                continue
            grid = grid_dims(Strategy.REC, n, self.rho_2d)
            rows, cols = rec_blocks(np.arange(grid.blocks, dtype=np.int64), n, self.rho_2d, grid.levels)
            bi, bj = rows // self.rho_2d, cols // self.rho_2d
            if (bj > bi).any() or not _covers_once(tri_linear_index(bi, bj), tri_number(n // self.rho_2d)):
                return f"rec blocks do not cover the block triangle of n={n} exactly once"
        return None

    def check_tet(self) -> Optional[str]:
        for m in self.sizes_3d:
            omega = np.arange(tet_number(m), dtype=np.int64)
            if not _same(tet_blocks(omega), tet_coords(TetDomain(m))):
                return f"tet_map is not the enumeration of m={m}"
        return None

    def _configurations(self) -> Iterator[tuple[Strategy, Domain, int]]:
        for n in self.sizes_2d:
            for diag in (True, False):
                domain = TriDomain(n, include_diagonal=diag)
                ltm = Strategy.LTM if diag else Strategy.LTM_NODIAG
                for strategy in (Strategy.BB, ltm, Strategy.RB, Strategy.UTM, Strategy.REC):
                    yield strategy, domain, self.rho_2d
        for m in self.sizes_3d:
            for strategy in (Strategy.BB3, Strategy.TET):
                yield strategy, TetDomain(m), self.rho_3d

    def check_exactly_once(self) -> Optional[str]:
        for strategy, domain, rho in self._configurations():
            try:
                cfg = LaunchConfig.build(strategy, Workload.DUMMY, domain, rho, seed=self.seed)
            except RecursiveLayoutError:
                continue
            report = self.simulator.dispatch(cfg, count_elements=True)
            if report.useful_threads != domain.size or not (report.element_counts == 1).all():
                return f"{strategy.value} does not execute every element of {domain} exactly once"
        return None

    def check_digests(self) -> Optional[str]:
        for n in (n for n in self.sizes_2d if n >= 2):
            cases = [
                (Workload.EDM, TriDomain(n), (Strategy.LTM, Strategy.RB, Strategy.UTM, Strategy.REC), False),
                (
                    Workload.COLLISION_3D,
                    TriDomain(n, include_diagonal=False),
                    (Strategy.LTM, Strategy.LTM_NODIAG, Strategy.RB, Strategy.UTM, Strategy.REC),
                    True,
                ),
            ]
            for workload, domain, strategies, tiled in cases:
                reference = self.simulator.dispatch(
                    LaunchConfig.build(Strategy.BB, workload, domain, self.rho_2d, seed=self.seed)
                )
                for strategy in strategies:
                    try:
                        cfg = LaunchConfig.build(
                            strategy, workload, domain, self.rho_2d, seed=self.seed, tiled=tiled
                        )
                    except RecursiveLayoutError:
                        continue
                    if self.simulator.dispatch(cfg).output_digest != reference.output_digest:
                        return f"{strategy.value} {workload.value} output differs from bb for n={n}"
        return None

    def check_waste(self) -> Optional[str]:
        rho = self.rho_2d
        for n in self.sizes_2d:
            domain = TriDomain(n)
            bb = self.simulator.dispatch(LaunchConfig.build(Strategy.BB, Workload.DUMMY, domain, rho))
            if n % rho == 0 and bb.waste.out_of_domain != bb_out_of_domain(n):
                return f"bb discards {bb.waste.out_of_domain} in-square threads for n={n}"

            ltm = self.simulator.dispatch(LaunchConfig.build(Strategy.LTM, Workload.DUMMY, domain, rho))
            if ltm.waste.above_diagonal != 0 or ltm.waste.diagonal_block > ltm_diagonal_bound(n, rho):
                return f"ltm intra-block waste {ltm.waste} exceeds the bound for n={n}"
            if n % rho == 0 and ltm.waste.padding != ltm_padding_threads(n, rho):
                return f"ltm padding {ltm.waste.padding} differs from the grid count for n={n}"

            rb = self.simulator.dispatch(LaunchConfig.build(Strategy.RB, Workload.DUMMY, domain, rho))
            rows, cols = rb_extents(n)
            if rb.waste.out_of_domain != 0 or rb.waste.padding > (rho - 1) * (rows + cols + rho - 1):
                return f"rb waste {rb.waste} exceeds the block rounding for n={n}"

        for m in self.sizes_3d:
            tet = self.simulator.dispatch(
                LaunchConfig.build(Strategy.TET, Workload.DUMMY, TetDomain(m), self.rho_3d)
            )
            if m % self.rho_3d == 0 and tet.waste.padding != tet_padding_threads(m, self.rho_3d):
                return f"tet padding {tet.waste.padding} differs from the grid count for m={m}"
        return None

    def check_tet_ratio(self) -> Optional[str]:
        m = self.tet_ratio_size
        dispatched = {
            strategy: self.simulator.dispatch(
                LaunchConfig.build(strategy, Workload.DUMMY, TetDomain(m), 1)
            ).dispatched_threads
            for strategy in (Strategy.BB3, Strategy.TET)
        }
        ratio = dispatched[Strategy.BB3] / dispatched[Strategy.TET]
        self._logger.info(f"bb3 dispatches {ratio:.3f} times the threads of tet at m={m}")
        if ratio != bb3_tet_ratio(m, 1):
            return f"dispatched bb3 / tet ratio {ratio:.3f} differs from the grid count at m={m}"
        if abs(ratio - 6.0) > 0.6:
            return f"bb3 / tet thread ratio {ratio:.3f} at m={m} is not within 10% of 6"
        return None

    def check_sqrt(self) -> Optional[str]:
        omega_max = block_range(self.sqrt_elements, self.sqrt_rho)
        double = SqrtStrategy(SqrtKind.NEWTON, precision="float64")
        first = validate_sqrt_range(double, omega_max)
        if first is not None:
            return f"float64 newton square root maps omega={first} wrong without correction"

        for kind in (SqrtKind.NEWTON, SqrtKind.RSQRT):
            s = SqrtStrategy(kind)
            first = validate_sqrt_range(s, omega_max)
            if first is None:
                self._logger.info(f"{s.precision} {kind.value} exact without correction up to {omega_max}")
            else:
                self._logger.info(
                    f"{s.precision} {kind.value} exact without correction below omega={first} of {omega_max}"
                )
            failing = validate_sqrt_range(s, omega_max, correct=True)
            if failing is None:
                failing = sample_sqrt_range(s, self.sqrt_sample_max, self.sqrt_samples, seed=self.seed)
            if failing is not None:
                return f"corrected {kind.value} map fails at omega={failing}"
        return None


def run_checks(**kwargs: object) -> tuple[VerificationResult, ...]:
    """Run the verification suite; keyword arguments override the packaged defaults."""
    return VerificationSuite(**kwargs).run()  # type: ignore[arg-type]
