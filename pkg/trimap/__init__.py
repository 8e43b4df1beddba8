__version__ = "0.1.0"

from trimap.core.models import (
    DISCARD,
    BenchmarkRecord,
    Coord2,
    Coord3,
    GridSpec,
    SimulationReport,
    SqrtKind,
    Strategy,
    TetDomain,
    TriDomain,
    WasteBreakdown,
    Workload,
)
from trimap.core.platform import Platform
from trimap.domain import enumerate_tet, enumerate_tri, tet_number, tri_number
from trimap.maps import bb_map, grid_dims, ltm_map, ltm_map_nodiag, rb_map, rec_layout, tet_map, utm_map
from trimap.roots import SqrtStrategy, sqrt_eval
from trimap.simulator import LaunchConfig, Simulator, dispatch, utilization


__all__ = [
    "DISCARD",
    "BenchmarkRecord",
    "Coord2",
    "Coord3",
    "GridSpec",
    "LaunchConfig",
    "Platform",
    "SimulationReport",
    "Simulator",
    "SqrtKind",
    "SqrtStrategy",
    "Strategy",
    "TetDomain",
    "TriDomain",
    "WasteBreakdown",
    "Workload",
    "bb_map",
    "dispatch",
    "enumerate_tet",
    "enumerate_tri",
    "grid_dims",
    "ltm_map",
    "ltm_map_nodiag",
    "rb_map",
    "rec_layout",
    "sqrt_eval",
    "tet_map",
    "tet_number",
    "tri_number",
    "utilization",
    "utm_map",
]
