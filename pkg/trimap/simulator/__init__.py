from trimap.maps.grid import StrategyMismatchError
from trimap.simulator.dispatch import LaunchConfig, Simulator, dispatch
from trimap.simulator.tile import Tile
from trimap.simulator.utilization import utilization
from trimap.simulator.workloads import workload_collision, workload_data, workload_dummy, workload_edm


__all__ = [
    "LaunchConfig",
    "Simulator",
    "StrategyMismatchError",
    "Tile",
    "dispatch",
    "utilization",
    "workload_collision",
    "workload_data",
    "workload_dummy",
    "workload_edm",
]
