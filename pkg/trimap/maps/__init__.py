from trimap.maps.block import IndexRangeError, bb_map, ltm_map, ltm_map_nodiag, tet_map
from trimap.maps.grid import StrategyMismatchError, grid_dims
from trimap.maps.recursive import RecLevel, RecursiveLayoutError, rec_layout
from trimap.maps.thread import rb_map, utm_map


__all__ = [
    "IndexRangeError",
    "RecLevel",
    "RecursiveLayoutError",
    "StrategyMismatchError",
    "bb_map",
    "grid_dims",
    "ltm_map",
    "ltm_map_nodiag",
    "rb_map",
    "rec_layout",
    "tet_map",
    "utm_map",
]
