from trimap.domain.figurate import CapacityError, tet_number, tri_number
from trimap.domain.oracle import (
    enumerate_tet,
    enumerate_tri,
    tet_coords,
    tet_linear_index,
    tri_coords,
    tri_linear_index,
)


__all__ = [
    "CapacityError",
    "enumerate_tet",
    "enumerate_tri",
    "tet_coords",
    "tet_linear_index",
    "tet_number",
    "tri_coords",
    "tri_linear_index",
    "tri_number",
]
