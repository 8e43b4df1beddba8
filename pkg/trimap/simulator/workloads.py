"""Workloads executed by the threads that survive the domain filter.

Inputs are drawn from one seed sequence with a child per data set, so all strategies and both
collision dimensions see the same numbers.
"""
from __future__ import annotations

from typing import Optional
import hashlib

import numpy as np

from trimap.core import typing as types
from trimap.core.models import Workload
from trimap.core.utils import get_default


def workload_data(workload: Workload | str, n: int, seed: int) -> Optional[types.FloatArray]:
    """Per-element records of a workload.

    - `edm`: `n x 4` points with features `(x, y, z, w)` in `[0, 1)`.
    - `collision-3d`: `n x 4` spheres, center in the unit box and radius.
    - `collision-1d`: `n x 2` intervals, the first center coordinate of the same spheres and radius.

    :param workload: Workload tag.
    :param n: Number of records.
    :param seed: Seed of the data.
    :returns: Records, None for the dummy workload.
    """
    workload = Workload(workload)
    points_seq, spheres_seq = np.random.SeedSequence(seed).spawn(2)

    if workload is Workload.EDM:
        features = int(get_default("workloads", "edm_features"))
        return np.random.default_rng(points_seq).random((n, features))

    dim = workload.collision_dim
    if dim is not None:
        rng = np.random.default_rng(spheres_seq)
        centers = rng.random((n, 3))
        max_radius = float(get_default("workloads", "collision_max_radius")[dim])
        radii = rng.random(n) * max_radius
        return np.column_stack([centers[:, :dim], radii])

    return None


def workload_dummy(i: types.IntArray, j: types.IntArray, k: Optional[types.IntArray] = None) -> int:
    """Sum of `i + j (+ k)` over the given elements, the single accumulated cell of the dummy kernel."""
    total = int(np.sum(i, dtype=np.int64)) + int(np.sum(j, dtype=np.int64))
    if k is not None:
        total += int(np.sum(k, dtype=np.int64))
    return total


def distance(a: types.FloatArray, b: types.FloatArray) -> types.FloatArray:
    """Euclidean distance of record rows, accumulated feature by feature."""
    acc = np.zeros(a.shape[:-1], dtype=np.float64)
    for f in range(a.shape[-1]):
        d = a[..., f] - b[..., f]
        acc = acc + d * d
    return np.sqrt(acc)


def workload_edm(i: types.IntArray, j: types.IntArray, points: types.FloatArray) -> types.FloatArray:
    """Distances between points `i` and `j`, gathered from the global point array."""
    return distance(points[i], points[j])


def collide(a: types.FloatArray, b: types.FloatArray) -> types.BoolArray:
    """Do spheres (or intervals) `a` and `b` overlap? Records are `(center..., radius)`."""
    acc = np.zeros(a.shape[:-1], dtype=np.float64)
    for c in range(a.shape[-1] - 1):
        d = a[..., c] - b[..., c]
        acc = acc + d * d
    reach = a[..., -1] + b[..., -1]
    return acc < reach * reach


def workload_collision(i: types.IntArray, j: types.IntArray, spheres: types.FloatArray) -> types.BoolArray:
    """Collision test of spheres `i` and `j`, gathered from the global sphere array."""
    return collide(spheres[i], spheres[j])


def digest(output: object) -> str:
    """SHA-256 of a workload output (an integer or an array)."""
    if isinstance(output, np.ndarray):
        payload = np.ascontiguousarray(output).tobytes()
    else:
        payload = str(output).encode("utf-8")
    return hashlib.sha256(payload).hexdigest()
