"""Planar mobility geometry.

Positions are Cartesian coordinates in meters.  An individual's *deviation*
is the Euclidean path length of their location history relative to home; the
*aggregate distance* is the summed end-of-period distance to the individuals
in their proximity set.  All functions are pure and snapshots are immutable
after construction, so everything here is safe to call concurrently.
"""
from __future__ import annotations

import math
from dataclasses import dataclass
from typing import Iterable, Sequence

import numpy as np
from scipy.spatial.distance import cdist

from .errors import ParameterError


@dataclass(frozen=True)
class Position:
    """A point in the plane, in meters."""

    x: float
    y: float

    def __post_init__(self):
        if not (math.isfinite(self.x) and math.isfinite(self.y)):
            raise ParameterError(f"position coordinates must be finite, got ({self.x}, {self.y})")

    def as_array(self) -> np.ndarray:
        return np.array([self.x, self.y], dtype=float)


def _coerce_points(points, what: str) -> np.ndarray:
    """Normalize a sequence of Position/pairs (or an (K, 2) array) to float64."""
    if isinstance(points, np.ndarray):
        arr = np.asarray(points, dtype=float)
    else:
        rows = []
        for p in points:
            rows.append((p.x, p.y) if isinstance(p, Position) else (float(p[0]), float(p[1])))
        arr = np.asarray(rows, dtype=float)
    if arr.ndim != 2 or arr.shape[1] != 2:
        raise ParameterError(f"{what} must be a sequence of planar points, got shape {arr.shape}")
    if not np.isfinite(arr).all():
        raise ParameterError(f"{what} contains non-finite coordinates")
    arr = arr.copy()
    arr.flags.writeable = False
    return arr


class MobilityTrace:
    """Location history of one individual over a single time period.

    ``steps[t-1]`` is the position at the end of timestep ``t`` (1-based);
    there must be at least one step.
    """

    __slots__ = ("home", "steps")

    def __init__(self, home, steps):
        object.__setattr__(self, "home", home if isinstance(home, Position) else Position(*home))
        arr = _coerce_points(steps, "trace steps")
        if len(arr) < 1:
            raise ParameterError("a mobility trace needs at least one timestep")
        object.__setattr__(self, "steps", arr)

    def __setattr__(self, name, value):
        raise AttributeError("MobilityTrace is immutable")

    @property
    def timesteps(self) -> int:
        return len(self.steps)

    def step(self, t: int) -> Position:
        """Position at 1-based timestep ``t``."""
        if not 1 <= t <= self.timesteps:
            raise IndexError(f"timestep {t} outside 1..{self.timesteps}")
        return Position(*self.steps[t - 1])


class PopulationSnapshot:
    """End-of-period positions and home locations for ``size`` individuals."""

    __slots__ = ("positions_xy", "homes_xy")

    def __init__(self, positions, homes):
        pos = _coerce_points(positions, "positions")
        hom = _coerce_points(homes, "homes")
        if len(pos) != len(hom):
            raise ParameterError(f"positions ({len(pos)}) and homes ({len(hom)}) must have equal length")
        if len(pos) < 1:
            raise ParameterError("a snapshot needs at least one individual")
        object.__setattr__(self, "positions_xy", pos)
        object.__setattr__(self, "homes_xy", hom)

    def __setattr__(self, name, value):
        raise AttributeError("PopulationSnapshot is immutable")

    @property
    def size(self) -> int:
        return len(self.positions_xy)

    def position(self, i: int) -> Position:
        return Position(*self.positions_xy[i])

    def home(self, i: int) -> Position:
        return Position(*self.homes_xy[i])


@dataclass(frozen=True)
class ProximityRule:
    """Membership rule for an individual's proximity set.

    ``count`` mode keeps the ``value`` nearest other individuals (ties broken
    by ascending index); ``radius`` mode keeps everyone within ``value``
    meters.
    """

    mode: str
    value: float

    def __post_init__(self):
        if self.mode not in ("count", "radius"):
            raise ParameterError(f"proximity mode must be 'count' or 'radius', got {self.mode!r}")
        if self.mode == "count":
            if self.value != int(self.value) or self.value < 1:
                raise ParameterError(f"fixed-count proximity needs an integer count >= 1, got {self.value}")
        elif self.value <= 0:
            raise ParameterError(f"proximity radius must be positive, got {self.value}")

    @classmethod
    def fixed_count(cls, count: int) -> "ProximityRule":
        return cls("count", count)

    @classmethod
    def radius(cls, radius_m: float) -> "ProximityRule":
        return cls("radius", radius_m)

    @property
    def count(self) -> int:
        return int(self.value)


def pairwise_distance(a, b) -> float:
    """Euclidean distance between two positions."""
    ax, ay = (a.x, a.y) if isinstance(a, Position) else (a[0], a[1])
    bx, by = (b.x, b.y) if isinstance(b, Position) else (b[0], b[1])
    dx = ax - bx
    dy = ay - by
    return math.sqrt(dx * dx + dy * dy)


def step_deviation(trace: MobilityTrace, t: int) -> float:
    """Distance covered at 1-based timestep ``t``: home to the first step for
    ``t == 1``, previous step to current step otherwise."""
    if not 1 <= t <= trace.timesteps:
        raise IndexError(f"timestep {t} outside 1..{trace.timesteps}")
    if t == 1:
        prev = (trace.home.x, trace.home.y)
    else:
        prev = trace.steps[t - 2]
    cur = trace.steps[t - 1]
    return pairwise_distance((prev[0], prev[1]), (cur[0], cur[1]))


def total_deviation(trace: MobilityTrace) -> float:
    """Total path length of the trace relative to home (sum over all steps)."""
    path = np.vstack([trace.home.as_array(), trace.steps])
    dx = np.diff(path[:, 0])
    dy = np.diff(path[:, 1])
    return float(np.sum(np.sqrt(dx * dx + dy * dy)))


def _distance_row(snapshot: PopulationSnapshot, i: int) -> np.ndarray:
    delta = snapshot.positions_xy - snapshot.positions_xy[i]
    return np.sqrt(delta[:, 0] ** 2 + delta[:, 1] ** 2)


def proximity_set(i: int, snapshot: PopulationSnapshot, rule: ProximityRule) -> set[int]:
    """Indices of the individuals in ``i``'s proximity set.

    Deterministic: in count mode, neighbors are selected by ascending
    (distance, index); in radius mode, every ``j != i`` within the radius.
    """
    n = snapshot.size
    if not 0 <= i < n:
        raise ParameterError(f"individual index {i} outside 0..{n - 1}")
    dist = _distance_row(snapshot, i)
    if rule.mode == "count":
        c = rule.count
        if c > n - 1:
            raise ParameterError(f"fixed-count proximity needs count <= N-1 = {n - 1}, got {c}")
        order = np.lexsort((np.arange(n), dist))
        order = order[order != i]
        return {int(j) for j in order[:c]}
    mask = dist <= rule.value
    mask[i] = False
    return {int(j) for j in np.flatnonzero(mask)}


def aggregate_distance(i: int, snapshot: PopulationSnapshot, proximity: Iterable[int]) -> float:
    """Sum of distances from individual ``i`` to each member of ``proximity``.

    Summation runs in ascending index order so results are reproducible.
    """
    n = snapshot.size
    members = sorted(int(j) for j in proximity)
    if any(j < 0 or j >= n for j in members):
        raise ParameterError("proximity set contains out-of-range indices")
    if i in members:
        raise ParameterError(f"individual {i} cannot be in its own proximity set")
    if not members:
        return 0.0
    dist = _distance_row(snapshot, i)
    return float(np.sum(dist[members]))


def distance_matrix(positions: np.ndarray) -> np.ndarray:
    """Dense Euclidean distance matrix for an (N, 2) position array.

    cdist computes sqrt(dx*dx + dy*dy) per cell, bit-identical to the
    scalar :func:`pairwise_distance`, so both routes agree exactly.
    """
    return cdist(positions, positions)


def proximity_lists(positions: np.ndarray, rule: ProximityRule,
                    dist: np.ndarray | None = None) -> list[np.ndarray]:
    """Proximity sets for every individual at once.

    Returns one index array per individual, ordered by ascending
    (distance, index) in count mode and ascending index in radius mode.
    Matches :func:`proximity_set` row by row.
    """
    n = len(positions)
    if dist is None:
        dist = distance_matrix(positions)
    out: list[np.ndarray] = []
    if rule.mode == "count":
        c = rule.count
        if c > n - 1:
            raise ParameterError(f"fixed-count proximity needs count <= N-1 = {n - 1}, got {c}")
        work = dist.copy()
        np.fill_diagonal(work, np.inf)
        rows = np.arange(n)
        part = np.argpartition(work, c - 1, axis=1)
        sel = part[:, :c]
        sel_d = work[rows[:, None], sel]
        if c < n - 1:
            # argpartition may split a tie group across the cut; rows where
            # more than c distances fit under the boundary value need the
            # full (distance, index) ordering to stay canonical.
            boundary = work[rows, part[:, c - 1]]
            suspect = (work <= boundary[:, None]).sum(axis=1) > c
        else:
            suspect = np.zeros(n, dtype=bool)
        for i in range(n):
            if suspect[i]:
                order = np.lexsort((rows, work[i]))
                out.append(order[:c])
            else:
                cols = sel[i]
                order = np.lexsort((cols, sel_d[i]))
                out.append(cols[order])
    else:
        for i in range(n):
            mask = dist[i] <= rule.value
            mask[i] = False
            out.append(np.flatnonzero(mask))
    return out


def aggregate_distances(positions: np.ndarray, neighbor_lists: Sequence[np.ndarray],
                        dist: np.ndarray | None = None) -> np.ndarray:
    """Aggregate distance for every individual given precomputed proximity sets."""
    if dist is None:
        dist = distance_matrix(positions)
    n = len(positions)
    lengths = {len(members) for members in neighbor_lists}
    if len(lengths) == 1 and lengths != {0}:
        # equal-size sets (count mode): one vectorized gather
        mat = np.sort(np.vstack(neighbor_lists), axis=1)
        return np.take_along_axis(dist, mat, axis=1).sum(axis=1)
    sums = np.zeros(n)
    for i in range(n):
        members = neighbor_lists[i]
        if len(members):
            sums[i] = np.sum(dist[i, np.sort(members)])
    return sums
