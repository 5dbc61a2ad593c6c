"""Population-level placement objective and its brute-force grid oracle.

The planner's objective is the worst-off individual's weighted log score

    min_i  omega * log(z - delta_i) + (1 - omega) * log(d_i)

subject to a per-individual deviation cap, a minimum separation between
close-by individuals, and ``omega in [0, 1]``.  A term with zero weight is
dropped, so the endpoints ``omega = 0`` and ``omega = 1`` collapse to the
pure distancing / pure isolation objectives.

The exact optimizer here enumerates every placement of a tiny population on
a square grid; it exists to validate the game solution, not to scale.
"""
from __future__ import annotations

import itertools
import math
from dataclasses import dataclass, field
from typing import NamedTuple, Sequence

import numpy as np

from .errors import CapacityError, DomainError, ParameterError
from .game import PayoffParams
from .geometry import (MobilityTrace, PopulationSnapshot, Position, ProximityRule,
                       aggregate_distance, distance_matrix, proximity_lists,
                       proximity_set, total_deviation)


@dataclass(frozen=True)
class ConstraintBounds:
    """Feasibility bounds: maximum deviation and minimum separation, meters."""

    delta_max: float = 500.0
    d_min: float = 2.0

    def __post_init__(self):
        if self.delta_max < 0:
            raise ParameterError(f"delta_max must be >= 0, got {self.delta_max}")
        if self.d_min <= 0:
            raise ParameterError(f"d_min must be positive, got {self.d_min}")


class Violation(NamedTuple):
    subject: object            # individual index, (i, j) pair, or "omega"
    constraint: str            # "max_deviation" | "min_separation" | "weight_range"
    amount: float              # how far past the bound


@dataclass(frozen=True)
class FeasibilityReport:
    violations: tuple[Violation, ...] = ()

    @property
    def feasible(self) -> bool:
        return not self.violations

    def count(self, constraint: str) -> int:
        return sum(1 for v in self.violations if v.constraint == constraint)


def check_constraints(snapshot: PopulationSnapshot, traces: Sequence[MobilityTrace],
                      bounds: ConstraintBounds, omega: float | None = None,
                      rule: ProximityRule | None = None, *,
                      all_pairs: bool = False,
                      deviations: np.ndarray | None = None,
                      dist: np.ndarray | None = None,
                      neighbor_lists: Sequence[np.ndarray] | None = None) -> FeasibilityReport:
    """Collect every constraint violation; violations are data, not errors.

    The separation check runs over proximity pairs under ``rule`` (the pairs
    that actually enter the objective); pass ``all_pairs=True`` or no rule to
    check every pair.  Each unordered pair is reported once.  ``deviations``,
    ``dist`` and ``neighbor_lists`` accept precomputed geometry so callers
    that already measured the scenario can skip recomputing it.
    """
    n = snapshot.size
    if len(traces) != n:
        raise ParameterError(f"{len(traces)} traces for {n} individuals")
    violations: list[Violation] = []
    if deviations is None:
        deviations = np.array([total_deviation(trace) for trace in traces])
    for i in np.flatnonzero(deviations > bounds.delta_max):
        violations.append(Violation(int(i), "max_deviation",
                                    float(deviations[i] - bounds.delta_max)))
    if dist is None:
        dist = distance_matrix(snapshot.positions_xy)
    if all_pairs or rule is None:
        close = np.triu(dist < bounds.d_min, k=1)
        pairs = list(zip(*np.nonzero(close)))
    elif n == 1:
        pairs = []
    else:
        if neighbor_lists is None:
            neighbor_lists = proximity_lists(snapshot.positions_xy, rule, dist)
        owners = np.repeat(np.arange(n), [len(m) for m in neighbor_lists])
        members = (np.concatenate(neighbor_lists) if len(owners) else
                   np.empty(0, dtype=int)).astype(np.int64)
        lo = np.minimum(owners, members)
        hi = np.maximum(owners, members)
        codes = np.unique(lo * n + hi)
        lo, hi = codes // n, codes % n
        close = dist[lo, hi] < bounds.d_min
        pairs = list(zip(lo[close], hi[close]))
    for i, j in pairs:
        i, j = int(i), int(j)
        violations.append(Violation((i, j), "min_separation", float(bounds.d_min - dist[i, j])))
    if omega is not None and not 0 <= omega <= 1:
        violations.append(Violation("omega", "weight_range",
                                    omega - 1 if omega > 1 else -omega))
    return FeasibilityReport(tuple(violations))


def _weighted_term(omega: float, budget_left: float, distance: float,
                   log, who: int) -> float:
    value = 0.0
    if omega > 0:
        if budget_left <= 0:
            raise DomainError(
                f"individual {who}: deviation consumed the whole budget (z - delta = {budget_left})")
        value += omega * log(budget_left)
    if omega < 1:
        if distance <= 0:
            raise DomainError(f"individual {who}: aggregate distance {distance} is not positive")
        value += (1 - omega) * log(distance)
    return value


def maxmin_objective(snapshot: PopulationSnapshot, traces: Sequence[MobilityTrace],
                     params: PayoffParams, rule: ProximityRule | None = None) -> float:
    """Worst individual score ``min_i omega*log(z - delta_i) + (1-omega)*log d_i``."""
    if params.omega is None:
        raise ParameterError("maxmin_objective needs params.omega")
    n = snapshot.size
    if len(traces) != n:
        raise ParameterError(f"{len(traces)} traces for {n} individuals")
    omega = params.omega
    terms = []
    for i in range(n):
        delta = total_deviation(traces[i])
        members = (set(range(n)) - {i}) if rule is None else proximity_set(i, snapshot, rule)
        d = aggregate_distance(i, snapshot, members)
        terms.append(_weighted_term(omega, params.z - delta, d, params.log, i))
    return min(terms)


@dataclass(frozen=True)
class TinyInstance:
    """Placement problem small enough for exhaustive search: each of the
    N <= 3 individuals may stand on any node of a k x k grid spanning the
    square area, reached in a single step from home."""

    homes: tuple[Position, ...]
    grid_k: int
    area_side: float
    params: PayoffParams
    bounds: ConstraintBounds = field(default_factory=ConstraintBounds)
    rule: ProximityRule | None = None     # None: every other individual
    budget: int = 10_000_000

    def __post_init__(self):
        object.__setattr__(self, "homes", tuple(self.homes))
        if not 1 <= len(self.homes) <= 3:
            raise ParameterError(f"exhaustive search handles 1..3 individuals, got {len(self.homes)}")
        if self.grid_k < 2:
            raise ParameterError(f"grid needs at least 2 nodes per side, got {self.grid_k}")
        if self.area_side <= 0:
            raise ParameterError(f"area side must be positive, got {self.area_side}")
        if self.params.omega is None:
            raise ParameterError("tiny instances need params.omega")

    @property
    def size(self) -> int:
        return len(self.homes)

    def grid_points(self) -> np.ndarray:
        """Grid nodes in lexicographic (x, y) order, shape (k*k, 2)."""
        coords = np.linspace(0.0, self.area_side, self.grid_k)
        xs, ys = np.meshgrid(coords, coords, indexing="ij")
        return np.column_stack([xs.ravel(), ys.ravel()])


def brute_force_optimum(instance: TinyInstance) -> tuple[list[Position], float]:
    """Global maximizer of the max-min objective over all feasible grid
    placements; ties resolve to the lexicographically smallest placement."""
    n = instance.size
    k2 = instance.grid_k ** 2
    evaluations = k2 ** n
    if evaluations > instance.budget:
        raise CapacityError(
            f"{evaluations} grid placements exceed the budget of {instance.budget}")

    points = instance.grid_points()
    homes = np.array([(p.x, p.y) for p in instance.homes])
    omega = instance.params.omega
    z = instance.params.z
    log = instance.params.log
    bounds = instance.bounds

    # Deviations and pair distances only ever involve grid nodes, so they
    # are precomputed once; selection below mirrors proximity_set exactly.
    home_dist = np.stack([np.sqrt((points[:, 0] - h[0]) ** 2 + (points[:, 1] - h[1]) ** 2)
                          for h in homes])
    pair_dist = distance_matrix(points)

    rule = instance.rule
    indices = np.arange(n)
    best_value: float | None = None
    best_profile: tuple[int, ...] | None = None
    for profile in itertools.product(range(k2), repeat=n):
        deltas = home_dist[indices, profile]
        if np.any(deltas > bounds.delta_max):
            continue
        cross = pair_dist[np.ix_(profile, profile)]
        if rule is None:
            neighbor_sets = [np.delete(indices, i) for i in range(n)]
        elif rule.mode == "count":
            if rule.count > n - 1:
                raise ParameterError(f"fixed-count proximity needs count <= N-1 = {n - 1}")
            neighbor_sets = []
            for i in range(n):
                row = cross[i].copy()
                row[i] = np.inf
                order = np.lexsort((indices, row))
                neighbor_sets.append(np.sort(order[:rule.count]))
        else:
            neighbor_sets = []
            for i in range(n):
                mask = cross[i] <= rule.value
                mask[i] = False
                neighbor_sets.append(np.flatnonzero(mask))
        pairs = {(min(i, int(j)), max(i, int(j)))
                 for i in range(n) for j in neighbor_sets[i]}
        if any(cross[i, j] < bounds.d_min for i, j in pairs):
            continue
        value = math.inf
        try:
            for i in range(n):
                members = neighbor_sets[i]
                d = float(np.sum(cross[i, members])) if len(members) else 0.0
                term = _weighted_term(omega, z - deltas[i], d, log, i)
                if term < value:
                    value = term
        except DomainError:
            # placements whose score is undefined are not candidates
            continue
        if best_value is None or value > best_value:
            best_value = value
            best_profile = profile

    if best_value is None:
        raise DomainError("no feasible grid placement satisfies the constraints")
    positions = [Position(*points[g]) for g in best_profile]
    return positions, best_value
