"""Randomized population scenarios and seeded Monte Carlo experiments.

A scenario drops ``n`` homes uniformly in a square area, assigns the first
``ceil(isolation_fraction * n)`` individuals of a seeded shuffle to stay
home, and lets everyone else wander: a mover's trace visits ``timesteps``
independent uniform locations.  Mover deviations are capped just below the
budget ``z`` (a mover can spend the budget but never leave the logarithm's
domain); the cap events are counted and reported.

Determinism contract: every run draws from a generator seeded by
``(master_seed, run_index)``, and draws homes, then the shuffle, then the
step positions for all individuals, in that order.  Identical seeds give
bit-identical populations regardless of the isolation fraction or of how
runs are scheduled, which makes fraction sweeps matched-seed comparisons.
"""
from __future__ import annotations

import math
from concurrent.futures import ProcessPoolExecutor
from dataclasses import dataclass, field, replace
from functools import partial
from typing import Sequence

import numpy as np

from .errors import DomainError, ParameterError
from .game import PayoffParams, Strategy
from .geometry import (MobilityTrace, PopulationSnapshot, ProximityRule,
                       aggregate_distances, distance_matrix, proximity_lists,
                       total_deviation)
from .objective import ConstraintBounds, FeasibilityReport, check_constraints

DEFAULT_HEADROOM_M = 0.05


@dataclass(frozen=True)
class ScenarioConfig:
    """Everything a Monte Carlo experiment needs to be reproducible."""

    n: int = 500
    area_side: float = 1000.0
    isolation_fraction: float = 1.0
    timesteps: int = 6
    params: PayoffParams = field(default_factory=lambda: PayoffParams(alpha=3.0, beta=1.0, z=1400.0))
    rule: ProximityRule = field(default_factory=lambda: ProximityRule.fixed_count(10))
    bounds: ConstraintBounds = field(default_factory=ConstraintBounds)
    runs: int = 50
    master_seed: int = 42
    headroom_m: float = DEFAULT_HEADROOM_M

    def __post_init__(self):
        if self.n < 1:
            raise ParameterError(f"population size must be >= 1, got {self.n}")
        if self.area_side <= 0:
            raise ParameterError(f"area side must be positive, got {self.area_side}")
        if not 0 <= self.isolation_fraction <= 1:
            raise ParameterError(f"isolation fraction must lie in [0, 1], got {self.isolation_fraction}")
        if self.timesteps < 1:
            raise ParameterError(f"timesteps must be >= 1, got {self.timesteps}")
        if self.runs < 1:
            raise ParameterError(f"runs must be >= 1, got {self.runs}")
        if not 0 <= self.master_seed < 2 ** 64:
            raise ParameterError(f"master seed must fit in 64 bits, got {self.master_seed}")
        if not 0 < self.headroom_m < self.params.z:
            raise ParameterError(
                f"headroom must lie in (0, z={self.params.z}), got {self.headroom_m}")


def _isolated_count(fraction: float, n: int) -> int:
    # ceil(fraction * n) with a relative fuzz so 0.1 * 500 stays at 50
    return math.ceil(fraction * n * (1 - 1e-12))


def generate_scenario(config: ScenarioConfig, run_index: int
                      ) -> tuple[PopulationSnapshot, list[MobilityTrace], tuple[Strategy, ...]]:
    """Draw one population: snapshot, traces, and the HOME/MOVE assignment."""
    rng = np.random.default_rng(np.random.SeedSequence((config.master_seed, run_index)))
    n, t = config.n, config.timesteps
    homes = rng.uniform(0.0, config.area_side, (n, 2))
    shuffle = rng.permutation(n)
    steps = rng.uniform(0.0, config.area_side, (n, t, 2))

    stays_home = np.zeros(n, dtype=bool)
    stays_home[shuffle[:_isolated_count(config.isolation_fraction, n)]] = True

    traces = []
    for i in range(n):
        path = np.tile(homes[i], (t, 1)) if stays_home[i] else steps[i]
        traces.append(MobilityTrace((float(homes[i, 0]), float(homes[i, 1])), path))
    positions = np.where(stays_home[:, None], homes, steps[:, -1, :])
    snapshot = PopulationSnapshot(positions, homes)
    strategies = tuple(Strategy.HOME if h else Strategy.MOVE for h in stays_home)
    return snapshot, traces, strategies


@dataclass(frozen=True)
class ScenarioMeasurements:
    """Geometry of one scenario, ready for payoff evaluation under any
    incentive weights: per-individual deviations (raw and capped), aggregate
    distances in canonical neighbor order, and the cap-event count.  The
    dense distance matrix rides along so later checks can reuse it."""

    strategies: tuple[Strategy, ...]
    deviations: np.ndarray
    capped_deviations: np.ndarray
    distance_sums: np.ndarray
    clipped_movers: int
    dist: np.ndarray
    neighbor_lists: tuple[np.ndarray, ...]


def measure_scenario(config: ScenarioConfig, snapshot: PopulationSnapshot,
                     traces: Sequence[MobilityTrace],
                     strategies: Sequence[Strategy]) -> ScenarioMeasurements:
    """Compute deviations, proximity sets, and aggregate distances."""
    n = snapshot.size
    if not (len(traces) == len(strategies) == n):
        raise ParameterError("snapshot, traces and strategies must describe the same individuals")
    try:
        steps = np.stack([tr.steps for tr in traces])
    except ValueError:
        raise ParameterError("all traces must share the same number of timesteps") from None
    homes = np.array([(tr.home.x, tr.home.y) for tr in traces])
    paths = np.concatenate([homes[:, None, :], steps], axis=1)
    legs = np.hypot(np.diff(paths[:, :, 0], axis=1), np.diff(paths[:, :, 1], axis=1))
    deviations = legs.sum(axis=1)

    cap = config.params.z - config.headroom_m
    capped = np.minimum(deviations, cap)
    clipped = int(np.sum(deviations > cap))

    dist = distance_matrix(snapshot.positions_xy)
    neighbors = proximity_lists(snapshot.positions_xy, config.rule, dist)
    sums = aggregate_distances(snapshot.positions_xy, neighbors, dist)
    return ScenarioMeasurements(tuple(strategies), deviations, capped, sums, clipped,
                                dist, tuple(neighbors))


def evaluate_payoffs(measurements: ScenarioMeasurements, params: PayoffParams) -> np.ndarray:
    """Per-individual incentives for the measured scenario under ``params``."""
    home = np.array([s is Strategy.HOME for s in measurements.strategies])
    spent = np.where(home, 0.0, measurements.capped_deviations)
    budget_left = params.z - spent
    if np.any(budget_left <= 0):
        worst = int(np.argmin(budget_left))
        raise DomainError(
            f"individual {worst}: deviation consumed the whole budget (z - delta <= 0)")
    log = np.log if params.log_base == "natural" else np.log10
    values = np.zeros(len(home))
    if params.alpha:
        values += params.alpha * log(budget_left)
    if params.beta:
        d = measurements.distance_sums
        if np.any(d <= 0):
            worst = int(np.argmin(d))
            raise DomainError(f"individual {worst}: aggregate distance {d[worst]} is not positive")
        values += params.beta * log(d)
    return values


@dataclass(frozen=True)
class RunResult:
    """One simulated period: per-individual incentives and their aggregate."""

    run_index: int
    master_seed: int
    payoffs: np.ndarray
    total: float
    mean_individual: float
    feasibility: FeasibilityReport
    clipped_movers: int


def run_once(config: ScenarioConfig, run_index: int = 0) -> RunResult:
    """Generate and evaluate a single run of the scenario."""
    snapshot, traces, strategies = generate_scenario(config, run_index)
    measurements = measure_scenario(config, snapshot, traces, strategies)
    payoffs = evaluate_payoffs(measurements, config.params)
    feasibility = check_constraints(snapshot, traces, config.bounds,
                                    omega=config.params.omega, rule=config.rule,
                                    deviations=measurements.deviations,
                                    dist=measurements.dist,
                                    neighbor_lists=measurements.neighbor_lists)
    return RunResult(
        run_index=run_index,
        master_seed=config.master_seed,
        payoffs=payoffs,
        total=float(np.sum(payoffs)),
        mean_individual=float(np.mean(payoffs)),
        feasibility=feasibility,
        clipped_movers=measurements.clipped_movers,
    )


@dataclass(frozen=True)
class EcdfCurve:
    """Right-continuous empirical CDF: step of height 1/n at each sample."""

    values: np.ndarray
    probabilities: np.ndarray

    def evaluate(self, x) -> np.ndarray | float:
        ranks = np.searchsorted(self.values, x, side="right")
        result = ranks / len(self.values)
        return float(result) if np.isscalar(x) else result


def ecdf(samples: Sequence[float]) -> EcdfCurve:
    """Empirical CDF of a nonempty sample."""
    arr = np.sort(np.asarray(list(samples), dtype=float))
    if arr.size == 0:
        raise ParameterError("ecdf needs at least one sample")
    probs = np.arange(1, arr.size + 1) / arr.size
    return EcdfCurve(arr, probs)


@dataclass(frozen=True)
class MonteCarloResult:
    runs: tuple[RunResult, ...]
    mean_total: float
    mean_individual: float
    total_ecdf: EcdfCurve


def monte_carlo(config: ScenarioConfig, jobs: int = 1) -> MonteCarloResult:
    """Independent seeded runs plus their aggregate statistics.

    Runs are independent tasks; with ``jobs > 1`` they execute in worker
    processes.  Results are collected by run index and reduced in a fixed
    order, so the aggregate does not depend on scheduling.
    """
    indices = range(config.runs)
    if jobs > 1:
        with ProcessPoolExecutor(max_workers=jobs) as pool:
            results = list(pool.map(partial(run_once, config), indices))
    else:
        results = [run_once(config, i) for i in indices]
    totals = [r.total for r in results]
    return MonteCarloResult(
        runs=tuple(results),
        mean_total=float(np.mean(totals)),
        mean_individual=float(np.mean([r.mean_individual for r in results])),
        total_ecdf=ecdf(totals),
    )


def with_overrides(config: ScenarioConfig, **overrides) -> ScenarioConfig:
    """Copy of ``config`` with the given fields replaced."""
    return replace(config, **overrides)
