"""Datasets behind the numerical study figures.

Each figure id maps to one tabular dataset:

    F2  mean total incentive, all-home vs all-random placement, over the
        isolation weight omega, for populations of 500 and 1000
    F3  ecdf of run totals per isolation fraction and population size
    F4  mean total incentive per isolation fraction and population size
    F5  mean individual incentive per isolation fraction and population size
    F6  daily incentive and maximum lockdown days per fraction and size
    F7  lockdown days over the (initial stock, collection ratio) grid for
        a population of 1000

Rows are emitted in a fixed order and all randomness flows through the
scenario seed, so a dataset is a pure function of (figure id, config).
"""
from __future__ import annotations

from dataclasses import dataclass

import numpy as np

from .errors import ParameterError
from .game import PayoffParams
from .scenarios import (ScenarioConfig, ecdf, evaluate_payoffs, generate_scenario,
                        measure_scenario, monte_carlo, with_overrides)
from .sustainability import MINUTES_PER_DAY, max_lockdown_days

FIGURE_IDS = ("F2", "F3", "F4", "F5", "F6", "F7")

POPULATION_SWEEP = (500, 1000, 1500, 2000)
F2_POPULATIONS = (500, 1000)
ISOLATION_FRACTIONS = (0.25, 0.5, 0.75, 1.0)
OMEGA_GRID = tuple(i / 10 for i in range(11))
R0_VALUES = (5e23, 5.5e23, 6e23, 6.5e23, 7e23)
COLLECTION_RATIOS = (0.10, 0.20, 0.30, 0.40, 0.50)


@dataclass(frozen=True)
class FigureDataset:
    figure_id: str
    columns: tuple[str, ...]
    rows: tuple[tuple, ...]


@dataclass(frozen=True)
class GridCell:
    """Summary of one (population, fraction) Monte Carlo experiment."""

    totals: np.ndarray            # one total per run, in run order
    mean_total: float
    mean_individual: float


def incentive_grid(config: ScenarioConfig,
                   populations: tuple[int, ...] = POPULATION_SWEEP,
                   fractions: tuple[float, ...] = ISOLATION_FRACTIONS,
                   jobs: int = 1) -> dict[tuple[int, float], GridCell]:
    """Monte Carlo summaries for every (population, fraction) pair."""
    grid: dict[tuple[int, float], GridCell] = {}
    for n in populations:
        for fraction in fractions:
            result = monte_carlo(with_overrides(config, n=n, isolation_fraction=fraction), jobs)
            grid[n, fraction] = GridCell(
                totals=np.array([r.total for r in result.runs]),
                mean_total=result.mean_total,
                mean_individual=result.mean_individual,
            )
    return grid


def daily_from_period(mean_period_total: float, slot_minutes: int) -> float:
    """Daily incentive bill implied by a mean per-period total."""
    return (MINUTES_PER_DAY / slot_minutes) * mean_period_total


def _figure_f2(config: ScenarioConfig, populations, jobs) -> FigureDataset:
    base = config.params
    rows = []
    totals: dict[tuple[float, int, str], list[float]] = {}
    for n in populations:
        for placement, fraction in (("home", 1.0), ("random", 0.0)):
            cfg = with_overrides(config, n=n, isolation_fraction=fraction)
            for run_index in range(cfg.runs):
                drawn = generate_scenario(cfg, run_index)
                measurements = measure_scenario(cfg, *drawn)
                for omega in OMEGA_GRID:
                    params = PayoffParams(
                        alpha=base.alpha * omega, beta=base.beta * (1 - omega),
                        z=base.z, omega=omega, alpha_raw=base.alpha,
                        beta_raw=base.beta, log_base=base.log_base)
                    total = float(np.sum(evaluate_payoffs(measurements, params)))
                    totals.setdefault((omega, n, placement), []).append(total)
    for omega in OMEGA_GRID:
        for n in populations:
            rows.append((omega, n,
                         float(np.mean(totals[omega, n, "home"])),
                         float(np.mean(totals[omega, n, "random"]))))
    return FigureDataset("F2", ("omega", "n", "total_home_isolation", "total_random_location"),
                         tuple(rows))


def _figure_f3(grid, populations, fractions) -> FigureDataset:
    rows = []
    for n in populations:
        for fraction in fractions:
            curve = ecdf(grid[n, fraction].totals)
            for value, prob in zip(curve.values, curve.probabilities):
                rows.append((n, fraction, float(value), float(prob)))
    return FigureDataset("F3", ("n", "isolation_fraction", "total_incentive",
                                "cumulative_probability"), tuple(rows))


def _figure_f4(grid, populations, fractions) -> FigureDataset:
    rows = [(n, f, grid[n, f].mean_total) for n in populations for f in fractions]
    return FigureDataset("F4", ("n", "isolation_fraction", "mean_total_incentive"), tuple(rows))


def _figure_f5(grid, populations, fractions) -> FigureDataset:
    rows = [(n, f, grid[n, f].mean_individual) for n in populations for f in fractions]
    return FigureDataset("F5", ("n", "isolation_fraction", "mean_individual_incentive"),
                         tuple(rows))


def _figure_f6(grid, populations, fractions, slot_minutes, r0, ratio) -> FigureDataset:
    rows = []
    for n in populations:
        for fraction in fractions:
            daily = daily_from_period(grid[n, fraction].mean_total, slot_minutes)
            projection = max_lockdown_days(r0, daily, ratio * daily)
            rows.append((n, fraction, daily, projection.days))
    return FigureDataset("F6", ("n", "isolation_fraction", "daily_incentive",
                                "max_lockdown_days"), tuple(rows))


def _figure_f7(grid, fractions, slot_minutes, n) -> FigureDataset:
    rows = []
    for fraction in fractions:
        daily = daily_from_period(grid[n, fraction].mean_total, slot_minutes)
        for r0 in R0_VALUES:
            for ratio in COLLECTION_RATIOS:
                projection = max_lockdown_days(r0, daily, ratio * daily)
                rows.append((n, fraction, r0, ratio, daily, projection.days))
    return FigureDataset("F7", ("n", "isolation_fraction", "r0", "collection_ratio",
                                "daily_incentive", "max_lockdown_days"), tuple(rows))


def reproduce_figure(figure_id: str, config: ScenarioConfig, *,
                     slot_minutes: int = 30, r0: float = R0_VALUES[0],
                     collection_ratio: float = COLLECTION_RATIOS[0],
                     populations: tuple[int, ...] | None = None,
                     jobs: int = 1) -> FigureDataset:
    """Recompute the dataset behind one study figure.

    ``config`` supplies the incentive parameters, run count and master seed;
    the population sweep defaults to the figure's own and can be narrowed
    via ``populations`` (F7 always uses its single population).
    """
    fig = figure_id.upper()
    if fig not in FIGURE_IDS:
        raise ParameterError(f"unknown figure id {figure_id!r}; valid ids: {', '.join(FIGURE_IDS)}")
    if fig == "F2":
        return _figure_f2(config, populations or F2_POPULATIONS, jobs)
    if fig == "F7":
        n = (populations or (1000,))[0]
        grid = incentive_grid(config, (n,), ISOLATION_FRACTIONS, jobs)
        return _figure_f7(grid, ISOLATION_FRACTIONS, slot_minutes, n)
    pops = populations or POPULATION_SWEEP
    grid = incentive_grid(config, pops, ISOLATION_FRACTIONS, jobs)
    if fig == "F3":
        return _figure_f3(grid, pops, ISOLATION_FRACTIONS)
    if fig == "F4":
        return _figure_f4(grid, pops, ISOLATION_FRACTIONS)
    if fig == "F5":
        return _figure_f5(grid, pops, ISOLATION_FRACTIONS)
    return _figure_f6(grid, pops, ISOLATION_FRACTIONS, slot_minutes, r0, collection_ratio)
