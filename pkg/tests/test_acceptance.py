"""End-to-end acceptance gate.

Each test covers one release criterion and prints a [PASS]/[FAIL] verdict
line (run with ``pytest -s tests/test_acceptance.py`` to see them inline).
The shared Monte Carlo grid uses the default configuration: Ns 500..2000,
isolation fractions 25%..100%, 50 runs, master seed 42.
"""
import itertools
import math
import time

import numpy as np
import pytest

from sdgame import (GameInstance, PayoffParams, PlayerState, Position, Strategy,
                    TinyInstance, TwoPlayerStep, brute_force_optimum,
                    dominant_strategy_equilibrium, max_lockdown_days,
                    two_player_matrix, verify_nash)
from sdgame.cli import execute
from sdgame.config import Settings
from sdgame.figures import (ISOLATION_FRACTIONS, POPULATION_SWEEP, daily_from_period,
                            incentive_grid)

Z = 1400.0
HOME = Strategy.HOME
MOVE = Strategy.MOVE


def _verdict(number: int, description: str, passed: bool) -> bool:
    print(f"[{'PASS' if passed else 'FAIL'}] criterion {number}: {description}")
    return passed


@pytest.fixture(scope="module")
def default_grid():
    """Monte Carlo summaries for the default configuration, timed."""
    settings = Settings()
    assert settings.runs == 50 and settings.seed == 42
    started = time.monotonic()
    grid = incentive_grid(settings.scenario_config(), POPULATION_SWEEP,
                          ISOLATION_FRACTIONS)
    elapsed = time.monotonic() - started
    return settings, grid, elapsed


def test_criterion_1_home_equilibrium_on_random_instances():
    rng = np.random.default_rng(20260809)
    started = time.monotonic()
    confirmed = 0
    for _ in range(1000):
        n = int(rng.integers(1, 7))
        alpha = float(rng.uniform(0.2, 6.0))
        beta = float(rng.uniform(0.01, alpha * 0.99))
        params = PayoffParams(alpha=alpha, beta=beta, z=Z)
        players = []
        for _ in range(n):
            d_move = float(rng.uniform(1.0, 4000.0))
            players.append(PlayerState(
                delta=float(rng.uniform(1e-6, Z * 0.999)),
                d_move=d_move,
                d_home=d_move * float(rng.uniform(1.000001, 5.0))))
        game = GameInstance(players=tuple(players), params=params)
        profile = dominant_strategy_equilibrium(game)
        assert profile == (HOME,) * n
        assert verify_nash(game, profile)
        if n <= 4:
            for other in itertools.product((HOME, MOVE), repeat=n):
                flips = [i for i in range(n) if other[i] is not profile[i]]
                if len(flips) == 1:
                    i = flips[0]
                    assert game.payoff(i, other) <= game.payoff(i, profile)
        confirmed += 1
    elapsed = time.monotonic() - started
    ok = confirmed == 1000 and elapsed < 10.0
    assert _verdict(1, f"all-home equilibrium on {confirmed}/1000 instances "
                       f"in {elapsed:.1f}s (< 10s)", ok)


def test_criterion_2_two_player_difference_identities():
    rng = np.random.default_rng(77)
    worst = 0.0
    for _ in range(100):
        alpha = float(rng.uniform(0.2, 5.0))
        beta = float(rng.uniform(0.1, 5.0))
        z = float(rng.uniform(500.0, 3000.0))
        d1 = float(rng.uniform(50.0, 5000.0))
        d2 = float(rng.uniform(50.0, 5000.0))
        delta = float(rng.uniform(0.5, min(d1, d2, z) * 0.45))
        dir1, dir2 = rng.choice(["toward", "away"], size=2)
        step = TwoPlayerStep(delta, str(dir1), str(dir2))
        s1, s2 = step.signs
        params = PayoffParams(alpha=alpha, beta=beta, z=z)
        game = two_player_matrix(params, d1, d2, step)
        iso = alpha * math.log(z / (z - delta))
        pairs = [
            (game.cell(HOME, HOME)[0] - game.cell(MOVE, HOME)[0],
             iso + beta * math.log(d1 / (d1 + s1 * delta))),
            (game.cell(HOME, MOVE)[0] - game.cell(MOVE, MOVE)[0],
             iso + beta * math.log((d1 + s2 * delta) / (d1 + (s1 + s2) * delta))),
            (game.cell(HOME, HOME)[1] - game.cell(HOME, MOVE)[1],
             iso + beta * math.log(d2 / (d2 + s2 * delta))),
            (game.cell(MOVE, HOME)[1] - game.cell(MOVE, MOVE)[1],
             iso + beta * math.log((d2 + s1 * delta) / (d2 + (s1 + s2) * delta))),
        ]
        for computed, closed in pairs:
            rel = abs(computed - closed) / max(abs(closed), 1e-12)
            worst = max(worst, rel)
            assert rel <= 1e-9
    assert _verdict(2, f"matrix differences match closed forms "
                       f"(worst relative error {worst:.2e} <= 1e-9)", worst <= 1e-9)


def test_criterion_3_total_incentive_gain(default_grid):
    settings, grid, elapsed = default_grid
    gains = {}
    for n in POPULATION_SWEEP:
        means = [grid[n, f].mean_total for f in ISOLATION_FRACTIONS]
        assert all(a < b for a, b in zip(means, means[1:])), \
            f"totals not monotone across fractions for n={n}: {means}"
        gains[n] = (means[-1] - means[0]) / means[0] * 100.0
        assert means[0] > 0
        assert gains[n] > 300.0, f"gain for n={n} is {gains[n]:.1f}% <= 300%"
    ok = elapsed < 120.0
    assert _verdict(3, "25%->100% isolation gains "
                       + ", ".join(f"n={n}: {g:.0f}%" for n, g in gains.items())
                       + f"; grid built in {elapsed:.0f}s (< 120s)", ok)


def test_criterion_4_individual_incentive_trends(default_grid):
    settings, grid, _ = default_grid
    runs = settings.runs
    share_ok = {}
    for n in POPULATION_SWEEP:
        per_run = np.column_stack([grid[n, f].totals / n for f in ISOLATION_FRACTIONS])
        increasing = np.all(np.diff(per_run, axis=1) > 0, axis=1)
        share_ok[n] = float(np.mean(increasing))
        assert share_ok[n] >= 0.95, \
            f"fraction-monotone individual incentive holds in {share_ok[n]:.0%} of runs at n={n}"
    half = np.column_stack([grid[n, 0.5].totals / n for n in POPULATION_SWEEP])
    decreasing = np.all(np.diff(half, axis=1) < 0, axis=1)
    share_n = float(np.mean(decreasing))
    assert share_n >= 0.95, f"size-monotone individual incentive holds in {share_n:.0%} of runs"
    assert _verdict(4, "individual incentive rises with isolation in "
                       + ", ".join(f"{share_ok[n]:.0%} (n={n})" for n in POPULATION_SWEEP)
                       + f" of runs; falls with population in {share_n:.0%}", True)


def test_criterion_5_sustainability_arithmetic():
    reference = max_lockdown_days(100.0, 20.0, 10.0)
    assert reference.days == 10.0 and reference.floor_days == 10

    from sdgame import DailyIncentive, ResourcePolicy, is_sustainable

    rng = np.random.default_rng(505)
    for _ in range(1000):
        u = float(rng.uniform(1.0, 1000.0))
        r = u * float(rng.uniform(0.0, 0.95))
        r0 = float(rng.uniform(1.0, (u - r) * 1500.0))
        projection = max_lockdown_days(r0, u, r)
        policy = ResourcePolicy(r0=r0, collected=r, slot_minutes=1440)
        day = DailyIncentive((u,))
        assert is_sustainable(policy, [day] * projection.floor_days)
        assert not is_sustainable(policy, [day] * (projection.floor_days + 1))

    stocks = (5e23, 5.5e23, 6e23, 6.5e23, 7e23)
    u_daily, r_daily = 3.2e20, 3.2e19
    days = [max_lockdown_days(r0, u_daily, r_daily).days for r0 in stocks]
    assert all(a < b for a, b in zip(days, days[1:]))
    assert _verdict(5, "P(100, 20, 10) = 10 exactly; floor/floor+1 split holds on "
                       "1000 draws; P strictly increasing across the stock set", True)


def test_criterion_6_lockdown_days_fall_with_isolation(default_grid):
    settings, grid, _ = default_grid
    r0 = 5e23
    for n in POPULATION_SWEEP:
        days = []
        for fraction in ISOLATION_FRACTIONS:
            daily = daily_from_period(grid[n, fraction].mean_total, settings.slot_minutes)
            days.append(max_lockdown_days(r0, daily, 0.10 * daily).days)
        assert all(a > b for a, b in zip(days, days[1:])), \
            f"lockdown days not strictly decreasing for n={n}: {days}"
    assert _verdict(6, "maximum lockdown days strictly decrease through "
                       "25%/50%/75%/100% isolation for every population size", True)


def _reference_scan(homes, omega, grid_k, area, delta_max, d_min):
    """Independent exhaustive optimum for n <= 2 on a k x k grid (all-others
    proximity), coded apart from the library path."""
    coords = np.linspace(0.0, area, grid_k)
    pts = [(float(x), float(y)) for x in coords for y in coords]
    n = len(homes)
    best = None
    for assignment in itertools.product(range(len(pts)), repeat=n):
        deltas = []
        for who, g in enumerate(assignment):
            dx = pts[g][0] - homes[who][0]
            dy = pts[g][1] - homes[who][1]
            deltas.append(math.sqrt(dx * dx + dy * dy))
        if any(d > delta_max for d in deltas):
            continue
        if n == 2:
            dx = pts[assignment[0]][0] - pts[assignment[1]][0]
            dy = pts[assignment[0]][1] - pts[assignment[1]][1]
            separation = math.sqrt(dx * dx + dy * dy)
            if separation < d_min:
                continue
        terms = []
        defined = True
        for who in range(n):
            term = 0.0
            if omega > 0:
                term += omega * math.log(Z - deltas[who])
            if omega < 1:
                if n == 1 or separation <= 0:
                    defined = False
                    break
                term += (1 - omega) * math.log(separation)
            terms.append(term)
        if not defined:
            continue
        value = min(terms)
        if best is None or value > best:
            best = value
    return best


def test_criterion_7_oracle_agreement():
    rng = np.random.default_rng(7007)
    grid_k, area = 5, 1000.0
    coords = np.linspace(0.0, area, grid_k)
    checked = 0
    for trial in range(20):
        n = 1 if trial % 5 == 0 else 2
        omega = (0.0, 0.5, 1.0)[trial % 3] if n == 2 else 1.0
        picks = rng.choice(grid_k * grid_k, size=n, replace=False)
        homes = [(float(coords[p // grid_k]), float(coords[p % grid_k])) for p in picks]
        params = PayoffParams(alpha=3.0 * omega, beta=1.0 * (1 - omega), z=Z,
                              omega=omega, alpha_raw=3.0, beta_raw=1.0)
        instance = TinyInstance(homes=tuple(Position(*h) for h in homes),
                                grid_k=grid_k, area_side=area, params=params)
        positions, value = brute_force_optimum(instance)
        expected = _reference_scan(homes, omega, grid_k, area,
                                   instance.bounds.delta_max, instance.bounds.d_min)
        assert value == expected, f"trial {trial}: {value!r} != {expected!r}"
        if omega == 1.0:
            assert [(p.x, p.y) for p in positions] == homes
        checked += 1
    assert _verdict(7, f"exhaustive optimum matches the independent scan exactly on "
                       f"{checked}/20 instances; isolation-only optima stay home", True)


def test_criterion_8_cli_byte_determinism(tmp_path):
    def read(path):
        return path.read_bytes()

    fig_args = ["figure", "F4", "--runs", "3", "--seed", "42", "--no-plot"]
    execute(fig_args + ["--out", str(tmp_path / "fig_a")])
    execute(fig_args + ["--out", str(tmp_path / "fig_b")])
    execute(fig_args + ["--out", str(tmp_path / "fig_par"), "--jobs", "2"])
    fig_match = (read(tmp_path / "fig_a/figure_F4.csv") == read(tmp_path / "fig_b/figure_F4.csv")
                 == read(tmp_path / "fig_par/figure_F4.csv"))
    assert fig_match

    sim_args = ["simulate", "--n", "80", "--runs", "4", "--seed", "7", "--no-plot"]
    execute(sim_args + ["--out", str(tmp_path / "sim_a")])
    execute(sim_args + ["--out", str(tmp_path / "sim_b"), "--jobs", "2"])
    sim_match = all(read(tmp_path / f"sim_a/{name}") == read(tmp_path / f"sim_b/{name}")
                    for name in ("runs.csv", "ecdf.csv"))
    assert sim_match
    assert _verdict(8, "repeated and parallel CLI invocations emit byte-identical CSVs",
                    fig_match and sim_match)
