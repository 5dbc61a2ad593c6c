"""Two-strategy isolation/distancing incentive game.

Each individual either stays home or moves outside for the period.  The
per-period incentive is

    stay home:   alpha * log(z) + beta * log(d_home)
    move out:    alpha * log(z - delta) + beta * log(d_move)

where ``delta`` is the total deviation traveled under the move strategy,
``d_home``/``d_move`` are the aggregate distances to the proximity set from
home / from the end-of-period location, ``z`` is the deviation budget (a
constant larger than any admissible ``delta``), and ``alpha``/``beta`` are
the per-unit incentives for isolation and distancing.

The module provides the payoff evaluation, the explicit 2x2 matrix game for
two individuals that move by a fixed step, and dominance / pure-strategy
Nash equilibrium queries for both kinds of game.
"""
from __future__ import annotations

import itertools
import math
from dataclasses import dataclass
from enum import Enum
from typing import Sequence

from .errors import CapacityError, DomainError, ParameterError


class Strategy(Enum):
    HOME = "home"
    MOVE = "move"

    def other(self) -> "Strategy":
        return Strategy.MOVE if self is Strategy.HOME else Strategy.HOME


StrategyProfile = tuple[Strategy, ...]

_LOG = {"natural": math.log, "decimal": math.log10}


@dataclass(frozen=True)
class PayoffParams:
    """Incentive weights and deviation budget.

    ``alpha`` and ``beta`` may also be derived from base incentives
    ``alpha_raw``/``beta_raw`` and a weight ``omega`` in [0, 1] via
    ``alpha = alpha_raw * omega`` and ``beta = beta_raw * (1 - omega)``;
    use :meth:`from_weights` for that.  A zero weight disables the matching
    log term entirely (the sweep endpoints ``omega in {0, 1}`` are valid).
    """

    alpha: float
    beta: float
    z: float
    omega: float | None = None
    alpha_raw: float | None = None
    beta_raw: float | None = None
    log_base: str = "natural"

    def __post_init__(self):
        if self.alpha < 0 or self.beta < 0:
            raise ParameterError(f"incentive weights must be >= 0, got alpha={self.alpha}, beta={self.beta}")
        if self.alpha == 0 and self.beta == 0:
            raise ParameterError("at least one of alpha, beta must be positive")
        if self.z <= 0:
            raise ParameterError(f"deviation budget z must be positive, got {self.z}")
        if self.omega is not None and not 0 <= self.omega <= 1:
            raise ParameterError(f"omega must lie in [0, 1], got {self.omega}")
        if self.log_base not in _LOG:
            raise ParameterError(f"log_base must be 'natural' or 'decimal', got {self.log_base!r}")
        if (self.alpha_raw is None) != (self.beta_raw is None):
            raise ParameterError("alpha_raw and beta_raw must be given together")
        if self.alpha_raw is not None:
            if self.omega is None:
                raise ParameterError("base incentives alpha_raw/beta_raw require omega")
            if self.alpha != self.alpha_raw * self.omega or self.beta != self.beta_raw * (1 - self.omega):
                raise ParameterError(
                    "alpha/beta must equal alpha_raw*omega and beta_raw*(1-omega) exactly")

    @classmethod
    def from_weights(cls, alpha_raw: float, beta_raw: float, omega: float,
                     z: float, log_base: str = "natural") -> "PayoffParams":
        if alpha_raw <= 0 or beta_raw <= 0:
            raise ParameterError("base incentives alpha_raw and beta_raw must be positive")
        return cls(alpha=alpha_raw * omega, beta=beta_raw * (1 - omega), z=z, omega=omega,
                   alpha_raw=alpha_raw, beta_raw=beta_raw, log_base=log_base)

    def log(self, value: float) -> float:
        return _LOG[self.log_base](value)


@dataclass(frozen=True)
class PlayerState:
    """Per-player quantities the payoff depends on.

    ``delta``: total deviation traveled when moving; ``d_move``: aggregate
    distance from the end-of-period location; ``d_home``: aggregate distance
    from home.  ``delta < z`` is checked at payoff time against the params.
    """

    delta: float
    d_move: float
    d_home: float

    def __post_init__(self):
        for name in ("delta", "d_move", "d_home"):
            v = getattr(self, name)
            if not math.isfinite(v) or v < 0:
                raise ParameterError(f"{name} must be finite and >= 0, got {v}")


def individual_payoff(strategy: Strategy, state: PlayerState, params: PayoffParams) -> float:
    """Incentive earned by one individual for one period."""
    if state.delta >= params.z:
        raise DomainError(
            f"total deviation must stay below the budget: delta={state.delta} >= z={params.z}")
    value = 0.0
    if params.alpha:
        budget_left = params.z if strategy is Strategy.HOME else params.z - state.delta
        value += params.alpha * params.log(budget_left)
    if params.beta:
        d = state.d_home if strategy is Strategy.HOME else state.d_move
        if d <= 0:
            name = "d_home" if strategy is Strategy.HOME else "d_move"
            raise DomainError(f"aggregate distance {name} must be positive, got {d}")
        value += params.beta * params.log(d)
    return value


def social_incentive(states: Sequence[PlayerState], profile: StrategyProfile,
                     params: PayoffParams) -> float:
    """Total incentive paid to the population under ``profile``."""
    if len(states) != len(profile):
        raise ParameterError(f"{len(states)} states but {len(profile)} strategies")
    return sum(individual_payoff(s, st, params) for s, st in zip(profile, states))


@dataclass(frozen=True)
class GameInstance:
    """Finite game where each player picks HOME or MOVE against fixed
    per-player state; a player's payoff does not depend on the others'
    choices (the measured distances already summarize the crowd)."""

    players: tuple[PlayerState, ...]
    params: PayoffParams

    def __post_init__(self):
        if len(self.players) < 1:
            raise ParameterError("a game needs at least one player")
        object.__setattr__(self, "players", tuple(self.players))

    @property
    def n_players(self) -> int:
        return len(self.players)

    def payoff(self, player: int, profile: StrategyProfile) -> float:
        return individual_payoff(profile[player], self.players[player], self.params)


@dataclass(frozen=True)
class MatrixGame:
    """Explicit two-player game; ``cells[s1][s2]`` holds the payoff pair
    for player 1 choosing ``s1`` and player 2 choosing ``s2``."""

    cells: tuple[tuple[tuple[float, float], tuple[float, float]],
                 tuple[tuple[float, float], tuple[float, float]]]

    n_players = 2

    def cell(self, s1: Strategy, s2: Strategy) -> tuple[float, float]:
        return self.cells[_idx(s1)][_idx(s2)]

    def payoff(self, player: int, profile: StrategyProfile) -> float:
        if len(profile) != 2:
            raise ParameterError("matrix games take 2-strategy profiles")
        return self.cell(profile[0], profile[1])[player]


def _idx(s: Strategy) -> int:
    return 0 if s is Strategy.HOME else 1


@dataclass(frozen=True)
class TwoPlayerStep:
    """Fixed per-period movement for the explicit 2-player game.

    A mover covers ``delta_step`` meters; ``toward`` shrinks the distance
    between the two individuals by one step, ``away`` grows it.
    """

    delta_step: float
    direction_p1: str = "toward"
    direction_p2: str = "toward"

    def __post_init__(self):
        if self.delta_step <= 0:
            raise ParameterError(f"delta_step must be positive, got {self.delta_step}")
        for d in (self.direction_p1, self.direction_p2):
            if d not in ("toward", "away"):
                raise ParameterError(f"direction must be 'toward' or 'away', got {d!r}")

    @property
    def signs(self) -> tuple[int, int]:
        return (-1 if self.direction_p1 == "toward" else 1,
                -1 if self.direction_p2 == "toward" else 1)


def two_player_matrix(params: PayoffParams, d1: float, d2: float,
                      step: TwoPlayerStep) -> MatrixGame:
    """Payoff matrix for two individuals whose movement shifts both their
    own deviation and the mutual distance by ``step.delta_step``."""
    delta = step.delta_step
    if delta >= params.z:
        raise DomainError(f"delta_step={delta} must stay below the budget z={params.z}")
    s1, s2 = step.signs

    def pay(budget_left: float, distance: float) -> float:
        value = 0.0
        if params.alpha:
            value += params.alpha * params.log(budget_left)
        if params.beta:
            if distance <= 0:
                raise DomainError(
                    f"step direction drives an aggregate distance to {distance} <= 0")
            value += params.beta * params.log(distance)
        return value

    for name, d in (("d1", d1), ("d2", d2)):
        if d <= 0:
            raise DomainError(f"{name} must be positive, got {d}")

    z = params.z
    u1 = {
        (0, 0): pay(z, d1),
        (0, 1): pay(z, d1 + s2 * delta),
        (1, 0): pay(z - delta, d1 + s1 * delta),
        (1, 1): pay(z - delta, d1 + (s1 + s2) * delta),
    }
    u2 = {
        (0, 0): pay(z, d2),
        (1, 0): pay(z, d2 + s1 * delta),
        (0, 1): pay(z - delta, d2 + s2 * delta),
        (1, 1): pay(z - delta, d2 + (s1 + s2) * delta),
    }
    cells = tuple(tuple((u1[i, j], u2[i, j]) for j in (0, 1)) for i in (0, 1))
    return MatrixGame(cells)  # type: ignore[arg-type]


DEFAULT_ENUMERATION_CAP = 20


def is_dominant_strategy(game, player: int, strategy: Strategy,
                         max_players: int = DEFAULT_ENUMERATION_CAP) -> bool:
    """Whether ``strategy`` is weakly dominant for ``player``: at least as
    good as the alternative against every opponent profile, checked by
    exhaustive enumeration of the 2^(N-1) opponent profiles."""
    n = game.n_players
    if not 0 <= player < n:
        raise ParameterError(f"player index {player} outside 0..{n - 1}")
    if n > max_players:
        raise CapacityError(
            f"exhaustive dominance check enumerates 2^(N-1) profiles; N={n} exceeds cap {max_players}")
    other = strategy.other()
    for opponents in itertools.product((Strategy.HOME, Strategy.MOVE), repeat=n - 1):
        profile = opponents[:player] + (strategy,) + opponents[player:]
        alternative = opponents[:player] + (other,) + opponents[player:]
        if game.payoff(player, profile) < game.payoff(player, alternative):
            return False
    return True


def dominant_strategy_equilibrium(game, max_players: int = DEFAULT_ENUMERATION_CAP
                                  ) -> StrategyProfile | None:
    """Profile in which every player's strategy is weakly dominant, or None.

    Ties resolve in favor of HOME, so the canonical profile prefers staying
    home whenever both strategies are dominant.
    """
    profile = []
    for i in range(game.n_players):
        if is_dominant_strategy(game, i, Strategy.HOME, max_players):
            profile.append(Strategy.HOME)
        elif is_dominant_strategy(game, i, Strategy.MOVE, max_players):
            profile.append(Strategy.MOVE)
        else:
            return None
    return tuple(profile)


def verify_nash(game, profile: StrategyProfile) -> bool:
    """Whether no player gains strictly by a unilateral deviation."""
    if len(profile) != game.n_players:
        raise ParameterError(f"profile length {len(profile)} != {game.n_players} players")
    for i in range(game.n_players):
        flipped = profile[:i] + (profile[i].other(),) + profile[i + 1:]
        if game.payoff(i, flipped) > game.payoff(i, profile):
            return False
    return True


@dataclass(frozen=True)
class EquilibriumCertificate:
    """Evidence backing an equilibrium claim for a :class:`GameInstance`:
    whether isolation pays more per unit than distancing, which players find
    staying home weakly dominant, and the resulting dominant-strategy
    equilibrium (if every player has one)."""

    alpha_gt_beta: bool
    home_dominant: tuple[bool, ...]
    equilibrium: StrategyProfile | None


def equilibrium_certificate(game: GameInstance) -> EquilibriumCertificate:
    """Certify dominance player by player.

    Because a player's payoff in a :class:`GameInstance` does not depend on
    the opponents' strategies, dominance reduces to one comparison per
    player; no profile enumeration is needed, so any population size works.
    Whenever ``alpha > beta`` and every player has ``0 < delta < z`` and
    ``d_home > d_move``, the certified equilibrium is all-HOME.
    """
    params = game.params
    home_dominant = []
    profile: list[Strategy] = []
    for state in game.players:
        u_home = individual_payoff(Strategy.HOME, state, params)
        u_move = individual_payoff(Strategy.MOVE, state, params)
        dominant = u_home >= u_move
        home_dominant.append(dominant)
        profile.append(Strategy.HOME if dominant else Strategy.MOVE)
    return EquilibriumCertificate(
        alpha_gt_beta=params.alpha > params.beta,
        home_dominant=tuple(home_dominant),
        equilibrium=tuple(profile),
    )
