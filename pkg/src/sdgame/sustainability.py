"""How long a lockdown incentive policy stays affordable.

A day splits into ``1440 / slot_minutes`` periods; each period pays out the
population incentive for that period's snapshot.  A policy funded by an
initial stock ``r0`` plus daily collections sustains ``P`` days as long as
the cumulative payout stays within stock plus collections; for constant
daily figures the horizon is ``P = r0 / (u_daily - r_daily)``.
"""
from __future__ import annotations

import math
from dataclasses import dataclass
from typing import Sequence

from .errors import ParameterError
from .game import PayoffParams, PlayerState, StrategyProfile, social_incentive

MINUTES_PER_DAY = 1440


@dataclass(frozen=True)
class ResourcePolicy:
    """Funding for a lockdown: initial stock, per-day collections (one
    constant or one figure per day), and the period length in minutes."""

    r0: float
    collected: float | tuple[float, ...]
    slot_minutes: int = 30

    def __post_init__(self):
        if self.r0 < 0:
            raise ParameterError(f"initial stock r0 must be >= 0, got {self.r0}")
        if self.slot_minutes < 1 or MINUTES_PER_DAY % self.slot_minutes:
            raise ParameterError(
                f"slot_minutes must divide {MINUTES_PER_DAY} evenly, got {self.slot_minutes}")
        if isinstance(self.collected, (int, float)):
            if self.collected < 0:
                raise ParameterError(f"collected resources must be >= 0, got {self.collected}")
        else:
            object.__setattr__(self, "collected", tuple(float(c) for c in self.collected))
            if any(c < 0 for c in self.collected):
                raise ParameterError("collected resources must be >= 0 for every day")

    @property
    def slots_per_day(self) -> int:
        return MINUTES_PER_DAY // self.slot_minutes

    def collections(self, days: int) -> list[float]:
        if isinstance(self.collected, tuple):
            if len(self.collected) != days:
                raise ParameterError(
                    f"per-day collections cover {len(self.collected)} days, need {days}")
            return list(self.collected)
        return [float(self.collected)] * days


@dataclass(frozen=True)
class DailyIncentive:
    """Per-period incentives paid over one day."""

    slots: tuple[float, ...]

    def __post_init__(self):
        object.__setattr__(self, "slots", tuple(float(s) for s in self.slots))

    @property
    def total(self) -> float:
        return float(sum(self.slots))


def slot_incentive(states: Sequence[PlayerState], profile: StrategyProfile,
                   params: PayoffParams) -> float:
    """Incentive paid for one period; identical to the population total."""
    return social_incentive(states, profile, params)


def daily_incentive(slots: Sequence[float], slots_per_day: int) -> DailyIncentive:
    """Bundle one day's per-period incentives; the slot count must match."""
    if len(slots) != slots_per_day:
        raise ParameterError(f"expected {slots_per_day} slots per day, got {len(slots)}")
    return DailyIncentive(tuple(slots))


def is_sustainable(policy: ResourcePolicy, daily: Sequence[DailyIncentive]) -> bool:
    """Whether the cumulative payout stays within stock plus collections."""
    days = len(daily)
    spend = sum(d.total for d in daily)
    collected = sum(policy.collections(days))
    return spend <= policy.r0 + collected


@dataclass(frozen=True)
class LockdownProjection:
    """Sustainability horizon: fractional days, whole days, or unbounded
    when daily collections cover the daily payout."""

    days: float
    floor_days: int | None
    unbounded: bool


def max_lockdown_days(r0: float, u_daily: float, r_daily: float) -> LockdownProjection:
    """Longest affordable lockdown given constant daily payout and collection.

    When ``u_daily <= r_daily`` the policy never depletes the stock and the
    projection reports an unbounded horizon instead of raising.
    """
    if r0 < 0:
        raise ParameterError(f"initial stock r0 must be >= 0, got {r0}")
    if u_daily <= r_daily:
        return LockdownProjection(days=math.inf, floor_days=None, unbounded=True)
    days = r0 / (u_daily - r_daily)
    return LockdownProjection(days=days, floor_days=math.floor(days), unbounded=False)
