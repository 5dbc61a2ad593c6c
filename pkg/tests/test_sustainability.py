"""Lockdown funding horizon arithmetic."""
import math

import pytest
from hypothesis import given
from hypothesis import strategies as st

from sdgame import (DailyIncentive, ParameterError, PayoffParams, PlayerState,
                    ResourcePolicy, Strategy, daily_incentive, is_sustainable,
                    max_lockdown_days, slot_incentive, social_incentive)


class TestSlotIncentive:
    def test_empty_population(self):
        params = PayoffParams(alpha=3.0, beta=1.0, z=1400.0)
        assert slot_incentive([], (), params) == 0.0

    def test_single_home_individual(self):
        params = PayoffParams(alpha=3.0, beta=1.0, z=1400.0)
        state = PlayerState(delta=0.0, d_move=1.0, d_home=math.e)
        value = slot_incentive([state], (Strategy.HOME,), params)
        assert value == pytest.approx(3 * math.log(1400) + 1.0, rel=1e-12)

    def test_delegates_to_population_total(self):
        params = PayoffParams(alpha=3.0, beta=1.0, z=1400.0)
        states = [PlayerState(delta=120.0, d_move=300.0, d_home=500.0),
                  PlayerState(delta=0.0, d_move=80.0, d_home=90.0)]
        profile = (Strategy.MOVE, Strategy.HOME)
        assert slot_incentive(states, profile, params) == social_incentive(states, profile, params)


class TestDailyIncentive:
    def test_all_zero_slots(self):
        assert daily_incentive([0.0] * 48, 48).total == 0.0

    def test_identical_slots(self):
        day = daily_incentive([7.5] * 48, 48)
        assert day.total == pytest.approx(48 * 7.5, rel=1e-12)

    def test_single_slot_day(self):
        assert daily_incentive([123.25], 1).total == 123.25

    def test_slot_count_mismatch(self):
        with pytest.raises(ParameterError):
            daily_incentive([1.0] * 40, 48)


class TestIsSustainable:
    def test_zero_incentives_always_sustainable(self):
        policy = ResourcePolicy(r0=0.0, collected=0.0, slot_minutes=1440)
        days = [DailyIncentive((0.0,))] * 5
        assert is_sustainable(policy, days)

    def test_exact_boundary_is_sustainable(self):
        policy = ResourcePolicy(r0=100.0, collected=10.0, slot_minutes=1440)
        days = [DailyIncentive((20.0,))] * 10
        assert is_sustainable(policy, days)

    def test_one_day_past_boundary_fails(self):
        policy = ResourcePolicy(r0=100.0, collected=10.0, slot_minutes=1440)
        days = [DailyIncentive((20.0,))] * 11
        assert not is_sustainable(policy, days)

    def test_per_day_collections_must_align(self):
        policy = ResourcePolicy(r0=10.0, collected=(1.0, 2.0), slot_minutes=1440)
        with pytest.raises(ParameterError):
            is_sustainable(policy, [DailyIncentive((5.0,))] * 3)

    def test_slot_minutes_must_divide_day(self):
        with pytest.raises(ParameterError):
            ResourcePolicy(r0=1.0, collected=0.0, slot_minutes=7)

    def test_slots_per_day(self):
        assert ResourcePolicy(r0=1.0, collected=0.0, slot_minutes=30).slots_per_day == 48


class TestMaxLockdownDays:
    def test_no_collections(self):
        assert max_lockdown_days(100.0, 4.0, 0.0).days == 25.0

    def test_reference_value(self):
        projection = max_lockdown_days(100.0, 20.0, 10.0)
        assert projection.days == 10.0
        assert projection.floor_days == 10
        assert not projection.unbounded

    def test_collections_covering_bill_is_unbounded(self):
        projection = max_lockdown_days(100.0, 10.0, 10.0)
        assert projection.unbounded
        assert projection.days == math.inf
        assert projection.floor_days is None

    def test_strictly_increasing_in_stock(self):
        stocks = [5e23, 5.5e23, 6e23, 6.5e23, 7e23]
        days = [max_lockdown_days(r0, 1e20, 1e19).days for r0 in stocks]
        assert all(a < b for a, b in zip(days, days[1:]))

    @given(st.floats(1.0, 1e6), st.floats(0.5, 1e4), st.data())
    def test_monotonic_in_each_argument(self, r0, u, data):
        r = data.draw(st.floats(0.0, u * 0.95))
        base = max_lockdown_days(r0, u, r).days
        assert max_lockdown_days(r0 * 1.5, u, r).days > base
        assert max_lockdown_days(r0, u * 1.5, r).days < base
        more_collections = max_lockdown_days(r0, u, r + u * 0.02).days
        assert more_collections > base

    @given(st.floats(1.0, 1e4), st.floats(0.5, 1e4), st.data())
    def test_floor_consistency_with_day_by_day_check(self, r0, u, data):
        from hypothesis import assume

        r = data.draw(st.floats(0.0, u * 0.95))
        projection = max_lockdown_days(r0, u, r)
        assume(projection.floor_days <= 2000)
        policy = ResourcePolicy(r0=r0, collected=r, slot_minutes=1440)
        day = DailyIncentive((u,))
        assert is_sustainable(policy, [day] * projection.floor_days)
        assert not is_sustainable(policy, [day] * (projection.floor_days + 1))
