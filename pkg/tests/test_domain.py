import math

import numpy as np
import pytest
from hypothesis import given, strategies as st

from shiftopt import (
    Boundary,
    DemandModel,
    RewardParams,
    Scenario,
    ShiftPlan,
    demand_at,
    demand_vector,
    reward,
    supply_curve,
    total_reward,
)


def scenario(**kw):
    base = dict(T=8, N=2, s=1, delta=2, beta=1, d_max=5.0, a=2.0, c_veh=5)
    base.update(kw)
    return Scenario(**base)


class TestScenario:
    def test_validation(self):
        with pytest.raises(ValueError):
            scenario(T=0)
        with pytest.raises(ValueError):
            scenario(delta=9)  # > T
        with pytest.raises(ValueError):
            scenario(a=0.0)
        with pytest.raises(ValueError):
            scenario(demand_model=DemandModel.EXPLICIT, demand=(1.0, 2.0))

    def test_json_round_trip(self):
        sc = scenario(
            demand_model=DemandModel.EXPLICIT,
            demand=tuple(float(i) for i in range(8)),
            boundary=Boundary.CIRCULAR,
        )
        assert Scenario.from_json(sc.to_json()) == sc

    def test_json_keys_are_snake_case(self):
        import json

        keys = set(json.loads(scenario().to_json()))
        assert keys == {
            "T", "N", "s", "delta", "beta", "d_max", "a", "c_veh",
            "demand_model", "boundary",
        }


class TestDemand:
    def test_envelope_vanishes_at_horizon_end(self):
        sc = scenario(T=24, delta=2, d_max=10.0)
        assert demand_at(sc, 24) == pytest.approx(0.0, abs=1e-12)

    def test_envelope_midweek_value(self):
        # d_max/2 * (1 - cos(42*pi/12)) * sin(42*pi/168); cos(3.5*pi) = 0
        sc = Scenario(T=168, N=1, s=1, delta=1, beta=0, d_max=10.0, a=1.0, c_veh=1)
        expected = 5.0 * (1.0 - math.cos(42 * math.pi / 12)) * math.sin(math.pi / 4)
        assert expected == pytest.approx(5 * math.sin(math.pi / 4))
        assert demand_at(sc, 42) == pytest.approx(expected, abs=1e-12)
        assert demand_at(sc, 42) == pytest.approx(3.5355339059, abs=1e-9)

    def test_offset_sinusoid(self):
        sc = scenario(T=24, d_max=10.0, demand_model=DemandModel.OFFSET_SINUSOID)
        assert demand_at(sc, 6) == pytest.approx(20.0)

    def test_out_of_range(self):
        sc = scenario()
        with pytest.raises(IndexError):
            demand_at(sc, 0)
        with pytest.raises(IndexError):
            demand_at(sc, 9)

    def test_explicit(self):
        sc = scenario(demand_model=DemandModel.EXPLICIT, demand=tuple(range(8)))
        assert demand_at(sc, 3) == 2.0
        assert list(demand_vector(sc)) == list(range(8))

    @pytest.mark.parametrize("model", [DemandModel.ENVELOPE_SINUSOID, DemandModel.OFFSET_SINUSOID])
    def test_nonnegative_everywhere(self, model):
        sc = scenario(T=200, d_max=7.3, demand_model=model, delta=3)
        assert demand_vector(sc).min() >= -1e-12


class TestReward:
    def test_zero_supply(self):
        assert reward(0.0, RewardParams(d=10.0, a=2.0)) == 0.0

    def test_zero_demand(self):
        assert reward(3.0, RewardParams(d=0.0, a=2.0)) == 0.0

    def test_unit_values(self):
        assert reward(1.0, RewardParams(d=1.0, a=1.0)) == pytest.approx(
            1 - math.exp(-1), abs=1e-12
        )

    def test_negative_supply_rejected(self):
        with pytest.raises(ValueError):
            reward(-0.1, RewardParams(d=1.0, a=1.0))

    @given(
        y=st.floats(0, 50),
        eps=st.floats(0, 10),
        d=st.floats(0.01, 100),
        a=st.floats(0.01, 10),
    )
    def test_monotone_in_supply(self, y, eps, d, a):
        p = RewardParams(d=d, a=a)
        assert reward(y + eps, p) >= reward(y, p) - 1e-12

    @given(y=st.integers(0, 100), d=st.floats(0.01, 100), a=st.floats(0.01, 10))
    def test_concave_second_difference(self, y, d, a):
        p = RewardParams(d=d, a=a)
        second = reward(y + 2, p) - 2 * reward(y + 1, p) + reward(y, p)
        assert second <= 1e-12

    @given(y=st.floats(0, 1000), d=st.floats(1e-6, 100), a=st.floats(0.01, 10))
    def test_bounded_by_demand(self, y, d, a):
        assert reward(y, RewardParams(d=d, a=a)) <= d

    def test_nondecreasing_in_demand_grid(self):
        for a in (0.5, 1.0, 2.0):
            for y in (0.0, 0.5, 1.0, 3.0, 10.0):
                vals = [reward(y, RewardParams(d=d, a=a)) for d in np.linspace(0.01, 20, 50)]
                assert all(b >= a_ - 1e-12 for a_, b in zip(vals, vals[1:]))


class TestSupplyCurve:
    def test_zero_padded(self):
        sc = scenario(T=4, delta=2, beta=0)
        curve = supply_curve(ShiftPlan(x=np.array([1, 0, 0, 0])), sc)
        assert list(curve.y) == [1, 1, 0, 0]

    def test_circular_no_wrap(self):
        sc = scenario(T=4, delta=2, beta=0, boundary=Boundary.CIRCULAR)
        curve = supply_curve(ShiftPlan(x=np.array([1, 0, 0, 0])), sc)
        assert list(curve.y) == [1, 1, 0, 0]

    def test_circular_wraps(self):
        sc = scenario(T=4, delta=2, beta=0, boundary=Boundary.CIRCULAR)
        curve = supply_curve(ShiftPlan(x=np.array([0, 0, 0, 1])), sc)
        assert list(curve.y) == [1, 0, 0, 1]

    def test_length_mismatch(self):
        with pytest.raises(ValueError):
            supply_curve(ShiftPlan(x=np.array([1, 0])), scenario(T=4))

    @given(st.data())
    def test_random_plan_invariants(self, data):
        T = data.draw(st.integers(2, 10))
        delta = data.draw(st.integers(1, T))
        beta = data.draw(st.integers(0, 3))
        x = np.array(data.draw(st.lists(st.integers(0, 3), min_size=T, max_size=T)))
        for boundary in Boundary:
            sc = Scenario(
                T=T, N=5, s=1, delta=delta, beta=beta, d_max=1.0, a=1.0, c_veh=9,
                boundary=boundary,
            )
            curve = supply_curve(ShiftPlan(x=x), sc)
            assert np.all(curve.z >= curve.y)
            assert np.all(curve.y >= 0)
            assert np.all(curve.z >= x)
            if boundary is Boundary.CIRCULAR:
                assert curve.y.sum() == delta * x.sum()
            else:
                assert curve.y.sum() <= delta * x.sum()


class TestTotalReward:
    def test_all_zero_plan(self):
        sc = scenario()
        assert total_reward(ShiftPlan(x=np.zeros(8, dtype=int)), sc) == 0.0

    def test_two_step_uniform(self):
        sc = Scenario(
            T=2, N=2, s=1, delta=1, beta=0, d_max=1.0, a=1.0, c_veh=2,
            demand_model=DemandModel.EXPLICIT, demand=(1.0, 1.0),
        )
        got = total_reward(ShiftPlan(x=np.array([1, 1])), sc)
        assert got == pytest.approx(2 * (1 - math.exp(-1)), abs=1e-9)

    def test_overlapping_shift(self):
        # y = [1, 1, 0], f(1) = 1 - exp(-2) at two steps
        sc = Scenario(
            T=3, N=1, s=1, delta=2, beta=0, d_max=1.0, a=2.0, c_veh=1,
            demand_model=DemandModel.EXPLICIT, demand=(1.0, 1.0, 1.0),
        )
        got = total_reward(ShiftPlan(x=np.array([1, 0, 0])), sc)
        assert got == pytest.approx(2 * (1 - math.exp(-2)), abs=1e-9)
        assert got == pytest.approx(1.729329, abs=1e-6)
