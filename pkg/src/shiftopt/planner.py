"""Builds and solves the shift-planning MILPs.

Two programs share the same feasible set (window sums, total-shift equality,
vehicle and extended-shift caps): the reward-maximizing program with chord
rows bounding each r_t, and the baseline program minimizing squared deviation
from a desired supply through epigraph variables.
"""

from __future__ import annotations

from dataclasses import dataclass

import numpy as np

from . import benchmark
from .domain import (
    Boundary,
    RewardParams,
    Scenario,
    ShiftPlan,
    SupplyCurve,
    demand_vector,
    supply_curve,
    total_reward,
)
from .milp import MilpModel, MilpSolution, SolveOptions, SolveStatus, milp_solve
from .piecewise import concavify_reward, convexify_sq_dev

__all__ = [
    "EconomicStandard",
    "PlanningError",
    "PlanResult",
    "ServiceStandard",
    "build_deviation_mip",
    "build_reward_mip",
    "plan",
    "plan_baseline",
]


class PlanningError(Exception):
    """Raised when the solver cannot produce a usable plan."""

    def __init__(self, status: SolveStatus, message: str):
        super().__init__(message)
        self.status = status


@dataclass(frozen=True)
class ServiceStandard:
    """Desired supply serves a constant fraction of demand, 0 < fraction < 1."""

    fraction: float


@dataclass(frozen=True)
class EconomicStandard:
    """Desired supply maximizes reward minus cost per deployed staff, cost > 0."""

    cost: float


@dataclass(frozen=True)
class PlanResult:
    plan: ShiftPlan
    supply: SupplyCurve
    mip_objective: float  # reward MIP: chord objective; baseline: min total sq. deviation
    true_reward: float
    solve_status: SolveStatus
    nodes: int


def _window_coeffs(scenario: Scenario, t: int, width: int) -> dict[int, float]:
    """Coefficients of x over the backward window [t-width+1, t] (t 1-based)."""
    coeffs: dict[int, float] = {}
    for k in range(width):
        tau = t - k
        if scenario.boundary is Boundary.CIRCULAR:
            j = (tau - 1) % scenario.T
        else:
            if tau < 1:
                continue
            j = tau - 1
        coeffs[j] = coeffs.get(j, 0.0) + 1.0
    return coeffs


def _add_structure(model: MilpModel, scenario: Scenario) -> tuple[list[int], list[int], list[int]]:
    """Common variables x, y, z and their defining rows; returns index lists."""
    T, N = scenario.T, scenario.N
    y_cap = min(scenario.c_veh, N)
    x_idx = [
        model.add_variable(f"x_{t}", lb=0, ub=N, integer=True) for t in range(1, T + 1)
    ]
    y_idx = [model.add_variable(f"y_{t}", lb=0, ub=y_cap) for t in range(1, T + 1)]
    z_idx = [model.add_variable(f"z_{t}", lb=0, ub=N) for t in range(1, T + 1)]
    for t in range(1, T + 1):
        coeffs = {x_idx[j]: c for j, c in _window_coeffs(scenario, t, scenario.delta).items()}
        coeffs[y_idx[t - 1]] = coeffs.get(y_idx[t - 1], 0.0) - 1.0
        model.add_row(coeffs, "=", 0.0)
    for t in range(1, T + 1):
        width = scenario.delta + scenario.beta
        coeffs = {x_idx[j]: c for j, c in _window_coeffs(scenario, t, width).items()}
        coeffs[z_idx[t - 1]] = coeffs.get(z_idx[t - 1], 0.0) - 1.0
        model.add_row(coeffs, "=", 0.0)
    model.add_row({j: 1.0 for j in x_idx}, "=", float(scenario.total_shifts))
    return x_idx, y_idx, z_idx


def build_reward_mip(scenario: Scenario) -> MilpModel:
    """Reward-maximizing MILP with chord rows r_t <= h_i(y_t)."""
    model = MilpModel()
    _, y_idx, _ = _add_structure(model, scenario)
    d = demand_vector(scenario)
    y_max = max(1, min(scenario.c_veh, scenario.N))
    for t in range(1, scenario.T + 1):
        r_j = model.add_variable(f"r_{t}", obj=1.0, lb=0.0)
        pl = concavify_reward(RewardParams(d=float(d[t - 1]), a=scenario.a), y_max)
        for piece in pl.pieces:
            model.add_row(
                {r_j: 1.0, y_idx[t - 1]: -piece.slope}, "<=", piece.intercept
            )
    return model


def build_deviation_mip(scenario: Scenario, desired: np.ndarray) -> MilpModel:
    """Baseline MILP: minimize sum of squared deviations from `desired`."""
    desired = np.asarray(desired, dtype=float)
    if desired.shape != (scenario.T,):
        raise ValueError(f"desired supply must have length {scenario.T}")
    if np.any(desired < 0):
        raise ValueError("desired supply must be non-negative")
    model = MilpModel()
    _, y_idx, _ = _add_structure(model, scenario)
    y_max = max(1, min(scenario.c_veh, scenario.N))
    for t in range(1, scenario.T + 1):
        e_j = model.add_variable(f"e_{t}", obj=-1.0, lb=0.0)
        pl = convexify_sq_dev(float(desired[t - 1]), y_max)
        for piece in pl.pieces:
            # e_t >= slope*y_t + intercept
            model.add_row(
                {y_idx[t - 1]: piece.slope, e_j: -1.0}, "<=", -piece.intercept
            )
    return model


def _extract_plan(
    scenario: Scenario, sol: MilpSolution, deviation: bool
) -> PlanResult:
    if sol.status in (SolveStatus.INFEASIBLE, SolveStatus.UNBOUNDED):
        raise PlanningError(sol.status, f"no plan: solver status {sol.status.value}")
    if sol.status is SolveStatus.NODE_LIMIT and not np.all(np.isfinite(sol.values)):
        raise PlanningError(sol.status, "node limit reached without an incumbent")
    x = np.rint(sol.values[: scenario.T]).astype(np.int64)
    plan_vec = ShiftPlan(x=x)
    curve = supply_curve(plan_vec, scenario)
    objective = -sol.objective if deviation else sol.objective
    return PlanResult(
        plan=plan_vec,
        supply=curve,
        mip_objective=objective,
        true_reward=total_reward(plan_vec, scenario),
        solve_status=sol.status,
        nodes=sol.nodes_explored,
    )


def plan(scenario: Scenario, opts: SolveOptions | None = None) -> PlanResult:
    """Solve the reward-maximizing program and extract the plan."""
    sol = milp_solve(build_reward_mip(scenario), opts)
    return _extract_plan(scenario, sol, deviation=False)


def plan_baseline(
    scenario: Scenario,
    standard: ServiceStandard | EconomicStandard,
    opts: SolveOptions | None = None,
) -> PlanResult:
    """Solve the deviation-minimizing program against a traditional standard."""
    if isinstance(standard, ServiceStandard):
        desired = benchmark.service_standard_supply(scenario, standard.fraction)
    elif isinstance(standard, EconomicStandard):
        desired = benchmark.economic_standard_supply(scenario, standard.cost)
    else:
        raise TypeError(f"unknown standard {standard!r}")
    sol = milp_solve(build_deviation_mip(scenario, desired), opts)
    return _extract_plan(scenario, sol, deviation=True)
