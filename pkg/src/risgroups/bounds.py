"""Feasibility intervals for the power-splitting factor rho and the
time-switching factor zeta, for linear and nonlinear harvesting.

The upper bounds eliminate the transmit power through the harvested-energy
budget taken at the operating point (harvested = required), so every interval
is a deterministic function of one channel snapshot.  Infeasible intervals are
returned with a machine-readable cause instead of raising, since parameter
sweeps legitimately cross in and out of feasibility.
"""

import math
from dataclasses import dataclass, field

import numpy as np

from .channel import SystemParams
from .energy import EhModel, PowerBudget, required_energy_ps


@dataclass(frozen=True)
class FeasibleInterval:
    lower: float
    upper: float
    feasible: bool
    cause: str | None = None  # 'energy-limited' | 'rate-limited' | 'saturation'


@dataclass(frozen=True)
class ChannelSnapshot:
    """One realization of the correlated per-group channels."""

    tilde_h: np.ndarray = field(repr=False)
    tilde_g: np.ndarray = field(repr=False)

    @property
    def sum_h_sq(self) -> float:
        return float(np.sum(np.abs(self.tilde_h) ** 2))

    @property
    def h_min_sq(self) -> float:
        return float(np.min(np.abs(self.tilde_h) ** 2))

    @property
    def h_max_sq(self) -> float:
        return float(np.max(np.abs(self.tilde_h) ** 2))

    @property
    def h_c_sq(self) -> float:
        return float(np.abs(np.sum(self.tilde_h)) ** 2)

    @property
    def g_c_sq(self) -> float:
        return float(np.abs(np.sum(self.tilde_g)) ** 2)

    @property
    def z(self) -> float:
        return self.h_c_sq * self.g_c_sq


def _interval(lower: float, upper: float, cause_if_infeasible: str) -> FeasibleInterval:
    clamped_lower = min(max(lower, 0.0), 1.0)
    clamped_upper = min(max(upper, 0.0), 1.0)
    feasible = lower <= 1.0 and lower <= upper
    if feasible:
        return FeasibleInterval(clamped_lower, clamped_upper, True)
    cause = "energy-limited" if lower > 1.0 else cause_if_infeasible
    return FeasibleInterval(clamped_lower, clamped_upper, False, cause)


def rho_bounds_linear(
    params: SystemParams,
    budget: PowerBudget,
    snap: ChannelSnapshot,
    r_req: float,
) -> FeasibleInterval:
    """PS feasibility interval under the linear harvesting law."""
    if r_req < 0:
        raise ValueError("required rate must be nonnegative")
    m = params.m_per_group
    w = m * budget.p_t + budget.p_ph
    gain = params.rho_l * params.d_sr ** -params.alpha * params.p_tx * snap.sum_h_sq
    if gain == 0.0:
        return FeasibleInterval(1.0, 0.0, False, "energy-limited")
    lower = w / gain
    e_req = required_energy_ps(m, budget, params.t_s)
    eta = (
        params.rho_l * e_req * params.d_rd ** -params.alpha * snap.z
        / (params.t_s * params.noise_power * snap.sum_h_sq)
    )
    upper = eta / (2.0 ** r_req - 1.0 + eta) if eta > 0 else 0.0
    return _interval(lower, upper, "rate-limited")


def rho_bounds_nonlinear(
    params: SystemParams,
    budget: PowerBudget,
    model: EhModel,
    snap: ChannelSnapshot,
    r_req: float,
) -> FeasibleInterval:
    """PS feasibility interval under the nonlinear harvesting law."""
    if model.kind != "nonlinear":
        raise ValueError("nonlinear EH model required")
    if r_req < 0:
        raise ValueError("required rate must be nonnegative")
    m = params.m_per_group
    w = m * budget.p_t + budget.p_ph
    headroom = model.a - w / m - model.b / model.c
    if headroom <= 0:
        # required per-element energy exceeds the rectifier saturation
        return FeasibleInterval(1.0, 0.0, False, "saturation")
    denom = (
        m * params.rho_l * params.d_sr ** -params.alpha * params.p_tx
        * snap.h_max_sq * headroom
    )
    if denom == 0.0:
        return FeasibleInterval(1.0, 0.0, False, "energy-limited")
    lower = model.c * w / denom
    e_req = required_energy_ps(m, budget, params.t_s)
    kappa = (
        model.c * e_req * params.rho_l * params.d_rd ** -params.alpha * snap.z
        / (m * params.t_s * snap.h_min_sq * headroom * params.noise_power)
    )
    upper = kappa / (2.0 ** r_req - 1.0 + kappa) if kappa > 0 else 0.0
    return _interval(lower, upper, "rate-limited")


def _gamma_ts(params: SystemParams, z: float) -> float:
    return (
        params.p_tx * params.rho_l ** 2
        * (params.d_sr * params.d_rd) ** -params.alpha * z
        / params.noise_power
    )


def zeta_bounds_linear(
    params: SystemParams,
    budget: PowerBudget,
    snap: ChannelSnapshot,
    r_req: float,
) -> FeasibleInterval:
    """TS feasibility interval under the linear harvesting law."""
    if r_req < 0:
        raise ValueError("required rate must be nonnegative")
    m = params.m_per_group
    w = m * budget.p_t + budget.p_ph
    gain = params.p_tx * params.rho_l * params.d_sr ** -params.alpha * snap.sum_h_sq
    denom = m * budget.p_t + gain
    if denom == 0.0 or gain == 0.0:
        return FeasibleInterval(1.0, 0.0, False, "energy-limited")
    lower = w / denom
    gamma = _gamma_ts(params, snap.z)
    if gamma <= 0:
        return FeasibleInterval(min(lower, 1.0), 0.0, False, "rate-limited")
    r_arc = math.log2(1.0 + gamma)
    upper = 1.0 - r_req / r_arc
    return _interval(lower, upper, "rate-limited")


def zeta_bounds_nonlinear(
    params: SystemParams,
    budget: PowerBudget,
    model: EhModel,
    snap: ChannelSnapshot,
    r_req: float,
) -> FeasibleInterval:
    """TS feasibility interval under the nonlinear harvesting law."""
    if model.kind != "nonlinear":
        raise ValueError("nonlinear EH model required")
    if r_req < 0:
        raise ValueError("required rate must be nonnegative")
    m = params.m_per_group
    w = m * budget.p_t + budget.p_ph
    phi = params.rho_l * params.d_sr ** -params.alpha * params.p_tx * snap.h_max_sq
    rate_at_phi = (model.a * phi + model.b) / (phi + model.c) - model.b / model.c
    denom = m * (budget.p_t + rate_at_phi)
    if denom == 0.0:
        return FeasibleInterval(1.0, 0.0, False, "energy-limited")
    lower = w / denom
    # worst-case achievable rate: all elements at |h_min|, so |h_c|^2 = M^2 |h_min|^2
    gamma_min = _gamma_ts(params, m ** 2 * snap.h_min_sq * snap.g_c_sq)
    if gamma_min <= 0:
        return FeasibleInterval(min(lower, 1.0), 0.0, False, "rate-limited")
    upper = 1.0 - r_req / math.log2(1.0 + gamma_min)
    return _interval(lower, upper, "rate-limited")
