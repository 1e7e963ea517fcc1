"""Energy-harvesting laws and per-slot phase-shift energy budgets."""

from dataclasses import dataclass

import numpy as np


@dataclass(frozen=True)
class EhModel:
    """Linear or nonlinear (saturating rational) harvesting law.

    For the nonlinear law the per-element harvested power is
    (a*p + b)/(p + c) - b/c, zero at p=0 and saturating at a - b/c.
    """

    kind: str = "linear"
    a: float = 0.0
    b: float = 0.0
    c: float = 0.0

    def __post_init__(self):
        if self.kind not in ("linear", "nonlinear"):
            raise ValueError(f"unknown EH model kind {self.kind!r}")
        if self.kind == "nonlinear":
            if self.c <= 0 or self.b <= 0 or self.a * self.c <= self.b:
                raise ValueError(
                    "nonlinear EH requires a > b/c > 0 and c > 0 "
                    f"(got a={self.a}, b={self.b}, c={self.c})"
                )

    @property
    def saturation(self) -> float:
        """Per-element saturation power a - b/c (nonlinear only)."""
        if self.kind != "nonlinear":
            raise ValueError("saturation is defined for the nonlinear model only")
        return self.a - self.b / self.c


# circuit constants of the measured rectifier used throughout the experiments
NONLINEAR_DEFAULT = EhModel(kind="nonlinear", a=2.463, b=1.635, c=0.826)
LINEAR_DEFAULT = EhModel(kind="linear")


@dataclass(frozen=True)
class PowerBudget:
    """Per-patch phase-shift power and controller power (watts)."""

    p_t: float
    p_ph: float

    def __post_init__(self):
        if self.p_t < 0 or self.p_ph < 0:
            raise ValueError("powers must be nonnegative")


def required_energy_ps(m: int, budget: PowerBudget, t_s: float) -> float:
    """Energy a group of m elements needs per slot in the PS configuration."""
    if m < 1:
        raise ValueError("group size must be at least 1")
    return t_s * (m * budget.p_t + budget.p_ph)


def required_energy_ts(m: int, budget: PowerBudget, t_s: float, zeta: float) -> float:
    """Energy a group needs per slot in the TS configuration (EH fraction zeta)."""
    if m < 1:
        raise ValueError("group size must be at least 1")
    if not 0.0 <= zeta <= 1.0:
        raise ValueError(f"zeta must lie in [0,1], got {zeta}")
    return t_s * ((1.0 - zeta) * m * budget.p_t + budget.p_ph)


def harvest_rate(model: EhModel, incident_power):
    """Harvested power per element for given incident power (vectorized)."""
    p = np.asarray(incident_power, dtype=float)
    if np.any(p < 0):
        raise ValueError("incident powers must be nonnegative")
    if model.kind == "linear":
        return p
    return (model.a * p + model.b) / (p + model.c) - model.b / model.c


def harvest(model: EhModel, incident_powers, duration: float) -> float:
    """Total energy harvested by a group over the given duration."""
    if duration < 0:
        raise ValueError("duration must be nonnegative")
    return duration * float(np.sum(harvest_rate(model, incident_powers)))
