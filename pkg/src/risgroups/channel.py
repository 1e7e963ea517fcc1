"""Spatially correlated Rician channels and the Gamma law of Z = |g_c|^2 |h_c|^2.

Per-element channels are unit-second-moment complex Gaussians with a
deterministic line-of-sight mean sqrt(K/(K+1)) and scattered variance 1/(K+1);
path loss and link gain carry all scaling.  Correlation follows the sinc model
through the principal square root of the correlation matrix.
"""

import logging
import math
from dataclasses import dataclass, field

import numpy as np

from .specfun import reg_lower_incomplete_gamma, sinc_corr

logger = logging.getLogger(__name__)

# negative eigenvalues beyond this are treated as genuinely indefinite,
# not roundoff, and rejected
_CLAMP_LIMIT = 1e-8


class DegenerateFitError(ValueError):
    """Moment matching is undefined when the target variance vanishes."""


@dataclass(frozen=True)
class SystemParams:
    """Physical constants of the link (powers in watts, distances in meters)."""

    p_tx: float = 1.0                # 30 dBm
    rho_l: float = 10.0 ** -3.53     # path loss at 1 m
    alpha: float = 2.0               # path-loss exponent
    t_s: float = 100e-6              # slot duration [s]
    wavelength: float = 0.1
    noise_power: float = 10.0 ** (-104.0 / 10.0) / 1000.0  # -104 dBm
    n_total: int = 400
    m_per_group: int = 20
    b_groups: int = 20
    d_sr: float = 15.0
    d_rd: float = 20.0
    k_h: float = 1.0
    k_g: float = 1.0
    beta_gain: float = 1.0
    spacing: float = 0.1 / 8.0       # lambda/8

    def __post_init__(self):
        if self.n_total != self.m_per_group * self.b_groups:
            raise ValueError(
                f"n_total={self.n_total} != m_per_group*b_groups="
                f"{self.m_per_group * self.b_groups}"
            )
        for name in ("p_tx", "rho_l", "t_s", "wavelength", "noise_power",
                     "d_sr", "d_rd", "beta_gain", "spacing"):
            if getattr(self, name) <= 0:
                raise ValueError(f"{name} must be strictly positive")
        if self.k_h < 0 or self.k_g < 0:
            raise ValueError("Rician factors must be nonnegative")
        if self.alpha < 2:
            raise ValueError("path-loss exponent must be >= 2")
        if self.m_per_group < 1 or self.b_groups < 1:
            raise ValueError("group sizes must be positive")


@dataclass(frozen=True)
class CorrelationMatrix:
    """Spatial correlation matrix with its precomputed principal square root."""

    dim: int
    entries: np.ndarray = field(repr=False)
    sqrt_entries: np.ndarray = field(repr=False)


@dataclass(frozen=True)
class GammaFit:
    """Moment-matched Gamma(shape, scale) approximation."""

    shape: float
    scale: float

    def __post_init__(self):
        if self.shape <= 0 or self.scale <= 0:
            raise ValueError("Gamma shape and scale must be positive")

    @property
    def mean(self) -> float:
        return self.shape * self.scale

    @property
    def variance(self) -> float:
        return self.shape * self.scale ** 2


def _element_positions(m: int, spacing: float, layout: str) -> np.ndarray:
    if layout == "linear":
        x = np.arange(m) * spacing
        return np.column_stack([x, np.zeros(m)])
    if layout == "square-grid":
        side = math.ceil(math.sqrt(m))
        idx = np.arange(m)
        return np.column_stack([(idx % side) * spacing, (idx // side) * spacing])
    raise ValueError(f"unknown layout {layout!r}")


def build_correlation_matrix(
    m: int, spacing: float, wavelength: float, layout: str = "linear"
) -> CorrelationMatrix:
    """Sinc correlation matrix for m elements with its principal square root."""
    if m < 1:
        raise ValueError("need at least one element")
    if spacing <= 0:
        raise ValueError("spacing must be positive")
    pos = _element_positions(m, spacing, layout)
    dist = np.linalg.norm(pos[:, None, :] - pos[None, :, :], axis=-1)
    entries = np.vectorize(lambda d: sinc_corr(float(d), wavelength))(dist)
    entries = 0.5 * (entries + entries.T)
    w, v = np.linalg.eigh(entries)
    worst = w.min()
    if worst < -_CLAMP_LIMIT:
        raise ValueError(
            f"correlation matrix is indefinite (min eigenvalue {worst:.3e})"
        )
    if worst < 0:
        logger.debug("clamping correlation eigenvalues by %.3e", -worst)
    sqrt_entries = (v * np.sqrt(np.clip(w, 0.0, None))) @ v.T
    return CorrelationMatrix(dim=m, entries=entries, sqrt_entries=sqrt_entries)


def sample_rician_vector(m: int, k_factor: float, rng: np.random.Generator) -> np.ndarray:
    """m i.i.d. unit-power Rician channel gains (LoS mean, scattered CN part)."""
    if k_factor < 0:
        raise ValueError("Rician factor must be nonnegative")
    los = math.sqrt(k_factor / (k_factor + 1.0))
    sigma = math.sqrt(0.5 / (k_factor + 1.0))  # per real dimension
    noise = rng.standard_normal((m, 2)) * sigma
    return los + noise[:, 0] + 1j * noise[:, 1]


def correlate(corr: CorrelationMatrix, raw: np.ndarray, beta_gain: float = 1.0) -> np.ndarray:
    """Apply sqrt(beta) R^(1/2) to a raw channel vector."""
    if raw.shape[-1] != corr.dim:
        raise ValueError(f"dimension mismatch: {raw.shape[-1]} != {corr.dim}")
    return math.sqrt(beta_gain) * raw @ corr.sqrt_entries


def composite(tilde: np.ndarray) -> complex:
    """Composite group channel: coherent sum of the correlated elements."""
    if tilde.size < 1:
        raise ValueError("need at least one element")
    return complex(np.sum(tilde))


def _composite_mean_var(params: SystemParams, k_factor: float) -> tuple[float, float]:
    # h_c = sqrt(beta) 1^T R^(1/2) h with h_j ~ CN(mu, sigma^2) i.i.d.
    corr = build_correlation_matrix(
        params.m_per_group, params.spacing, params.wavelength
    )
    mu = math.sqrt(k_factor / (k_factor + 1.0))
    sigma_sq = 1.0 / (k_factor + 1.0)
    coeff = corr.sqrt_entries.sum(axis=0)
    m_c = math.sqrt(params.beta_gain) * mu * coeff.sum()
    var_c = params.beta_gain * sigma_sq * float(coeff @ coeff)
    return m_c, var_c


def composite_moments(params: SystemParams, side: str) -> tuple[float, float]:
    """Mean and variance of |h_c|^2 (side='S') or |g_c|^2 (side='D')."""
    side = side.upper()
    if side not in ("S", "D"):
        raise ValueError("side must be 'S' or 'D'")
    k = params.k_h if side == "S" else params.k_g
    m_c, var_c = _composite_mean_var(params, k)
    mean = m_c ** 2 + var_c
    fourth = m_c ** 4 + 4.0 * m_c ** 2 * var_c + 2.0 * var_c ** 2
    return mean, fourth - mean ** 2


def fit_gamma_product(params: SystemParams) -> GammaFit:
    """Moment-matched Gamma approximation of Z = |g_c|^2 |h_c|^2."""
    mean_h, var_h = composite_moments(params, "S")
    mean_g, var_g = composite_moments(params, "D")
    mean_z = mean_h * mean_g
    second_z = (mean_h ** 2 + var_h) * (mean_g ** 2 + var_g)
    var_z = second_z - mean_z ** 2
    if var_z <= 0:
        raise DegenerateFitError("product distribution is degenerate (zero variance)")
    return GammaFit(shape=mean_z ** 2 / var_z, scale=var_z / mean_z)


def gamma_cdf(fit: GammaFit, x: float) -> float:
    """CDF of the moment-matched Gamma law at x >= 0."""
    if x < 0:
        raise ValueError("argument must be nonnegative")
    if x == 0.0:
        return 0.0
    return reg_lower_incomplete_gamma(fit.shape, x / fit.scale)
