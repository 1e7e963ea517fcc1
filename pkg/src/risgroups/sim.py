"""Seeded Monte Carlo engine for per-group channel/energy/SNR realizations.

Trials are processed in fixed-size blocks; each block gets an independent
counter-based stream derived from (seed, block index), so results are
bit-identical for any worker count and any block execution order.
"""

import math
from concurrent.futures import ProcessPoolExecutor
from dataclasses import dataclass, field, replace
from typing import Sequence

import numpy as np

from .channel import (
    SystemParams,
    build_correlation_matrix,
    fit_gamma_product,
)
from .energy import EhModel, harvest_rate
from .selection import (
    GroupObservation,
    RisMode,
    SelectionStrategy,
    eh_wiring,
    fit_energy_distribution,
    mean_snr_scale,
    outage_ebgs,
    outage_rgs,
    outage_sbgs,
)

BLOCK_SIZE = 4096


@dataclass(frozen=True)
class TrialConfig:
    n_trials: int = 100_000
    seed: int = 0
    strategy: SelectionStrategy = SelectionStrategy("SBGS", k=1)
    mode: RisMode = RisMode("PS", rho=0.5)
    eh: EhModel = EhModel("linear")
    r_req: float = 1.0          # bits/s/Hz
    e_req: float = 0.0          # joules
    metric: str = "data"        # 'data' | 'energy'
    condition_on_eligible: bool = False

    def __post_init__(self):
        if self.n_trials < 1:
            raise ValueError("n_trials must be at least 1")
        if self.metric not in ("data", "energy"):
            raise ValueError(f"unknown metric {self.metric!r}")


@dataclass(frozen=True)
class OutageEstimate:
    p_hat: float
    ci_halfwidth: float
    n: int


@dataclass(frozen=True)
class OutageCurve:
    variable: str
    grid: list = field(default_factory=list)
    analytic: list = field(default_factory=list)
    estimates: list = field(default_factory=list)


def block_rng(seed: int, block_idx: int) -> np.random.Generator:
    """Independent counter-based stream for one trial block."""
    ss = np.random.SeedSequence(entropy=seed, spawn_key=(block_idx,))
    return np.random.Generator(np.random.Philox(ss))


def simulate_block(params: SystemParams, mode: RisMode, eh: EhModel,
                     n: int, rng: np.random.Generator):
    """Vectorized realizations: per-group SNR, harvested energy, rate, RGS draw."""
    m, b = params.m_per_group, params.b_groups
    sqrt_r = build_correlation_matrix(m, params.spacing, params.wavelength).sqrt_entries
    root_beta = math.sqrt(params.beta_gain)

    def correlated(k_factor: float) -> np.ndarray:
        los = math.sqrt(k_factor / (k_factor + 1.0))
        sigma = math.sqrt(0.5 / (k_factor + 1.0))
        noise = rng.standard_normal((n, b, m, 2)) * sigma
        raw = los + noise[..., 0] + 1j * noise[..., 1]
        return root_beta * raw @ sqrt_r

    tilde_h = correlated(params.k_h)
    tilde_g = correlated(params.k_g)
    rgs_u = rng.random(n)

    # optimal common phase per group leaves the magnitude product |g_c||h_c|
    z = np.abs(tilde_h.sum(axis=-1)) ** 2 * np.abs(tilde_g.sum(axis=-1)) ** 2
    psi = mean_snr_scale(params)
    if mode.kind == "PS":
        snr = (1.0 - mode.rho) * psi * z
    else:
        snr = psi * z
    rate = mode.rate_fraction * np.log2(1.0 + snr)

    dur, w_p = eh_wiring(params, mode)
    incident = w_p * np.abs(tilde_h) ** 2
    harvested = dur * harvest_rate(eh, incident).sum(axis=-1)
    return snr, harvested, rate, rgs_u


def run_trial(params: SystemParams, cfg: TrialConfig,
              rng: np.random.Generator) -> list[GroupObservation]:
    """One independent trial: one observation per group."""
    snr, harvested, rate, _ = simulate_block(params, cfg.mode, cfg.eh, 1, rng)
    return [
        GroupObservation(
            group_id=i,
            snr=float(snr[0, i]),
            harvested=float(harvested[0, i]),
            rate=float(rate[0, i]),
            eligible=bool(rate[0, i] >= cfg.r_req and harvested[0, i] >= cfg.e_req),
        )
        for i in range(params.b_groups)
    ]


def _kth_largest(values: np.ndarray, k: int) -> np.ndarray:
    return np.partition(values, values.shape[1] - k, axis=1)[:, values.shape[1] - k]


def _kth_largest_index(values: np.ndarray, k: int) -> np.ndarray:
    return np.argpartition(-values, k - 1, axis=1)[:, k - 1]


def _select_rows(values: np.ndarray, idx: np.ndarray) -> np.ndarray:
    return values[np.arange(values.shape[0]), idx]


def _block_failures(params: SystemParams, cfg: TrialConfig, n: int,
                    block_idx: int) -> int:
    rng = block_rng(cfg.seed, block_idx)
    snr, harvested, rate, rgs_u = simulate_block(params, cfg.mode, cfg.eh, n, rng)
    b = params.b_groups
    k = cfg.strategy.k
    scheme = cfg.strategy.scheme
    if k > b:
        raise ValueError(f"k={k} exceeds the number of groups {b}")

    if scheme == "RGS" and cfg.condition_on_eligible:
        eligible = (rate >= cfg.r_req) & (harvested >= cfg.e_req)
        counts = eligible.sum(axis=1)
        # uniform pick among eligible groups via the order statistics of the mask
        pick_rank = np.floor(rgs_u * np.maximum(counts, 1)).astype(np.int64)
        cum = np.cumsum(eligible, axis=1)
        idx = np.argmax(cum == (pick_rank + 1)[:, None], axis=1)
        if cfg.metric == "data":
            fail = _select_rows(rate, idx) < cfg.r_req
        else:
            fail = _select_rows(harvested, idx) < cfg.e_req
        fail |= counts == 0
        return int(fail.sum())

    if scheme == "RGS":
        idx = np.floor(rgs_u * b).astype(np.int64)
    elif scheme == "SBGS":
        idx = _kth_largest_index(snr, k)
    else:  # EBGS
        idx = _kth_largest_index(harvested, k)
    if cfg.metric == "data":
        fail = _select_rows(rate, idx) < cfg.r_req
    else:
        fail = _select_rows(harvested, idx) < cfg.e_req
    return int(fail.sum())


def _block_failures_star(args) -> int:
    return _block_failures(*args)


def estimate_outage(params: SystemParams, cfg: TrialConfig,
                    workers: int = 1) -> OutageEstimate:
    """Empirical outage with a 95% normal-approximation binomial interval."""
    n = cfg.n_trials
    blocks = [
        (params, cfg, min(BLOCK_SIZE, n - start), idx)
        for idx, start in enumerate(range(0, n, BLOCK_SIZE))
    ]
    if workers > 1 and len(blocks) > 1:
        with ProcessPoolExecutor(max_workers=workers) as pool:
            failures = sum(pool.map(_block_failures_star, blocks, chunksize=4))
    else:
        failures = sum(_block_failures_star(args) for args in blocks)
    p_hat = failures / n
    ci = 1.96 * math.sqrt(p_hat * (1.0 - p_hat) / n)
    return OutageEstimate(p_hat=p_hat, ci_halfwidth=ci, n=n)


def _apply_variable(params: SystemParams, cfg: TrialConfig, variable: str, value):
    if variable == "snr":
        # value is the mean SNR scale in dB; realized by adjusting P_tx
        psi = 10.0 ** (float(value) / 10.0)
        p_tx = psi * params.noise_power / (
            params.rho_l ** 2 * (params.d_sr * params.d_rd) ** -params.alpha
        )
        return replace(params, p_tx=p_tx), cfg
    if variable == "p_tx":
        return replace(params, p_tx=float(value)), cfg
    if variable == "rho":
        return params, replace(cfg, mode=replace(cfg.mode, rho=float(value)))
    if variable == "zeta":
        return params, replace(cfg, mode=replace(cfg.mode, zeta=float(value)))
    if variable == "spacing":
        return replace(params, spacing=float(value)), cfg
    if variable == "b":
        b = int(value)
        return replace(params, b_groups=b, n_total=params.m_per_group * b), cfg
    if variable == "k":
        return params, replace(cfg, strategy=replace(cfg.strategy, k=int(value)))
    raise ValueError(f"unknown sweep variable {variable!r}")


def analytic_outage(params: SystemParams, cfg: TrialConfig) -> float:
    """Closed-form outage for the configured scheme/metric; NaN when the
    combination has no closed form."""
    scheme = cfg.strategy.scheme
    if cfg.metric == "data":
        f_single = outage_rgs(params, cfg.mode, fit_gamma_product(params), cfg.r_req)
        if scheme == "RGS":
            return f_single
        if scheme == "SBGS":
            return outage_sbgs(f_single, params.b_groups, cfg.strategy.k)
        return math.nan
    dist = fit_energy_distribution(params, cfg.mode, cfg.eh)
    f_single = dist.cdf(cfg.e_req)
    if scheme == "RGS":
        return f_single
    if scheme == "EBGS":
        return outage_ebgs(f_single, params.b_groups, cfg.strategy.k)
    return math.nan


def sweep(params: SystemParams, cfg: TrialConfig, variable: str,
          grid: Sequence, workers: int = 1) -> OutageCurve:
    """One analytic value and one empirical estimate per grid point."""
    grid = list(grid)
    if not grid:
        raise ValueError("sweep grid must be nonempty")
    diffs = np.diff(np.asarray(grid, dtype=float))
    if len(grid) > 1 and not (np.all(diffs > 0) or np.all(diffs < 0)):
        raise ValueError("sweep grid must be strictly monotone")
    analytic = []
    estimates = []
    for value in grid:
        p, c = _apply_variable(params, cfg, variable, value)
        analytic.append(analytic_outage(p, c))
        estimates.append(estimate_outage(p, c, workers=workers))
    return OutageCurve(variable=variable, grid=grid,
                       analytic=analytic, estimates=estimates)
