"""Automatic center-seed selection via two statistical filters on gamma/theta.

Candidates are the points whose gamma = rho*delta sits far above the mean
(one-sided 95% cut at mean + 1.65 spreads); final seeds are the candidates
whose theta = rho/delta is not extreme among candidates (two-sided 95% cut
at 1.96 spreads), which drops lopsided high-rho/low-delta and
low-rho/high-delta points. No cluster count is ever asked for.
"""

from __future__ import annotations

from dataclasses import dataclass

import numpy as np

from .density import DensityProfile

STD_DEV = "std_dev"
VARIANCE = "variance"

CANDIDATE_QUANTILE = 1.65
CENTER_QUANTILE = 1.96


@dataclass(frozen=True)
class CenterSelection:
    """Candidate and final seed indices plus the filter statistics used."""

    candidates: list[int]
    centers: list[int]
    gamma_mean: float
    gamma_spread: float
    theta_mean: float
    theta_spread: float
    spread_mode: str
    fallback: bool = False

    def report(self, profile: DensityProfile) -> dict:
        """JSON-serializable selection report with per-candidate status."""
        return {
            "spread_mode": self.spread_mode,
            "gamma_threshold": self.gamma_mean + CANDIDATE_QUANTILE * self.gamma_spread,
            "theta_mean": self.theta_mean,
            "theta_bound": CENTER_QUANTILE * self.theta_spread,
            "fallback": self.fallback,
            "candidates": [
                {
                    "index": int(i),
                    "gamma": float(profile.gamma[i]),
                    "theta": float(profile.theta[i]),
                    "kept": int(i) in set(self.centers),
                }
                for i in self.candidates
            ],
        }


def _spread(values: np.ndarray, mode: str) -> float:
    """Population standard deviation or variance of values."""
    if values.size == 0:
        return 0.0
    var = float(np.mean((values - values.mean()) ** 2))
    if mode == VARIANCE:
        return var
    if mode == STD_DEV:
        return float(np.sqrt(var))
    raise ValueError(f"unknown spread mode {mode!r}")


def select_candidates(profile: DensityProfile, spread_mode: str = STD_DEV) -> list[int]:
    """Indices with gamma above mean + 1.65 * spread, over finite gammas."""
    gamma = profile.gamma
    finite = np.isfinite(gamma)
    mean = float(gamma[finite].mean())
    spread = _spread(gamma[finite], spread_mode)
    threshold = mean + CANDIDATE_QUANTILE * spread
    return [int(i) for i in np.flatnonzero(finite & (gamma > threshold))]


def select_centers(
    profile: DensityProfile,
    candidates: list[int] | None = None,
    spread_mode: str = STD_DEV,
) -> CenterSelection:
    """Filter candidates by theta deviation; falls back to argmax gamma.

    Points whose theta sentinel is infinite (delta == 0 duplicates) are
    excluded from the statistics and can never be centers. An empty result
    degrades to the single highest-gamma point, flagged fallback=True.
    """
    if candidates is None:
        candidates = select_candidates(profile, spread_mode)
    gamma = profile.gamma
    finite_gamma = np.isfinite(gamma)
    mean_gamma = float(gamma[finite_gamma].mean())
    spread_gamma = _spread(gamma[finite_gamma], spread_mode)

    cand = np.asarray(candidates, dtype=np.int64)
    theta = profile.theta
    usable = cand[np.isfinite(theta[cand])] if cand.size else cand
    if usable.size:
        theta_vals = theta[usable]
        mean_theta = float(theta_vals.mean())
        spread_theta = _spread(theta_vals, spread_mode)
        bound = CENTER_QUANTILE * spread_theta
        dev = np.abs(theta_vals - mean_theta)
        kept = usable[(dev < bound) | (dev == 0.0)]
    else:
        mean_theta = 0.0
        spread_theta = 0.0
        kept = usable

    fallback = kept.size == 0
    if fallback:
        kept = np.array([int(np.argmax(np.where(finite_gamma, gamma, -np.inf)))])

    return CenterSelection(
        candidates=[int(i) for i in cand],
        centers=[int(i) for i in kept],
        gamma_mean=mean_gamma,
        gamma_spread=spread_gamma,
        theta_mean=mean_theta,
        theta_spread=spread_theta,
        spread_mode=spread_mode,
        fallback=fallback,
    )
