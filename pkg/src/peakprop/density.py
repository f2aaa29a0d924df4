"""Per-point local density, separation, and the derived center scores.

Three density estimators are provided: a neighborhood-kernel density whose
bandwidth adapts to each point's mutual-neighbor radius (parameter-free),
plus the classic cutoff-count and Gaussian-kernel densities that need a
cutoff radius d_c. Separation (delta) is the distance to the nearest
strictly-denser point under a total order that breaks density ties by
point index, so exactly one point is the global peak.
"""

from __future__ import annotations

import warnings
from dataclasses import dataclass

import numpy as np

from .dataset import DistanceMatrix
from .neighborhood import NeighborhoodIndex

NO_NHD = -1  # sentinel for the global density peak, which has no denser point


@dataclass(frozen=True)
class DensityProfile:
    """rho, delta, gamma = rho*delta, theta = rho/delta, and nhd per point.

    nhd[i] is the index of the nearest strictly-denser point (NO_NHD for the
    global peak). theta is +inf where delta == 0 (exact duplicate of a denser
    point); such sentinels are excluded from downstream statistics. sigma is
    the per-point neighborhood radius (adaptive-kernel mode only).
    """

    rho: np.ndarray
    delta: np.ndarray
    gamma: np.ndarray
    theta: np.ndarray
    nhd: np.ndarray
    sigma: np.ndarray | None = None

    @property
    def n(self) -> int:
        return self.rho.shape[0]

    def dump_rows(self):
        """Yield (index, rho, delta, gamma, theta, nhd) rows for CSV export."""
        for i in range(self.n):
            yield (
                i,
                float(self.rho[i]),
                float(self.delta[i]),
                float(self.gamma[i]),
                float(self.theta[i]),
                int(self.nhd[i]),
            )


def denser_than(rho: np.ndarray, j: int, i: int) -> bool:
    """Strict density order: higher rho wins, ties go to the higher index."""
    return (rho[j], j) > (rho[i], i)


def rho_nnn(dm: DistanceMatrix, idx: NeighborhoodIndex) -> np.ndarray:
    """Adaptive-kernel density over each point's mutual neighborhood.

    rho_i = sum over mutual neighbors j of exp(-(d_ij / sigma_i)^2) with
    sigma_i the farthest mutual-neighbor distance. Empty neighborhoods give
    rho 0; an all-coincident neighborhood (sigma 0) contributes 1 per member
    (the d -> 0 limit), with a warning.
    """
    rho, _ = rho_nnn_with_sigma(dm, idx)
    return rho


def rho_nnn_with_sigma(
    dm: DistanceMatrix, idx: NeighborhoodIndex
) -> tuple[np.ndarray, np.ndarray]:
    n = dm.shape[0]
    rho = np.zeros(n, dtype=np.float64)
    sigma = np.zeros(n, dtype=np.float64)
    degenerate = 0
    for i in range(n):
        members = idx.nnn[i]
        if members.size == 0:
            continue
        d = dm[i, members]
        s = float(d.max())
        sigma[i] = s
        if s == 0.0:
            degenerate += 1
            rho[i] = float(members.size)
        else:
            rho[i] = float(np.exp(-((d / s) ** 2)).sum())
    if degenerate:
        warnings.warn(
            f"{degenerate} point(s) have an all-coincident neighborhood "
            "(sigma = 0); each member counted with weight 1",
            stacklevel=2,
        )
    return rho, sigma


def rho_cutoff(dm: DistanceMatrix, d_c: float) -> np.ndarray:
    """Count of neighbors strictly inside radius d_c (boundary excluded)."""
    if d_c <= 0:
        raise ValueError(f"d_c must be positive, got {d_c}")
    counts = (dm < d_c).sum(axis=1) - 1  # remove self (diagonal is 0 < d_c)
    return counts.astype(np.float64)


def rho_gaussian(dm: DistanceMatrix, d_c: float) -> np.ndarray:
    """Gaussian-kernel density sum over all other points at bandwidth d_c."""
    if d_c <= 0:
        raise ValueError(f"d_c must be positive, got {d_c}")
    k = np.exp(-((dm / d_c) ** 2))
    return k.sum(axis=1) - 1.0  # subtract the self term exp(0)


def delta_and_nhd(
    dm: DistanceMatrix, rho: np.ndarray
) -> tuple[np.ndarray, np.ndarray]:
    """Distance to (and index of) each point's nearest strictly-denser point.

    The unique global peak (max rho, density ties broken by higher index)
    gets delta = max_j d_ij and nhd = NO_NHD. Distance ties among denser
    points resolve to the smallest index.
    """
    n = dm.shape[0]
    # Ascending by (rho, index); the last entry is the global peak.
    order = np.lexsort((np.arange(n), rho))
    delta = np.zeros(n, dtype=np.float64)
    nhd = np.full(n, NO_NHD, dtype=np.int64)
    peak = order[-1]
    delta[peak] = dm[peak].max()
    for pos in range(n - 1):
        i = order[pos]
        denser = order[pos + 1 :]
        dists = dm[i, denser]
        best = int(np.argmin(dists))  # first occurrence, but not index order
        # argmin ties must resolve to the smallest point index
        min_d = dists[best]
        ties = denser[dists == min_d]
        j = int(ties.min())
        delta[i] = min_d
        nhd[i] = j
    return delta, nhd


def gamma_theta(
    rho: np.ndarray,
    delta: np.ndarray,
    nhd: np.ndarray,
    sigma: np.ndarray | None = None,
) -> DensityProfile:
    """Fill in gamma = rho*delta and theta = rho/delta (inf where delta 0)."""
    gamma = rho * delta
    with np.errstate(divide="ignore", invalid="ignore"):
        theta = np.where(delta > 0, rho / np.where(delta > 0, delta, 1.0), np.inf)
    return DensityProfile(
        rho=rho, delta=delta, gamma=gamma, theta=theta, nhd=nhd, sigma=sigma
    )


def nnn_profile(dm: DistanceMatrix, idx: NeighborhoodIndex) -> DensityProfile:
    """Full adaptive-kernel profile: rho, delta/nhd, gamma, theta, sigma."""
    rho, sigma = rho_nnn_with_sigma(dm, idx)
    delta, nhd = delta_and_nhd(dm, rho)
    return gamma_theta(rho, delta, nhd, sigma=sigma)


def kernel_profile(dm: DistanceMatrix, d_c: float, kernel: str = "gaussian") -> DensityProfile:
    """Classic profile at cutoff d_c with the cutoff or gaussian estimator."""
    if kernel == "gaussian":
        rho = rho_gaussian(dm, d_c)
    elif kernel == "cutoff":
        rho = rho_cutoff(dm, d_c)
    else:
        raise ValueError(f"unknown kernel {kernel!r}")
    delta, nhd = delta_and_nhd(dm, rho)
    return gamma_theta(rho, delta, nhd)
