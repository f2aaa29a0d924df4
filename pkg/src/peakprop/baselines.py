"""Control-group algorithms: classic density-peak clustering, K-means, DBSCAN.

These are self-contained reimplementations (no external clustering library)
so benchmark runs are reproducible bit for bit from the seeds. Classic DPC
follows the gamma-sort center selection and nearest-denser-point assignment,
without any halo/noise step.
"""

from __future__ import annotations

from collections import deque
from dataclasses import dataclass

import numpy as np

from .dataset import Dataset, DistanceMatrix
from .density import NO_NHD, kernel_profile
from .propagation import NOISE, ClusterAssignment


@dataclass(frozen=True)
class DpcParams:
    """d_c is taken as a percentile of the off-diagonal distance pool."""

    d_c_percentile: float = 1.5
    k: int = 2
    kernel: str = "gaussian"

    def __post_init__(self):
        if not 0 < self.d_c_percentile < 100:
            raise ValueError("d_c_percentile must lie in (0, 100)")
        if self.k < 1:
            raise ValueError("k must be >= 1")
        if self.kernel not in ("cutoff", "gaussian"):
            raise ValueError(f"unknown kernel {self.kernel!r}")


@dataclass(frozen=True)
class KmeansParams:
    k: int = 2
    max_iters: int = 300
    seed: int = 0
    init: str = "kmeans++"  # or "random"

    def __post_init__(self):
        if self.k < 1:
            raise ValueError("k must be >= 1")
        if self.init not in ("kmeans++", "random"):
            raise ValueError(f"unknown init {self.init!r}")


@dataclass(frozen=True)
class DbscanParams:
    eps: float = 0.5
    min_pts: int = 4

    def __post_init__(self):
        if not self.eps > 0:
            raise ValueError("eps must be positive")
        if self.min_pts < 1:
            raise ValueError("min_pts must be >= 1")


def dc_from_percentile(dm: DistanceMatrix, percentile: float) -> float:
    """Cutoff radius at the given percentile of all pairwise distances."""
    n = dm.shape[0]
    iu = np.triu_indices(n, k=1)
    return float(np.percentile(dm[iu], percentile))


def dpc_cluster(dm: DistanceMatrix, params: DpcParams) -> ClusterAssignment:
    """Classic density peaks: top-k gamma centers, nearest-denser assignment."""
    n = dm.shape[0]
    if params.k > n:
        raise ValueError(f"k={params.k} exceeds n={n}")
    d_c = dc_from_percentile(dm, params.d_c_percentile)
    profile = kernel_profile(dm, d_c, kernel=params.kernel)

    by_gamma = np.lexsort((np.arange(n), -profile.gamma))
    centers = [int(i) for i in by_gamma[: params.k]]

    labels = np.full(n, NOISE, dtype=np.int64)
    for c, i in enumerate(centers):
        labels[i] = c
    # Descending strict density order guarantees nhd is labeled first.
    desc = np.lexsort((np.arange(n), profile.rho))[::-1]
    for i in desc:
        i = int(i)
        if labels[i] != NOISE:
            continue
        j = int(profile.nhd[i])
        if j == NO_NHD:
            # Global peak outside the chosen centers: attach to the nearest center.
            j = min(centers, key=lambda c: (dm[i, c], c))
        labels[i] = labels[j]
    return ClusterAssignment(labels=labels, centers_used=centers)


def _kmeanspp_seeds(pts: np.ndarray, k: int, rng: np.random.Generator) -> np.ndarray:
    """Distance-squared-weighted seeding; spreads seeds across clusters."""
    n = pts.shape[0]
    seeds = [int(rng.integers(n))]
    d2 = ((pts - pts[seeds[0]]) ** 2).sum(axis=1)
    for _ in range(1, k):
        total = float(d2.sum())
        if total == 0.0:
            remaining = np.setdiff1d(np.arange(n), np.array(seeds))
            seeds.append(int(remaining[0]))
            continue
        r = rng.random() * total
        nxt = int(np.searchsorted(np.cumsum(d2), r))
        nxt = min(nxt, n - 1)
        seeds.append(nxt)
        d2 = np.minimum(d2, ((pts - pts[nxt]) ** 2).sum(axis=1))
    return pts[seeds].copy()


def lloyd_iterations(
    pts: np.ndarray, centroids: np.ndarray, max_iters: int
) -> tuple[np.ndarray, np.ndarray, list[float]]:
    """Run Lloyd updates until the assignment is stable or max_iters.

    Empty clusters are repaired by reseeding to the point farthest from its
    assigned centroid. Returns (labels, centroids, inertia history).
    """
    k = centroids.shape[0]
    labels = np.full(pts.shape[0], -1, dtype=np.int64)
    inertia_history: list[float] = []
    for _ in range(max_iters):
        d2 = ((pts[:, None, :] - centroids[None, :, :]) ** 2).sum(axis=2)
        new_labels = d2.argmin(axis=1)
        for c in range(k):
            if not (new_labels == c).any():
                worst = int(d2[np.arange(pts.shape[0]), new_labels].argmax())
                centroids[c] = pts[worst]
                new_labels[worst] = c
        inertia = float(((pts - centroids[new_labels]) ** 2).sum())
        inertia_history.append(inertia)
        if (new_labels == labels).all():
            break
        labels = new_labels
        for c in range(k):
            members = pts[labels == c]
            if members.size:
                centroids[c] = members.mean(axis=0)
    return labels, centroids, inertia_history


def kmeans_cluster(ds: Dataset, params: KmeansParams) -> ClusterAssignment:
    """Seeded Lloyd K-means; deterministic for a given (seed, init)."""
    if params.k > ds.n:
        raise ValueError(f"k={params.k} exceeds n={ds.n}")
    rng = np.random.Generator(np.random.PCG64(params.seed))
    pts = ds.points
    if params.init == "kmeans++":
        centroids = _kmeanspp_seeds(pts, params.k, rng)
    else:
        picks = rng.choice(ds.n, size=params.k, replace=False)
        centroids = pts[picks].copy()
    labels, centroids, _ = lloyd_iterations(pts, centroids, params.max_iters)
    centers_used = [
        int(((pts - centroids[c]) ** 2).sum(axis=1).argmin()) for c in range(params.k)
    ]
    return ClusterAssignment(labels=labels, centers_used=centers_used)


def dbscan_cluster(dm: DistanceMatrix, params: DbscanParams) -> ClusterAssignment:
    """Density-reachability clustering with index-ordered expansion."""
    n = dm.shape[0]
    within = dm <= params.eps
    neighbor_counts = within.sum(axis=1)  # includes self
    core = neighbor_counts >= params.min_pts
    labels = np.full(n, NOISE, dtype=np.int64)
    cluster = 0
    for start in range(n):
        if labels[start] != NOISE or not core[start]:
            continue
        labels[start] = cluster
        queue = deque([start])
        while queue:
            p = queue.popleft()
            if not core[p]:
                continue
            for q in np.flatnonzero(within[p]):
                q = int(q)
                if labels[q] == NOISE:
                    labels[q] = cluster
                    queue.append(q)
        cluster += 1
    return ClusterAssignment(labels=labels, centers_used=[])
