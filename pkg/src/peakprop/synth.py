"""Deterministic synthetic dataset generators.

Includes the counterexample shapes (interleaved moons, concentric donuts,
two Gaussians with a large density contrast) plus offline stand-ins for the
classic public benchmark sets, generated from their documented geometry at
the published sizes. Every generator is a pure function of its seed
(PCG64), so the same call always yields the same points.
"""

from __future__ import annotations

import numpy as np

from .dataset import Dataset


def _rng(seed: int) -> np.random.Generator:
    return np.random.Generator(np.random.PCG64(seed))


def _annulus(rng, n, r_lo, r_hi, a_lo, a_hi, center=(0.0, 0.0)):
    """Uniform-by-area sample of an annulus sector; angles in radians."""
    u = rng.random(n)
    r = np.sqrt(u * (r_hi**2 - r_lo**2) + r_lo**2)
    a = rng.uniform(a_lo, a_hi, n)
    return np.column_stack([center[0] + r * np.cos(a), center[1] + r * np.sin(a)])


def two_moons(seed: int = 0, n: int = 400, noise: float = 0.05) -> Dataset:
    """Two interleaved half circles with Gaussian jitter."""
    rng = _rng(seed)
    n0 = n // 2
    n1 = n - n0
    t0 = rng.uniform(0.0, np.pi, n0)
    t1 = rng.uniform(0.0, np.pi, n1)
    upper = np.column_stack([np.cos(t0), np.sin(t0)])
    lower = np.column_stack([1.0 - np.cos(t1), 0.5 - np.sin(t1)])
    pts = np.vstack([upper, lower]) + rng.normal(0.0, noise, (n, 2))
    labels = np.concatenate([np.zeros(n0, int), np.ones(n1, int)])
    return Dataset(pts, labels, name=f"two_moons(seed={seed})")


def donut3(seed: int = 0, n: int = 600, radii=(1.0, 2.0, 3.0), width: float = 0.15) -> Dataset:
    """Three concentric rings; the ambiguous-cluster-count counterexample."""
    rng = _rng(seed)
    per = [n // 3, n // 3, n - 2 * (n // 3)]
    parts, labels = [], []
    for c, (r, m) in enumerate(zip(radii, per)):
        parts.append(_annulus(rng, m, r - width / 2, r + width / 2, 0, 2 * np.pi))
        labels.append(np.full(m, c, int))
    return Dataset(np.vstack(parts), np.concatenate(labels), name=f"donut3(seed={seed})")


def gauss2_unbalanced(
    seed: int = 0,
    n1: int = 500,
    n2: int = 50,
    spread: float = 0.5,
    ratio: float = 1.0,
    separation: float = 5.0,
) -> Dataset:
    """Two Gaussian blobs with ~(n1/n2)/ratio^2 density contrast (10x default)."""
    rng = _rng(seed)
    a = rng.normal(0.0, spread, (n1, 2))
    b = rng.normal(0.0, spread * ratio, (n2, 2)) + np.array([separation, 0.0])
    labels = np.concatenate([np.zeros(n1, int), np.ones(n2, int)])
    return Dataset(np.vstack([a, b]), labels, name=f"gauss2_unbalanced(seed={seed})")


def blobs(
    seed: int = 0, k: int = 3, n_per: int = 50, spread: float = 0.3, radius: float = 4.0
) -> Dataset:
    """k Gaussian blobs spaced evenly on a circle (k=1 sits at the origin)."""
    if k < 1:
        raise ValueError("k must be >= 1")
    rng = _rng(seed)
    parts, labels = [], []
    for c in range(k):
        angle = 2 * np.pi * c / k
        center = np.array([radius * np.cos(angle), radius * np.sin(angle)]) if k > 1 else np.zeros(2)
        parts.append(rng.normal(0.0, spread, (n_per, 2)) + center)
        labels.append(np.full(n_per, c, int))
    return Dataset(np.vstack(parts), np.concatenate(labels), name=f"blobs(seed={seed})")


def jain_like(seed: int = 0) -> Dataset:
    """Two parallel arcs, 276 dense below and 97 sparse above (n=373)."""
    rng = _rng(seed)
    x0 = 35.0 * rng.random(276)
    y0 = 9.0 * np.sin(np.pi * x0 / 35.0) + rng.normal(0.0, 0.35, 276)
    x1 = 6.0 + 35.0 * rng.random(97)
    y1 = 15.0 + 9.0 * np.sin(np.pi * (x1 - 6.0) / 35.0) + rng.normal(0.0, 0.55, 97)
    pts = np.vstack([np.column_stack([x0, y0]), np.column_stack([x1, y1])])
    labels = np.concatenate([np.zeros(276, int), np.ones(97, int)])
    return Dataset(pts, labels, name=f"jain_like(seed={seed})")


def spiral3(seed: int = 0) -> Dataset:
    """Three interleaved Archimedean spiral arms of 104 points each (n=312)."""
    rng = _rng(seed)
    parts, labels = [], []
    for arm in range(3):
        # Even spacing along arc length: s ~ theta^2 / 2.
        s = np.linspace(2.0, 50.0, 104) + rng.uniform(-0.2, 0.2, 104)
        theta = np.sqrt(2.0 * s)
        angle = theta + 2.0 * np.pi * arm / 3.0
        pts = np.column_stack([theta * np.cos(angle), theta * np.sin(angle)])
        pts += rng.normal(0.0, 0.08, pts.shape)
        parts.append(pts)
        labels.append(np.full(104, arm, int))
    return Dataset(np.vstack(parts), np.concatenate(labels), name=f"spiral3(seed={seed})")


def cassini(seed: int = 0) -> Dataset:
    """Two mirrored banana sectors (400 each) around a small disk (200)."""
    rng = _rng(seed)
    top = _annulus(rng, 400, 1.2, 2.0, np.radians(40), np.radians(140))
    bottom = _annulus(rng, 400, 1.2, 2.0, np.radians(220), np.radians(320))
    middle = _annulus(rng, 200, 0.0, 0.4, 0.0, 2 * np.pi)
    pts = np.vstack([top, bottom, middle])
    labels = np.concatenate([np.zeros(400, int), np.ones(400, int), np.full(200, 2, int)])
    return Dataset(pts, labels, name=f"cassini(seed={seed})")


def dartboard1(seed: int = 0) -> Dataset:
    """Four thin concentric rings of 250 points each (n=1000)."""
    rng = _rng(seed)
    parts, labels = [], []
    for c, r in enumerate((0.3, 0.6, 0.9, 1.2)):
        parts.append(_annulus(rng, 250, r - 0.02, r + 0.02, 0.0, 2 * np.pi))
        labels.append(np.full(250, c, int))
    return Dataset(np.vstack(parts), np.concatenate(labels), name=f"dartboard1(seed={seed})")


def shapes(seed: int = 0) -> Dataset:
    """Four widely separated clusters of different shapes, 250 each (n=1000)."""
    rng = _rng(seed)
    blob = rng.normal(0.0, 0.8, (250, 2))
    ring = _annulus(rng, 250, 1.5, 2.0, 0.0, 2 * np.pi, center=(20.0, 0.0))
    square = rng.uniform(-2.0, 2.0, (250, 2)) + np.array([0.0, 20.0])
    crescent = _annulus(rng, 250, 1.8, 2.6, 0.0, np.pi, center=(20.0, 20.0))
    pts = np.vstack([blob, ring, square, crescent])
    labels = np.repeat(np.arange(4), 250)
    return Dataset(pts, labels, name=f"shapes(seed={seed})")


def r15(seed: int = 0) -> Dataset:
    """15 tight Gaussian blobs of 40 points: one center, rings of 6 and 8."""
    rng = _rng(seed)
    centers = [(0.0, 0.0)]
    centers += [
        (4.0 * np.cos(a), 4.0 * np.sin(a)) for a in np.linspace(0, 2 * np.pi, 7)[:-1]
    ]
    centers += [
        (8.0 * np.cos(a), 8.0 * np.sin(a)) for a in np.linspace(0, 2 * np.pi, 9)[:-1]
    ]
    parts, labels = [], []
    for c, center in enumerate(centers):
        parts.append(rng.normal(0.0, 0.3, (40, 2)) + np.asarray(center))
        labels.append(np.full(40, c, int))
    return Dataset(np.vstack(parts), np.concatenate(labels), name=f"r15(seed={seed})")


def aggregation_like(seed: int = 0) -> Dataset:
    """Seven Gaussian blobs of mixed sizes and spreads (n=788)."""
    rng = _rng(seed)
    spec = [
        ((0.0, 0.0), 1.6, 170),
        ((14.0, 2.0), 1.9, 130),
        ((28.0, 0.0), 1.5, 120),
        ((2.0, 16.0), 1.7, 102),
        ((15.0, 18.0), 1.3, 90),
        ((29.0, 16.0), 1.4, 96),
        ((8.0, 30.0), 1.1, 80),
    ]
    parts, labels = [], []
    for c, (center, sd, m) in enumerate(spec):
        parts.append(rng.normal(0.0, sd, (m, 2)) + np.asarray(center))
        labels.append(np.full(m, c, int))
    return Dataset(np.vstack(parts), np.concatenate(labels), name=f"aggregation_like(seed={seed})")


def dense4c(seed: int = 0) -> Dataset:
    """Four Gaussian blobs, one far denser than the rest (n=876)."""
    rng = _rng(seed)
    spec = [
        ((0.0, 0.0), 0.5, 500),
        ((12.0, 0.0), 1.2, 150),
        ((0.0, 12.0), 1.0, 126),
        ((12.0, 12.0), 1.1, 100),
    ]
    parts, labels = [], []
    for c, (center, sd, m) in enumerate(spec):
        parts.append(rng.normal(0.0, sd, (m, 2)) + np.asarray(center))
        labels.append(np.full(m, c, int))
    return Dataset(np.vstack(parts), np.concatenate(labels), name=f"dense4c(seed={seed})")


GENERATORS = {
    "two_moons": two_moons,
    "donut3": donut3,
    "gauss2_unbalanced": gauss2_unbalanced,
    "blobs": blobs,
    "jain_like": jain_like,
    "spiral3": spiral3,
    "cassini": cassini,
    "dartboard1": dartboard1,
    "shapes": shapes,
    "r15": r15,
    "aggregation_like": aggregation_like,
    "dense4c": dense4c,
}


def synth_generate(kind: str, seed: int = 0, **params) -> Dataset:
    """Dispatch to a named generator; unknown kinds raise ValueError."""
    try:
        gen = GENERATORS[kind]
    except KeyError:
        raise ValueError(
            f"unknown synthetic kind {kind!r}; choose from {sorted(GENERATORS)}"
        ) from None
    return gen(seed=seed, **params)
