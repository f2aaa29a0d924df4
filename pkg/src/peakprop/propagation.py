"""Seeded probabilistic propagation of cluster labels over mutual neighborhoods.

Each round starts from the densest unconsumed seed (patient zero), labels it
with certainty, and floods outward through mutual-neighbor links: every
frontier point is checked once, catching the label with probability
min(1, g * C * (p' + p'')) where p' and p'' are the point's density ranks
among this round's infected points and among the unchecked frontier. A point
that fails its check is immune for the rest of the run. When the seeds are
exhausted, stragglers are attached to the cluster with the largest density
sum inside their neighborhood; points that never see a labeled neighbor
stay NOISE.

Randomness comes from numpy's PCG64 generator, one uniform draw per check,
so a (dataset, config, seed) triple fully determines the labeling and the
stream can be replicated from any implementation of PCG64.
"""

from __future__ import annotations

from bisect import bisect_left, insort
from collections import deque
from dataclasses import dataclass, field, replace

import numpy as np

from .centers import CenterSelection
from .density import DensityProfile
from .neighborhood import NeighborhoodIndex

NOISE = -1


@dataclass(frozen=True)
class PropagationConfig:
    """Knobs for a propagation run.

    c scales the rank-based infection probability; the first boost_checks
    checks of every round are multiplied by boost_factor (>= 1) to keep the
    early flood alive. boost_checks defaults to the neighborhood size lam.
    force_probability overrides every computed probability (test hook).
    """

    c: float = 0.6
    boost_checks: int | None = None
    boost_factor: float = 1.5
    seed: int = 0
    runs: int = 1
    force_probability: float | None = None

    def __post_init__(self):
        if not self.c > 0:
            raise ValueError(f"c must be positive, got {self.c}")
        if self.boost_factor < 1:
            raise ValueError(f"boost_factor must be >= 1, got {self.boost_factor}")
        if self.boost_checks is not None and self.boost_checks < 0:
            raise ValueError("boost_checks must be non-negative")
        if self.runs < 1:
            raise ValueError(f"runs must be >= 1, got {self.runs}")
        if self.force_probability is not None and not 0 <= self.force_probability <= 1:
            raise ValueError("force_probability must lie in [0, 1]")


@dataclass
class ClusterAssignment:
    """A hard partition: per-point labels (NOISE = -1) plus run provenance."""

    labels: np.ndarray
    centers_used: list[int] = field(default_factory=list)
    immune_at_end: set[int] = field(default_factory=set)
    fallback_assigned: set[int] = field(default_factory=set)

    @property
    def n_clusters(self) -> int:
        return len(set(int(x) for x in self.labels) - {NOISE})

    @property
    def noise_count(self) -> int:
        return int((self.labels == NOISE).sum())


@dataclass
class RoundState:
    """Live state of one propagation round, for rank computations.

    infected_keys and frontier_keys are (rho, index) pairs kept sorted
    ascending; the index component makes the order strict under rho ties,
    matching the density module's tie rule.
    """

    infected_keys: list[tuple[float, int]] = field(default_factory=list)
    frontier_keys: list[tuple[float, int]] = field(default_factory=list)
    checks_done: int = 0

    def add_infected(self, key: tuple[float, int]) -> None:
        insort(self.infected_keys, key)

    def add_frontier(self, key: tuple[float, int]) -> None:
        insort(self.frontier_keys, key)

    def remove_frontier(self, key: tuple[float, int]) -> None:
        pos = bisect_left(self.frontier_keys, key)
        del self.frontier_keys[pos]


def infection_probability(
    y: int,
    state: RoundState,
    rho: np.ndarray,
    cfg: PropagationConfig,
) -> float:
    """min(1, g*C*(p' + p'')) for the candidate y just taken off the queue.

    p' is y's 1-based ascending density rank among this round's infected
    points plus y itself; p'' is the same rank among y plus the currently
    unchecked frontier. A lone candidate therefore gets p'' = 1.
    """
    key = (float(rho[y]), y)
    rank_inf = bisect_left(state.infected_keys, key) + 1
    p1 = rank_inf / (len(state.infected_keys) + 1)
    rank_fr = bisect_left(state.frontier_keys, key) + 1
    p2 = rank_fr / (len(state.frontier_keys) + 1)
    boost = cfg.boost_checks if cfg.boost_checks is not None else 0
    gain = cfg.boost_factor if state.checks_done < boost else 1.0
    return min(1.0, gain * cfg.c * (p1 + p2))


def propagate(
    idx: NeighborhoodIndex,
    profile: DensityProfile,
    cens: CenterSelection,
    cfg: PropagationConfig,
) -> ClusterAssignment:
    """Run all propagation rounds plus the final density-sum assignment."""
    if not cens.centers:
        raise ValueError("center selection is empty")
    n = profile.n
    rho = profile.rho
    rng = np.random.Generator(np.random.PCG64(cfg.seed))
    cfg = _with_default_boost(cfg, idx.lam)

    labels = np.full(n, NOISE, dtype=np.int64)
    immune: set[int] = set()
    remaining = list(cens.centers)
    centers_used: list[int] = []
    in_queue = np.zeros(n, dtype=bool)

    cluster = 0
    while remaining:
        viable = [c for c in remaining if labels[c] == NOISE and c not in immune]
        if not viable:
            break
        zero = max(viable, key=lambda c: (rho[c], c))
        remaining = [c for c in viable if c != zero]

        labels[zero] = cluster
        centers_used.append(zero)
        state = RoundState()
        state.add_infected((float(rho[zero]), zero))
        queue: deque[int] = deque()
        for z in idx.nnn[zero]:
            z = int(z)
            if labels[z] == NOISE and z not in immune and not in_queue[z]:
                queue.append(z)
                in_queue[z] = True
                state.add_frontier((float(rho[z]), z))

        while queue:
            y = queue.popleft()
            in_queue[y] = False
            key = (float(rho[y]), y)
            state.remove_frontier(key)
            if cfg.force_probability is not None:
                p = cfg.force_probability
            else:
                p = infection_probability(y, state, rho, cfg)
            state.checks_done += 1
            infected = rng.random() < p
            if infected:
                labels[y] = cluster
                state.add_infected(key)
                if y in remaining:
                    remaining.remove(y)
                for z in idx.nnn[y]:
                    z = int(z)
                    if labels[z] == NOISE and z not in immune and not in_queue[z]:
                        queue.append(z)
                        in_queue[z] = True
                        state.add_frontier((float(rho[z]), z))
            else:
                immune.add(y)
        cluster += 1

    assignment = ClusterAssignment(
        labels=labels,
        centers_used=centers_used,
        immune_at_end=set(immune),
    )
    return final_assign(idx, profile, assignment)


def final_assign(
    idx: NeighborhoodIndex,
    profile: DensityProfile,
    partial: ClusterAssignment,
) -> ClusterAssignment:
    """Attach unlabeled points to the neighborhood cluster with top density sum.

    Repeated passes let labels creep outward: a point with no labeled
    neighbor yet may gain one in a later pass. Passes use the labels as of
    the pass start, so the result is order-independent. Points that never
    acquire a labeled neighbor remain NOISE.
    """
    labels = partial.labels
    rho = profile.rho
    fallback: set[int] = set(partial.fallback_assigned)
    while True:
        snapshot = labels.copy()
        assigned_any = False
        for x in range(profile.n):
            if labels[x] != NOISE:
                continue
            sums: dict[int, float] = {}
            for z in idx.nnn[x]:
                lab = int(snapshot[z])
                if lab != NOISE:
                    sums[lab] = sums.get(lab, 0.0) + float(rho[z])
            if not sums:
                continue
            best = max(sums.items(), key=lambda kv: (kv[1], -kv[0]))[0]
            labels[x] = best
            fallback.add(x)
            assigned_any = True
        if not assigned_any:
            break
    partial.fallback_assigned = fallback
    return partial


def _with_default_boost(cfg: PropagationConfig, lam: int) -> PropagationConfig:
    if cfg.boost_checks is None:
        return replace(cfg, boost_checks=lam)
    return cfg


def nnn_edge_agreement(idx: NeighborhoodIndex, labels: np.ndarray) -> float:
    """Fraction of mutual-neighbor edges joining same-labeled non-noise points.

    Internal quality score used to pick a best run when no gold labels exist.
    """
    agree = 0
    total = 0
    for i in range(idx.n):
        for j in idx.nnn[i]:
            total += 1
            if labels[i] != NOISE and labels[i] == labels[j]:
                agree += 1
    return agree / total if total else 0.0


def run_ensemble(
    idx: NeighborhoodIndex,
    profile: DensityProfile,
    cens: CenterSelection,
    cfg: PropagationConfig,
    gold_labels: np.ndarray | None = None,
) -> tuple[ClusterAssignment, list[dict]]:
    """Run cfg.runs seeded restarts and keep the best labeling.

    Restart k uses seed cfg.seed + k. With gold labels the best run maximizes
    ARI; otherwise it maximizes the internal mutual-edge agreement score.
    Returns the winning assignment plus one summary dict per run.
    """
    from .metrics import ari  # local import to avoid a cycle at module load

    best: ClusterAssignment | None = None
    best_score = -np.inf
    summaries: list[dict] = []
    for k in range(cfg.runs):
        run_cfg = replace(cfg, seed=cfg.seed + k, runs=1)
        asg = propagate(idx, profile, cens, run_cfg)
        if gold_labels is not None:
            score = ari(gold_labels, asg.labels)
            criterion = "ari"
        else:
            score = nnn_edge_agreement(idx, asg.labels)
            criterion = "nnn_edge_agreement"
        summaries.append(
            {
                "seed": run_cfg.seed,
                "c": cfg.c,
                "boost_factor": cfg.boost_factor,
                "score": float(score),
                "criterion": criterion,
                "rounds": len(asg.centers_used),
                "centers_used": list(asg.centers_used),
                "noise_count": asg.noise_count,
            }
        )
        if score > best_score:
            best = asg
            best_score = score
    assert best is not None
    return best, summaries
