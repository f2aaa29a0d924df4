"""Mutual-neighbor (natural) neighborhood search.

Builds per-point neighbor orderings and grows k-nearest / reverse-nearest
neighbor sets round by round until every point has a nonempty mutual
neighborhood (exact mode), or until a log-scaled stall counter trips
(logarithmic mode), which leaves far outliers with empty neighborhoods
instead of inflating the neighborhood size for everyone else.
"""

from __future__ import annotations

import json
import math
from dataclasses import dataclass

import numpy as np

from .dataset import DistanceMatrix

# Per point i: the other n-1 indices sorted by ascending distance to i,
# ties broken by ascending index.
NeighborOrder = np.ndarray

EXACT = "exact"
LOGARITHMIC = "logarithmic"


@dataclass(frozen=True)
class NeighborhoodIndex:
    """Result of the neighborhood search at the stopping round lam.

    nn[i], rnn[i], nnn[i] are sorted index arrays; nnn[i] = nn[i] ∩ rnn[i].
    empty_set_members holds the points with empty nnn at stop (logarithmic
    mode only; always empty in exact mode). empty_history[r-1] is the number
    of empty mutual neighborhoods after round r.
    """

    lam: int
    mode: str
    nn: list[np.ndarray]
    rnn: list[np.ndarray]
    nnn: list[np.ndarray]
    empty_set_members: frozenset[int]
    empty_history: list[int]

    @property
    def n(self) -> int:
        return len(self.nnn)

    def to_debug_json(self) -> str:
        payload = {
            "lambda": self.lam,
            "mode": self.mode,
            "empty_set_members": sorted(self.empty_set_members),
            "empty_history": list(self.empty_history),
            "nnn": [arr.tolist() for arr in self.nnn],
        }
        return json.dumps(payload, sort_keys=True)


def build_neighbor_order(dm: DistanceMatrix) -> NeighborOrder:
    """Sort each point's neighbors by ascending distance, ties by index."""
    n = dm.shape[0]
    work = dm.copy()
    np.fill_diagonal(work, np.inf)  # self sorts last, then dropped
    order = np.argsort(work, axis=1, kind="stable")[:, : n - 1]
    return order.astype(np.int64)


def nnn_search(order: NeighborOrder, mode: str = EXACT) -> NeighborhoodIndex:
    """Grow NN/RNN sets one neighbor per round and stop per the chosen mode.

    Round r adds each point's r-th neighbor to its NN set (and the point to
    that neighbor's RNN set); a point's mutual set is NN ∩ RNN. Exact mode
    stops at the least r where no mutual set is empty. Logarithmic mode also
    counts rounds where the set of empty-neighborhood points did not shrink
    (T) and stops early once T >= ln(r) + ln(n), reporting the still-empty
    points as outlier candidates.
    """
    if mode not in (EXACT, LOGARITHMIC):
        raise ValueError(f"unknown mode {mode!r}")
    n = order.shape[0]
    if n < 2:
        raise ValueError("need at least 2 points")

    nn_mask = np.zeros((n, n), dtype=bool)
    idx = np.arange(n)
    empty_history: list[int] = []
    prev_empty = n  # round 0: every mutual set is empty
    t_counter = 0
    lam = n - 1
    for r in range(1, n):
        nn_mask[idx, order[:, r - 1]] = True
        mutual_counts = (nn_mask & nn_mask.T).sum(axis=1)
        n_empty = int((mutual_counts == 0).sum())
        empty_history.append(n_empty)
        if n_empty == prev_empty:
            t_counter += 1
        prev_empty = n_empty
        if n_empty == 0:
            lam = r
            break
        if mode == LOGARITHMIC and t_counter >= math.log(r) + math.log(n):
            lam = r
            break
    else:
        lam = n - 1

    mutual = nn_mask & nn_mask.T
    nn = [np.sort(order[i, :lam]) for i in range(n)]
    rnn = [np.flatnonzero(nn_mask[:, i]).astype(np.int64) for i in range(n)]
    nnn = [np.flatnonzero(mutual[i]).astype(np.int64) for i in range(n)]
    empties = frozenset(int(i) for i in idx if nnn[i].size == 0)
    return NeighborhoodIndex(
        lam=lam,
        mode=mode,
        nn=nn,
        rnn=rnn,
        nnn=nnn,
        empty_set_members=empties,
        empty_history=empty_history,
    )


def is_outlier(idx: NeighborhoodIndex, i: int) -> bool:
    """True iff point i ended the search with an empty mutual neighborhood."""
    if not 0 <= i < idx.n:
        raise IndexError(f"point index {i} out of range for n={idx.n}")
    return i in idx.empty_set_members
