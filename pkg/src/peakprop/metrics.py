"""External clustering validation: ARI, AMI, and Fowlkes-Mallows.

All three indices are computed from the label-pair contingency table with
exact integer pair counts (Python ints, so no overflow at any n here). The
NOISE label (-1) is scored as one ordinary predicted cluster: the tables
being reproduced score full partitions, and a single stated convention
keeps algorithm comparisons fair. AMI uses natural-log entropies with
max-entropy normalization and the exact hypergeometric expected-MI term.
"""

from __future__ import annotations

import math
from dataclasses import dataclass
from fractions import Fraction

import numpy as np


@dataclass(frozen=True)
class ContingencyTable:
    """Co-occurrence counts between two labelings plus marginals."""

    counts: np.ndarray  # shape (r, c), int64
    row_marginals: np.ndarray
    col_marginals: np.ndarray
    n: int


def contingency_table(true_labels, pred_labels) -> ContingencyTable:
    a = np.asarray(true_labels).ravel()
    b = np.asarray(pred_labels).ravel()
    if a.shape != b.shape:
        raise ValueError(f"label length mismatch: {a.shape} vs {b.shape}")
    if a.size < 2:
        raise ValueError("need at least 2 points to score")
    _, ai = np.unique(a, return_inverse=True)
    _, bi = np.unique(b, return_inverse=True)
    r = int(ai.max()) + 1
    c = int(bi.max()) + 1
    counts = np.zeros((r, c), dtype=np.int64)
    np.add.at(counts, (ai, bi), 1)
    return ContingencyTable(
        counts=counts,
        row_marginals=counts.sum(axis=1),
        col_marginals=counts.sum(axis=0),
        n=int(a.size),
    )


def _comb2(x: int) -> int:
    return x * (x - 1) // 2


def ari(true_labels, pred_labels) -> float:
    """Adjusted Rand index, exact rational arithmetic before the final float.

    (sum_ij C(n_ij,2) - E) / (max - E) with E the chance expectation; the
    degenerate case max == E scores 1 for identical partitions, else 0.
    """
    t = contingency_table(true_labels, pred_labels)
    index = sum(_comb2(int(v)) for v in t.counts.ravel())
    sum_a = sum(_comb2(int(v)) for v in t.row_marginals)
    sum_b = sum(_comb2(int(v)) for v in t.col_marginals)
    total = _comb2(t.n)
    expected = Fraction(sum_a * sum_b, total)
    maximum = Fraction(sum_a + sum_b, 2)
    if maximum == expected:
        return 1.0 if _partitions_identical(t) else 0.0
    return float((index - expected) / (maximum - expected))


def fmi(true_labels, pred_labels) -> float:
    """Fowlkes-Mallows: TP / sqrt((TP+FP)(TP+FN)) over point pairs."""
    t = contingency_table(true_labels, pred_labels)
    tp = sum(_comb2(int(v)) for v in t.counts.ravel())
    same_true = sum(_comb2(int(v)) for v in t.row_marginals)
    same_pred = sum(_comb2(int(v)) for v in t.col_marginals)
    if same_true == 0 or same_pred == 0:
        return 0.0
    return tp / math.sqrt(same_true * same_pred)


def ami(true_labels, pred_labels) -> float:
    """Adjusted mutual information with max normalization, natural logs."""
    t = contingency_table(true_labels, pred_labels)
    h_true = _entropy(t.row_marginals, t.n)
    h_pred = _entropy(t.col_marginals, t.n)
    mi = _mutual_information(t)
    emi = expected_mutual_information(t)
    denom = max(h_true, h_pred) - emi
    if abs(denom) < 1e-15:
        # Both sides a single cluster (or equivalent degenerate agreement).
        return 1.0 if _partitions_identical(t) else 0.0
    return (mi - emi) / denom


def _entropy(marginals: np.ndarray, n: int) -> float:
    p = marginals[marginals > 0] / n
    return float(-(p * np.log(p)).sum())


def _mutual_information(t: ContingencyTable) -> float:
    mi = 0.0
    n = t.n
    for i in range(t.counts.shape[0]):
        a = int(t.row_marginals[i])
        for j in range(t.counts.shape[1]):
            nij = int(t.counts[i, j])
            if nij == 0:
                continue
            b = int(t.col_marginals[j])
            mi += (nij / n) * math.log(nij * n / (a * b))
    return mi


def expected_mutual_information(t: ContingencyTable) -> float:
    """Exact E[MI] under the hypergeometric model of random contingency fill.

    Sums P(n_ij = v) * (v/n) log(n*v / (a_i*b_j)) over the support of every
    cell, with probabilities from log-factorials.
    """
    n = t.n
    lgam = [math.lgamma(k + 1) for k in range(n + 1)]  # log k!
    emi = 0.0
    for a in (int(x) for x in t.row_marginals):
        for b in (int(x) for x in t.col_marginals):
            lo = max(1, a + b - n)
            hi = min(a, b)
            base = (
                lgam[a]
                + lgam[b]
                + lgam[n - a]
                + lgam[n - b]
                - lgam[n]
            )
            for v in range(lo, hi + 1):
                log_p = base - (
                    lgam[v] + lgam[a - v] + lgam[b - v] + lgam[n - a - b + v]
                )
                emi += (v / n) * math.log(n * v / (a * b)) * math.exp(log_p)
    return emi


def _partitions_identical(t: ContingencyTable) -> bool:
    """True when the two labelings are the same partition up to renaming."""
    nonzero_per_row = (t.counts > 0).sum(axis=1)
    nonzero_per_col = (t.counts > 0).sum(axis=0)
    return bool((nonzero_per_row == 1).all() and (nonzero_per_col == 1).all())


def score_triple(true_labels, pred_labels) -> dict[str, float]:
    """Convenience: the (ARI, AMI, FMI) triple as a dict."""
    return {
        "ari": ari(true_labels, pred_labels),
        "ami": ami(true_labels, pred_labels),
        "fmi": fmi(true_labels, pred_labels),
    }
