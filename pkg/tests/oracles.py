"""Independent reference implementations used to check the package.

Everything here is deliberately naive: pure-Python loops straight from the
definitions, no shared code with the package beyond input data structures.
"""

from __future__ import annotations

import math
from fractions import Fraction

import numpy as np


def naive_distance_matrix(points) -> list[list[float]]:
    pts = [list(map(float, row)) for row in points]
    n = len(pts)
    out = [[0.0] * n for _ in range(n)]
    for i in range(n):
        for j in range(n):
            out[i][j] = math.sqrt(
                sum((pts[i][k] - pts[j][k]) ** 2 for k in range(len(pts[i])))
            )
    return out


def neighbor_order_rows(dm) -> list[list[int]]:
    """Per point: indices of the others sorted by (distance, index)."""
    n = len(dm)
    return [
        sorted((j for j in range(n) if j != i), key=lambda j: (dm[i][j], j))
        for i in range(n)
    ]


def mutual_sets_at_k(order: list[list[int]], k: int) -> list[set[int]]:
    """NNN_k per the definitions: NN_k intersected with RNN_k."""
    n = len(order)
    nn = [set(order[i][:k]) for i in range(n)]
    rnn = [set(j for j in range(n) if i in nn[j]) for i in range(n)]
    return [nn[i] & rnn[i] for i in range(n)]


def brute_exact_nnn(dm) -> tuple[int, list[set[int]]]:
    """Scan r = 1..n-1 for the least r with every mutual set nonempty."""
    order = neighbor_order_rows(dm)
    n = len(order)
    for r in range(1, n):
        sets = mutual_sets_at_k(order, r)
        if all(sets[i] for i in range(n)):
            return r, sets
    return n - 1, mutual_sets_at_k(order, n - 1)


def brute_log_nnn(dm) -> tuple[int, list[set[int]]]:
    """Literal replay of the round loop with the log-threshold stop rule."""
    order = neighbor_order_rows(dm)
    n = len(order)
    t = 0
    prev_empty = set(range(n))
    for r in range(1, n):
        sets = mutual_sets_at_k(order, r)
        empty = {i for i in range(n) if not sets[i]}
        if empty == prev_empty:
            t += 1
        prev_empty = empty
        if not empty or t >= math.log(r) + math.log(n):
            return r, sets
    return n - 1, mutual_sets_at_k(order, n - 1)


def naive_rho_cutoff(dm, d_c: float) -> list[float]:
    n = len(dm)
    return [
        float(sum(1 for j in range(n) if j != i and dm[i][j] < d_c)) for i in range(n)
    ]


def naive_rho_gaussian(dm, d_c: float) -> list[float]:
    n = len(dm)
    return [
        sum(math.exp(-((dm[i][j] / d_c) ** 2)) for j in range(n) if j != i)
        for i in range(n)
    ]


def naive_rho_nnn(dm, nnn_sets) -> list[float]:
    """Adaptive-kernel density straight from the definition of sigma."""
    out = []
    for i, members in enumerate(nnn_sets):
        members = sorted(int(m) for m in members)
        if not members:
            out.append(0.0)
            continue
        sigma = max(dm[i][j] for j in members)
        if sigma == 0.0:
            out.append(float(len(members)))
        else:
            out.append(sum(math.exp(-((dm[i][j] / sigma) ** 2)) for j in members))
    return out


def exhaustive_delta_nhd(dm, rho) -> tuple[list[float], list[int]]:
    """delta/nhd by scanning every strictly-denser point (ties by index)."""
    n = len(dm)
    delta = [0.0] * n
    nhd = [-1] * n
    for i in range(n):
        denser = [j for j in range(n) if (rho[j], j) > (rho[i], i)]
        if not denser:
            delta[i] = max(dm[i][j] for j in range(n))
            continue
        best = min(denser, key=lambda j: (dm[i][j], j))
        delta[i] = dm[i][best]
        nhd[i] = best
    return delta, nhd


def pair_counts(true_labels, pred_labels) -> tuple[int, int, int, int]:
    """Classify every point pair: (same-same, same-diff, diff-same, diff-diff)."""
    n = len(true_labels)
    a = b = c = d = 0
    for i in range(n):
        for j in range(i + 1, n):
            st = true_labels[i] == true_labels[j]
            sp = pred_labels[i] == pred_labels[j]
            if st and sp:
                a += 1
            elif st:
                b += 1
            elif sp:
                c += 1
            else:
                d += 1
    return a, b, c, d


def pair_ari(true_labels, pred_labels) -> float:
    a, b, c, d = pair_counts(true_labels, pred_labels)
    num = 2 * (a * d - b * c)
    den = (a + b) * (b + d) + (a + c) * (c + d)
    if den == 0:
        return 1.0 if b == c == 0 else 0.0
    return num / den


def pair_fmi(true_labels, pred_labels) -> float:
    a, b, c, _ = pair_counts(true_labels, pred_labels)
    if a + b == 0 or a + c == 0:
        return 0.0
    return a / math.sqrt((a + b) * (a + c))


def direct_ami(true_labels, pred_labels) -> float:
    """AMI from first principles with exact hypergeometric probabilities."""
    true_labels = list(true_labels)
    pred_labels = list(pred_labels)
    n = len(true_labels)
    rows = sorted(set(true_labels))
    cols = sorted(set(pred_labels))
    nij = {
        (u, v): sum(
            1 for t, p in zip(true_labels, pred_labels) if t == u and p == v
        )
        for u in rows
        for v in cols
    }
    a = {u: sum(nij[(u, v)] for v in cols) for u in rows}
    b = {v: sum(nij[(u, v)] for u in rows) for v in cols}

    def entropy(marg):
        return -sum(
            (m / n) * math.log(m / n) for m in marg.values() if m > 0
        )

    h_true, h_pred = entropy(a), entropy(b)
    mi = sum(
        (nij[(u, v)] / n) * math.log(nij[(u, v)] * n / (a[u] * b[v]))
        for u in rows
        for v in cols
        if nij[(u, v)] > 0
    )
    emi = 0.0
    for u in rows:
        for v in cols:
            ai, bj = a[u], b[v]
            for m in range(max(1, ai + bj - n), min(ai, bj) + 1):
                prob = Fraction(
                    math.comb(bj, m) * math.comb(n - bj, ai - m), math.comb(n, ai)
                )
                emi += float(prob) * (m / n) * math.log(n * m / (ai * bj))
    denom = max(h_true, h_pred) - emi
    if abs(denom) < 1e-15:
        same = _same_partition(true_labels, pred_labels)
        return 1.0 if same else 0.0
    return (mi - emi) / denom


def _same_partition(x, y) -> bool:
    groups_x: dict = {}
    groups_y: dict = {}
    for i, (u, v) in enumerate(zip(x, y)):
        groups_x.setdefault(u, set()).add(i)
        groups_y.setdefault(v, set()).add(i)
    return set(map(frozenset, groups_x.values())) == set(
        map(frozenset, groups_y.values())
    )


def reachability_clusters(nnn_sets, rho, cens) -> np.ndarray:
    """Expected partition under certain infection: BFS from each seed in
    descending-density order over the directed enqueue relation x -> NNN(x)."""
    n = len(nnn_sets)
    labels = np.full(n, -1, dtype=np.int64)
    remaining = list(cens)
    cluster = 0
    while remaining:
        viable = [c for c in remaining if labels[c] == -1]
        if not viable:
            break
        zero = max(viable, key=lambda c: (rho[c], c))
        frontier = [zero]
        labels[zero] = cluster
        while frontier:
            x = frontier.pop(0)
            for yy in nnn_sets[x]:
                yy = int(yy)
                if labels[yy] == -1:
                    labels[yy] = cluster
                    frontier.append(yy)
        remaining = [c for c in viable if labels[c] == -1]
        cluster += 1
    return labels
