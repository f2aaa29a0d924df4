"""Cluster scatter plots rendered with matplotlib and saved as standalone SVG."""

from __future__ import annotations

from pathlib import Path

import matplotlib

matplotlib.use("Agg")

import matplotlib.pyplot as plt

from .dataset import Dataset
from .propagation import NOISE, ClusterAssignment

# One fill per cluster, cycled; red is reserved for center markers and gray
# for noise, so neither appears in the cluster palette.
CLUSTER_PALETTE = [
    "#1f77b4", "#2ca02c", "#9467bd", "#8c564b", "#e377c2",
    "#ff7f0e", "#bcbd22", "#17becf", "#aec7e8", "#98df8a",
    "#c5b0d5", "#c49c94", "#f7b6d2", "#dbdb8d", "#9edae5",
    "#393b79", "#637939", "#8c6d31", "#7b4173", "#5254a3",
]
NOISE_COLOR = "#999999"
CENTER_COLOR = "#ff0000"


def emit_scatter(ds: Dataset, asg: ClusterAssignment, out_path, title: str | None = None):
    """Write an SVG scatter: one color per cluster, noise gray, centers red.

    Datasets with more than two features are plotted on their first two,
    with a note in the title.
    """
    out_path = Path(out_path)
    out_path.parent.mkdir(parents=True, exist_ok=True)
    xy = ds.points[:, :2]
    note = "" if ds.d == 2 else f" (first 2 of {ds.d} features)"

    fig, ax = plt.subplots(figsize=(5, 5))
    labels = asg.labels
    cluster_ids = sorted(set(int(v) for v in labels) - {NOISE})
    for pos, cid in enumerate(cluster_ids):
        mask = labels == cid
        ax.scatter(
            xy[mask, 0],
            xy[mask, 1],
            s=12,
            color=CLUSTER_PALETTE[pos % len(CLUSTER_PALETTE)],
            edgecolors="none",
        )
    noise_mask = labels == NOISE
    if noise_mask.any():
        ax.scatter(
            xy[noise_mask, 0], xy[noise_mask, 1], s=12, color=NOISE_COLOR, edgecolors="none"
        )
    if asg.centers_used:
        centers = [c for c in asg.centers_used if 0 <= c < ds.n]
        ax.scatter(
            xy[centers, 0],
            xy[centers, 1],
            s=60,
            color=CENTER_COLOR,
            marker="*",
            edgecolors="none",
            zorder=3,
        )
    ax.set_title((title or ds.name) + note)
    ax.set_aspect("equal", adjustable="datalim")
    fig.tight_layout()
    fig.savefig(out_path, format="svg")
    plt.close(fig)
    return out_path
