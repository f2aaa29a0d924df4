"""Benchmark harness: grid x seed sweeps, scoring, reports, plots.

Every grid cell is an independent, fully seeded run; the report keeps the
best cell per (algorithm, dataset) under the stated criterion (max ARI,
ties by AMI, then first in enumeration order). report.json and the per-run
label files are deterministic for a fixed RunSpec; wall-clock timings go to
a separate timings.json so the canonical report stays byte-stable.
"""

from __future__ import annotations

import json
import time
from concurrent.futures import ProcessPoolExecutor
from dataclasses import dataclass, field
from pathlib import Path

import numpy as np

from . import baselines, centers, density, neighborhood
from .dataset import Dataset, min_max_normalize, pairwise_distances
from .metrics import score_triple
from .plotting import emit_scatter
from .propagation import (
    ClusterAssignment,
    PropagationConfig,
    nnn_edge_agreement,
    propagate,
)
from .registry import RegistryEntry, get_entry, load_registry

ALGORITHMS = ("dpc-ppnnn", "dpc", "kmeans", "dbscan")

DEFAULT_GRIDS = {
    "dpc-ppnnn": {
        "c": [0.4, 0.5, 0.6, 0.7, 0.8, 0.9],
        "boost_factor": [1.0, 1.5, 2.0],
    },
    "dpc": {
        "d_c_percentile": [1.0, 1.2, 1.4, 1.6, 1.8, 2.0],
        "kernel": ["gaussian"],
    },
    "dbscan": {
        "eps_quantile": list(np.linspace(0.5, 10.0, 20)),
        "min_pts": [3, 4, 5, 10],
    },
    "kmeans": {"restarts": 20},
}


@dataclass
class RunSpec:
    """Everything needed to reproduce a benchmark invocation."""

    datasets: list[str]
    algorithms: list[str] = field(default_factory=lambda: list(ALGORITHMS))
    seed: int = 0
    runs: int = 10
    spread_mode: str = centers.STD_DEV
    nnn_mode: str = neighborhood.EXACT
    normalize: str = "auto"  # auto | always | never
    out_dir: str = "bench_out"
    jobs: int = 1
    grids: dict = field(default_factory=dict)
    registry_path: str | None = None

    def __post_init__(self):
        if not self.datasets:
            raise ValueError("no datasets selected")
        unknown = [a for a in self.algorithms if a not in ALGORITHMS]
        if unknown:
            raise ValueError(f"unknown algorithms: {unknown}")
        if self.normalize not in ("auto", "always", "never"):
            raise ValueError("normalize must be auto, always, or never")
        if self.runs < 1 or self.jobs < 1:
            raise ValueError("runs and jobs must be >= 1")

    def grid_for(self, algo: str) -> dict:
        merged = dict(DEFAULT_GRIDS[algo])
        merged.update(self.grids.get(algo, {}))
        return merged

    def to_json_dict(self) -> dict:
        return {
            "datasets": list(self.datasets),
            "algorithms": list(self.algorithms),
            "seed": self.seed,
            "runs": self.runs,
            "spread_mode": self.spread_mode,
            "nnn_mode": self.nnn_mode,
            "normalize": self.normalize,
            "jobs": self.jobs,
            "grids": {k: dict(v) for k, v in self.grids.items()},
        }

    @classmethod
    def from_json_dict(cls, raw: dict, out_dir: str = "bench_out") -> "RunSpec":
        return cls(
            datasets=list(raw["datasets"]),
            algorithms=list(raw.get("algorithms", ALGORITHMS)),
            seed=int(raw.get("seed", 0)),
            runs=int(raw.get("runs", 10)),
            spread_mode=raw.get("spread_mode", centers.STD_DEV),
            nnn_mode=raw.get("nnn_mode", neighborhood.EXACT),
            normalize=raw.get("normalize", "auto"),
            out_dir=raw.get("out_dir", out_dir),
            jobs=int(raw.get("jobs", 1)),
            grids=dict(raw.get("grids", {})),
            registry_path=raw.get("registry_path"),
        )


@dataclass
class PpnnnPipeline:
    """Per-dataset precompute shared by every propagation cell."""

    idx: neighborhood.NeighborhoodIndex
    profile: density.DensityProfile
    selection: centers.CenterSelection


def build_ppnnn_pipeline(
    dm, nnn_mode: str, spread_mode: str
) -> PpnnnPipeline:
    order = neighborhood.build_neighbor_order(dm)
    idx = neighborhood.nnn_search(order, mode=nnn_mode)
    profile = density.nnn_profile(dm, idx)
    selection = centers.select_centers(profile, spread_mode=spread_mode)
    return PpnnnPipeline(idx=idx, profile=profile, selection=selection)


def ppnnn_assign(pipeline: PpnnnPipeline, cfg: PropagationConfig) -> ClusterAssignment:
    return propagate(pipeline.idx, pipeline.profile, pipeline.selection, cfg)


def enumerate_cells(
    spec: RunSpec, algo: str, entry: RegistryEntry, dm
) -> list[dict]:
    """Deterministic list of parameter cells for one (algorithm, dataset)."""
    grid = spec.grid_for(algo)
    cells: list[dict] = []
    if algo == "dpc-ppnnn":
        for c in grid["c"]:
            for boost in grid["boost_factor"]:
                for s in range(spec.runs):
                    cells.append(
                        {"c": float(c), "boost_factor": float(boost), "seed": spec.seed + s}
                    )
    elif algo == "dpc":
        k = _require_clusters(entry)
        for pct in grid["d_c_percentile"]:
            for kern in grid["kernel"]:
                cells.append({"d_c_percentile": float(pct), "kernel": kern, "k": k})
    elif algo == "kmeans":
        k = _require_clusters(entry)
        for r in range(int(grid["restarts"])):
            cells.append({"k": k, "seed": spec.seed + r})
    elif algo == "dbscan":
        iu = np.triu_indices(dm.shape[0], k=1)
        pool = dm[iu]
        for q in grid["eps_quantile"]:
            eps = float(np.percentile(pool, q))
            if eps <= 0:
                continue
            for mp in grid["min_pts"]:
                cells.append({"eps": eps, "eps_quantile": float(q), "min_pts": int(mp)})
    return cells


def _require_clusters(entry: RegistryEntry) -> int:
    if entry.clusters is None:
        raise ValueError(f"dataset {entry.name!r} has no cluster count in the registry")
    return int(entry.clusters)


def run_cell(algo: str, cell: dict, ds: Dataset, dm, pipeline) -> ClusterAssignment:
    """Execute one grid cell. Pure function of its arguments."""
    if algo == "dpc-ppnnn":
        cfg = PropagationConfig(
            c=cell["c"], boost_factor=cell["boost_factor"], seed=cell["seed"]
        )
        return ppnnn_assign(pipeline, cfg)
    if algo == "dpc":
        params = baselines.DpcParams(
            d_c_percentile=cell["d_c_percentile"], k=cell["k"], kernel=cell["kernel"]
        )
        return baselines.dpc_cluster(dm, params)
    if algo == "kmeans":
        params = baselines.KmeansParams(k=cell["k"], seed=cell["seed"])
        return baselines.kmeans_cluster(ds, params)
    if algo == "dbscan":
        params = baselines.DbscanParams(eps=cell["eps"], min_pts=cell["min_pts"])
        return baselines.dbscan_cluster(dm, params)
    raise ValueError(f"unknown algorithm {algo!r}")


# Per-dataset shared state for forked workers (set before pool creation).
_FORK_SHARED: dict = {}


def _cell_worker(task):
    algo, cell = task
    return run_cell(
        algo,
        cell,
        _FORK_SHARED.get("ds"),
        _FORK_SHARED.get("dm"),
        _FORK_SHARED.get("pipeline"),
    )


def _run_cells(spec, algo, cells, ds, dm, pipeline) -> list[ClusterAssignment]:
    if spec.jobs <= 1 or len(cells) <= 1:
        return [run_cell(algo, cell, ds, dm, pipeline) for cell in cells]
    global _FORK_SHARED
    _FORK_SHARED = {"ds": ds, "dm": dm, "pipeline": pipeline}
    try:
        with ProcessPoolExecutor(max_workers=spec.jobs) as pool:
            return list(pool.map(_cell_worker, [(algo, c) for c in cells]))
    finally:
        _FORK_SHARED = {}


def apply_normalization(ds: Dataset, entry: RegistryEntry, policy: str) -> Dataset:
    if policy == "always" or (policy == "auto" and entry.normalize):
        return min_max_normalize(ds)
    return ds


def run_benchmark(spec: RunSpec) -> dict:
    """Execute the whole grid, write artifacts, return the report dict."""
    registry = load_registry(spec.registry_path)
    out = Path(spec.out_dir)
    (out / "labels").mkdir(parents=True, exist_ok=True)
    (out / "plots").mkdir(parents=True, exist_ok=True)

    report: dict = {"spec": spec.to_json_dict(), "datasets": {}}
    timings: dict = {}

    for name in spec.datasets:
        entry = get_entry(registry, name)
        ds = apply_normalization(entry.resolve(), entry, spec.normalize)
        dm = pairwise_distances(ds)
        has_gold = ds.gold_labels is not None
        dataset_report: dict = {
            "n": ds.n,
            "d": ds.d,
            "normalized": bool(
                spec.normalize == "always"
                or (spec.normalize == "auto" and entry.normalize)
            ),
            "algorithms": {},
        }
        timings[name] = {}

        pipeline = None
        if "dpc-ppnnn" in spec.algorithms:
            pipeline = build_ppnnn_pipeline(dm, spec.nnn_mode, spec.spread_mode)

        for algo in spec.algorithms:
            started = time.perf_counter()
            cells = enumerate_cells(spec, algo, entry, dm)
            assignments = _run_cells(spec, algo, cells, ds, dm, pipeline)

            runs = []
            best_pos = 0
            best_key: tuple = ()
            for pos, (cell, asg) in enumerate(zip(cells, assignments)):
                row: dict = {"cell": pos, "params": cell, "noise": asg.noise_count,
                             "clusters": asg.n_clusters}
                if has_gold:
                    row.update(score_triple(ds.gold_labels, asg.labels))
                    key = (row["ari"], row["ami"])
                elif algo == "dpc-ppnnn":
                    row["internal_score"] = nnn_edge_agreement(pipeline.idx, asg.labels)
                    key = (row["internal_score"],)
                else:
                    key = (0.0,)
                if not best_key or key > best_key:
                    best_key = key
                    best_pos = pos
                label_file = out / "labels" / f"{name}--{algo}--{pos:03d}.csv"
                _write_labels(label_file, asg.labels)
                runs.append(row)

            best_asg = assignments[best_pos]
            best_row = runs[best_pos]
            dataset_report["algorithms"][algo] = {
                "selection_criterion": "max ARI, ties by AMI"
                if has_gold
                else "internal score",
                "best": best_row,
                "runs": runs,
            }
            emit_scatter(
                ds,
                best_asg,
                out / "plots" / f"{name}--{algo}.svg",
                title=f"{algo} on {name}",
            )
            timings[name][algo] = time.perf_counter() - started

        report["datasets"][name] = dataset_report

    report_path = out / "report.json"
    report_path.write_text(json.dumps(report, indent=2, sort_keys=True) + "\n")
    (out / "timings.json").write_text(json.dumps(timings, indent=2, sort_keys=True) + "\n")
    (out / "table.txt").write_text(format_table(report))
    return report


def _write_labels(path: Path, labels: np.ndarray) -> None:
    lines = ["index,label"]
    lines += [f"{i},{int(v)}" for i, v in enumerate(labels)]
    path.write_text("\n".join(lines) + "\n")


def format_table(report: dict) -> str:
    """Text table in the ARI/AMI/FMI-per-dataset layout of the result tables."""
    lines = []
    for name, dsrep in report["datasets"].items():
        lines.append(f"=== {name} (n={dsrep['n']}, d={dsrep['d']}) ===")
        lines.append(f"{'algorithm':<12} {'ARI':>8} {'AMI':>8} {'FMI':>8}  best parameters")
        for algo, arep in dsrep["algorithms"].items():
            best = arep["best"]
            ari_s = _fmt(best.get("ari"))
            ami_s = _fmt(best.get("ami"))
            fmi_s = _fmt(best.get("fmi"))
            params = " ".join(f"{k}={v}" for k, v in best["params"].items())
            lines.append(f"{algo:<12} {ari_s:>8} {ami_s:>8} {fmi_s:>8}  {params}")
        lines.append("")
    return "\n".join(lines)


def _fmt(v) -> str:
    return f"{v:.4f}" if isinstance(v, float) else "-"
