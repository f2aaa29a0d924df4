"""Command-line interface: bench, cluster, plot, synth, fetch-datasets."""

from __future__ import annotations

import argparse
import json
import sys
from dataclasses import replace
from pathlib import Path

import numpy as np

from . import baselines, bench, centers, neighborhood
from .dataset import DatasetError, load_csv, pairwise_distances, save_csv
from .metrics import score_triple
from .plotting import emit_scatter
from .propagation import ClusterAssignment, PropagationConfig, run_ensemble
from .registry import RegistryError, fetch_entry, get_entry, load_registry
from .synth import GENERATORS, synth_generate

EXIT_OK = 0
EXIT_CONFIG = 1
EXIT_DATASET = 2
EXIT_INTERNAL = 3

SPREAD_MODES = {"std": centers.STD_DEV, "var": centers.VARIANCE}
NNN_MODES = {"exact": neighborhood.EXACT, "log": neighborhood.LOGARITHMIC}


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(
        prog="peakprop",
        description="Density-peak clustering with neighborhood propagation, "
        "baselines, and a benchmark harness",
    )
    sub = parser.add_subparsers(dest="command", required=True)

    p_bench = sub.add_parser("bench", help="run the benchmark grid and write reports")
    p_bench.add_argument("--config", help="JSON RunSpec file (flags override it)")
    p_bench.add_argument("--dataset", action="append", dest="datasets", default=None)
    p_bench.add_argument("--algo", action="append", dest="algorithms", default=None,
                         choices=list(bench.ALGORITHMS))
    p_bench.add_argument("--seed", type=int, default=None)
    p_bench.add_argument("--runs", type=int, default=None)
    p_bench.add_argument("--jobs", type=int, default=None)
    p_bench.add_argument("--out", default=None)
    _common_mode_flags(p_bench)

    p_cluster = sub.add_parser("cluster", help="run one algorithm on one dataset")
    p_cluster.add_argument("--dataset", required=True)
    p_cluster.add_argument("--algo", required=True, choices=list(bench.ALGORITHMS))
    p_cluster.add_argument("--seed", type=int, default=0)
    p_cluster.add_argument("--runs", type=int, default=1)
    p_cluster.add_argument("--c", type=float, default=0.6)
    p_cluster.add_argument("--boost-factor", type=float, default=1.5)
    p_cluster.add_argument("--k", type=int, default=None)
    p_cluster.add_argument("--eps", type=float, default=None)
    p_cluster.add_argument("--min-pts", type=int, default=4)
    p_cluster.add_argument("--d-c-percentile", type=float, default=1.5)
    p_cluster.add_argument("--kernel", default="gaussian", choices=["gaussian", "cutoff"])
    p_cluster.add_argument("--out", default="cluster_out")
    _common_mode_flags(p_cluster)

    p_plot = sub.add_parser("plot", help="render a labels CSV as an SVG scatter")
    p_plot.add_argument("--dataset", required=True)
    p_plot.add_argument("--labels", required=True, help="CSV of index,label rows")
    p_plot.add_argument("--out", required=True)
    p_plot.add_argument("--registry", default=None)

    p_synth = sub.add_parser("synth", help="generate a synthetic dataset CSV")
    p_synth.add_argument("--kind", required=True, choices=sorted(GENERATORS))
    p_synth.add_argument("--seed", type=int, default=0)
    p_synth.add_argument("--out", required=True)
    p_synth.add_argument(
        "--param", action="append", default=[], metavar="KEY=VALUE",
        help="generator parameter override (repeatable)",
    )

    p_fetch = sub.add_parser("fetch-datasets", help="download manifest datasets")
    p_fetch.add_argument("--registry", default=None)
    p_fetch.add_argument("--dest", default="data")
    p_fetch.add_argument("--dataset", action="append", dest="datasets", default=None)

    return parser


def _common_mode_flags(p: argparse.ArgumentParser) -> None:
    # Defaults stay None so a --config file's values aren't clobbered.
    p.add_argument("--spread-mode", choices=list(SPREAD_MODES), default=None)
    p.add_argument("--nnn-mode", choices=list(NNN_MODES), default=None)
    p.add_argument("--normalize", choices=["auto", "always", "never"], default=None)
    p.add_argument("--registry", default=None)


def main(argv=None) -> int:
    args = build_parser().parse_args(argv)
    try:
        if args.command == "bench":
            return _cmd_bench(args)
        if args.command == "cluster":
            return _cmd_cluster(args)
        if args.command == "plot":
            return _cmd_plot(args)
        if args.command == "synth":
            return _cmd_synth(args)
        if args.command == "fetch-datasets":
            return _cmd_fetch(args)
        raise AssertionError(args.command)
    except (RegistryError, DatasetError, FileNotFoundError) as exc:
        print(f"dataset error: {exc}", file=sys.stderr)
        return EXIT_DATASET
    except (ValueError, KeyError) as exc:
        print(f"config error: {exc}", file=sys.stderr)
        return EXIT_CONFIG
    except Exception as exc:  # pragma: no cover - defensive
        print(f"internal error: {exc}", file=sys.stderr)
        return EXIT_INTERNAL


def _cmd_bench(args) -> int:
    if args.config:
        raw = json.loads(Path(args.config).read_text())
        spec = bench.RunSpec.from_json_dict(raw)
    else:
        if not args.datasets:
            raise ValueError("bench needs --dataset (or a --config file)")
        spec = bench.RunSpec(datasets=args.datasets)
    overrides = {
        "datasets": args.datasets,
        "algorithms": args.algorithms,
        "seed": args.seed,
        "runs": args.runs,
        "jobs": args.jobs,
        "out_dir": args.out,
        "registry_path": args.registry,
        "spread_mode": SPREAD_MODES.get(args.spread_mode),
        "nnn_mode": NNN_MODES.get(args.nnn_mode),
        "normalize": args.normalize,
    }
    for key, value in overrides.items():
        if value is not None:
            spec = replace(spec, **{key: value})
    report = bench.run_benchmark(spec)
    print(bench.format_table(report))
    print(f"report written to {Path(spec.out_dir) / 'report.json'}")
    return EXIT_OK


def _load_dataset_arg(name_or_path: str, registry_path, normalize: str):
    """A --dataset value is a registry name or a CSV path."""
    registry = load_registry(registry_path)
    if name_or_path in registry:
        entry = get_entry(registry, name_or_path)
        ds = bench.apply_normalization(entry.resolve(), entry, normalize)
        return ds, entry
    path = Path(name_or_path)
    if not path.exists():
        raise RegistryError(f"{name_or_path!r} is neither a registry name nor a file")
    ds = load_csv(path, name=path.stem)
    if normalize == "always":
        from .dataset import min_max_normalize

        ds = min_max_normalize(ds)
    return ds, None


def _cmd_cluster(args) -> int:
    ds, entry = _load_dataset_arg(args.dataset, args.registry, args.normalize or "auto")
    out = Path(args.out)
    out.mkdir(parents=True, exist_ok=True)
    dm = pairwise_distances(ds)

    if args.algo == "dpc-ppnnn":
        pipeline = bench.build_ppnnn_pipeline(
            dm,
            NNN_MODES[args.nnn_mode or "exact"],
            SPREAD_MODES[args.spread_mode or "std"],
        )
        cfg = PropagationConfig(
            c=args.c, boost_factor=args.boost_factor, seed=args.seed, runs=args.runs
        )
        asg, run_summaries = run_ensemble(
            pipeline.idx, pipeline.profile, pipeline.selection, cfg,
            gold_labels=ds.gold_labels,
        )
        extra = {"lambda": pipeline.idx.lam, "runs": run_summaries,
                 "centers": pipeline.selection.centers}
    elif args.algo == "dpc":
        k = args.k or (entry.clusters if entry else None)
        if k is None:
            raise ValueError("dpc needs --k (or a registry dataset with clusters)")
        asg = baselines.dpc_cluster(
            dm, baselines.DpcParams(d_c_percentile=args.d_c_percentile,
                                    k=k, kernel=args.kernel)
        )
        extra = {}
    elif args.algo == "kmeans":
        k = args.k or (entry.clusters if entry else None)
        if k is None:
            raise ValueError("kmeans needs --k (or a registry dataset with clusters)")
        asg = baselines.kmeans_cluster(ds, baselines.KmeansParams(k=k, seed=args.seed))
        extra = {}
    else:  # dbscan
        if args.eps is None:
            raise ValueError("dbscan needs --eps")
        asg = baselines.dbscan_cluster(
            dm, baselines.DbscanParams(eps=args.eps, min_pts=args.min_pts)
        )
        extra = {}

    label_path = out / "labels.csv"
    bench._write_labels(label_path, asg.labels)
    summary = {
        "dataset": ds.name,
        "algorithm": args.algo,
        "seed": args.seed,
        "clusters": asg.n_clusters,
        "noise": asg.noise_count,
        "centers_used": list(asg.centers_used),
        **extra,
    }
    if ds.gold_labels is not None:
        summary["scores"] = score_triple(ds.gold_labels, asg.labels)
    (out / "summary.json").write_text(json.dumps(summary, indent=2, sort_keys=True) + "\n")
    emit_scatter(ds, asg, out / "plot.svg", title=f"{args.algo} on {ds.name}")
    print(json.dumps(summary.get("scores", {"clusters": asg.n_clusters}), sort_keys=True))
    print(f"labels, summary, and plot written under {out}")
    return EXIT_OK


def _cmd_plot(args) -> int:
    ds, _ = _load_dataset_arg(args.dataset, args.registry, "never")
    rows = Path(args.labels).read_text().strip().splitlines()
    if rows and rows[0].lower().startswith("index"):
        rows = rows[1:]
    labels = np.full(ds.n, -1, dtype=np.int64)
    for row in rows:
        idx_s, lab_s = row.split(",")
        labels[int(idx_s)] = int(lab_s)
    emit_scatter(ds, ClusterAssignment(labels=labels), args.out, title=ds.name)
    print(f"wrote {args.out}")
    return EXIT_OK


def _cmd_synth(args) -> int:
    params = {}
    for item in args.param:
        key, _, value = item.partition("=")
        if not _:
            raise ValueError(f"bad --param {item!r}, expected KEY=VALUE")
        try:
            params[key] = json.loads(value)
        except json.JSONDecodeError:
            params[key] = value
    ds = synth_generate(args.kind, seed=args.seed, **params)
    out = Path(args.out)
    out.parent.mkdir(parents=True, exist_ok=True)
    save_csv(ds, out)
    print(f"wrote {ds.n}x{ds.d} points ({args.kind}) to {out}")
    return EXIT_OK


def _cmd_fetch(args) -> int:
    registry = load_registry(args.registry)
    names = args.datasets or sorted(registry)
    fetched = skipped = 0
    for name in names:
        entry = get_entry(registry, name)
        if entry.url is None:
            skipped += 1
            continue
        dest = fetch_entry(entry, args.dest)
        print(f"fetched {name} -> {dest}")
        fetched += 1
    print(f"{fetched} fetched, {skipped} without URLs (generator-backed or local)")
    return EXIT_OK


if __name__ == "__main__":
    sys.exit(main())
