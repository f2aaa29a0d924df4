"""Density-peak clustering with adaptive mutual-neighborhood density,
probabilistic label propagation, classic baselines, and evaluation tools."""

from .baselines import (
    DbscanParams,
    DpcParams,
    KmeansParams,
    dbscan_cluster,
    dpc_cluster,
    kmeans_cluster,
)
from .centers import CenterSelection, select_candidates, select_centers
from .dataset import (
    Dataset,
    DatasetError,
    load_csv,
    min_max_normalize,
    pairwise_distances,
    save_csv,
)
from .density import (
    DensityProfile,
    delta_and_nhd,
    gamma_theta,
    kernel_profile,
    nnn_profile,
    rho_cutoff,
    rho_gaussian,
    rho_nnn,
)
from .metrics import ami, ari, contingency_table, fmi, score_triple
from .neighborhood import (
    NeighborhoodIndex,
    build_neighbor_order,
    is_outlier,
    nnn_search,
)
from .propagation import (
    NOISE,
    ClusterAssignment,
    PropagationConfig,
    final_assign,
    infection_probability,
    propagate,
    run_ensemble,
)
from .synth import synth_generate

__version__ = "0.1.0"

__all__ = [
    "Dataset",
    "DatasetError",
    "load_csv",
    "save_csv",
    "min_max_normalize",
    "pairwise_distances",
    "NeighborhoodIndex",
    "build_neighbor_order",
    "nnn_search",
    "is_outlier",
    "DensityProfile",
    "rho_nnn",
    "rho_cutoff",
    "rho_gaussian",
    "delta_and_nhd",
    "gamma_theta",
    "nnn_profile",
    "kernel_profile",
    "CenterSelection",
    "select_candidates",
    "select_centers",
    "NOISE",
    "ClusterAssignment",
    "PropagationConfig",
    "propagate",
    "final_assign",
    "infection_probability",
    "run_ensemble",
    "DpcParams",
    "KmeansParams",
    "DbscanParams",
    "dpc_cluster",
    "kmeans_cluster",
    "dbscan_cluster",
    "ari",
    "ami",
    "fmi",
    "contingency_table",
    "score_triple",
    "synth_generate",
    "__version__",
]
