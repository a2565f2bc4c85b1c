"""Ultrametricity and clusterability analysis via min-max matrix powers.

Core pipeline: a dissimilarity matrix is raised to successive min-max
powers until it stabilizes; the fixpoint is the subdominant ultrametric,
the stabilization power m yields the clusterability score n/m, and the
stabilized matrix supports spheric clusterings and histogram-based
cluster-count estimates.
"""

from .clustering import (
    Clustering,
    DistanceHistogram,
    closed_sphere,
    distance_histogram,
    estimate_num_clusters,
    is_perfect_clustering,
    radii_from_valleys,
    spheric_clustering,
)
from .data import (
    LatticeConfig,
    example1_matrix,
    lattice_generate,
    load_matrix_csv,
    load_points_csv,
    pairwise_matrix,
    save_matrix_csv,
    save_points_csv,
)
from .errors import NotUltrametricError, ValidationError
from .semiring import (
    StabilizationResult,
    identity,
    matrix_leq,
    minmax_product,
    power,
    stabilize,
    validate_dissimilarity,
)
from .ultrametric import (
    clusterability,
    is_ultrametric,
    minimax_oracle,
    subdominant,
    sup_ultrametrics,
    ultrametricity,
)

__version__ = "0.1.0"

__all__ = [
    "Clustering",
    "DistanceHistogram",
    "LatticeConfig",
    "NotUltrametricError",
    "StabilizationResult",
    "ValidationError",
    "closed_sphere",
    "clusterability",
    "distance_histogram",
    "estimate_num_clusters",
    "example1_matrix",
    "identity",
    "is_perfect_clustering",
    "is_ultrametric",
    "lattice_generate",
    "load_matrix_csv",
    "load_points_csv",
    "matrix_leq",
    "minimax_oracle",
    "minmax_product",
    "pairwise_matrix",
    "power",
    "radii_from_valleys",
    "save_matrix_csv",
    "save_points_csv",
    "spheric_clustering",
    "stabilize",
    "subdominant",
    "sup_ultrametrics",
    "ultrametricity",
    "validate_dissimilarity",
]
