"""Classical and robust landmark morphometrics.

Procrustes superimposition and GPA with mean, median or trimmed-mean
centroids and consensus, Centroid-mean and Centroid-median sizes, and
p-values for the Procrustes statistic under normal and contaminated-normal
error models.
"""

__version__ = "0.1.0"

from .geometry import (  # noqa: E402
    CentroidKind,
    CentroidSpec,
    Configuration,
    SizeSpec,
    center,
    centroid,
    centroid_mean_size,
    centroid_median_size,
    mad,
    standardize,
)
from .superimposition import (  # noqa: E402
    GpaOptions,
    GpaResult,
    PcaScores,
    SuperimpositionResult,
    full_procrustes_distance,
    gpa,
    mean_shape,
    optimal_rotation,
    pca_scores,
    procrustes_statistic,
    residual_distance_sq,
    superimpose,
    tangent_project,
)
