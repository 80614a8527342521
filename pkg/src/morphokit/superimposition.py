"""Partial Procrustes superimposition, GPA, tangent projection and PCA scores."""

from __future__ import annotations

from dataclasses import dataclass, field
from typing import Sequence

import numpy as np
from numpy.typing import ArrayLike, NDArray

from .errors import DegenerateCrossProduct, ShapeMismatch
from .geometry import (
    CentroidSpec,
    ConfigLike,
    Configuration,
    SizeSpec,
    as_configuration,
    location,
    standardize,
)


@dataclass(frozen=True)
class SuperimpositionResult:
    rotated_source: Configuration
    rotation: NDArray[np.float64]
    residual_distance_sq: float
    full_procrustes_distance: float
    singular_values: NDArray[np.float64]

    @property
    def procrustes_statistic(self) -> float:
        return self.residual_distance_sq


def _pair(X1: ConfigLike, X2: ConfigLike) -> tuple[NDArray[np.float64], NDArray[np.float64]]:
    A = as_configuration(X1).coords
    B = as_configuration(X2).coords
    if A.shape != B.shape:
        raise ShapeMismatch(f"configuration shapes differ: {A.shape} vs {B.shape}")
    return A, B


def _svd_cross(A: NDArray[np.float64], B: NDArray[np.float64]):
    # X2'X1 = U D V'
    U, d, Vt = np.linalg.svd(B.T @ A)
    return U, d, Vt.T


def optimal_rotation(X1: ConfigLike, X2: ConfigLike, proper_only: bool = False) -> NDArray[np.float64]:
    """Orthogonal ``k x k`` matrix minimising ``||X2 - X1 @ R||``.

    With ``X2' X1 = U D V'`` the minimiser is ``V U'``. Reflections are allowed
    unless ``proper_only`` is set, in which case the last column of ``V`` is
    negated whenever ``det(V U') < 0``.
    """
    A, B = _pair(X1, X2)
    U, d, V = _svd_cross(A, B)
    if d[0] <= 0.0:
        raise DegenerateCrossProduct("cross-product matrix X2'X1 is zero")
    R = V @ U.T
    if proper_only and np.linalg.det(R) < 0:
        V = V.copy()
        V[:, -1] = -V[:, -1]
        R = V @ U.T
    return R


def residual_distance_sq(X1: ConfigLike, X2: ConfigLike) -> float:
    A, B = _pair(X1, X2)
    D = B - A
    return float(np.sum(D * D))


def procrustes_statistic(X1: ConfigLike, X2: ConfigLike, proper_only: bool = False) -> float:
    """Squared residual after rotating ``X1`` optimally onto ``X2``."""
    A, B = _pair(X1, X2)
    R = optimal_rotation(A, B, proper_only=proper_only)
    return residual_distance_sq(A @ R, B)


def full_procrustes_distance(M1: ConfigLike, M2: ConfigLike) -> float:
    """``sqrt(1 - (sum of singular values of X2'X1)^2)`` for centred unit-size inputs."""
    A, B = _pair(M1, M2)
    d = np.linalg.svd(B.T @ A, compute_uv=False)
    return float(np.sqrt(max(0.0, 1.0 - float(d.sum()) ** 2)))


def superimpose(X1: ConfigLike, X2: ConfigLike, proper_only: bool = False) -> SuperimpositionResult:
    src = as_configuration(X1, "X1")
    A, B = _pair(src, X2)
    U, d, V = _svd_cross(A, B)
    R = optimal_rotation(A, B, proper_only=proper_only)
    rotated = src.with_coords(A @ R)
    return SuperimpositionResult(
        rotated_source=rotated,
        rotation=R,
        residual_distance_sq=residual_distance_sq(rotated, B),
        full_procrustes_distance=float(np.sqrt(max(0.0, 1.0 - float(d.sum()) ** 2))),
        singular_values=d,
    )


def mean_shape(configs: Sequence[ConfigLike], consensus: CentroidSpec | None = None, id: str = "mean_shape") -> Configuration:
    """Entry-wise mean, median or trimmed mean across ``configs``."""
    consensus = consensus or CentroidSpec.mean()
    arrs = [as_configuration(c).coords for c in configs]
    if len(arrs) < 2:
        raise ValueError("mean shape needs at least two configurations")
    if any(a.shape != arrs[0].shape for a in arrs):
        raise ShapeMismatch("configurations have heterogeneous shapes")
    return Configuration(id, location(np.stack(arrs), consensus, axis=0))


@dataclass(frozen=True)
class GpaOptions:
    centroid: CentroidSpec = field(default_factory=CentroidSpec.mean)
    size: SizeSpec = SizeSpec.CENTROID_MEAN
    consensus: CentroidSpec = field(default_factory=CentroidSpec.mean)
    max_iter: int = 100
    tol: float = 1e-9
    proper_only: bool = False

    def __post_init__(self) -> None:
        if self.max_iter < 1:
            raise ValueError("max_iter must be positive")
        if not self.tol > 0:
            raise ValueError("tol must be positive")


@dataclass(frozen=True)
class GpaResult:
    aligned: list[Configuration]
    mean_shape: Configuration
    tangent: NDArray[np.float64]
    mean_shape_vector: NDArray[np.float64]
    mean_shape_norm: float
    iterations: int
    converged: bool

    @property
    def vectorized(self) -> NDArray[np.float64]:
        return np.stack([vectorize(c) for c in self.aligned])


def vectorize(M: ConfigLike) -> NDArray[np.float64]:
    """Row-major (landmark-major) flattening: x1, y1, x2, y2, ..."""
    return as_configuration(M).coords.reshape(-1).copy()


def gpa(configs: Sequence[ConfigLike], opts: GpaOptions | None = None) -> GpaResult:
    """Generalized Procrustes Analysis.

    Each configuration is standardized once; then the consensus is estimated
    and every configuration rotated onto it, repeating until the consensus
    moves less than ``opts.tol`` (Frobenius) or ``opts.max_iter`` passes ran.
    The reported mean shape is the consensus of the final aligned set.
    """
    opts = opts or GpaOptions()
    confs = [as_configuration(c, f"c{i}") for i, c in enumerate(configs)]
    if len(confs) < 2:
        raise ValueError("GPA needs at least two configurations")
    if any(c.shape != confs[0].shape for c in confs):
        raise ShapeMismatch("configurations have heterogeneous shapes")

    aligned = [standardize(c, opts.centroid, opts.size) for c in confs]
    consensus = mean_shape(aligned, opts.consensus).coords
    converged = False
    iterations = 0
    for iterations in range(1, opts.max_iter + 1):
        # each rotation depends only on its own configuration and the fixed consensus
        aligned = [
            c.with_coords(c.coords @ optimal_rotation(c, consensus, proper_only=opts.proper_only))
            for c in aligned
        ]
        updated = mean_shape(aligned, opts.consensus).coords
        shift = float(np.linalg.norm(updated - consensus))
        consensus = updated
        if shift < opts.tol:
            converged = True
            break

    mean_conf = Configuration("mean_shape", consensus)
    x = vectorize(mean_conf)
    norm = float(np.linalg.norm(x))
    x_m = x / norm
    X = np.stack([vectorize(c) for c in aligned])
    return GpaResult(
        aligned=aligned,
        mean_shape=mean_conf,
        tangent=tangent_project(X, x_m),
        mean_shape_vector=x_m,
        mean_shape_norm=norm,
        iterations=iterations,
        converged=converged,
    )


def tangent_project(aligned: ArrayLike, x_m: ArrayLike) -> NDArray[np.float64]:
    """``X (I - x_m' x_m)`` for a unit-length pole ``x_m``."""
    X = np.atleast_2d(np.asarray(aligned, dtype=float))
    x = np.asarray(x_m, dtype=float).ravel()
    if X.shape[1] != x.size:
        raise ShapeMismatch(f"rows have length {X.shape[1]}, pole has {x.size}")
    if abs(np.linalg.norm(x) - 1.0) > 1e-10:
        raise ValueError("tangent pole must have unit norm")
    return X - np.outer(X @ x, x)


@dataclass(frozen=True)
class PcaScores:
    scores: NDArray[np.float64]
    loadings: NDArray[np.float64]
    explained_variance: NDArray[np.float64]


def pca_scores(Xstar: ArrayLike, q: int) -> PcaScores:
    X = np.asarray(Xstar, dtype=float)
    n, m = X.shape
    if n < 2:
        raise ValueError("PCA needs at least two observations")
    if not 1 <= q <= min(n - 1, m):
        raise ValueError(f"q must lie in [1, {min(n - 1, m)}], got {q}")
    Xc = X - X.mean(axis=0)
    cov = Xc.T @ Xc / (n - 1)
    evals, evecs = np.linalg.eigh(cov)
    order = np.argsort(evals)[::-1]
    evals = np.clip(evals[order], 0.0, None)
    evecs = evecs[:, order]
    # deterministic sign: largest-magnitude loading positive
    for j in range(evecs.shape[1]):
        i = np.argmax(np.abs(evecs[:, j]))
        if evecs[i, j] < 0:
            evecs[:, j] = -evecs[:, j]
    loadings = evecs[:, :q]
    return PcaScores(scores=Xc @ loadings, loadings=loadings, explained_variance=evals[:q])
