"""Mahalanobis + Kolmogorov-Smirnov check of the normal-error assumption."""

from __future__ import annotations

import math
from dataclasses import dataclass

import numpy as np
from numpy.typing import ArrayLike, NDArray
from scipy import stats

from ..errors import ShapeMismatch, SingularCovariance
from ..geometry import ConfigLike, as_configuration

EXACT_KS_MAX_N = 100


@dataclass(frozen=True)
class NormalityDiagnostic:
    mahalanobis_distances: NDArray[np.float64]
    ks_statistic_D: float
    ks_pvalue: float
    reference_df: int

    def to_dict(self) -> dict:
        return {
            "mahalanobis_distances": self.mahalanobis_distances.tolist(),
            "ks_statistic_D": self.ks_statistic_D,
            "ks_pvalue": self.ks_pvalue,
            "reference_df": self.reference_df,
        }


def mahalanobis_sq(D: ArrayLike) -> NDArray[np.float64]:
    """Squared Mahalanobis distance of each row from the column means (sample covariance)."""
    D = np.asarray(D, dtype=float)
    centered = D - D.mean(axis=0)
    S = np.cov(D, rowvar=False, ddof=1)
    S = np.atleast_2d(S)
    if np.linalg.matrix_rank(S) < S.shape[0]:
        raise SingularCovariance("sample covariance of the differences is singular")
    return np.einsum("ij,ij->i", centered, np.linalg.solve(S, centered.T).T)


def ks_statistic(x: ArrayLike, cdf) -> float:
    """Two-sided one-sample Kolmogorov-Smirnov statistic."""
    u = np.sort(cdf(np.asarray(x, dtype=float)))
    n = u.size
    i = np.arange(1, n + 1)
    return float(max(np.max(i / n - u), np.max(u - (i - 1) / n)))


def _ks_cdf_exact(n: int, d: float) -> float:
    # Marsaglia, Tsang & Wang (2003): P(D_n < d) = n!/n^n * (H^n)_{kk}
    k = int(n * d) + 1
    m = 2 * k - 1
    h = k - n * d
    H = np.zeros((m, m))
    for i in range(m):
        for j in range(m):
            if i - j + 1 >= 0:
                H[i, j] = 1.0
    for i in range(m):
        H[i, 0] -= h ** (i + 1)
        H[m - 1, i] -= h ** (m - i)
    if 2 * h - 1 > 0:
        H[m - 1, 0] += (2 * h - 1) ** m
    for i in range(m):
        for j in range(m):
            if i - j + 1 > 0:
                H[i, j] *= math.exp(-math.lgamma(i - j + 2))

    # repeated squaring with log-scale bookkeeping
    result = np.eye(m)
    log_scale = 0.0
    base = H.copy()
    base_log = 0.0
    e = n
    while e:
        if e & 1:
            result = result @ base
            log_scale += base_log
            peak = np.abs(result).max()
            if peak > 0:
                result /= peak
                log_scale += math.log(peak)
        e >>= 1
        if e:
            base = base @ base
            base_log *= 2
            peak = np.abs(base).max()
            if peak > 0:
                base /= peak
                base_log += math.log(peak)
    val = result[k - 1, k - 1]
    if val <= 0:
        return 0.0
    return math.exp(math.log(val) + log_scale + math.lgamma(n + 1) - n * math.log(n))


def _kolmogorov_sf(x: float) -> float:
    if x <= 0:
        return 1.0
    total = 0.0
    for j in range(1, 101):
        term = math.exp(-2.0 * j * j * x * x)
        total += term if j % 2 else -term
        if term < 1e-17:
            break
    return min(1.0, max(0.0, 2.0 * total))


def ks_pvalue(d: float, n: int) -> float:
    """Two-sided p-value: exact for ``n <= 100``, Kolmogorov limit above."""
    if d <= 0:
        return 1.0
    if d >= 1:
        return 0.0
    if n <= EXACT_KS_MAX_N:
        return min(1.0, max(0.0, 1.0 - _ks_cdf_exact(n, d)))
    return _kolmogorov_sf(math.sqrt(n) * d)


def mahalanobis_ks_diagnostic(X1: ConfigLike, X2: ConfigLike, df: int | None = None) -> NormalityDiagnostic:
    """KS comparison of the difference rows' Mahalanobis distances with ``chi2_df``.

    ``df`` defaults to the number of landmarks p.
    """
    A = as_configuration(X1).coords
    B = as_configuration(X2).coords
    if A.shape != B.shape:
        raise ShapeMismatch(f"configuration shapes differ: {A.shape} vs {B.shape}")
    D = B - A
    p, k = D.shape
    if p <= k:
        raise ValueError("need more landmarks than coordinates for a covariance")
    df = p if df is None else int(df)
    dist = mahalanobis_sq(D)
    stat = ks_statistic(dist, stats.chi2(df).cdf)
    return NormalityDiagnostic(
        mahalanobis_distances=dist,
        ks_statistic_D=stat,
        ks_pvalue=ks_pvalue(stat, p),
        reference_df=df,
    )
