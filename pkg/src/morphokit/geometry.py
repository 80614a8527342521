"""Landmark configurations and their classical and robust standardization.

A configuration is a ``p x k`` matrix whose rows are landmarks. Classical
standardization uses the column means as centroid and the Centroid-mean Size
(CS); the robust variant uses column medians (or trimmed means) and the
Centroid-median Size (MS), the sum of per-column MADs.
"""

from __future__ import annotations

import enum
import math
from dataclasses import dataclass, field
from typing import Union

import numpy as np
from numpy.typing import ArrayLike, NDArray

from .errors import DegenerateSize, InvalidConfiguration

#: Consistency constant of the MAD; fixed at the literal four-digit value.
MAD_CONSTANT = 1.4826


@dataclass(frozen=True, eq=False)
class Configuration:
    """An identified ``p x k`` landmark matrix (p >= 3, k in {2, 3})."""

    id: str
    coords: NDArray[np.float64] = field(repr=False)

    def __post_init__(self) -> None:
        arr = np.array(self.coords, dtype=float, copy=True)
        if arr.ndim != 2:
            raise InvalidConfiguration(f"{self.id!r}: coordinates must be a 2-D matrix")
        p, k = arr.shape
        if p < 3:
            raise InvalidConfiguration(f"{self.id!r}: need at least 3 landmarks, got {p}")
        if k not in (2, 3):
            raise InvalidConfiguration(f"{self.id!r}: k must be 2 or 3, got {k}")
        if not np.all(np.isfinite(arr)):
            raise InvalidConfiguration(f"{self.id!r}: non-finite coordinate")
        arr.setflags(write=False)
        object.__setattr__(self, "coords", arr)

    @property
    def p(self) -> int:
        return self.coords.shape[0]

    @property
    def k(self) -> int:
        return self.coords.shape[1]

    @property
    def shape(self) -> tuple[int, int]:
        return self.coords.shape

    def with_coords(self, coords: ArrayLike) -> "Configuration":
        return Configuration(self.id, coords)

    def __eq__(self, other: object) -> bool:
        if not isinstance(other, Configuration):
            return NotImplemented
        return self.id == other.id and np.array_equal(self.coords, other.coords)

    def __hash__(self) -> int:
        return hash((self.id, self.coords.tobytes()))

    def __repr__(self) -> str:
        return f"Configuration(id={self.id!r}, p={self.p}, k={self.k})"


ConfigLike = Union[Configuration, ArrayLike]


def as_configuration(M: ConfigLike, id: str = "") -> Configuration:
    if isinstance(M, Configuration):
        return M
    return Configuration(id, M)


class CentroidKind(enum.Enum):
    MEAN = "mean"
    MEDIAN = "median"
    TRIMMED_MEAN = "trim"


@dataclass(frozen=True)
class CentroidSpec:
    """Location estimator applied column-wise (centroids) or entry-wise (consensus)."""

    kind: CentroidKind = CentroidKind.MEAN
    alpha: float = 0.0

    def __post_init__(self) -> None:
        if self.kind is CentroidKind.TRIMMED_MEAN:
            if not 0.0 <= self.alpha < 0.5:
                raise ValueError(f"trim fraction must lie in [0, 0.5), got {self.alpha}")
        elif self.alpha != 0.0:
            raise ValueError("alpha only applies to TRIMMED_MEAN")

    @classmethod
    def mean(cls) -> "CentroidSpec":
        return cls(CentroidKind.MEAN)

    @classmethod
    def median(cls) -> "CentroidSpec":
        return cls(CentroidKind.MEDIAN)

    @classmethod
    def trimmed(cls, alpha: float) -> "CentroidSpec":
        return cls(CentroidKind.TRIMMED_MEAN, float(alpha))

    @classmethod
    def parse(cls, text: str) -> "CentroidSpec":
        """Parse ``mean``, ``median`` or ``trim:<alpha>``."""
        text = text.strip().lower()
        if text == "mean":
            return cls.mean()
        if text == "median":
            return cls.median()
        if text.startswith("trim:"):
            try:
                alpha = float(text[5:])
            except ValueError:
                raise ValueError(f"bad trim fraction in {text!r}") from None
            return cls.trimmed(alpha)
        raise ValueError(f"unknown centroid spec {text!r}")

    def __str__(self) -> str:
        if self.kind is CentroidKind.TRIMMED_MEAN:
            return f"trim:{self.alpha:g}"
        return self.kind.value


class SizeSpec(enum.Enum):
    CENTROID_MEAN = "cs"
    CENTROID_MEDIAN = "ms"

    @classmethod
    def parse(cls, text: str) -> "SizeSpec":
        try:
            return cls(text.strip().lower())
        except ValueError:
            raise ValueError(f"unknown size spec {text!r} (expected cs or ms)") from None


@dataclass(frozen=True)
class Centroid:
    values: NDArray[np.float64]
    spec: CentroidSpec


def trim_count(n: int, alpha: float) -> int:
    """Number of order statistics removed from each tail."""
    return int(math.floor(alpha * n))


def location(values: ArrayLike, spec: CentroidSpec, axis: int = 0) -> NDArray[np.float64]:
    """Mean, median or trimmed mean of ``values`` along ``axis``."""
    x = np.asarray(values, dtype=float)
    if x.size == 0 or x.shape[axis] == 0:
        raise InvalidConfiguration("cannot locate an empty sample")
    if not np.all(np.isfinite(x)):
        raise InvalidConfiguration("non-finite values")
    if spec.kind is CentroidKind.MEAN:
        return x.mean(axis=axis)
    if spec.kind is CentroidKind.MEDIAN:
        return np.median(x, axis=axis)
    n = x.shape[axis]
    cut = trim_count(n, spec.alpha)
    kept = np.take(np.sort(x, axis=axis), np.arange(cut, n - cut), axis=axis)
    return kept.mean(axis=axis)


def _coords(M: ConfigLike) -> NDArray[np.float64]:
    return as_configuration(M).coords


def centroid(M: ConfigLike, spec: CentroidSpec | None = None) -> Centroid:
    spec = spec or CentroidSpec.mean()
    return Centroid(location(_coords(M), spec, axis=0), spec)


def centroid_mean_size(M: ConfigLike) -> float:
    """Root of the summed squared distances of the landmarks to the mean centroid."""
    X = _coords(M)
    return float(np.sqrt(((X - X.mean(axis=0)) ** 2).sum()))


def mad(x: ArrayLike) -> float:
    """Median absolute deviation about the median, scaled by 1.4826."""
    x = np.asarray(x, dtype=float).ravel()
    if x.size == 0:
        raise ValueError("mad of an empty vector")
    if not np.all(np.isfinite(x)):
        raise ValueError("mad of non-finite values")
    return float(MAD_CONSTANT * np.median(np.abs(x - np.median(x))))


def centroid_median_size(M: ConfigLike) -> float:
    """Sum of the column MADs (the Centroid-median Size)."""
    X = _coords(M)
    return float(sum(mad(X[:, j]) for j in range(X.shape[1])))


def size(M: ConfigLike, spec: SizeSpec = SizeSpec.CENTROID_MEAN) -> float:
    if spec is SizeSpec.CENTROID_MEAN:
        return centroid_mean_size(M)
    return centroid_median_size(M)


def center(M: ConfigLike, spec: CentroidSpec | None = None) -> Configuration:
    conf = as_configuration(M)
    c = centroid(conf, spec).values
    return conf.with_coords(conf.coords - c)


def standardize(
    M: ConfigLike,
    c: CentroidSpec | None = None,
    s: SizeSpec = SizeSpec.CENTROID_MEAN,
) -> Configuration:
    """Scale to unit size under ``s``, then move the ``c`` centroid to the origin.

    Raises:
        DegenerateSize: the configuration has zero size under ``s``.
    """
    conf = as_configuration(M)
    sz = size(conf, s)
    if not sz > 0.0:
        raise DegenerateSize(f"{conf.id!r}: size under {s.name} is zero")
    return center(conf.with_coords(conf.coords / sz), c)
