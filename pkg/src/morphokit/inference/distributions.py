"""Chi-square tail probabilities and the Procrustes degrees of freedom."""

from __future__ import annotations

from dataclasses import dataclass

from scipy import special

from ..errors import InvalidLandmarkCount


def chisq_sf(x: float, g: int) -> float:
    """``P{chi2_g > x}`` via the regularized upper incomplete gamma function."""
    if g < 1:
        raise ValueError(f"degrees of freedom must be >= 1, got {g}")
    if x <= 0:
        return 1.0
    return float(special.gammaincc(0.5 * g, 0.5 * x))


@dataclass(frozen=True)
class DegreesOfFreedom:
    g: int
    p: int
    k: int


def degrees_of_freedom(p: int, k: int) -> DegreesOfFreedom:
    """``g = kp - k(k+1)/2 - 1``, valid only when ``p > (k+1)/2 + 1/k``."""
    if k not in (2, 3):
        raise InvalidLandmarkCount(f"k must be 2 or 3, got {k}")
    if not p > (k + 1) / 2 + 1 / k:
        raise InvalidLandmarkCount(f"p={p} landmarks is too few for k={k}")
    return DegreesOfFreedom(g=k * p - k * (k + 1) // 2 - 1, p=p, k=k)


def as_dof(dof: DegreesOfFreedom | int) -> int:
    return dof.g if isinstance(dof, DegreesOfFreedom) else int(dof)
