"""Contaminated normal error models and Gaussian expectations over them."""

from __future__ import annotations

import enum
import math
import os
from dataclasses import dataclass
from functools import lru_cache
from typing import Callable, Iterable

import numpy as np
from scipy import integrate, special, stats

from ..errors import QuadratureError

QUAD_NODES_ENV = "MORPHOKIT_QUAD_NODES"
DEFAULT_NODES = 200


class ModelKind(enum.Enum):
    NORMAL = "normal"
    SCN = "scn"
    LCN = "lcn"


@dataclass(frozen=True)
class Component:
    weight: float
    loc: float
    scale: float


@dataclass(frozen=True)
class ContaminationModel:
    """``N(0,1)``, ``(1-eps) N(0,1) + eps N(0, nu)`` or ``(1-eps) N(0,1) + eps N(theta, 1)``.

    ``nu`` is the standard deviation of the contaminating component.
    """

    kind: ModelKind = ModelKind.NORMAL
    epsilon: float = 0.0
    nu: float = 1.0
    theta: float = 0.0

    def __post_init__(self) -> None:
        if not 0.0 <= self.epsilon < 1.0:
            raise ValueError(f"epsilon must lie in [0, 1), got {self.epsilon}")
        if not self.nu > 0.0:
            raise ValueError(f"nu must be positive, got {self.nu}")
        if self.kind is ModelKind.NORMAL and self.epsilon != 0.0:
            raise ValueError("the normal model has no contamination")

    @classmethod
    def normal(cls) -> "ContaminationModel":
        return cls(ModelKind.NORMAL)

    @classmethod
    def scn(cls, epsilon: float, nu: float) -> "ContaminationModel":
        return cls(ModelKind.SCN, epsilon=float(epsilon), nu=float(nu))

    @classmethod
    def lcn(cls, epsilon: float, theta: float) -> "ContaminationModel":
        return cls(ModelKind.LCN, epsilon=float(epsilon), theta=float(theta))

    @property
    def contaminant(self) -> Component:
        if self.kind is ModelKind.SCN:
            return Component(self.epsilon, 0.0, self.nu)
        if self.kind is ModelKind.LCN:
            return Component(self.epsilon, self.theta, 1.0)
        return Component(0.0, 0.0, 1.0)

    def components(self) -> list[Component]:
        if self.kind is ModelKind.NORMAL:
            return [Component(1.0, 0.0, 1.0)]
        return [Component(1.0 - self.epsilon, 0.0, 1.0), self.contaminant]

    def to_dict(self) -> dict:
        d: dict = {"kind": self.kind.value}
        if self.kind is ModelKind.SCN:
            d.update(epsilon=self.epsilon, nu=self.nu)
        elif self.kind is ModelKind.LCN:
            d.update(epsilon=self.epsilon, theta=self.theta)
        return d


class QuadMethod(enum.Enum):
    GAUSS_HERMITE = "gauss_hermite"
    ADAPTIVE = "adaptive"


def default_nodes() -> int:
    raw = os.environ.get(QUAD_NODES_ENV)
    return int(raw) if raw else DEFAULT_NODES


@dataclass(frozen=True)
class QuadratureSpec:
    method: QuadMethod = QuadMethod.GAUSS_HERMITE
    nodes: int = 0
    abs_tol: float = 1e-13
    rel_tol: float = 1e-11

    def __post_init__(self) -> None:
        if self.nodes == 0:
            object.__setattr__(self, "nodes", default_nodes())
        if self.method is QuadMethod.GAUSS_HERMITE and self.nodes < 20:
            raise ValueError(f"Gauss-Hermite needs at least 20 nodes, got {self.nodes}")

    @classmethod
    def adaptive(cls, abs_tol: float = 1e-13, rel_tol: float = 1e-11) -> "QuadratureSpec":
        return cls(QuadMethod.ADAPTIVE, abs_tol=abs_tol, rel_tol=rel_tol)


@lru_cache(maxsize=8)
def _hermite(n: int) -> tuple[np.ndarray, np.ndarray]:
    y, w = special.roots_hermite(n)
    return y, w / math.sqrt(math.pi)


def _adaptive(h, loc, scale, breakpoints, quad: QuadratureSpec, log_h=None) -> float:
    dist = stats.norm(loc, scale)

    if log_h is not None:
        def integrand(x: float) -> float:
            return math.exp(float(log_h(x)) + dist.logpdf(x))
    else:
        def integrand(x: float) -> float:
            w = dist.pdf(x)
            return 0.0 if w == 0.0 else float(h(x)) * w

    edges = [-np.inf, *sorted(set(breakpoints)), np.inf]
    total = 0.0
    err = 0.0
    for a, b in zip(edges[:-1], edges[1:]):
        if a == b:
            continue
        val, e = integrate.quad(integrand, a, b, epsabs=quad.abs_tol, epsrel=quad.rel_tol, limit=500)
        total += val
        err += e
    if err > max(10 * quad.abs_tol, 10 * quad.rel_tol * abs(total), 1e-10):
        raise QuadratureError(f"adaptive quadrature did not converge (error estimate {err:.3g})", achieved=err)
    return total


def gaussian_expectation(
    h: Callable[[np.ndarray], np.ndarray] | None,
    loc: float,
    scale: float,
    quad: QuadratureSpec | None = None,
    breakpoints: Iterable[float] = (),
    log_h: Callable[[np.ndarray], np.ndarray] | None = None,
) -> float:
    """``E[h(X)]`` for ``X ~ N(loc, scale)``.

    Gauss-Hermite assumes ``h`` is smooth over the node span; when a kink of
    ``h`` (listed in ``breakpoints``) falls inside that span the integral is
    split there and done adaptively instead. Pass ``log_h`` instead of ``h``
    for integrands that overflow before the normal density underflows.
    """
    if (h is None) == (log_h is None):
        raise ValueError("pass exactly one of h and log_h")
    quad = quad or QuadratureSpec()
    breakpoints = [float(b) for b in breakpoints]
    if quad.method is QuadMethod.GAUSS_HERMITE:
        y, w = _hermite(quad.nodes)
        span = math.sqrt(2.0) * scale * y[-1]
        if not any(abs(b - loc) < span for b in breakpoints):
            x = loc + math.sqrt(2.0) * scale * y
            vals = h(x) if h is not None else np.exp(log_h(x))
            return float(np.dot(w, vals))
    return _adaptive(h, loc, scale, breakpoints, quad, log_h)


def parse_model(kind: str, eps: float | None = None, nu: float | None = None, theta: float | None = None) -> ContaminationModel:
    kind = kind.lower()
    if kind == "normal":
        return ContaminationModel.normal()
    if kind == "scn":
        if eps is None or nu is None:
            raise ValueError("scn model needs --eps and --nu")
        return ContaminationModel.scn(eps, nu)
    if kind == "lcn":
        if eps is None or theta is None:
            raise ValueError("lcn model needs --eps and --theta")
        return ContaminationModel.lcn(eps, theta)
    raise ValueError(f"unknown model {kind!r}")
