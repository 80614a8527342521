"""Von Mises (VOM) and VOM+saddlepoint tail approximations for ``G / eta^2``.

All functions return the raw approximation, which may leave ``[0, 1]`` for
extreme parameters; clamping is the caller's decision.
"""

from __future__ import annotations

import math

import numpy as np
from scipy import special

from ..errors import DivergentIntegral, DomainError, SingularAtG
from .distributions import DegreesOfFreedom, as_dof, chisq_sf
from .models import (
    Component,
    ContaminationModel,
    ModelKind,
    QuadMethod,
    QuadratureSpec,
    gaussian_expectation,
)

SINGULAR_WIDTH = 1e-6
# Gauss-Hermite stays accurate for exp(c y^2) e^{-y^2} up to about c = 0.9
_GH_MAX_GROWTH = 0.9


def _is_reference(c: Component, mu: float, sigma: float) -> bool:
    return c.loc == mu and c.scale == sigma


def vom_pvalue(
    t: float,
    dof: DegreesOfFreedom | int,
    F: ContaminationModel,
    quad: QuadratureSpec | None = None,
    mu: float = 0.0,
    sigma: float = 1.0,
) -> float:
    """First-order von Mises approximation of ``P_F{G_s > t}``.

    ``g * E_F[P{chi2_{g-1} > t - ((X - mu)/sigma)^2}] - (g - 1) P{chi2_g > t}``.
    The expectation over a component equal to ``N(mu, sigma)`` is ``P{chi2_g > t}``
    exactly and is not integrated numerically.
    """
    g = as_dof(dof)
    if t < 0:
        raise DomainError("t must be nonnegative")
    if t == 0:
        return 1.0
    sf_g = chisq_sf(t, g)
    root = math.sqrt(t)

    def tail(x: np.ndarray) -> np.ndarray:
        y = (np.asarray(x, dtype=float) - mu) / sigma
        if g == 1:
            return (t - y * y < 0).astype(float)
        return special.gammaincc(0.5 * (g - 1), 0.5 * np.clip(t - y * y, 0.0, None))

    total = 0.0
    for comp in F.components():
        if comp.weight == 0.0:
            continue
        if _is_reference(comp, mu, sigma):
            e = sf_g
        else:
            e = gaussian_expectation(tail, comp.loc, comp.scale, quad, breakpoints=(mu - sigma * root, mu + sigma * root))
        total += comp.weight * e
    return g * total - (g - 1) * sf_g


def saddlepoint_prefactor(t: float, g: int) -> float:
    """``B = g sqrt(g) / (sqrt(pi) (t - g)) * exp(-(t - g - g log(t/g)) / 2)``."""
    _check_saddle_domain(t, g)
    return g * math.sqrt(g) / (math.sqrt(math.pi) * (t - g)) * math.exp(-0.5 * (t - g - g * math.log(t / g)))


def _check_saddle_domain(t: float, g: int) -> None:
    if not t > 0:
        raise DomainError(f"saddlepoint approximation needs t > 0, got {t}")
    if abs(t - g) < SINGULAR_WIDTH:
        raise SingularAtG(f"t={t} is within {SINGULAR_WIDTH:g} of g={g}; use vom_pvalue instead")


def vomsad_pvalue_scn(t: float, dof: DegreesOfFreedom | int, epsilon: float, nu: float) -> float:
    """Closed-form VOM+SAD p-value under ``(1-eps) N(0,1) + eps N(0, nu)``."""
    g = as_dof(dof)
    if epsilon == 0.0:
        return chisq_sf(t, g)
    _check_saddle_domain(t, g)
    inner = t - nu * nu * (t - g)
    if not inner > 0:
        raise DomainError(f"t - nu^2 (t - g) = {inner:.6g} must be positive")
    correction = (
        g ** 1.5 / (math.sqrt(math.pi) * (t - g))
        * (math.sqrt(g) / math.sqrt(inner) - 1.0)
        * math.exp(-0.5 * (t - g - g * math.log(t / g)))
    )
    return chisq_sf(t, g) + epsilon * correction


def vomsad_pvalue_lcn(t: float, dof: DegreesOfFreedom | int, epsilon: float, theta: float) -> float:
    """Closed-form VOM+SAD p-value under ``(1-eps) N(0,1) + eps N(theta, 1)``."""
    g = as_dof(dof)
    if epsilon == 0.0:
        return chisq_sf(t, g)
    B = saddlepoint_prefactor(t, g)
    log_tilt = (t / g - 1.0) * theta * theta / 2.0
    # B underflows long before exp(log_tilt) overflows, so take the product in logs
    sign = 1.0 if t > g else -1.0
    log_abs_B = math.log(g * math.sqrt(g) / math.sqrt(math.pi)) - math.log(abs(t - g)) - 0.5 * (
        t - g - g * math.log(t / g)
    )
    try:
        tilted = sign * math.exp(log_abs_B + log_tilt)
    except OverflowError:
        tilted = sign * math.inf
    return chisq_sf(t, g) + epsilon * (tilted - B)


def vomsad_pvalue(t: float, dof: DegreesOfFreedom | int, F: ContaminationModel) -> float:
    """Closed form matching the model kind."""
    if F.kind is ModelKind.SCN:
        return vomsad_pvalue_scn(t, dof, F.epsilon, F.nu)
    if F.kind is ModelKind.LCN:
        return vomsad_pvalue_lcn(t, dof, F.epsilon, F.theta)
    return chisq_sf(t, as_dof(dof))


def vomsad_pvalue_integral(
    t: float,
    dof: DegreesOfFreedom | int,
    F: ContaminationModel,
    quad: QuadratureSpec | None = None,
    mu: float = 0.0,
    sigma: float = 1.0,
) -> float:
    """``P{chi2_g > t} - B + B E_F[sqrt(g/t) exp((t-g)((X-mu)/sigma)^2 / (2t))]`` by quadrature."""
    g = as_dof(dof)
    B = saddlepoint_prefactor(t, g)
    a = (t - g) / (2.0 * t)
    log_root = 0.5 * math.log(g / t)

    def log_tilt(x: np.ndarray) -> np.ndarray:
        y = (np.asarray(x, dtype=float) - mu) / sigma
        return log_root + a * y * y

    total = 0.0
    for comp in F.components():
        if comp.weight == 0.0:
            continue
        if _is_reference(comp, mu, sigma):
            e = 1.0
        else:
            growth = 2.0 * a * (comp.scale / sigma) ** 2
            if growth >= 1.0:
                raise DivergentIntegral(
                    f"(t - g) s^2 / t = {growth:.6g} >= 1: the tilted expectation diverges"
                )
            q = quad or QuadratureSpec()
            if q.method is QuadMethod.GAUSS_HERMITE and growth > _GH_MAX_GROWTH:
                q = QuadratureSpec.adaptive()
            e = gaussian_expectation(None, comp.loc, comp.scale, q, log_h=log_tilt)
        total += comp.weight * e
    return chisq_sf(t, g) - B + B * total
