"""Tail probabilities of the Procrustes statistic under normal and contaminated-normal errors."""

from .approximations import (
    saddlepoint_prefactor,
    vom_pvalue,
    vomsad_pvalue,
    vomsad_pvalue_integral,
    vomsad_pvalue_lcn,
    vomsad_pvalue_scn,
)
from .diagnostics import NormalityDiagnostic, ks_pvalue, ks_statistic, mahalanobis_ks_diagnostic
from .distributions import DegreesOfFreedom, chisq_sf, degrees_of_freedom
from .models import ContaminationModel, ModelKind, QuadMethod, QuadratureSpec, parse_model
from .montecarlo import mc_oracle
from .procrustes_test import (
    EtaMethod,
    Method,
    TestOptions,
    TestReport,
    classical_pvalue,
    clamp_p,
    estimate_eta,
    run_test,
)

__all__ = [
    "ContaminationModel",
    "DegreesOfFreedom",
    "EtaMethod",
    "Method",
    "ModelKind",
    "NormalityDiagnostic",
    "QuadMethod",
    "QuadratureSpec",
    "TestOptions",
    "TestReport",
    "chisq_sf",
    "clamp_p",
    "classical_pvalue",
    "degrees_of_freedom",
    "estimate_eta",
    "ks_pvalue",
    "ks_statistic",
    "mahalanobis_ks_diagnostic",
    "mc_oracle",
    "parse_model",
    "run_test",
    "saddlepoint_prefactor",
    "vom_pvalue",
    "vomsad_pvalue",
    "vomsad_pvalue_integral",
    "vomsad_pvalue_lcn",
    "vomsad_pvalue_scn",
]
