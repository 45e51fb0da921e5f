"""Coefficient-level toolkit for level-1 cusp forms: exact discriminant-form
coefficients, symmetric-power / Rankin-Selberg / triple-product series,
local factorization checks with correction factors, and partial-sum
main-term fitting."""

from .asymptotics import (
    FittedPolynomial,
    GeometricGrid,
    PartialSumTable,
    ResidualExponent,
    default_grid,
    fit_main_term,
    partial_sums,
    residual_exponent_estimate,
)
from .eigenvalues import (
    FormSpec,
    FourierCoefficients,
    HeckeReport,
    NormalizedEigenvalues,
    deligne_max,
    generate_delta_coefficients,
    load_form,
    normalize,
    save_form,
    verify_hecke_structure,
)
from .identities import IdentityReport, check_all, check_identity
from .satake import (
    LocalFactor,
    SatakeData,
    local_factor_rankin_selberg,
    local_factor_sym,
    local_factor_triple,
    local_factor_zeta,
    satake_from_lambda,
    sym_power_prime_coeff,
)
from .series import (
    CoefficientSeries,
    CorrectionFactor,
    EulerProductResult,
    assemble_global,
    build_series,
    correction_factor_local,
    evaluate_truncated_euler,
    square_series,
    squared_local_factor,
)

__version__ = "0.1.0"

__all__ = [
    "CoefficientSeries",
    "CorrectionFactor",
    "EulerProductResult",
    "FittedPolynomial",
    "FormSpec",
    "FourierCoefficients",
    "GeometricGrid",
    "HeckeReport",
    "IdentityReport",
    "LocalFactor",
    "NormalizedEigenvalues",
    "PartialSumTable",
    "ResidualExponent",
    "SatakeData",
    "assemble_global",
    "build_series",
    "check_all",
    "check_identity",
    "correction_factor_local",
    "default_grid",
    "deligne_max",
    "evaluate_truncated_euler",
    "fit_main_term",
    "generate_delta_coefficients",
    "load_form",
    "local_factor_rankin_selberg",
    "local_factor_sym",
    "local_factor_triple",
    "local_factor_zeta",
    "normalize",
    "partial_sums",
    "residual_exponent_estimate",
    "satake_from_lambda",
    "save_form",
    "square_series",
    "squared_local_factor",
    "sym_power_prime_coeff",
    "verify_hecke_structure",
]
