"""Spatial risk measures of the excess damage ``(X - u)^+`` of isotropic
Gaussian fields over disks and squares."""

from .correlation import FAMILIES, CorrelationModel
from .damage import damage_cov, damage_cov_rho, damage_var, r0_standard
from .geometry import Region, pair_distance_density, sample_pair_distance
from .risk import Marginal, QuadratureConfig, RiskResult, risk_general, risk_scaled, risk_standard
from .simulation import MCConfig, build_grid, m1_estimate, relative_error_study, sample_fields
from .special import DomainError, bessel_k, bvn_upper, phi, quantile, sf, trunc_m10, trunc_m11

__version__ = "0.1.0"

__all__ = [
    "FAMILIES",
    "CorrelationModel",
    "DomainError",
    "MCConfig",
    "Marginal",
    "QuadratureConfig",
    "Region",
    "RiskResult",
    "bessel_k",
    "build_grid",
    "bvn_upper",
    "damage_cov",
    "damage_cov_rho",
    "damage_var",
    "m1_estimate",
    "pair_distance_density",
    "phi",
    "quantile",
    "r0_standard",
    "relative_error_study",
    "risk_general",
    "risk_scaled",
    "risk_standard",
    "sample_fields",
    "sample_pair_distance",
    "sf",
    "trunc_m10",
    "trunc_m11",
]
