"""Empirical checks of the spatial axioms: translation invariance,
sub-additivity and super sub-additivity of ``R1``."""

from dataclasses import dataclass

import numpy as np

from .geometry import regions_overlap
from .risk import risk_standard
from .simulation import MCConfig, _jackknife_se, _loo_variances, build_grid, sample_fields
from .special import DomainError

__all__ = ["SubadditivityReport", "check_subadditivity", "check_translation_invariance"]


@dataclass(frozen=True)
class SubadditivityReport:
    r1_a: float
    r1_b: float
    r1_union: float
    stderr_a: float
    stderr_b: float
    stderr_union: float
    margin: float          # r1_a + r1_b - r1_union
    margin_stderr: float   # jackknife standard error of margin
    subadditive: bool      # margin >= -3 * margin_stderr
    super_margin: float    # min(r1_a, r1_b) - r1_union
    super_subadditive: bool  # super_margin >= 0; reported, never enforced


def check_subadditivity(region_a, region_b, model, u, cfg=None):
    """Monte Carlo comparison of ``R1(A u B)`` with ``R1(A) + R1(B)`` and
    with ``min(R1(A), R1(B))`` for disjoint regions.

    Both regions get a ``cfg.n_points`` grid; one joint field is simulated on
    the union of the grids so the three estimates share replicates. The loss
    over the union is the area-weighted mean of the two losses.
    """
    cfg = cfg or MCConfig()
    if cfg.m_reps < 3:
        raise DomainError("sub-additivity check needs at least 3 replicates")
    if regions_overlap(region_a, region_b):
        raise DomainError("regions overlap; sub-additivity is defined for disjoint regions")
    ga = build_grid(region_a, cfg.n_points, "regular")
    gb = build_grid(region_b, cfg.n_points, "regular")
    pts = np.vstack((ga.points, gb.points))
    fields = sample_fields(pts, model, cfg)
    excess = np.maximum(fields - u, 0.0)
    na = ga.n
    la = excess[:, :na].mean(axis=1)
    lb = excess[:, na:].mean(axis=1)
    wa = region_a.area / (region_a.area + region_b.area)
    lu = wa * la + (1.0 - wa) * lb

    va, vb, vu = (float(x.var(ddof=1)) for x in (la, lb, lu))
    loo_a, loo_b, loo_u = _loo_variances(la), _loo_variances(lb), _loo_variances(lu)
    margin = va + vb - vu
    margin_se = _jackknife_se(loo_a + loo_b - loo_u)
    return SubadditivityReport(
        r1_a=va,
        r1_b=vb,
        r1_union=vu,
        stderr_a=_jackknife_se(loo_a),
        stderr_b=_jackknife_se(loo_b),
        stderr_union=_jackknife_se(loo_u),
        margin=margin,
        margin_stderr=margin_se,
        subadditive=margin >= -3.0 * margin_se,
        super_margin=min(va, vb) - vu,
        super_subadditive=min(va, vb) - vu >= 0.0,
    )


def check_translation_invariance(region, v, model, u, quad_cfg=None):
    """Quadrature ``R1`` of ``region`` and of ``region + v``, and whether they
    agree exactly."""
    a = risk_standard(region, model, u, quad_cfg).r1
    b = risk_standard(region.translated(v), model, u, quad_cfg).r1
    return a, b, a == b
