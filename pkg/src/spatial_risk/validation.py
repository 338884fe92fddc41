"""Cross-module oracle suite run by ``spatial-risk validate``."""

import hashlib
import math
from dataclasses import dataclass

import numpy as np

from .axioms import check_subadditivity
from .correlation import FAMILIES, CorrelationModel
from .damage import damage_var
from .geometry import Region, _square_far, _square_near, pair_distance_cdf
from .oracles import bvn_moment_quadrature, random_bvn_configs
from .piemonte import PIEMONTE
from .risk import QuadratureConfig, risk_general, risk_scaled, risk_standard
from .simulation import MCConfig, build_grid, m1_estimate, sample_fields
from .special import bessel_k, bvn_upper, quantile, trunc_m10, trunc_m11

__all__ = ["CheckResult", "run_validation", "report_lines", "report_hash"]


@dataclass(frozen=True)
class CheckResult:
    name: str
    measured: float
    limit: float
    passed: bool

    def line(self):
        status = "PASS" if self.passed else "FAIL"
        return f"{status}  {self.name:<40s} measured={self.measured!r} limit={self.limit!r}"


def run_validation(seed=0, threads=None, tolerance=1e-10, corrupt=False):
    """Run the suite and return a list of ``CheckResult``.

    ``tolerance`` is the quadrature tolerance. ``corrupt=True`` replaces every
    limit by an unattainable one, to test that failures are reported.
    """

    def _check(name, measured, limit):
        if corrupt:
            limit = -math.inf
        return CheckResult(name, float(measured), float(limit), bool(measured <= limit))

    quad_cfg = QuadratureConfig(tol=tolerance)
    out = []

    err = 0.0
    for shape in ("disk", "square"):
        for size in (0.5, 1.0, 3.0):
            err = max(err, abs(pair_distance_cdf(Region(shape, size), 3 * size) - 1.0))
    out.append(_check("density normalization", err, 1e-10))

    sq = Region("square", 1.0)
    jump = max(abs(_square_near(t) - _square_far(t)) for t in (1.0, 1.0 + 1e-9))
    out.append(_check("square density branch agreement at h=R", jump, 1e-9))

    rng = np.random.default_rng(np.random.SeedSequence(seed, spawn_key=(0,)))
    err = 0.0
    for u, v, w in random_bvn_configs(rng, 10):
        err = max(
            err,
            abs(bvn_upper(u, v, w) - bvn_moment_quadrature(u, v, w, "p")),
            abs(trunc_m10(u, v, w) - bvn_moment_quadrature(u, v, w, "m10")),
            abs(trunc_m11(u, v, w) - bvn_moment_quadrature(u, v, w, "m11")),
        )
    out.append(_check("bivariate normal vs 2-D quadrature", err, 1e-8))

    out.append(_check("K_1(1)", abs(bessel_k(1.0, 1.0) - 0.6019072301972346), 1e-9))

    hs = np.linspace(0.0, 5.0, 100)
    mat = CorrelationModel("matern", 0.7, 0.5)
    ex = CorrelationModel("exponential", 0.7)
    out.append(_check("matern(1/2) == exponential", float(np.max(np.abs(mat(hs) - ex(hs)))), 1e-10))

    u = quantile(0.75)
    model = CorrelationModel("exponential", 0.5)
    quad_r1 = risk_standard(sq, model, u, quad_cfg).r1
    cfg = MCConfig(n_points=225, m_reps=2000, seed=seed, threads=threads)
    est = m1_estimate(sample_fields(build_grid(sq, 225), model, cfg, stream=(1,)), u)
    out.append(_check("M1 vs quadrature |z|", abs(est.r1 - quad_r1) / est.stderr, 4.0))

    rep = check_subadditivity(
        Region("square", 1.0), Region("square", 1.0, offset=(1.0, 0.0)), model, u,
        MCConfig(n_points=100, m_reps=2000, seed=seed, threads=threads),
    )
    out.append(_check("sub-additivity deficit (sigmas)", -rep.margin / rep.margin_stderr, 3.0))

    worst = -math.inf
    for fam in FAMILIES:
        m = CorrelationModel(fam, 0.5)
        seq = [risk_standard(Region("square", r), m, u, quad_cfg).r1 for r in (0.5, 1.0, 2.0, 4.0)]
        worst = max(worst, max(b - a for a, b in zip(seq, seq[1:])))
    out.append(_check("anti-monotonicity max increase", worst, 0.0))

    worst = -math.inf
    for fam in FAMILIES:
        m = CorrelationModel(fam, 0.5)
        seq = [risk_scaled(lam, sq, m, u, quad_cfg).r1 for lam in np.geomspace(0.1, 10.0, 12)]
        worst = max(worst, max(b - a for a, b in zip(seq, seq[1:])))
    out.append(_check("lambda-monotonicity max increase", worst, 0.0))

    far = risk_scaled(200 * 0.5, sq, model, u, quad_cfg).r1 / damage_var(u)
    out.append(_check("R1(200 theta A) / G(0,u)", far, 1e-4))

    p = PIEMONTE
    r0 = risk_general(p.region, p.model, p.marginal, p.u_raw, quad_cfg).r0
    out.append(_check("Piemonte R0 error", abs(r0 - p.reference_r0), 1e-4))
    return out


def report_lines(results):
    return [r.line() for r in results]


def report_hash(results):
    return hashlib.sha256("\n".join(report_lines(results)).encode()).hexdigest()
