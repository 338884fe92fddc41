"""PM10 case study over Piemonte: log-concentrations modelled as an
isotropic Gaussian field with Matern correlation (kappa = 1, theta = 100 km),
mean 3.69 and variance 1.2762, a 10 km square and the legal level of
50 ug/m3."""

import math
from dataclasses import dataclass

from .correlation import CorrelationModel
from .geometry import Region
from .risk import Marginal, QuadratureConfig, risk_general
from .simulation import MCConfig, build_grid, m1_estimate, sample_fields

__all__ = ["PIEMONTE", "PiemonteReport", "piemonte_report"]


@dataclass(frozen=True)
class _Setup:
    region: Region = Region("square", 10.0)
    model: CorrelationModel = CorrelationModel("matern", 100.0, 1.0)
    marginal: Marginal = Marginal(3.69, 1.2762)
    legal_level: float = 50.0
    reference_u0: float = 0.1965
    reference_r0: float = 0.3483621
    reference_r1: float = 0.4119461

    @property
    def u_raw(self):
        return math.log(self.legal_level)


PIEMONTE = _Setup()


@dataclass(frozen=True)
class PiemonteReport:
    u0: float
    r0: float
    r1: float
    r1_abserr: float
    r1_mc: float
    r1_mc_stderr: float
    r0_mc: float
    m_reps: int
    n_points: int

    @property
    def z_score(self):
        return (self.r1_mc - self.r1) / self.r1_mc_stderr

    def lines(self):
        s = PIEMONTE
        return [
            f"u0                 {self.u0:.7f}   (reference {s.reference_u0})",
            f"R0                 {self.r0:.7f}   (reference {s.reference_r0})",
            f"R1 quadrature      {self.r1:.7f}   (reference {s.reference_r1}; not reproducible, see README)",
            f"R1 Monte Carlo     {self.r1_mc:.7f} +/- {self.r1_mc_stderr:.7f}"
            f"   (n={self.n_points}, m={self.m_reps}, z={self.z_score:+.2f})",
            f"R0 Monte Carlo     {self.r0_mc:.7f}",
        ]


def piemonte_report(seed=0, m_reps=2000, n_points=225, threads=None, quad_cfg=None):
    """Quadrature risk of the case study alongside its M1 Monte Carlo oracle
    (both in data units)."""
    s = PIEMONTE
    res = risk_general(s.region, s.model, s.marginal, s.u_raw, quad_cfg or QuadratureConfig())
    cfg = MCConfig(n_points=n_points, m_reps=m_reps, seed=seed, threads=threads)
    grid = build_grid(s.region, n_points, "regular")
    est = m1_estimate(sample_fields(grid, s.model, cfg), res.u0)
    sig, sig2 = s.marginal.sigma, s.marginal.sigma2
    return PiemonteReport(
        u0=res.u0,
        r0=res.r0,
        r1=res.r1,
        r1_abserr=res.abserr,
        r1_mc=sig2 * est.r1,
        r1_mc_stderr=sig2 * est.stderr,
        r0_mc=sig * est.r0,
        m_reps=m_reps,
        n_points=n_points,
    )
