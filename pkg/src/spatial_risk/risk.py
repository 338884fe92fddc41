"""The two-component risk measure ``(R0, R1)`` of the excess damage over a
disk or a square, computed by one-dimensional quadrature over the pair
distance distribution."""

import math
from dataclasses import dataclass

from scipy.integrate import quad

from .damage import damage_cov_rho, r0_standard
from .geometry import Region, pair_distance_density
from .special import DomainError, quantile

__all__ = [
    "Marginal",
    "RiskResult",
    "QuadratureConfig",
    "risk_standard",
    "risk_scaled",
    "risk_general",
    "standard_threshold",
]


@dataclass(frozen=True)
class Marginal:
    """Mean and variance of a (not necessarily standard) Gaussian field."""

    mu: float = 0.0
    sigma2: float = 1.0

    def __post_init__(self):
        if not (math.isfinite(self.mu) and math.isfinite(self.sigma2)):
            raise DomainError("marginal parameters must be finite")
        if self.sigma2 <= 0:
            raise DomainError(f"sigma2 must be positive, got {self.sigma2!r}")

    @property
    def sigma(self):
        return math.sqrt(self.sigma2)

    def standardize(self, u):
        return (u - self.mu) / self.sigma


@dataclass(frozen=True)
class RiskResult:
    """Expected normalized loss ``r0``, its variance ``r1``, the standardized
    threshold ``u0`` and the quadrature error estimate on ``r1``."""

    r0: float
    r1: float
    u0: float
    abserr: float = 0.0


@dataclass(frozen=True)
class QuadratureConfig:
    tol: float = 1e-10
    limit: int = 200

    def __post_init__(self):
        if not (self.tol > 0):
            raise DomainError(f"quadrature tolerance must be positive, got {self.tol!r}")


def standard_threshold(u=None, p=None, marginal=None):
    """Threshold in data units from exactly one of ``u`` (data units) or
    ``p`` (marginal probability level, ``u = mu + sigma * quantile(p)``)."""
    if (u is None) == (p is None):
        raise DomainError("give exactly one of u or p")
    if u is not None:
        return float(u)
    m = marginal or Marginal()
    return m.mu + m.sigma * quantile(p)


def _integrate(fn, breaks, quad_cfg):
    pieces = [(a, b) for a, b in zip(breaks[:-1], breaks[1:]) if b > a]
    total = 0.0
    err = 0.0
    eps = quad_cfg.tol / max(1, len(pieces))
    for a, b in pieces:
        val, e = quad(fn, a, b, epsabs=eps, epsrel=0.0, limit=quad_cfg.limit)
        total += val
        err += e
    return total, err


def _breaks(upper, kinks):
    inner = sorted({k for k in kinks if k is not None and 0.0 < k < upper})
    return [0.0, *inner, upper]


def _check_region(region):
    if not isinstance(region, Region):
        raise DomainError(
            f"closed-form risk needs a disk or square Region, got {type(region).__name__}; "
            "use the Monte Carlo path for other regions"
        )


def risk_standard(region, model, u, quad_cfg=None):
    """Risk of a standard field over ``region`` at standardized threshold ``u``.

    ``r1 = int_0^maxdist G(h, u) f(h) dh`` with ``f`` the pair distance
    density of the region, split at the support edge of compactly supported
    correlations and at the square density branch point.
    """
    _check_region(region)
    quad_cfg = quad_cfg or QuadratureConfig()
    u = float(u)
    r0 = r0_standard(u)
    s = region.scaled_size
    kinks = [model.compact_support]
    if region.shape == "square":
        kinks.append(s)

    def integrand(h):
        return damage_cov_rho(model(h), u) * pair_distance_density(region, h)

    r1, err = _integrate(integrand, _breaks(region.max_distance, kinks), quad_cfg)
    return RiskResult(r0, r1, u, err)


def risk_scaled(lam, region, model, u, quad_cfg=None):
    """Risk over the homothetic region ``lam * region``, integrated over the
    unscaled region: ``r1 = int f(h, R) G(lam h, u) dh``."""
    _check_region(region)
    lam = float(lam)
    if not (lam > 0 and math.isfinite(lam)):
        raise DomainError(f"lambda must be positive, got {lam!r}")
    quad_cfg = quad_cfg or QuadratureConfig()
    u = float(u)
    base = region.base()
    if region.lam != 1.0:
        lam *= region.lam
    r0 = r0_standard(u)
    support = model.compact_support
    kinks = [None if support is None else support / lam]
    if base.shape == "square":
        kinks.append(base.size)

    def integrand(h):
        return pair_distance_density(base, h) * damage_cov_rho(model(lam * h), u)

    r1, err = _integrate(integrand, _breaks(base.max_distance, kinks), quad_cfg)
    return RiskResult(r0, r1, u, err)


def risk_general(region, model, marginal, u_raw, quad_cfg=None):
    """Risk of a Gaussian field with the given marginal at a threshold in
    data units: ``(sigma r0(u0), sigma^2 r1(u0))`` with
    ``u0 = (u_raw - mu) / sigma``."""
    u0 = marginal.standardize(float(u_raw))
    res = risk_standard(region, model, u0, quad_cfg)
    return RiskResult(
        marginal.sigma * res.r0,
        marginal.sigma2 * res.r1,
        u0,
        marginal.sigma2 * res.abserr,
    )
