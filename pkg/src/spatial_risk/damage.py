"""Moments of the excess damage ``(X(s) - u)^+`` of a standard isotropic
Gaussian field."""

import math

import numpy as np

from .special import DomainError, bvn_upper, phi, sf

__all__ = ["r0_standard", "damage_cov_rho", "damage_cov", "damage_var"]

# 1 - rho below this switches to the rho -> 1 limit
_RHO_ONE = 1e-12


def r0_standard(u):
    """Expected excess ``E[(Z - u)^+] = phi(u) - u sf(u)`` for standard normal Z."""
    u = float(u)
    if not math.isfinite(u):
        raise DomainError(f"threshold must be finite, got {u!r}")
    return phi(u) - u * sf(u)


def damage_var(u):
    """``Var((Z - u)^+) = (1 + u^2) sf(u) - u phi(u) - r0(u)^2``."""
    r0 = r0_standard(u)
    return (1.0 + u * u) * sf(u) - u * phi(u) - r0 * r0


def damage_cov_rho(rho, u):
    """Covariance of ``(X1 - u)^+`` and ``(X2 - u)^+`` for standard normals
    with correlation ``rho``.

    Valid for ``rho`` in ``(-1, 1]``; ``rho`` within 1e-12 of 1 returns the
    variance limit.
    """
    rho = float(rho)
    u = float(u)
    if not (-1.0 < rho <= 1.0):
        raise DomainError(f"correlation must lie in (-1, 1], got {rho!r}")
    if 1.0 - rho < _RHO_ONE:
        return damage_var(u)
    r0 = r0_standard(u)
    if rho == 0.0:
        return 0.0
    p = phi(u)
    # u (1 - rho) / sqrt(1 - rho^2), written without the 0/0 at rho -> 1
    arg = u * math.sqrt((1.0 - rho) / (1.0 + rho))
    root = math.sqrt((1.0 - rho) * (1.0 + rho))
    pk = phi(u / math.sqrt(1.0 + rho))
    return (
        (rho + u * u) * bvn_upper(u, u, rho)
        - 2.0 * u * p * sf(arg)
        + root * pk * pk
        - r0 * r0
    )


def damage_cov(h, u, model):
    """Damage covariance ``G(h, u)`` between sites ``h`` apart.

    ``h`` may be a scalar or an array; arrays are evaluated elementwise.
    """
    if np.ndim(h) == 0:
        h = float(h)
        if not (h >= 0.0):
            raise DomainError(f"distance must be non-negative, got {h!r}")
        return damage_cov_rho(model(h), u)
    rho = model(np.asarray(h, dtype=float))
    flat, inverse = np.unique(rho, return_inverse=True)
    vals = np.array([damage_cov_rho(r, u) for r in flat])
    return vals[inverse].reshape(np.shape(rho))
