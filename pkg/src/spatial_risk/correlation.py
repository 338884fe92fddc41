"""Isotropic auto-correlation families.

Every family is a function of ``t = h / theta``:

* exponential  ``exp(-t)``
* gaussian     ``exp(-t**2)``
* spherical    ``1 - 1.5 t + 0.5 t**3`` for ``t <= 1``, else 0
* cubic        ``1 - 7 t**2 + 35/4 t**3 - 7/2 t**5 + 3/4 t**7`` for ``t <= 1``, else 0
* matern       ``t**kappa K_kappa(t) / (Gamma(kappa) 2**(kappa - 1))``
"""

import math
from dataclasses import dataclass

import numpy as np

from .special import DomainError, bessel_k

__all__ = ["FAMILIES", "CorrelationModel", "correlation"]

FAMILIES = ("exponential", "gaussian", "spherical", "cubic", "matern")

# below this fraction of theta the Matern value is the removable-singularity limit
_MATERN_ZERO = 1e-12


def _spherical(t):
    if t >= 1.0:
        return 0.0
    return 1.0 - 1.5 * t + 0.5 * t ** 3


def _cubic(t):
    if t >= 1.0:
        return 0.0
    t2 = t * t
    return 1.0 - 7.0 * t2 + 8.75 * t2 * t - 3.5 * t2 * t2 * t + 0.75 * t2 * t2 * t2 * t


def _exponential(t):
    return math.exp(-t)


def _gaussian(t):
    return math.exp(-t * t)


@dataclass(frozen=True)
class CorrelationModel:
    """An isotropic correlation function ``rho(h)``.

    Parameters
    ----------
    family : str
        One of ``FAMILIES``.
    theta : float
        Scale parameter, in the same length unit as the distances.
    kappa : float, default 1.0
        Matern smoothness; ignored by the other families.
    """

    family: str
    theta: float
    kappa: float = 1.0

    def __post_init__(self):
        if self.family not in FAMILIES:
            raise DomainError(
                f"unknown correlation family {self.family!r}; expected one of {FAMILIES}"
            )
        if not (math.isfinite(self.theta) and self.theta > 0):
            raise DomainError(f"theta must be positive, got {self.theta!r}")
        if self.family == "matern" and not (math.isfinite(self.kappa) and self.kappa > 0):
            raise DomainError(f"kappa must be positive, got {self.kappa!r}")

    @property
    def compact_support(self):
        """Distance beyond which ``rho`` vanishes identically, or None."""
        if self.family in ("spherical", "cubic"):
            return self.theta
        return None

    def rescaled(self, factor):
        """The model with ``theta / factor``; ``rescaled(l)(h) == self(l * h)``."""
        return CorrelationModel(self.family, self.theta / factor, self.kappa)

    def _scalar(self, h):
        h = float(h)
        if not (h >= 0.0):
            raise DomainError(f"distance must be non-negative, got {h!r}")
        t = h / self.theta
        fam = self.family
        if fam == "exponential":
            return _exponential(t)
        if fam == "gaussian":
            return _gaussian(t)
        if fam == "spherical":
            return _spherical(t)
        if fam == "cubic":
            return _cubic(t)
        if t < _MATERN_ZERO:
            return 1.0
        if t == math.inf:
            return 0.0
        k = self.kappa
        # log-space keeps t**k from overflowing before K_k(t) underflows
        bk = bessel_k(k, t)
        if bk == 0.0:
            return 0.0
        return math.exp(k * math.log(t) + math.log(bk) - math.lgamma(k) - (k - 1.0) * math.log(2.0))

    def __call__(self, h):
        """Evaluate ``rho(h)``. Accepts a scalar or an array of distances."""
        if np.ndim(h) == 0:
            return self._scalar(h)
        h = np.asarray(h, dtype=float)
        if np.any(~(h >= 0.0)):
            raise DomainError("distances must be non-negative")
        t = h / self.theta
        fam = self.family
        if fam == "exponential":
            return np.exp(-t)
        if fam == "gaussian":
            return np.exp(-t * t)
        if fam == "spherical":
            return np.where(t < 1.0, 1.0 - 1.5 * t + 0.5 * t ** 3, 0.0)
        if fam == "cubic":
            t2 = t * t
            poly = 1.0 - 7.0 * t2 + 8.75 * t2 * t - 3.5 * t2 * t2 * t + 0.75 * t2 * t2 * t2 * t
            return np.where(t < 1.0, poly, 0.0)
        # Matern: scalar Bessel evaluations, once per distinct distance
        flat, inverse = np.unique(h, return_inverse=True)
        vals = np.array([self._scalar(x) for x in flat])
        return vals[inverse].reshape(h.shape)


def correlation(model, h):
    """Functional alias for ``model(h)``."""
    return model(h)
