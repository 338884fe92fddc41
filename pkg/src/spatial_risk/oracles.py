"""Independent numerical oracles for the closed forms.

These deliberately take the slow, direct route (2-D adaptive quadrature of
the bivariate normal density) and share no code with the closed forms they
check.
"""

import math

from scipy.integrate import dblquad

__all__ = ["bvn_moment_quadrature", "random_bvn_configs"]

_CUT = 12.0  # standard deviations; the mass beyond is below 1e-32


def bvn_moment_quadrature(u, v, w, moment="p", epsabs=1e-13, epsrel=1e-12):
    """``E[g(X1, X2) 1{X1 > u, X2 > v}]`` for a standard bivariate normal
    with correlation ``w``, by 2-D adaptive quadrature of the density.

    ``moment`` selects ``g``: ``"p"`` -> 1, ``"m10"`` -> x1, ``"m11"`` -> x1 x2.
    """
    s2 = 1.0 - w * w
    norm = 1.0 / (2.0 * math.pi * math.sqrt(s2))
    g = {"p": lambda x, y: 1.0, "m10": lambda x, y: x, "m11": lambda x, y: x * y}[moment]

    def density(y, x):
        return g(x, y) * norm * math.exp(-(x * x - 2.0 * w * x * y + y * y) / (2.0 * s2))

    x_hi = max(u, 0.0) + _CUT
    # integrate y over the conditional bulk of X2 | X1 = x, clipped to (v, inf)
    sd = math.sqrt(s2)

    def y_lo(x):
        return max(v, w * x - _CUT * sd)

    def y_hi(x):
        return max(y_lo(x), w * x + _CUT * sd)

    val, _ = dblquad(density, u, x_hi, y_lo, y_hi, epsabs=epsabs, epsrel=epsrel)
    return val


def random_bvn_configs(rng, n, span=3.0, wmax=0.99):
    """``n`` random ``(u, v, w)`` in ``[-span, span]^2 x (-wmax, wmax)``."""
    u = rng.uniform(-span, span, n)
    v = rng.uniform(-span, span, n)
    w = rng.uniform(-wmax, wmax, n)
    return list(zip(u.tolist(), v.tolist(), w.tolist()))

