"""Scalar special functions: normal distribution, bivariate orthant
probabilities, truncated bivariate normal moments and the modified Bessel
function of the second kind.

All functions take and return Python floats and are pure.
"""

import math

from scipy.special import ndtri

__all__ = [
    "DomainError",
    "phi",
    "sf",
    "cdf",
    "quantile",
    "gamma",
    "bvn_upper",
    "trunc_m10",
    "trunc_m11",
    "bessel_k",
]

_INV_SQRT_2PI = 1.0 / math.sqrt(2.0 * math.pi)
_INV_SQRT2 = 1.0 / math.sqrt(2.0)
_TWO_PI = 2.0 * math.pi


class DomainError(ValueError):
    """Raised when an argument lies outside the domain of a function."""


def _finite(x, name="x"):
    x = float(x)
    if not math.isfinite(x):
        raise DomainError(f"{name} must be finite, got {x!r}")
    return x


def phi(x):
    """Standard normal density."""
    x = _finite(x)
    return _INV_SQRT_2PI * math.exp(-0.5 * x * x)


def sf(x):
    """Standard normal survival function ``1 - Phi(x)``.

    Evaluated through ``erfc`` so the upper tail keeps full relative
    precision. Far tails (``sf(40)`` is about 3.7e-350) underflow quietly
    to 0.0.
    """
    x = _finite(x)
    return 0.5 * math.erfc(x * _INV_SQRT2)


def cdf(x):
    """Standard normal distribution function."""
    x = _finite(x)
    return 0.5 * math.erfc(-x * _INV_SQRT2)


def quantile(p):
    """Inverse of the standard normal distribution function."""
    p = float(p)
    if not (0.0 < p < 1.0):
        raise DomainError(f"p must lie in (0, 1), got {p!r}")
    return float(ndtri(p))


gamma = math.gamma


# ---------------------------------------------------------------------------
# Bivariate normal upper orthant
# ---------------------------------------------------------------------------

# Gauss-Legendre half rules (positive nodes) with 6, 12 and 20 points.
_GL_X = (
    (0.9324695142031522, 0.6612093864662647, 0.2386191860831970),
    (
        0.9815606342467191, 0.9041172563704750, 0.7699026741943050,
        0.5873179542866171, 0.3678314989981802, 0.1252334085114692,
    ),
    (
        0.9931285991850949, 0.9639719272779138, 0.9122344282513259,
        0.8391169718222188, 0.7463319064601508, 0.6360536807265150,
        0.5108670019508271, 0.3737060887154196, 0.2277858511416451,
        0.07652652113349733,
    ),
)
_GL_W = (
    (0.1713244923791705, 0.3607615730481384, 0.4679139345726904),
    (
        0.04717533638651177, 0.1069393259953183, 0.1600783285433464,
        0.2031674267230659, 0.2334925365383547, 0.2491470458134029,
    ),
    (
        0.01761400713915212, 0.04060142980038694, 0.06267204833410906,
        0.08327674157670475, 0.1019301198172404, 0.1181945319615184,
        0.1316886384491766, 0.1420961093183821, 0.1491729864726037,
        0.1527533871307259,
    ),
)


def _bvnu(h, k, r):
    # Drezner-Wesolowsky integration over the correlation path, with Genz's
    # refinements for |r| >= 0.925.
    ar = abs(r)
    if ar < 0.3:
        xs_, ws_ = _GL_X[0], _GL_W[0]
    elif ar < 0.75:
        xs_, ws_ = _GL_X[1], _GL_W[1]
    else:
        xs_, ws_ = _GL_X[2], _GL_W[2]

    hk = h * k
    bvn = 0.0
    if ar < 0.925:
        hs = 0.5 * (h * h + k * k)
        asr = 0.5 * math.asin(r)
        for x, w in zip(xs_, ws_):
            for sgn in (-1.0, 1.0):
                sn = math.sin(asr * (1.0 + sgn * x))
                bvn += w * math.exp((sn * hk - hs) / (1.0 - sn * sn))
        return bvn * asr / _TWO_PI + sf(h) * sf(k)

    if r < 0.0:
        k = -k
        hk = -hk
    if ar < 1.0:
        as_ = (1.0 - r) * (1.0 + r)
        a = math.sqrt(as_)
        bs = (h - k) ** 2
        c = (4.0 - hk) / 8.0
        d = (12.0 - hk) / 16.0
        asr = -0.5 * (bs / as_ + hk)
        if asr > -100.0:
            bvn = a * math.exp(asr) * (
                1.0 - c * (bs - as_) * (1.0 - d * bs / 5.0) / 3.0
                + c * d * as_ * as_ / 5.0
            )
        if hk > -100.0:
            b = math.sqrt(bs)
            sp = math.sqrt(_TWO_PI) * sf(b / a)
            bvn -= math.exp(-0.5 * hk) * sp * b * (1.0 - c * bs * (1.0 - d * bs / 5.0) / 3.0)
        a *= 0.5
        for x, w in zip(xs_, ws_):
            for sgn in (-1.0, 1.0):
                xs = (a + a * sgn * x) ** 2
                rs = math.sqrt(1.0 - xs)
                asr1 = -0.5 * (bs / xs + hk)
                if asr1 > -100.0:
                    sp = 1.0 + c * xs * (1.0 + d * xs)
                    ep = math.exp(-hk * xs / (2.0 * (1.0 + rs) ** 2)) / rs
                    bvn += a * w * math.exp(asr1) * (ep - sp)
        bvn = -bvn / _TWO_PI

    if r > 0.0:
        return bvn + sf(max(h, k))
    if h >= k:
        return -bvn
    if h < 0.0:
        lo = cdf(k) - cdf(h)
    else:
        lo = sf(h) - sf(k)
    return lo - bvn


def bvn_upper(u, v, w):
    """Upper orthant probability ``P(X1 > u, X2 > v)`` of a standard
    bivariate normal vector with correlation ``w``.

    ``w = 1`` and ``w = -1`` return the degenerate limits ``sf(max(u, v))``
    and ``max(0, 1 - Phi(u) - Phi(v))``. Infinite thresholds are accepted.
    """
    u = float(u)
    v = float(v)
    w = float(w)
    if math.isnan(u) or math.isnan(v) or not (-1.0 <= w <= 1.0):
        raise DomainError(f"invalid arguments u={u!r}, v={v!r}, w={w!r}")
    if u == math.inf or v == math.inf:
        return 0.0
    if u == -math.inf:
        return 1.0 if v == -math.inf else sf(v)
    if v == -math.inf:
        return sf(u)
    if w == 1.0:
        return sf(max(u, v))
    if w == -1.0:
        return max(0.0, 1.0 - cdf(u) - cdf(v))
    return min(1.0, max(0.0, _bvnu(u, v, w)))


def _check_corr(w):
    w = float(w)
    if not (-1.0 < w < 1.0):
        raise DomainError(f"correlation must lie in (-1, 1), got {w!r}")
    return w


def trunc_m10(u, v, w):
    """``E[X1 1{X1 > u, X2 > v}]`` for a standard bivariate normal with
    correlation ``w`` (the first truncated moment times the orthant mass)."""
    u = _finite(u, "u")
    v = _finite(v, "v")
    w = _check_corr(w)
    s = math.sqrt((1.0 - w) * (1.0 + w))
    return phi(u) * sf((v - w * u) / s) + w * phi(v) * sf((u - w * v) / s)


def trunc_m11(u, v, w):
    """``E[X1 X2 1{X1 > u, X2 > v}]`` for a standard bivariate normal with
    correlation ``w``."""
    u = _finite(u, "u")
    v = _finite(v, "v")
    w = _check_corr(w)
    s2 = (1.0 - w) * (1.0 + w)
    s = math.sqrt(s2)
    q = (u * u - 2.0 * w * u * v + v * v) / s2
    return (
        w * bvn_upper(u, v, w)
        + w * u * phi(u) * sf((v - w * u) / s)
        + w * v * phi(v) * sf((u - w * v) / s)
        + s * _INV_SQRT_2PI * _INV_SQRT_2PI * math.exp(-0.5 * q)
    )


# ---------------------------------------------------------------------------
# Modified Bessel function of the second kind
# ---------------------------------------------------------------------------

# Power series coefficients of 1/Gamma(z) = sum_k c_k z**k, k = 1..26.
_RGAM = (
    1.0000000000000000, 0.5772156649015329, -0.6558780715202538,
    -0.0420026350340952, 0.1665386113822915, -0.0421977345555443,
    -0.0096219715278770, 0.0072189432466630, -0.0011651675918591,
    -0.0002152416741149, 0.0001280502823882, -0.0000201348547807,
    -0.0000012504934821, 0.0000011330272320, -0.0000002056338417,
    0.0000000061160950, 0.0000000050020075, -0.0000000011812746,
    0.0000000001043427, 0.0000000000077823, -0.0000000000036968,
    0.0000000000005100, -0.0000000000000206, -0.0000000000000058,
    0.0000000000000014, 0.0000000000000001,
)

_EPS = 1e-16
_MAXIT = 10_000
_SWITCH = 2.0


def _temme_gammas(mu):
    """Return ``(gam1, gam2, 1/Gamma(1+mu), 1/Gamma(1-mu))`` for |mu| <= 1/2.

    gam1 = (1/Gamma(1-mu) - 1/Gamma(1+mu)) / (2 mu)
    gam2 = (1/Gamma(1-mu) + 1/Gamma(1+mu)) / 2
    """
    # 1/Gamma(1+mu) = sum_k c_k mu**(k-1); split into even/odd powers so the
    # difference quotient is evaluated without cancellation.
    even = 0.0  # sum over c_k with k odd  -> even powers of mu
    odd = 0.0   # sum over c_k with k even -> odd powers, divided by mu
    m2 = mu * mu
    for i in range(len(_RGAM) - 1, -1, -1):
        k = i + 1
        if k % 2:
            even = even * m2 + _RGAM[i]
        else:
            odd = odd * m2 + _RGAM[i]
    gam1 = -odd
    gam2 = even
    return gam1, gam2, gam2 + mu * odd, gam2 - mu * odd


def _k_pair(nu, x):
    """Return ``(K_nu(x), K_{nu+1}(x))`` by Temme's method."""
    nl = int(nu + 0.5)
    mu = nu - nl
    mu2 = mu * mu
    xi = 1.0 / x
    xi2 = 2.0 * xi
    if x < _SWITCH:
        x2 = 0.5 * x
        pimu = math.pi * mu
        fact = 1.0 if abs(pimu) < _EPS else pimu / math.sin(pimu)
        d = -math.log(x2)
        e = mu * d
        fact2 = 1.0 if abs(e) < _EPS else math.sinh(e) / e
        gam1, gam2, gampl, gammi = _temme_gammas(mu)
        ff = fact * (gam1 * math.cosh(e) + gam2 * fact2 * d)
        total = ff
        e = math.exp(e)
        p = 0.5 * e / gampl
        q = 0.5 / (e * gammi)
        c = 1.0
        d = x2 * x2
        total1 = p
        for i in range(1, _MAXIT):
            ff = (i * ff + p + q) / (i * i - mu2)
            c *= d / i
            p /= i - mu
            q /= i + mu
            delta = c * ff
            total += delta
            total1 += c * (p - i * ff)
            if abs(delta) < abs(total) * _EPS:
                break
        else:
            raise ArithmeticError("bessel_k: series failed to converge")
        kmu = total
        k1 = total1 * xi2
    else:
        # Steed's continued fraction CF2 with Temme's normalisation.
        b = 2.0 * (1.0 + x)
        d = 1.0 / b
        h = delh = d
        q1 = 0.0
        q2 = 1.0
        a1 = 0.25 - mu2
        q = c = a1
        a = -a1
        s = 1.0 + q * delh
        for i in range(2, _MAXIT):
            a -= 2 * (i - 1)
            c = -a * c / i
            qnew = (q1 - b * q2) / a
            q1 = q2
            q2 = qnew
            q += c * qnew
            b += 2.0
            d = 1.0 / (b + a * d)
            delh = (b * d - 1.0) * delh
            h += delh
            dels = q * delh
            s += dels
            if abs(dels / s) < _EPS:
                break
        else:
            raise ArithmeticError("bessel_k: continued fraction failed to converge")
        h = a1 * h
        kmu = math.sqrt(math.pi / (2.0 * x)) * math.exp(-x) / s
        k1 = kmu * (mu + x + 0.5 - h) * xi
    for i in range(1, nl + 1):
        kmu, k1 = k1, (mu + i) * xi2 * k1 + kmu
    return kmu, k1


def bessel_k(kappa, x):
    """Modified Bessel function of the second kind ``K_kappa(x)``.

    Real order ``kappa > 0`` and argument ``x > 0``. Uses Temme's series
    below ``x = 2`` and Steed's continued fraction above, followed by
    upward recurrence in the order.
    """
    kappa = float(kappa)
    x = float(x)
    if not (math.isfinite(kappa) and kappa > 0.0):
        raise DomainError(f"order must be positive and finite, got {kappa!r}")
    if not (x > 0.0) or math.isnan(x):
        raise DomainError(f"argument must be positive, got {x!r}")
    if x == math.inf:
        return 0.0
    return _k_pair(kappa, x)[0]
