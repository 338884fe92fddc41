import math

import numpy as np
import pytest
from hypothesis import given, settings
from hypothesis import strategies as st
from scipy.integrate import dblquad, quad

from spatial_risk.correlation import FAMILIES, CorrelationModel
from spatial_risk.damage import damage_cov, damage_cov_rho, damage_var, r0_standard
from spatial_risk.special import DomainError, phi


def _excess_moment(u, power):
    return quad(lambda x: (x - u) ** power * phi(x), u, u + 40.0, epsabs=1e-14, epsrel=1e-13)[0]


def _cross_moment(rho, u):
    # E[(X1 - u)^+ (X2 - u)^+] by 2-D quadrature of the density
    s2 = 1.0 - rho * rho
    c = 1.0 / (2.0 * math.pi * math.sqrt(s2))

    def f(y, x):
        return (x - u) * (y - u) * c * math.exp(-(x * x - 2 * rho * x * y + y * y) / (2 * s2))

    return dblquad(f, u, u + 14.0, u, u + 14.0, epsabs=1e-13, epsrel=1e-12)[0]


@pytest.mark.parametrize("u", [-2.0, -0.5, 0.0, 0.6744897501960817, 1.5, 3.0])
def test_r0_against_quadrature(u):
    assert r0_standard(u) == pytest.approx(_excess_moment(u, 1), abs=1e-13)


@pytest.mark.parametrize("u", [-2.0, 0.0, 0.6744897501960817, 2.5])
def test_variance_against_quadrature(u):
    ref = _excess_moment(u, 2) - _excess_moment(u, 1) ** 2
    assert damage_var(u) == pytest.approx(ref, abs=1e-12)


@pytest.mark.parametrize("rho", [-0.8, -0.2, 0.1, 0.5, 0.9, 0.99])
@pytest.mark.parametrize("u", [-1.0, 0.0, 0.6744897501960817, 1.8])
def test_covariance_against_quadrature(rho, u):
    ref = _cross_moment(rho, u) - r0_standard(u) ** 2
    assert damage_cov_rho(rho, u) == pytest.approx(ref, abs=1e-10)


def test_independence_gives_zero():
    assert damage_cov_rho(0.0, 0.7) == 0.0


@pytest.mark.parametrize("u", [-1.5, 0.0, 0.67, 2.0])
def test_continuous_at_full_correlation(u):
    # both sides of the 1e-12 switch agree with the variance
    v = damage_var(u)
    assert damage_cov_rho(1.0, u) == v
    assert damage_cov_rho(1.0 - 1e-9, u) == pytest.approx(v, abs=1e-7)
    assert damage_cov_rho(1.0 - 1e-4, u) == pytest.approx(v, abs=1e-3)


@settings(max_examples=200, deadline=None)
@given(st.floats(-0.99, 0.999), st.floats(-0.99, 0.999), st.floats(-3.0, 3.0))
def test_increasing_in_correlation(r1, r2, u):
    lo, hi = sorted((r1, r2))
    assert damage_cov_rho(lo, u) <= damage_cov_rho(hi, u) + 1e-13


@settings(max_examples=200, deadline=None)
@given(st.floats(-0.99, 1.0), st.floats(-3.0, 3.0))
def test_bounded_by_variance(rho, u):
    assert abs(damage_cov_rho(rho, u)) <= damage_var(u) + 1e-13


@pytest.mark.parametrize("family", FAMILIES)
def test_damage_cov_array_matches_scalar(family):
    m = CorrelationModel(family, 0.5)
    hs = np.linspace(0.0, 1.5, 31)
    vec = damage_cov(hs, 0.3, m)
    assert np.allclose(vec, [damage_cov(h, 0.3, m) for h in hs], rtol=0, atol=1e-16)
    assert vec[0] == pytest.approx(damage_var(0.3), abs=1e-15)


def test_damage_cov_vanishes_beyond_support():
    assert damage_cov(0.6, 0.5, CorrelationModel("spherical", 0.5)) == 0.0


@pytest.mark.parametrize("rho", [-1.0, 1.0001, float("nan")])
def test_invalid_correlation(rho):
    with pytest.raises(DomainError):
        damage_cov_rho(rho, 0.0)


def test_invalid_threshold():
    with pytest.raises(DomainError):
        r0_standard(float("inf"))


@settings(max_examples=200, deadline=None)
@given(st.floats(-0.99, 0.99), st.floats(-3.0, 3.0))
def test_decomposition_into_truncated_moments(rho, u):
    from spatial_risk.special import bvn_upper, trunc_m10, trunc_m11

    ref = trunc_m11(u, u, rho) - 2 * u * trunc_m10(u, u, rho) + u * u * bvn_upper(u, u, rho) - r0_standard(u) ** 2
    assert damage_cov_rho(rho, u) == pytest.approx(ref, abs=1e-12)
