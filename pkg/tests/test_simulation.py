import io
import math

import numpy as np
import pytest
from scipy.spatial.distance import cdist
from scipy.stats import kstest

from spatial_risk.correlation import CorrelationModel
from spatial_risk.damage import damage_cov
from spatial_risk.geometry import Region
from spatial_risk.simulation import (
    MCConfig,
    NumericalError,
    ResourceError,
    _concentric,
    build_grid,
    cholesky_factor,
    m1_estimate,
    read_study_csv,
    relative_error_study,
    replicate_rng,
    sample_fields,
    write_study_csv,
)
from spatial_risk.special import DomainError, quantile

U75 = quantile(0.75)


@pytest.mark.parametrize("shape", ["disk", "square"])
@pytest.mark.parametrize("mode", ["regular", "stratified-jittered"])
@pytest.mark.parametrize("n", [1, 7, 100, 225])
def test_grid_inside_region(shape, mode, n, rng):
    region = Region(shape, 2.0, offset=(1.0, -3.0))
    g = build_grid(region, n, mode, rng)
    assert g.n == n
    assert np.all(region.contains(g.points, tol=1e-12))


def test_regular_square_grid_is_cell_centres():
    g = build_grid(Region("square", 1.0), 9)
    xs = np.unique(np.round(g.points[:, 0], 12))
    assert np.allclose(xs, [1 / 6, 0.5, 5 / 6])


def test_disk_map_preserves_area(rng):
    # uniform points of the square land uniformly on the disk, so every
    # lattice cell maps to a piece of area pi / n
    ab = rng.uniform(-1.0, 1.0, (100_000, 2))
    pts = _concentric(ab[:, 0], ab[:, 1])
    r2 = pts[:, 0] ** 2 + pts[:, 1] ** 2
    ang = np.arctan2(pts[:, 1], pts[:, 0])
    assert kstest(r2, "uniform").pvalue > 0.01
    assert kstest(ang, "uniform", args=(-math.pi, 2 * math.pi)).pvalue > 0.01


def test_grid_limits():
    with pytest.raises(ResourceError):
        build_grid(Region("square", 1.0), 10_001)
    with pytest.raises(DomainError):
        build_grid(Region("square", 1.0), 0)
    with pytest.raises(DomainError):
        build_grid(Region("square", 1.0), 4, "stratified-jittered")
    with pytest.raises(DomainError):
        build_grid(Region("square", 1.0), 4, "hexagonal")


def test_fields_reproduce_covariance():
    pts = np.array([[0.0, 0.0], [0.2, 0.0], [0.0, 0.7], [1.0, 1.0]])
    model = CorrelationModel("exponential", 0.5)
    x = sample_fields(pts, model, MCConfig(m_reps=200_000, seed=3))
    emp = np.cov(x, rowvar=False)
    assert np.allclose(emp, model(cdist(pts, pts)), atol=0.01)
    assert np.allclose(x.mean(axis=0), 0.0, atol=0.01)


def test_fields_identical_across_thread_counts():
    g = build_grid(Region("square", 1.0), 49)
    model = CorrelationModel("gaussian", 0.5)
    a = sample_fields(g, model, MCConfig(m_reps=700, seed=11, threads=1))
    b = sample_fields(g, model, MCConfig(m_reps=700, seed=11, threads=4))
    assert np.array_equal(a, b)


def test_replicates_do_not_depend_on_m():
    g = build_grid(Region("square", 1.0), 25)
    model = CorrelationModel("exponential", 0.5)
    a = sample_fields(g, model, MCConfig(m_reps=300, seed=5))
    b = sample_fields(g, model, MCConfig(m_reps=50, seed=5))
    assert np.array_equal(a[:50], b)


def test_streams_and_seeds_differ():
    g = build_grid(Region("square", 1.0), 9)
    model = CorrelationModel("exponential", 0.5)
    a = sample_fields(g, model, MCConfig(m_reps=10, seed=5), stream=(0,))
    b = sample_fields(g, model, MCConfig(m_reps=10, seed=5), stream=(1,))
    c = sample_fields(g, model, MCConfig(m_reps=10, seed=6), stream=(0,))
    assert not np.array_equal(a, b) and not np.array_equal(a, c)
    assert replicate_rng(1, (), 0).random() == replicate_rng(1, (), 0).random()


def test_cholesky_retry_on_duplicate_points():
    pts = np.array([[0.0, 0.0], [0.0, 0.0], [0.5, 0.5]])
    model = CorrelationModel("gaussian", 0.5)
    x = sample_fields(pts, model, MCConfig(m_reps=10))
    assert np.allclose(x[:, 0], x[:, 1], atol=1e-4)


def test_cholesky_failure_is_reported():
    with pytest.raises(NumericalError, match="jitter"):
        cholesky_factor(np.array([[1.0, 2.0], [2.0, 1.0]]))


def test_m1_estimate_matches_definitions(rng):
    x = rng.standard_normal((40, 5))
    est = m1_estimate(x, 0.3)
    losses = np.maximum(x - 0.3, 0.0).mean(axis=1)
    assert est.r0 == pytest.approx(losses.mean())
    assert est.r1 == pytest.approx(losses.var(ddof=1))
    # brute-force delete-one jackknife
    loo = np.array([np.delete(losses, i).var(ddof=1) for i in range(40)])
    se = math.sqrt(39 / 40 * np.sum((loo - loo.mean()) ** 2))
    assert est.stderr == pytest.approx(se, rel=1e-10)
    assert est.r0_stderr == pytest.approx(math.sqrt(est.r1 / 40))


def test_m1_weights(rng):
    x = rng.standard_normal((30, 3))
    a = m1_estimate(x, 0.0, weights=[1.0, 1.0, 1.0])
    b = m1_estimate(x, 0.0)
    assert a.r1 == pytest.approx(b.r1, rel=1e-14)
    c = m1_estimate(x, 0.0, weights=[1.0, 0.0, 0.0])
    assert c.r1 == pytest.approx(np.maximum(x[:, 0], 0).var(ddof=1))


def test_m1_needs_two_replicates():
    with pytest.raises(DomainError):
        m1_estimate(np.zeros((1, 4)), 0.0)
    assert math.isnan(m1_estimate(np.zeros((2, 4)) + [[0.0], [1.0]], 0.0).stderr)


@pytest.mark.parametrize("family", ["exponential", "spherical"])
def test_m1_unbiased_for_grid_risk(family):
    # E[r1] is the pair average of G over the grid points
    g = build_grid(Region("square", 1.0), 36)
    model = CorrelationModel(family, 0.5)
    exact = float(np.mean(damage_cov(np.round(cdist(g.points, g.points), 12), U75, model)))
    est = m1_estimate(sample_fields(g, model, MCConfig(m_reps=20_000, seed=9)), U75)
    assert abs(est.r1 - exact) < 4 * est.stderr


def test_config_validation():
    for kwargs in ({"m_reps": 1}, {"n_points": 0}, {"jitter": -1.0}, {"seed": -1},
                   {"seed": 2 ** 64}, {"grid_mode": "hex"}):
        with pytest.raises(DomainError):
            MCConfig(**kwargs)


def test_relative_error_study_and_csv_round_trip():
    cfg = MCConfig(n_points=16, m_reps=50, seed=2)
    rows = relative_error_study(["exponential", "cubic"], (0.75, 0.9), runs=3, cfg=cfg)
    assert len(rows) == 2 * 2 * 3
    for r in rows:
        assert r.rel_error == pytest.approx((r.r1_mc - r.r1_quad) / r.r1_quad)
    buf = io.StringIO()
    write_study_csv(rows, buf)
    buf.seek(0)
    assert read_study_csv(buf) == rows


def test_relative_error_study_jittered_is_reproducible():
    cfg = MCConfig(n_points=16, m_reps=20, seed=2, grid_mode="stratified-jittered")
    a = relative_error_study(["gaussian"], (0.75,), runs=2, cfg=cfg)
    b = relative_error_study(["gaussian"], (0.75,), runs=2, cfg=cfg)
    assert a == b
    assert a[0].r1_mc != a[1].r1_mc


def test_no_exceedances_gives_zero_risk(rng):
    est = m1_estimate(rng.standard_normal((100, 9)), 10.0)
    assert est.r0 == 0.0 and est.r1 == 0.0


def test_fully_correlated_field_estimates_damage_variance(rng):
    from spatial_risk.damage import damage_var

    z = np.repeat(rng.standard_normal((5000, 1)), 16, axis=1)
    est = m1_estimate(z, U75)
    assert abs(est.r1 - damage_var(U75)) < 3 * est.stderr


def test_stderr_shrinks_with_sqrt_m():
    g = build_grid(Region("square", 1.0), 25)
    model = CorrelationModel("exponential", 0.5)
    a = m1_estimate(sample_fields(g, model, MCConfig(m_reps=1000, seed=8)), U75)
    b = m1_estimate(sample_fields(g, model, MCConfig(m_reps=4000, seed=8)), U75)
    assert a.stderr / b.stderr == pytest.approx(2.0, rel=0.2)


def test_error_spread_widens_with_level():
    rows = relative_error_study(["exponential"], (0.75, 0.95), runs=30, cfg=MCConfig(n_points=49, m_reps=500, seed=3))
    spread = {p: np.subtract(*np.percentile([r.rel_error for r in rows if r.p == p], [75, 25])) for p in (0.75, 0.95)}
    assert spread[0.95] > spread[0.75]
