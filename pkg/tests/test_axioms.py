import pytest

from spatial_risk.axioms import check_subadditivity, check_translation_invariance
from spatial_risk.correlation import FAMILIES, CorrelationModel
from spatial_risk.geometry import Region
from spatial_risk.simulation import MCConfig
from spatial_risk.special import DomainError, quantile

U75 = quantile(0.75)


@pytest.mark.parametrize("family", FAMILIES)
@pytest.mark.parametrize("shape", ["disk", "square"])
def test_translation_invariance_is_exact(family, shape):
    a, b, same = check_translation_invariance(
        Region(shape, 1.0), (13.5, -2.25), CorrelationModel(family, 0.5), U75
    )
    assert same and a == b


@pytest.mark.parametrize("offset", [(1.0, 0.0), (5.0, 0.0)])
def test_subadditivity_for_square_pairs(offset):
    rep = check_subadditivity(
        Region("square", 1.0), Region("square", 1.0, offset=offset),
        CorrelationModel("exponential", 0.5), U75, MCConfig(n_points=64, m_reps=1000, seed=4),
    )
    assert rep.subadditive
    assert rep.margin == pytest.approx(rep.r1_a + rep.r1_b - rep.r1_union)
    assert rep.margin_stderr > 0


def test_distant_union_halves_the_risk():
    # independent halves: R1(A u B) ~ (R1(A) + R1(B)) / 4
    rep = check_subadditivity(
        Region("square", 1.0), Region("square", 1.0, offset=(50.0, 0.0)),
        CorrelationModel("spherical", 0.5), U75, MCConfig(n_points=49, m_reps=4000, seed=1),
    )
    assert rep.r1_union == pytest.approx((rep.r1_a + rep.r1_b) / 4, rel=0.15)
    assert rep.super_subadditive


def test_overlapping_regions_rejected():
    with pytest.raises(DomainError):
        check_subadditivity(
            Region("square", 1.0), Region("square", 1.0, offset=(0.5, 0.0)),
            CorrelationModel("exponential", 0.5), U75,
        )


def test_needs_three_replicates():
    with pytest.raises(DomainError):
        check_subadditivity(
            Region("square", 1.0), Region("square", 1.0, offset=(2.0, 0.0)),
            CorrelationModel("exponential", 0.5), U75, MCConfig(m_reps=2),
        )
