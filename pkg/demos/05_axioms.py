"""Checking the axioms of a spatial risk measure.

Translation invariance holds exactly: R1 only depends on the shape and
size of a region. Sub-additivity is checked by simulating one field on two
disjoint squares and on their union.
"""

from spatial_risk import CorrelationModel, MCConfig, Region, quantile
from spatial_risk.axioms import check_subadditivity, check_translation_invariance

u = quantile(0.75)
model = CorrelationModel("exponential", 0.5)
unit = Region("square", 1.0)

a, b, same = check_translation_invariance(unit, (42.0, -7.0), model, u)
print(f"translation: R1(A) = {a:.10f}, R1(A + v) = {b:.10f}, identical = {same}")

for gap in (1.0, 3.0, 10.0):
    rep = check_subadditivity(unit, unit.translated((gap, 0.0)), model, u,
                              MCConfig(n_points=100, m_reps=2000, seed=1))
    print(
        f"offset {gap:>4}: R1(A)={rep.r1_a:.4f} R1(B)={rep.r1_b:.4f} R1(A u B)={rep.r1_union:.4f}"
        f"  margin={rep.margin:+.4f} +/- {rep.margin_stderr:.4f}"
        f"  sub-additive={rep.subadditive} super sub-additive={rep.super_subadditive}"
    )
