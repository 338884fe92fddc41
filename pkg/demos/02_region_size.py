"""Spatial diversification: R1 of a region shrinks as the region grows.

R1(lam A) is the variance of the average excess over the homothetic region
lam A. Large regions average many nearly independent pieces, so R1 falls
from the damage variance G(0, u) towards zero.
"""

import numpy as np

from spatial_risk import FAMILIES, CorrelationModel, Region, damage_var, quantile, risk_scaled

u = quantile(0.75)
unit = Region("square", 1.0)
lams = np.geomspace(0.1, 100.0, 7)
g0 = damage_var(u)

print(f"R1(lam [0,1]^2) / G(0, u), theta = 0.5, G(0, u) = {g0:.5f}")
print("lambda   " + "".join(f"{f:>13s}" for f in FAMILIES))
for lam in lams:
    row = [risk_scaled(lam, unit, CorrelationModel(f, 0.5), u).r1 / g0 for f in FAMILIES]
    print(f"{lam:<8.3g} " + "".join(f"{r:13.3e}" for r in row))

# Disk against square of equal area: the disk is more compact, so its
# points are closer on average and its risk is slightly higher.
side = 1.0
radius = side / np.sqrt(np.pi)
m = CorrelationModel("gaussian", 0.5)
print()
print(f"equal-area comparison (gaussian): square {risk_scaled(1, Region('square', side), m, u).r1:.5f}"
      f"  disk {risk_scaled(1, Region('disk', radius), m, u).r1:.5f}")
