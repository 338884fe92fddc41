"""How fast does the damage covariance decay with distance?

G(h, u) is the covariance of the excess (X - u)^+ at two sites h apart. It
starts at the damage variance and falls to zero at the correlation range,
exactly at theta for the compactly supported families.
"""

import numpy as np

from spatial_risk import FAMILIES, CorrelationModel, damage_cov, quantile

theta = 0.5
u = quantile(0.75)
hs = np.linspace(0.0, 1.5, 7)

print(f"G(h, u) at u = quantile(0.75) = {u:.4f}, theta = {theta}")
print("h      " + "".join(f"{f:>13s}" for f in FAMILIES))
for h in hs:
    row = [damage_cov(h, u, CorrelationModel(f, theta)) for f in FAMILIES]
    print(f"{h:<6.2f} " + "".join(f"{g:13.6f}" for g in row))

# Raising the threshold shrinks the damage variance and, relative to it,
# the covariance at a fixed distance.
print()
print("G(0.3, u) / G(0, u) against the level p (exponential)")
m = CorrelationModel("exponential", theta)
for p in (0.5, 0.75, 0.9, 0.99):
    up = quantile(p)
    print(f"p={p:<5} ratio={damage_cov(0.3, up, m) / damage_cov(0.0, up, m):.4f}")
