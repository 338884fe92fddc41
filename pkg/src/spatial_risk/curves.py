"""Parameter sweeps of the damage covariance ``G`` and of ``R1``."""

import csv
from dataclasses import dataclass

from .correlation import CorrelationModel
from .damage import damage_cov
from .geometry import Region
from .risk import risk_scaled
from .special import DomainError, quantile

__all__ = ["CurvePoint", "g_curve", "r1_curve", "write_curve_csv", "read_curve_csv", "is_non_increasing"]


@dataclass(frozen=True)
class CurvePoint:
    quantity: str
    family: str
    axis: str
    x: float
    value: float


def g_curve(family, axis, values, theta=0.5, kappa=1.0, p=0.75, h=0.3):
    """``G`` along one of the axes ``h``, ``theta`` or ``p``, the others fixed."""
    out = []
    for x in values:
        th, pp, hh = theta, p, h
        if axis == "h":
            hh = x
        elif axis == "theta":
            th = x
        elif axis == "p":
            pp = x
        else:
            raise DomainError(f"G curves sweep h, theta or p, not {axis!r}")
        value = damage_cov(hh, quantile(pp), CorrelationModel(family, th, kappa))
        out.append(CurvePoint("G", family, axis, float(x), float(value)))
    return out


def r1_curve(family, axis, values, theta=0.5, kappa=1.0, p=0.75, lam=1.0, region=None, quad_cfg=None):
    """``R1(lam A)`` along one of the axes ``lambda``, ``theta`` or ``p``."""
    region = region or Region("square", 1.0)
    out = []
    for x in values:
        th, pp, ll = theta, p, lam
        if axis == "lambda":
            ll = x
        elif axis == "theta":
            th = x
        elif axis == "p":
            pp = x
        else:
            raise DomainError(f"R1 curves sweep lambda, theta or p, not {axis!r}")
        res = risk_scaled(ll, region, CorrelationModel(family, th, kappa), quantile(pp), quad_cfg)
        out.append(CurvePoint("R1", family, axis, float(x), res.r1))
    return out


def is_non_increasing(points, rtol=1e-9):
    """True when ``value`` never increases with ``x`` beyond ``rtol`` per family."""
    by_family = {}
    for pt in points:
        by_family.setdefault(pt.family, []).append(pt)
    for pts in by_family.values():
        pts = sorted(pts, key=lambda q: q.x)
        for a, b in zip(pts, pts[1:]):
            if b.value > a.value + rtol * max(abs(a.value), 1e-300):
                return False
    return True


_HEADER = ("quantity", "family", "axis", "x", "value")


def write_curve_csv(points, fh):
    w = csv.writer(fh, lineterminator="\n")
    w.writerow(_HEADER)
    for pt in points:
        w.writerow((pt.quantity, pt.family, pt.axis, format(pt.x, ".17g"), format(pt.value, ".17g")))


def read_curve_csv(fh):
    reader = csv.reader(fh)
    header = tuple(next(reader))
    if header != _HEADER:
        raise ValueError(f"unexpected header {header}")
    return [CurvePoint(q, f, a, float(x), float(v)) for q, f, a, x, v in reader]
