"""Disk and square regions and the distribution of the distance between two
independent uniform points in them."""

import math
from dataclasses import dataclass

import numpy as np
from scipy.integrate import quad

from .special import DomainError

__all__ = [
    "SHAPES",
    "Region",
    "pair_distance_density",
    "pair_distance_cdf",
    "pair_distance_mean",
    "sample_points",
    "sample_pair_distance",
    "regions_overlap",
]

SHAPES = ("disk", "square")


@dataclass(frozen=True)
class Region:
    """A disk of radius ``size`` or a square of side ``size``, scaled by the
    homothety factor ``lam`` and placed at ``offset``.

    The disk is centred on ``offset``; the square has its lower-left corner
    there. The offset never affects risk values, only the placement used by
    the simulation of unions of regions.
    """

    shape: str
    size: float
    lam: float = 1.0
    offset: tuple = (0.0, 0.0)

    def __post_init__(self):
        if self.shape not in SHAPES:
            raise DomainError(
                f"unsupported shape {self.shape!r}; closed forms exist for {SHAPES}, "
                "use the Monte Carlo path for other regions"
            )
        if not (math.isfinite(self.size) and self.size > 0):
            raise DomainError(f"size must be positive, got {self.size!r}")
        if not (math.isfinite(self.lam) and self.lam > 0):
            raise DomainError(f"lambda must be positive, got {self.lam!r}")
        object.__setattr__(self, "offset", tuple(float(c) for c in self.offset))
        if len(self.offset) != 2:
            raise DomainError("offset must have two coordinates")

    @property
    def scaled_size(self):
        return self.size * self.lam

    @property
    def area(self):
        s = self.scaled_size
        return math.pi * s * s if self.shape == "disk" else s * s

    @property
    def max_distance(self):
        s = self.scaled_size
        return 2.0 * s if self.shape == "disk" else math.sqrt(2.0) * s

    def base(self):
        """The same region with ``lam = 1`` and no offset."""
        return Region(self.shape, self.size)

    def scaled(self, lam):
        return Region(self.shape, self.size, self.lam * lam, self.offset)

    def translated(self, v):
        return Region(self.shape, self.size, self.lam, (self.offset[0] + v[0], self.offset[1] + v[1]))

    def contains(self, points, tol=0.0):
        """Boolean mask of the points (shape ``(n, 2)``) lying in the region."""
        p = np.asarray(points, dtype=float) - np.asarray(self.offset)
        s = self.scaled_size
        if self.shape == "disk":
            return np.hypot(p[:, 0], p[:, 1]) <= s + tol
        return np.all((p >= -tol) & (p <= s + tol), axis=1)


def _f_disk_unit(t):
    # density of the distance for the unit-radius disk, t in [0, 2]
    if t >= 2.0:
        return 0.0
    half = 0.5 * t
    return 2.0 * t * (2.0 / math.pi) * (math.acos(half) - half * math.sqrt(1.0 - half * half))


def _square_near(t):
    # unit-square branch for 0 <= t <= 1
    return 2.0 * math.pi * t - 8.0 * t * t + 2.0 * t ** 3


def _square_far(t):
    # unit-square branch for 1 <= t <= sqrt 2
    b = t * t
    r = math.sqrt(b - 1.0)
    return 2.0 * t * (4.0 * r - (b + 2.0 - math.pi) - 4.0 * math.atan(r))


def _f_square_unit(t):
    # density of the distance for the unit square, t in [0, sqrt 2]
    if t <= 1.0:
        return _square_near(t)
    if t * t >= 2.0:
        return 0.0
    return _square_far(t)


def _f_square_far_printed(t):
    """Upper branch (``1 <= t <= sqrt 2``) of the unit-square density in the
    arcsine form it is often published in. Algebraically equal to the branch
    used by ``pair_distance_density`` but it loses all precision as t -> 1,
    where two terms of order ``1/sqrt(t^2 - 1)`` cancel. Kept for
    cross-checking only."""
    b = t * t
    r = math.sqrt(b - 1.0)
    return 2.0 * t * (
        -2.0 - b + 3.0 * r + (b + 1.0) / r
        + 2.0 * math.asin((2.0 - b) / b)
        - 4.0 / (b * math.sqrt(1.0 - ((2.0 - b) / b) ** 2))
    )


def _unit_density(shape):
    return _f_disk_unit if shape == "disk" else _f_square_unit


def pair_distance_density(region, h):
    """Density at ``h`` of the distance between two independent uniform
    points of ``region``; zero outside ``[0, region.max_distance]``."""
    h = float(h)
    if not (h >= 0.0):
        raise DomainError(f"distance must be non-negative, got {h!r}")
    if region.lam != 1.0:
        # f(h, lam R) = f(h / lam, R) / lam
        return pair_distance_density(region.base(), h / region.lam) / region.lam
    s = region.size
    return _unit_density(region.shape)(h / s) / s


def _unit_kinks(shape):
    return (2.0,) if shape == "disk" else (1.0, math.sqrt(2.0))


def pair_distance_cdf(region, h):
    """Distribution function of the pair distance, by quadrature of the density."""
    h = float(h)
    if h <= 0.0:
        return 0.0
    s = region.size * region.lam
    t = h / s
    f = _unit_density(region.shape)
    edges = [0.0] + [k for k in _unit_kinks(region.shape) if k < t] + [min(t, _unit_kinks(region.shape)[-1])]
    total = 0.0
    for a, b in zip(edges[:-1], edges[1:]):
        total += quad(f, a, b, epsabs=1e-13, epsrel=1e-13, limit=200)[0]
    return min(1.0, total)


def pair_distance_mean(region):
    """Mean pair distance (line-picking constant times the size)."""
    s = region.size * region.lam
    if region.shape == "disk":
        return 128.0 / (45.0 * math.pi) * s
    r2 = math.sqrt(2.0)
    return (2.0 + r2 + 5.0 * math.log(1.0 + r2)) / 15.0 * s


def sample_points(region, rng, size):
    """``size`` independent uniform points of the region, shape ``(size, 2)``."""
    s = region.scaled_size
    if region.shape == "disk":
        radius = s * np.sqrt(rng.random(size))
        angle = 2.0 * math.pi * rng.random(size)
        pts = np.column_stack((radius * np.cos(angle), radius * np.sin(angle)))
    else:
        pts = s * rng.random((size, 2))
    return pts + np.asarray(region.offset)


def sample_pair_distance(region, rng, size=None):
    """Distance between two independent uniform points of ``region``.

    Returns a float when ``size`` is None, otherwise an array of ``size``
    independent draws.
    """
    n = 1 if size is None else int(size)
    d = np.linalg.norm(sample_points(region, rng, n) - sample_points(region, rng, n), axis=1)
    return float(d[0]) if size is None else d


def regions_overlap(a, b):
    """True when the regions share a set of positive area."""
    if a.shape == "square" and b.shape == "square":
        ax, ay = a.offset
        bx, by = b.offset
        sa, sb = a.scaled_size, b.scaled_size
        dx = min(ax + sa, bx + sb) - max(ax, bx)
        dy = min(ay + sa, by + sb) - max(ay, by)
        return dx > 0 and dy > 0
    if a.shape == "disk" and b.shape == "disk":
        d = math.dist(a.offset, b.offset)
        return d < a.scaled_size + b.scaled_size
    disk, sq = (a, b) if a.shape == "disk" else (b, a)
    cx, cy = disk.offset
    x0, y0 = sq.offset
    s = sq.scaled_size
    nx = min(max(cx, x0), x0 + s)
    ny = min(max(cy, y0), y0 + s)
    return math.hypot(cx - nx, cy - ny) < disk.scaled_size
