"""Gaussian random fields on point grids and the M1 Monte Carlo estimator of
the risk measure.

Every replicate ``j`` draws its normals from its own stream, seeded by
``SeedSequence(seed, spawn_key=(*stream, j))``, so results do not depend
on how replicates are spread over threads.
"""

import csv
import math
from concurrent.futures import ThreadPoolExecutor
from dataclasses import dataclass, field

import numpy as np
from scipy.spatial.distance import cdist

from .correlation import CorrelationModel
from .geometry import Region
from .risk import risk_standard
from .special import DomainError, quantile

__all__ = [
    "ResourceError",
    "NumericalError",
    "Grid",
    "MCConfig",
    "M1Estimate",
    "StudyRow",
    "build_grid",
    "covariance_matrix",
    "cholesky_factor",
    "replicate_rng",
    "sample_fields",
    "m1_estimate",
    "relative_error_study",
    "write_study_csv",
    "read_study_csv",
]

MAX_POINTS = 10_000
_BLOCK = 128  # replicates per matmul block; fixed so outputs never depend on thread count
_RETRY_JITTER = 1e-10


class ResourceError(RuntimeError):
    """Raised when a request would exceed a configured resource bound."""


class NumericalError(ArithmeticError):
    """Raised when a covariance matrix cannot be factorized."""


@dataclass(frozen=True)
class Grid:
    points: np.ndarray
    region: Region = None

    @property
    def n(self):
        return len(self.points)


@dataclass(frozen=True)
class MCConfig:
    """Monte Carlo settings.

    ``jitter`` is added to the covariance diagonal before factorization.
    ``threads`` only changes speed, never results.
    """

    n_points: int = 225
    m_reps: int = 1000
    seed: int = 0
    jitter: float = 0.0
    grid_mode: str = "regular"
    threads: int = None

    def __post_init__(self):
        if self.m_reps < 2:
            raise DomainError(f"m_reps must be at least 2, got {self.m_reps}")
        if self.n_points < 1:
            raise DomainError(f"n_points must be positive, got {self.n_points}")
        if self.jitter < 0:
            raise DomainError(f"jitter must be non-negative, got {self.jitter}")
        if not (0 <= self.seed < 2 ** 64):
            raise DomainError("seed must be an unsigned 64-bit integer")
        if self.grid_mode not in ("regular", "stratified-jittered"):
            raise DomainError(f"unknown grid mode {self.grid_mode!r}")


@dataclass(frozen=True)
class M1Estimate:
    r0: float
    r1: float
    stderr: float       # jackknife standard error of r1
    r0_stderr: float
    m: int
    losses: np.ndarray = field(repr=False, default=None)


@dataclass(frozen=True)
class StudyRow:
    family: str
    p: float
    run_index: int
    r1_mc: float
    r1_quad: float
    rel_error: float


# ---------------------------------------------------------------------------
# Grids
# ---------------------------------------------------------------------------


def _lattice_shape(n):
    rows = math.isqrt(n)
    while n % rows:
        rows -= 1
    return rows, n // rows


def _concentric(a, b):
    # Shirley-Chiu map of [-1, 1]^2 onto the unit disk; preserves area fractions.
    r = np.where(np.abs(a) > np.abs(b), a, b)
    with np.errstate(divide="ignore", invalid="ignore"):
        ang = np.where(
            np.abs(a) > np.abs(b),
            (math.pi / 4.0) * (b / a),
            math.pi / 2.0 - (math.pi / 4.0) * (a / b),
        )
    ang = np.where((a == 0) & (b == 0), 0.0, ang)
    return np.column_stack((r * np.cos(ang), r * np.sin(ang)))


def build_grid(region, n, mode="regular", rng=None, max_points=MAX_POINTS):
    """``n`` points covering ``region``, one per cell of an equal-area lattice.

    The lattice has ``rows x cols = n`` cells (as square as ``n`` allows).
    ``mode="regular"`` takes cell centres, ``"stratified-jittered"`` one
    uniform point per cell. Disks use the image of the square lattice under
    an area-preserving map, so their cells have equal areas too.
    """
    n = int(n)
    if n < 1:
        raise DomainError(f"grid size must be positive, got {n}")
    if n > max_points:
        raise ResourceError(
            f"grid of {n} points exceeds the limit of {max_points} (dense factorization cost)"
        )
    rows, cols = _lattice_shape(n)
    iy, ix = np.divmod(np.arange(n), cols)
    if mode == "regular":
        fx = np.full(n, 0.5)
        fy = np.full(n, 0.5)
    elif mode == "stratified-jittered":
        if rng is None:
            raise DomainError("stratified-jittered grids need a random generator")
        fx = rng.random(n)
        fy = rng.random(n)
    else:
        raise DomainError(f"unknown grid mode {mode!r}")
    x = (ix + fx) / cols
    y = (iy + fy) / rows
    s = region.scaled_size
    if region.shape == "square":
        pts = s * np.column_stack((x, y))
    else:
        pts = s * _concentric(2.0 * x - 1.0, 2.0 * y - 1.0)
    return Grid(pts + np.asarray(region.offset), region)


# ---------------------------------------------------------------------------
# Field sampling
# ---------------------------------------------------------------------------


def covariance_matrix(points, model, jitter=0.0):
    d = cdist(points, points)
    cov = model(d)
    if jitter:
        cov = cov + jitter * np.eye(len(points))
    return cov


def cholesky_factor(cov, jitter=0.0):
    """Lower Cholesky factor, retrying once with jitter 1e-10 on failure."""
    try:
        return np.linalg.cholesky(cov)
    except np.linalg.LinAlgError:
        pass
    if jitter < _RETRY_JITTER:
        try:
            return np.linalg.cholesky(cov + (_RETRY_JITTER - jitter) * np.eye(len(cov)))
        except np.linalg.LinAlgError:
            pass
    raise NumericalError(
        "covariance matrix is not numerically positive definite; "
        "increase the jitter (diagonal regularization)"
    )


def replicate_rng(seed, stream, j):
    """Generator of replicate ``j`` within substream ``stream`` of ``seed``."""
    return np.random.default_rng(np.random.SeedSequence(seed, spawn_key=(*stream, j)))


def _normals(seed, stream, start, stop, n):
    z = np.empty((stop - start, n))
    for i, j in enumerate(range(start, stop)):
        z[i] = replicate_rng(seed, stream, j).standard_normal(n)
    return z


def sample_fields(grid, model, cfg, stream=()):
    """``cfg.m_reps`` exact draws of a standard field with correlation
    ``model`` at the grid points, as an array of shape ``(m_reps, n)``.

    Each row is one realization ``L z`` with ``L`` the lower Cholesky factor
    of the covariance matrix and ``z`` i.i.d. standard normal.
    """
    points = grid.points if isinstance(grid, Grid) else np.asarray(grid, dtype=float)
    n = len(points)
    chol = cholesky_factor(covariance_matrix(points, model, cfg.jitter), cfg.jitter)
    m = cfg.m_reps
    blocks = [(a, min(a + _BLOCK, m)) for a in range(0, m, _BLOCK)]

    def work(block):
        a, b = block
        return _normals(cfg.seed, stream, a, b, n) @ chol.T

    threads = cfg.threads or 1
    if threads > 1 and len(blocks) > 1:
        with ThreadPoolExecutor(max_workers=threads) as pool:
            parts = list(pool.map(work, blocks))
    else:
        parts = [work(b) for b in blocks]
    return np.concatenate(parts, axis=0)


# ---------------------------------------------------------------------------
# M1 estimator
# ---------------------------------------------------------------------------


def _loo_variances(x):
    # leave-one-out unbiased variances; the leave-one-out sum of squares is
    # ss - m/(m-1) d_i^2
    m = len(x)
    d = x - x.mean()
    ss = float(np.dot(d, d))
    return (ss - m / (m - 1.0) * d * d) / (m - 2.0)


def _jackknife_se(loo):
    m = len(loo)
    return math.sqrt((m - 1.0) / m * float(np.sum((loo - loo.mean()) ** 2)))


def _jackknife_var_se(x):
    if len(x) < 3:
        return math.nan
    return _jackknife_se(_loo_variances(x))


def m1_estimate(samples, u, weights=None):
    """M1 estimate of ``(R0, R1)`` from field samples of shape ``(m, n)``.

    Each replicate's normalized loss is the spatial average of the excess
    ``(X(s_i) - u)^+`` over the grid (equal weights unless ``weights`` is
    given). ``r1`` is the unbiased sample variance of the losses; its
    standard error is the delete-one jackknife.
    """
    x = np.asarray(samples, dtype=float)
    if x.ndim != 2 or x.shape[0] < 2:
        raise DomainError("need at least 2 field replicates")
    excess = np.maximum(x - u, 0.0)
    if weights is None:
        losses = excess.mean(axis=1)
    else:
        w = np.asarray(weights, dtype=float)
        losses = excess @ (w / w.sum())
    m = len(losses)
    r0 = float(losses.mean())
    r1 = float(losses.var(ddof=1))
    return M1Estimate(
        r0=r0,
        r1=r1,
        stderr=_jackknife_var_se(losses),
        r0_stderr=math.sqrt(r1 / m),
        m=m,
        losses=losses,
    )


# ---------------------------------------------------------------------------
# Relative error study
# ---------------------------------------------------------------------------


def relative_error_study(
    families,
    ps=(0.75, 0.85, 0.95),
    region=None,
    theta=0.5,
    kappa=1.0,
    runs=100,
    cfg=None,
    quad_cfg=None,
):
    """Relative errors of repeated M1 estimates of ``R1`` against quadrature.

    For each family, ``runs`` independent sets of ``cfg.m_reps`` fields are
    simulated; each set is evaluated at every level in ``ps``
    (threshold ``quantile(p)``). Returns a list of ``StudyRow``.
    """
    region = region or Region("square", 1.0)
    cfg = cfg or MCConfig()
    rows = []
    grid = None
    if cfg.grid_mode == "regular":
        grid = build_grid(region, cfg.n_points, "regular")
    for fam_index, family in enumerate(families):
        model = CorrelationModel(family, theta, kappa)
        us = [quantile(p) for p in ps]
        quad_vals = [risk_standard(region, model, u, quad_cfg).r1 for u in us]
        for run in range(runs):
            g = grid
            if g is None:
                grid_rng = np.random.default_rng(
                    np.random.SeedSequence(cfg.seed, spawn_key=(fam_index, run, 0))
                )
                g = build_grid(region, cfg.n_points, cfg.grid_mode, grid_rng)
            fields = sample_fields(g, model, cfg, stream=(fam_index, run, 1))
            for p, u, rq in zip(ps, us, quad_vals):
                est = m1_estimate(fields, u)
                rows.append(StudyRow(family, float(p), run, est.r1, rq, (est.r1 - rq) / rq))
    return rows


_STUDY_HEADER = ("family", "p", "run_index", "r1_mc", "r1_quad", "rel_error")


def _fmt(x):
    return format(x, ".17g")


def write_study_csv(rows, fh):
    w = csv.writer(fh, lineterminator="\n")
    w.writerow(_STUDY_HEADER)
    for r in rows:
        w.writerow((r.family, _fmt(r.p), r.run_index, _fmt(r.r1_mc), _fmt(r.r1_quad), _fmt(r.rel_error)))


def read_study_csv(fh):
    reader = csv.reader(fh)
    header = tuple(next(reader))
    if header != _STUDY_HEADER:
        raise ValueError(f"unexpected header {header}")
    return [
        StudyRow(f, float(p), int(i), float(a), float(b), float(c))
        for f, p, i, a, b, c in reader
    ]
