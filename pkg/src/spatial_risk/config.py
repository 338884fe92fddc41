"""JSON experiment configuration for the command line front-end.

A config file holds one top-level record named after the command::

    {"risk": {"region": {"shape": "square", "size": 1},
              "model": {"family": "exponential", "theta": 0.5},
              "threshold": {"p": 0.75}}}

Every malformed field raises ``ConfigError`` naming its dotted key path.
"""

import json
import math
from dataclasses import dataclass, field

import numpy as np

from .correlation import FAMILIES, CorrelationModel
from .geometry import SHAPES, Region
from .risk import Marginal, QuadratureConfig, standard_threshold
from .simulation import MCConfig

__all__ = [
    "ConfigError",
    "RiskConfig",
    "CurveConfig",
    "MCStudyConfig",
    "load_config",
    "parse_config",
]


class ConfigError(ValueError):
    """A configuration file is unreadable or has an invalid field."""


# ---------------------------------------------------------------------------
# field helpers
# ---------------------------------------------------------------------------


def _record(obj, path, allowed, required=()):
    if not isinstance(obj, dict):
        raise ConfigError(f"{path}: expected an object, got {type(obj).__name__}")
    unknown = sorted(set(obj) - set(allowed))
    if unknown:
        raise ConfigError(f"{path}.{unknown[0]}: unknown key (allowed: {', '.join(allowed)})")
    for key in required:
        if key not in obj:
            raise ConfigError(f"{path}.{key}: missing required key")
    return obj


def _number(obj, key, path, default=None, positive=False, nonneg=False, open01=False):
    if key not in obj:
        if default is None:
            raise ConfigError(f"{path}.{key}: missing required key")
        return default
    v = obj[key]
    if isinstance(v, bool) or not isinstance(v, (int, float)) or not math.isfinite(v):
        raise ConfigError(f"{path}.{key}: expected a finite number, got {v!r}")
    v = float(v)
    if positive and v <= 0:
        raise ConfigError(f"{path}.{key}: must be positive, got {v!r}")
    if nonneg and v < 0:
        raise ConfigError(f"{path}.{key}: must be non-negative, got {v!r}")
    if open01 and not (0 < v < 1):
        raise ConfigError(f"{path}.{key}: must lie in (0, 1), got {v!r}")
    return v


def _integer(obj, key, path, default, minimum):
    if key not in obj:
        return default
    v = obj[key]
    if isinstance(v, bool) or not isinstance(v, int):
        raise ConfigError(f"{path}.{key}: expected an integer, got {v!r}")
    if v < minimum:
        raise ConfigError(f"{path}.{key}: must be at least {minimum}, got {v}")
    return v


def _choice(obj, key, path, choices, default=None):
    if key not in obj:
        if default is None:
            raise ConfigError(f"{path}.{key}: missing required key")
        return default
    v = obj[key]
    if v not in choices:
        raise ConfigError(f"{path}.{key}: {v!r} is not one of {', '.join(choices)}")
    return v


# ---------------------------------------------------------------------------
# component records
# ---------------------------------------------------------------------------


def parse_region(obj, path):
    obj = _record(obj, path, ("shape", "size", "lambda", "offset"), ("shape", "size"))
    shape = obj["shape"]
    if shape not in SHAPES:
        raise ConfigError(
            f"{path}.shape: unsupported shape {shape!r} (supported: {', '.join(SHAPES)})"
        )
    offset = obj.get("offset", [0.0, 0.0])
    if (
        not isinstance(offset, list)
        or len(offset) != 2
        or not all(isinstance(c, (int, float)) and not isinstance(c, bool) for c in offset)
    ):
        raise ConfigError(f"{path}.offset: expected a list of two numbers, got {offset!r}")
    return Region(
        shape,
        _number(obj, "size", path, positive=True),
        _number(obj, "lambda", path, default=1.0, positive=True),
        tuple(float(c) for c in offset),
    )


def parse_model(obj, path):
    obj = _record(obj, path, ("family", "theta", "kappa"), ("family", "theta"))
    return CorrelationModel(
        _choice(obj, "family", path, FAMILIES),
        _number(obj, "theta", path, positive=True),
        _number(obj, "kappa", path, default=1.0, positive=True),
    )


def parse_marginal(obj, path):
    obj = _record(obj, path, ("mu", "sigma2"))
    return Marginal(_number(obj, "mu", path, default=0.0), _number(obj, "sigma2", path, default=1.0, positive=True))


def parse_threshold(obj, path):
    """Return ``("u", value)`` or ``("p", value)``."""
    obj = _record(obj, path, ("u", "p"))
    if ("u" in obj) == ("p" in obj):
        raise ConfigError(f"{path}: give exactly one of u or p")
    if "u" in obj:
        return "u", _number(obj, "u", path)
    return "p", _number(obj, "p", path, open01=True)


def parse_quadrature(obj, path):
    obj = _record(obj, path, ("tol", "limit"))
    return QuadratureConfig(
        _number(obj, "tol", path, default=1e-10, positive=True),
        _integer(obj, "limit", path, 200, 1),
    )


def parse_mc(obj, path):
    obj = _record(obj, path, ("n_points", "m_reps", "seed", "jitter", "grid_mode"))
    seed = _integer(obj, "seed", path, 0, 0)
    if seed >= 2 ** 64:
        raise ConfigError(f"{path}.seed: must fit in 64 bits")
    return MCConfig(
        n_points=_integer(obj, "n_points", path, 225, 1),
        m_reps=_integer(obj, "m_reps", path, 1000, 2),
        seed=seed,
        jitter=_number(obj, "jitter", path, default=0.0, nonneg=True),
        grid_mode=_choice(obj, "grid_mode", path, ("regular", "stratified-jittered"), "regular"),
    )


def _families(obj, key, path):
    fams = obj.get(key, list(FAMILIES))
    if not isinstance(fams, list) or not fams:
        raise ConfigError(f"{path}.{key}: expected a non-empty list of families")
    for i, f in enumerate(fams):
        if f not in FAMILIES:
            raise ConfigError(f"{path}.{key}[{i}]: {f!r} is not one of {', '.join(FAMILIES)}")
    return tuple(fams)


def _values(obj, key, path):
    if key not in obj:
        raise ConfigError(f"{path}.{key}: missing required key")
    v = obj[key]
    if isinstance(v, list):
        if not v or not all(isinstance(x, (int, float)) and not isinstance(x, bool) for x in v):
            raise ConfigError(f"{path}.{key}: expected a non-empty list of numbers")
        return tuple(float(x) for x in v)
    sub = f"{path}.{key}"
    v = _record(v, sub, ("start", "stop", "num"), ("start", "stop", "num"))
    num = _integer(v, "num", sub, None, 1)
    return tuple(float(x) for x in np.linspace(_number(v, "start", sub), _number(v, "stop", sub), num))


# ---------------------------------------------------------------------------
# command records
# ---------------------------------------------------------------------------


@dataclass(frozen=True)
class RiskConfig:
    region: Region
    model: CorrelationModel
    marginal: Marginal
    threshold: tuple
    quad: QuadratureConfig = field(default_factory=QuadratureConfig)

    @property
    def u_raw(self):
        kind, value = self.threshold
        if kind == "u":
            return standard_threshold(u=value)
        return standard_threshold(p=value, marginal=self.marginal)


@dataclass(frozen=True)
class CurveConfig:
    quantity: str          # "G" or "R1"
    axis: str              # "h", "theta", "p" or "lambda"
    values: tuple
    families: tuple
    theta: float = 0.5
    kappa: float = 1.0
    p: float = 0.75
    h: float = 0.3
    lam: float = 1.0
    region: Region = Region("square", 1.0)
    quad: QuadratureConfig = field(default_factory=QuadratureConfig)


@dataclass(frozen=True)
class MCStudyConfig:
    families: tuple
    ps: tuple = (0.75, 0.85, 0.95)
    theta: float = 0.5
    kappa: float = 1.0
    runs: int = 100
    region: Region = Region("square", 1.0)
    mc: MCConfig = field(default_factory=MCConfig)
    quad: QuadratureConfig = field(default_factory=QuadratureConfig)


def _risk(obj, path):
    obj = _record(
        obj, path, ("region", "model", "marginal", "threshold", "quadrature"),
        ("region", "model", "threshold"),
    )
    return RiskConfig(
        region=parse_region(obj["region"], f"{path}.region"),
        model=parse_model(obj["model"], f"{path}.model"),
        marginal=parse_marginal(obj.get("marginal", {}), f"{path}.marginal"),
        threshold=parse_threshold(obj["threshold"], f"{path}.threshold"),
        quad=parse_quadrature(obj.get("quadrature", {}), f"{path}.quadrature"),
    )


_CURVE_AXES = {"G": ("h", "theta", "p"), "R1": ("lambda", "theta", "p")}


def _curve(obj, path):
    obj = _record(
        obj, path,
        ("quantity", "axis", "values", "families", "theta", "kappa", "p", "h", "lambda",
         "region", "quadrature"),
        ("quantity", "axis", "values"),
    )
    quantity = _choice(obj, "quantity", path, tuple(_CURVE_AXES))
    axis = _choice(obj, "axis", path, _CURVE_AXES[quantity])
    values = _values(obj, "values", path)
    checks = {"h": "nonneg", "theta": "positive", "lambda": "positive", "p": "open01"}
    for i, x in enumerate(values):
        kind = checks[axis]
        bad = (
            (kind == "nonneg" and x < 0)
            or (kind == "positive" and x <= 0)
            or (kind == "open01" and not 0 < x < 1)
        )
        if bad:
            raise ConfigError(f"{path}.values[{i}]: {x!r} is out of range for axis {axis!r}")
    return CurveConfig(
        quantity=quantity,
        axis=axis,
        values=values,
        families=_families(obj, "families", path),
        theta=_number(obj, "theta", path, default=0.5, positive=True),
        kappa=_number(obj, "kappa", path, default=1.0, positive=True),
        p=_number(obj, "p", path, default=0.75, open01=True),
        h=_number(obj, "h", path, default=0.3, nonneg=True),
        lam=_number(obj, "lambda", path, default=1.0, positive=True),
        region=parse_region(obj["region"], f"{path}.region") if "region" in obj else Region("square", 1.0),
        quad=parse_quadrature(obj.get("quadrature", {}), f"{path}.quadrature"),
    )


def _mc(obj, path):
    obj = _record(
        obj, path, ("families", "ps", "theta", "kappa", "runs", "region", "mc", "quadrature")
    )
    ps = obj.get("ps", [0.75, 0.85, 0.95])
    if not isinstance(ps, list) or not ps:
        raise ConfigError(f"{path}.ps: expected a non-empty list of probabilities")
    for i, p in enumerate(ps):
        if isinstance(p, bool) or not isinstance(p, (int, float)) or not 0 < p < 1:
            raise ConfigError(f"{path}.ps[{i}]: must lie in (0, 1), got {p!r}")
    return MCStudyConfig(
        families=_families(obj, "families", path),
        ps=tuple(float(p) for p in ps),
        theta=_number(obj, "theta", path, default=0.5, positive=True),
        kappa=_number(obj, "kappa", path, default=1.0, positive=True),
        runs=_integer(obj, "runs", path, 100, 1),
        region=parse_region(obj["region"], f"{path}.region") if "region" in obj else Region("square", 1.0),
        mc=parse_mc(obj.get("mc", {}), f"{path}.mc"),
        quad=parse_quadrature(obj.get("quadrature", {}), f"{path}.quadrature"),
    )


_PARSERS = {"risk": _risk, "curve": _curve, "mc": _mc}


def parse_config(data, command):
    """Build the config record for ``command`` from decoded JSON ``data``."""
    if not isinstance(data, dict):
        raise ConfigError("top level: expected an object")
    if command not in data:
        raise ConfigError(f"{command}: missing top-level record for this command")
    try:
        return _PARSERS[command](data[command], command)
    except ConfigError:
        raise
    except ValueError as exc:
        # component invariants not covered by the field checks
        raise ConfigError(f"{command}: {exc}") from exc


def load_config(path, command):
    try:
        with open(path, encoding="utf-8") as fh:
            text = fh.read()
    except OSError as exc:
        raise ConfigError(f"cannot read config {path}: {exc.strerror}") from exc
    try:
        data = json.loads(text)
    except json.JSONDecodeError as exc:
        raise ConfigError(f"{path}: line {exc.lineno}, column {exc.colno}: {exc.msg}") from exc
    return parse_config(data, command)
