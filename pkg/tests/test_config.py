import json

import pytest

from spatial_risk.config import ConfigError, load_config, parse_config
from spatial_risk.correlation import CorrelationModel
from spatial_risk.geometry import Region
from spatial_risk.special import quantile

RISK = {
    "risk": {
        "region": {"shape": "square", "size": 1.0},
        "model": {"family": "exponential", "theta": 0.5},
        "threshold": {"p": 0.75},
    }
}


def _with(path, value, base=RISK):
    data = json.loads(json.dumps(base))
    node = data
    keys = path.split(".")
    for k in keys[:-1]:
        node = node[k]
    node[keys[-1]] = value
    return data


def test_risk_record():
    cfg = parse_config(RISK, "risk")
    assert cfg.region == Region("square", 1.0)
    assert cfg.model == CorrelationModel("exponential", 0.5)
    assert cfg.u_raw == pytest.approx(quantile(0.75))


def test_threshold_in_data_units():
    data = _with("risk.threshold", {"u": 2.0})
    data["risk"]["marginal"] = {"mu": 1.0, "sigma2": 4.0}
    cfg = parse_config(data, "risk")
    assert cfg.u_raw == 2.0 and cfg.marginal.sigma == 2.0


@pytest.mark.parametrize(
    "path,value,where",
    [
        ("risk.region.shape", "hexagon", "risk.region.shape"),
        ("risk.region.size", -1, "risk.region.size"),
        ("risk.region.size", "1", "risk.region.size"),
        ("risk.model.family", "linear", "risk.model.family"),
        ("risk.model.theta", 0, "risk.model.theta"),
        ("risk.threshold", {"p": 1.5}, "risk.threshold.p"),
        ("risk.threshold", {"p": 0.5, "u": 1.0}, "risk.threshold"),
        ("risk.colour", "red", "risk.colour"),
        ("risk.region", [1, 2], "risk.region"),
    ],
)
def test_errors_name_the_key(path, value, where):
    with pytest.raises(ConfigError, match=where.replace(".", r"\.")):
        parse_config(_with(path, value), "risk")


def test_missing_required_key():
    data = json.loads(json.dumps(RISK))
    del data["risk"]["model"]
    with pytest.raises(ConfigError, match=r"risk\.model: missing"):
        parse_config(data, "risk")


def test_missing_command_record():
    with pytest.raises(ConfigError, match="curve"):
        parse_config(RISK, "curve")


def test_curve_record_range():
    data = {"curve": {"quantity": "R1", "axis": "lambda", "values": {"start": 0.5, "stop": 2, "num": 4},
                      "families": ["cubic"]}}
    cfg = parse_config(data, "curve")
    assert cfg.values == (0.5, 1.0, 1.5, 2.0) and cfg.families == ("cubic",)


@pytest.mark.parametrize(
    "curve,where",
    [
        ({"quantity": "G", "axis": "lambda", "values": [1]}, r"curve\.axis"),
        ({"quantity": "R1", "axis": "lambda", "values": [1, -1]}, r"curve\.values\[1\]"),
        ({"quantity": "G", "axis": "p", "values": [0.5, 1.0]}, r"curve\.values\[1\]"),
        ({"quantity": "G", "axis": "h", "values": [0.1], "families": ["gaussian", "x"]}, r"curve\.families\[1\]"),
        ({"quantity": "G", "axis": "h", "values": []}, r"curve\.values"),
    ],
)
def test_curve_errors(curve, where):
    with pytest.raises(ConfigError, match=where):
        parse_config({"curve": curve}, "curve")


def test_mc_record_defaults_and_errors():
    cfg = parse_config({"mc": {}}, "mc")
    assert cfg.runs == 100 and cfg.mc.n_points == 225 and len(cfg.families) == 5
    with pytest.raises(ConfigError, match=r"mc\.mc\.seed"):
        parse_config({"mc": {"mc": {"seed": 2 ** 64}}}, "mc")
    with pytest.raises(ConfigError, match=r"mc\.ps\[0\]"):
        parse_config({"mc": {"ps": [0.0]}}, "mc")
    with pytest.raises(ConfigError, match=r"mc\.mc\.m_reps"):
        parse_config({"mc": {"mc": {"m_reps": 1.5}}}, "mc")


def test_load_config_reports_json_position(tmp_path):
    p = tmp_path / "bad.json"
    p.write_text('{"risk": {\n  "region": ,\n}}')
    with pytest.raises(ConfigError, match="line 2, column"):
        load_config(p, "risk")
    with pytest.raises(ConfigError, match="cannot read"):
        load_config(tmp_path / "missing.json", "risk")


def test_shipped_configs_parse():
    from pathlib import Path

    root = Path(__file__).resolve().parent.parent / "configs"
    for path in sorted(root.glob("*.json")):
        command = next(iter(json.loads(path.read_text())))
        load_config(path, command)
