import json

import numpy as np
import pytest

from olctkit import __version__
from olctkit import io as oio
from olctkit.cli import RunConfig, main, parse_args
from olctkit.errors import UsageError
from olctkit.params import ft


@pytest.fixture
def signal(tmp_path):
    path = tmp_path / "f.csv"
    assert main(["gen", "--n", "256", "--signal", "gaussian:sigma=1", "--out", str(path)]) == 0
    return path


def test_transform_defaults():
    cfg = parse_args(["transform", "--params", "0,1,-1,0,0,0", "--in", "f.csv", "--out", "F.csv"])
    assert cfg.params == ft() and cfg.method == "fast" and cfg.command == "transform"
    assert cfg.threads >= 1 and cfg.dt is not None and cfg.t0 is not None


def test_bad_params_cite_unimodularity(capsys):
    with pytest.raises(UsageError, match="ad - bc"):
        parse_args(["transform", "--params", "1,1,1,1,0,0", "--in", "a", "--out", "b"])
    assert main(["transform", "--params", "1,1,1,1,0,0", "--in", "a", "--out", "b"]) == 1
    assert "ad - bc" in capsys.readouterr().err


def test_unknown_flag_is_error():
    with pytest.raises(UsageError):
        parse_args(["verify", "parseval", "--bogus"])
    with pytest.raises(UsageError):
        parse_args([])
    with pytest.raises(UsageError):
        parse_args(["transform", "--in", "x"])


def test_lieb_flag_mapping():
    cfg = parse_args(["verify", "lieb", "--p", "4", "--seed", "7", "--n", "512"])
    assert (cfg.p, cfg.seed, cfg.n) == (4.0, 7, 512)


def test_config_precedence(tmp_path):
    conf = tmp_path / "c.json"
    conf.write_text(json.dumps({"seed": 3, "n": 64, "method": "quadrature"}))
    cfg = parse_args(["verify", "parseval", "--config", str(conf), "--seed", "9"])
    assert cfg.seed == 9 and cfg.n == 64 and cfg.method == "quadrature"
    conf.write_text(json.dumps({"nope": 1}))
    with pytest.raises(UsageError):
        parse_args(["verify", "parseval", "--config", str(conf)])


def test_config_round_trip():
    cfg = parse_args(["verify", "donoho-stark", "--params", "2,1,1,1,0.3,-0.2", "--omega", "-1,1"])
    again = RunConfig.from_dict(json.loads(json.dumps(cfg.to_dict())))
    assert again == cfg


def test_version(capsys):
    with pytest.raises(SystemExit) as exc:
        main(["--version"])
    assert exc.value.code == 0
    assert __version__ in capsys.readouterr().out


def test_verify_parseval_defaults(tmp_path):
    report = tmp_path / "r.json"
    assert main(["verify", "parseval", "--report", str(report)]) == 0
    obj = json.loads(report.read_text())
    assert obj["pass"] is True and obj["metadata"]["cases"] == 100


def test_verify_lieb_records_p(tmp_path):
    report = tmp_path / "r.json"
    assert main(["verify", "lieb", "--p", "4", "--seed", "7", "--n", "128", "--cases", "3",
                 "--report", str(report)]) == 0
    assert json.loads(report.read_text())["metadata"]["config"]["p"] == 4.0


def test_verify_trivial_donoho_stark(tmp_path):
    report = tmp_path / "r.json"
    assert main(["verify", "donoho-stark", "--omega", "5,6", "--gamma", "5,6", "--report", str(report)]) == 0
    obj = json.loads(report.read_text())
    assert obj["pass"] and obj["metadata"]["trivial"]


def test_verify_failure_exit_code(tmp_path):
    # whole-grid sets are not proper: the probe is reported as failed
    report = tmp_path / "r.json"
    status = main(["verify", "abb", "--omega", "-100,100", "--gamma", "-100,100", "--n", "64",
                   "--report", str(report)])
    assert status == 2
    assert json.loads(report.read_text())["pass"] is False


def test_verify_report_to_stdout(capsys):
    assert main(["verify", "support", "--cases", "4"]) == 0
    assert json.loads(capsys.readouterr().out)["name"] == "support"


def test_missing_input_names_path(tmp_path, capsys):
    missing = tmp_path / "nope.csv"
    assert main(["transform", "--params", "0,1,-1,0,0,0", "--in", str(missing), "--out", str(tmp_path / "F.csv")]) == 1
    assert str(missing) in capsys.readouterr().err


def test_transform_inverse_round_trip(tmp_path, signal):
    F = tmp_path / "F.csv"
    g = tmp_path / "g.csv"
    assert main(["transform", "--params", "1,1,0,1,0.5,0.3", "--in", str(signal), "--out", str(F)]) == 0
    assert main(["inverse", "--in", str(F), "--out", str(g)]) == 0
    a, b = oio.read_signal(signal), oio.read_signal(g)
    np.testing.assert_allclose(b.samples, a.samples, atol=1e-12)


def test_quad_method_flag(tmp_path, signal):
    F1, F2 = tmp_path / "F1.csv", tmp_path / "F2.csv"
    assert main(["transform", "--params", "0,1,-1,0,0,0", "--in", str(signal), "--out", str(F1)]) == 0
    assert main(["transform", "--params", "0,1,-1,0,0,0", "--in", str(signal), "--out", str(F2), "--method", "quad"]) == 0
    a, b = oio.read_spectrum(F1), oio.read_spectrum(F2)
    assert b.method == "quadrature"
    np.testing.assert_allclose(a.samples, b.samples, atol=1e-10)


def test_stolct_command(tmp_path, signal):
    out = tmp_path / "grid.json"
    assert main(["stolct", "--params", "0,1,-1,0,0,0", "--window", "gaussian:1.0", "--hop", "4",
                 "--in", str(signal), "--out", str(out)]) == 0
    obj = json.loads(out.read_text())
    assert obj["nx"] == 64 and obj["nu"] == 256 and len(obj["values"]) == 64 * 256


def test_negative_list_values(tmp_path, signal):
    cfg = parse_args(["verify", "donoho-stark", "--omega", "-1,1", "--gamma", "-2,-0.5"])
    assert cfg.omega == (-1.0, 1.0) and cfg.gamma == (-2.0, -0.5)
    out = tmp_path / "P.csv"
    assert main(["transform", "--params", "-1,0,0,-1,0,0", "--in", str(signal), "--out", str(out)]) == 0
