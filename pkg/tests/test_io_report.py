import json
import math

import numpy as np
import pytest

from olctkit import io as oio
from olctkit import olct
from olctkit._parallel import ENV_THREADS, chunk_slices, map_chunks, resolve_threads
from olctkit.errors import GridError
from olctkit.grid import SampledSignal, gen_signal, gen_window
from olctkit.params import OLCTParams
from olctkit.report import LOWER, BoundReport, combine, dumps
from olctkit.stolct import stolct

A = OLCTParams(0.5, 1, -0.75, 0.5, 0.1, 0.2)


def test_signal_round_trip(tmp_path):
    f = gen_signal("noise", 100, -3.3, 0.0731, seed=8)
    path = tmp_path / "f.csv"
    oio.write_signal(path, f)
    assert path.read_text().splitlines()[0] == "t,re,im"
    g = oio.read_signal(path)
    assert np.array_equal(g.samples, f.samples)
    assert g.dt == pytest.approx(f.dt, rel=1e-14) and g.t0 == f.t0


def test_spectrum_round_trip(tmp_path):
    f = gen_signal("noise", 64, -3, 0.1, seed=2)
    F = olct.olct_forward(f, A)
    path = tmp_path / "F.csv"
    oio.write_spectrum(path, F)
    meta = json.loads((tmp_path / "F.json").read_text())
    assert meta["params"] == A.to_dict() and meta["method"] == "fast"
    G = oio.read_spectrum(path)
    assert np.array_equal(G.samples, F.samples) and G.params == A
    back = olct.olct_inverse(G)
    np.testing.assert_allclose(back.samples, f.samples, atol=1e-12)


def test_non_uniform_csv_rejected(tmp_path):
    path = tmp_path / "bad.csv"
    path.write_text("t,re,im\n0,1,0\n1,1,0\n3,1,0\n")
    with pytest.raises(GridError):
        oio.read_signal(path)
    path.write_text("x,y\n0,1\n")
    with pytest.raises(GridError):
        oio.read_signal(path)


def test_tfgrid_formats(tmp_path):
    f = gen_signal("noise", 32, -2, 0.125, seed=1)
    g = gen_window("gaussian", 32, -2, 0.125, sigma=0.5)
    V = stolct(f, g, A, hop=4, window_id="gaussian:0.5")
    oio.write_tfgrid(tmp_path / "v.json", V)
    W = oio.read_tfgrid_json(tmp_path / "v.json")
    assert np.array_equal(W.values, V.values) and W.window_id == "gaussian:0.5"
    obj = json.loads((tmp_path / "v.json").read_text())
    assert obj["values"][1] == [V.values[0, 1].real, V.values[0, 1].imag]
    oio.write_tfgrid(tmp_path / "v.csv", V)
    rows = (tmp_path / "v.csv").read_text().splitlines()
    assert rows[0] == "x,u,re,im" and len(rows) == 1 + V.n


def test_report_json():
    r = BoundReport("x", 1 / 3, 2.0, 5 / 3, True, {"direction": LOWER, "z": 1 + 2j, "n": np.int64(4)})
    obj = json.loads(r.to_json())
    assert obj["pass"] is True and obj["lhs"] == 1 / 3
    assert obj["metadata"]["z"] == {"re": 1.0, "im": 2.0} and obj["metadata"]["n"] == 4
    assert json.loads(dumps({"v": math.inf}))["v"] == "inf"


def test_combine():
    rs = [BoundReport("x", 1, 0.5, s, True, {"direction": LOWER}) for s in (0.5, 0.2, 0.9)]
    rs.append(BoundReport("x", 0, 1, -1.0, True, {"direction": LOWER, "trivial": True}))
    c = combine("suite", rs)
    assert c.passed and c.slack == 0.2 and c.metadata["cases"] == 4 and c.metadata["trivial_cases"] == 1
    rs.append(BoundReport("x", 0, 1, -0.1, False, {"direction": LOWER}))
    c = combine("suite", rs)
    assert not c.passed and c.metadata["failed"] == 1 and c.lhs == 4 and c.rhs == 5


def test_thread_resolution(monkeypatch):
    monkeypatch.setenv(ENV_THREADS, "3")
    assert resolve_threads(None) == 3
    assert resolve_threads(5) == 5
    monkeypatch.delenv(ENV_THREADS)
    assert resolve_threads(None) >= 1


def test_map_chunks_order_independent_of_threads():
    out1 = map_chunks(lambda sl: list(range(sl.start, sl.stop)), 1000, 64, threads=1)
    out8 = map_chunks(lambda sl: list(range(sl.start, sl.stop)), 1000, 64, threads=8)
    assert out1 == out8
    assert sum(len(x) for x in out1) == 1000
    assert chunk_slices(10, 4) == [slice(0, 4), slice(4, 8), slice(8, 10)]
