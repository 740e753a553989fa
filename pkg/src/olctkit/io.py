"""CSV and JSON formats for signals, spectra and time-frequency grids.

Signal CSV has header ``t,re,im``; spectrum CSV ``u,re,im``; grid CSV
``x,u,re,im`` (long format, x-slice by x-slice).  Numbers are written with
17 significant digits.  A JSON sidecar ``<stem>.json`` next to the CSV
carries grid metadata (and the parameters and method for spectra).
"""

from __future__ import annotations

import json
from pathlib import Path

import numpy as np

from .errors import GridError
from .grid import SampledSignal, SpectrumSignal
from .params import OLCTParams
from .report import dumps
from .stolct import TFGrid

FMT = "%.17g"


def sidecar_path(path) -> Path:
    return Path(path).with_suffix(".json")


def _write_csv(path, header: str, columns) -> None:
    data = np.column_stack(columns)
    with open(path, "w", newline="\n") as fh:
        fh.write(header + "\n")
        np.savetxt(fh, data, fmt=FMT, delimiter=",")


def _read_csv(path, header: str) -> np.ndarray:
    path = Path(path)
    with open(path) as fh:
        first = fh.readline().strip().replace(" ", "")
        if first != header:
            raise GridError(f"{path}: expected header {header!r}, got {first!r}")
        data = np.loadtxt(fh, delimiter=",", ndmin=2)
    if data.shape[1] != header.count(",") + 1:
        raise GridError(f"{path}: expected {header.count(',') + 1} columns")
    return data


def _uniform(axis: np.ndarray, path) -> tuple[float, float]:
    if axis.size < 2:
        raise GridError(f"{path}: need at least two samples")
    step = (axis[-1] - axis[0]) / (axis.size - 1)
    expected = axis[0] + step * np.arange(axis.size)
    if step <= 0 or np.max(np.abs(axis - expected)) > 1e-9 * max(abs(step) * axis.size, 1e-300):
        raise GridError(f"{path}: sample coordinates are not uniform within 1e-9 relative")
    return float(axis[0]), float(step)


def write_signal(path, f: SampledSignal, sidecar: bool = True) -> None:
    _write_csv(path, "t,re,im", (f.t, f.samples.real, f.samples.imag))
    if sidecar:
        sidecar_path(path).write_text(dumps({"t0": f.t0, "dt": f.dt, "n": f.n}) + "\n")


def read_signal(path) -> SampledSignal:
    data = _read_csv(path, "t,re,im")
    t0, dt = _uniform(data[:, 0], path)
    return SampledSignal(data[:, 1] + 1j * data[:, 2], t0, dt)


def write_spectrum(path, F: SpectrumSignal) -> None:
    _write_csv(path, "u,re,im", (F.u, F.samples.real, F.samples.imag))
    meta = {"u0": F.u0, "du": F.du, "n": F.n, "t0": F.t0, "method": F.method,
            "params": F.params.to_dict()}
    sidecar_path(path).write_text(dumps(meta) + "\n")


def read_spectrum(path, params: OLCTParams | None = None) -> SpectrumSignal:
    data = _read_csv(path, "u,re,im")
    u0, du = _uniform(data[:, 0], path)
    meta = {}
    side = sidecar_path(path)
    if side.exists():
        meta = json.loads(side.read_text())
    if params is None:
        if "params" not in meta:
            raise GridError(f"{path}: no parameters given and no sidecar {side}")
        params = OLCTParams.from_dict(meta["params"])
    return SpectrumSignal(data[:, 1] + 1j * data[:, 2], u0, du, params,
                          t0=meta.get("t0"), method=meta.get("method", "fast"))


def tfgrid_dict(V: TFGrid) -> dict:
    vals = np.stack([V.values.real, V.values.imag], axis=-1).reshape(-1, 2)
    return {"x0": V.x0, "dx": V.dx, "u0": V.u0, "du": V.du, "nx": V.nx, "nu": V.nu,
            "params": V.params.to_dict(), "window": V.window_id, "values": vals.tolist()}


def write_tfgrid(path, V: TFGrid) -> None:
    """JSON when the path ends in ``.json``, long-format CSV otherwise."""
    if str(path).endswith(".json"):
        Path(path).write_text(json.dumps(tfgrid_dict(V)) + "\n")
        return
    xx, uu = np.meshgrid(V.x, V.u, indexing="ij")
    _write_csv(path, "x,u,re,im", (xx.ravel(), uu.ravel(), V.values.real.ravel(), V.values.imag.ravel()))


def read_tfgrid_json(path) -> TFGrid:
    obj = json.loads(Path(path).read_text())
    vals = np.asarray(obj["values"], dtype=float).reshape(obj["nx"], obj["nu"], 2)
    return TFGrid(vals[..., 0] + 1j * vals[..., 1], obj["x0"], obj["dx"], obj["u0"], obj["du"],
                  OLCTParams.from_dict(obj["params"]), obj.get("window", ""))
