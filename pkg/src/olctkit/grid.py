"""Uniformly sampled signals, windows, index sets and discrete norms.

Continuous integrals are replaced by plain Riemann sums: every sample
carries the measure of its cell (``dt``, ``du`` or ``dx * du``).  That
weighting makes the discrete transforms in :mod:`olctkit.olct` exactly
unitary, so Parseval-type identities hold to rounding error.
"""

from __future__ import annotations

import math
from dataclasses import dataclass, field

import numpy as np

from .errors import DomainError, GridError, NonFiniteError
from .params import OLCTParams

MAX_N = 2**18


def _as_samples(samples) -> np.ndarray:
    arr = np.asarray(samples, dtype=np.complex128)
    if arr.ndim != 1:
        raise GridError(f"samples must be one-dimensional, got shape {arr.shape}")
    if arr.size < 2:
        raise GridError("a signal needs at least two samples")
    if arr.size > MAX_N:
        raise GridError(f"N={arr.size} exceeds the dense limit {MAX_N}")
    if not np.all(np.isfinite(arr)):
        raise NonFiniteError("signal samples must be finite")
    return arr


@dataclass(frozen=True, eq=False)
class SampledSignal:
    """Complex samples ``f(t0 + n*dt)``, ``n = 0..N-1``."""

    samples: np.ndarray
    t0: float
    dt: float

    def __post_init__(self):
        object.__setattr__(self, "samples", _as_samples(self.samples))
        if not (math.isfinite(self.dt) and self.dt > 0):
            raise DomainError(f"dt must be positive and finite, got {self.dt}")
        if not math.isfinite(self.t0):
            raise NonFiniteError("t0 must be finite")
        object.__setattr__(self, "t0", float(self.t0))
        object.__setattr__(self, "dt", float(self.dt))

    @property
    def n(self) -> int:
        return self.samples.size

    @property
    def t(self) -> np.ndarray:
        return self.t0 + self.dt * np.arange(self.n)

    @property
    def values(self) -> np.ndarray:
        return self.samples

    @property
    def cell(self) -> float:
        return self.dt

    def with_samples(self, samples) -> "SampledSignal":
        return SampledSignal(samples, self.t0, self.dt)

    def same_grid(self, other: "SampledSignal", rtol: float = 1e-12) -> bool:
        return (
            self.n == other.n
            and math.isclose(self.dt, other.dt, rel_tol=rtol)
            and math.isclose(self.t0, other.t0, rel_tol=rtol, abs_tol=rtol * self.dt)
        )


@dataclass(frozen=True, eq=False)
class SpectrumSignal:
    """Samples of an OLCT on the grid ``u0 + k*du``.

    ``t0`` records the time origin of the source signal so the inverse
    transform can land back on the original time grid.
    """

    samples: np.ndarray
    u0: float
    du: float
    params: OLCTParams
    t0: float | None = None
    method: str = "fast"

    def __post_init__(self):
        object.__setattr__(self, "samples", _as_samples(self.samples))
        if not (math.isfinite(self.du) and self.du > 0):
            raise DomainError(f"du must be positive and finite, got {self.du}")

    @property
    def n(self) -> int:
        return self.samples.size

    @property
    def u(self) -> np.ndarray:
        return self.u0 + self.du * np.arange(self.n)

    @property
    def values(self) -> np.ndarray:
        return self.samples

    @property
    def cell(self) -> float:
        return self.du


@dataclass(frozen=True, eq=False)
class IndexSet:
    """Sorted unique indices into a grid of ``size`` cells of measure ``spacing``.

    Used for time sets, OLCT-domain sets and (flattened) time-frequency sets.
    """

    indices: np.ndarray
    spacing: float
    size: int

    def __post_init__(self):
        idx = np.unique(np.asarray(self.indices, dtype=np.int64))
        if idx.size and (idx[0] < 0 or idx[-1] >= self.size):
            raise GridError(f"indices out of range for grid of size {self.size}")
        if not self.spacing > 0:
            raise DomainError("cell spacing must be positive")
        object.__setattr__(self, "indices", idx)

    def __len__(self) -> int:
        return int(self.indices.size)

    @property
    def measure(self) -> float:
        return len(self) * self.spacing

    @property
    def mask(self) -> np.ndarray:
        m = np.zeros(self.size, dtype=bool)
        m[self.indices] = True
        return m

    def _check_compatible(self, other: "IndexSet"):
        if self.size != other.size or not math.isclose(self.spacing, other.spacing, rel_tol=1e-12):
            raise GridError("index sets live on different grids")

    def union(self, other: "IndexSet") -> "IndexSet":
        self._check_compatible(other)
        return IndexSet(np.union1d(self.indices, other.indices), self.spacing, self.size)

    def intersection(self, other: "IndexSet") -> "IndexSet":
        self._check_compatible(other)
        return IndexSet(np.intersect1d(self.indices, other.indices), self.spacing, self.size)

    def is_proper(self) -> bool:
        return 0 < len(self) < self.size

    @classmethod
    def full(cls, signal) -> "IndexSet":
        return cls(np.arange(signal.n), signal.cell, signal.n)

    @classmethod
    def from_mask(cls, mask, spacing: float) -> "IndexSet":
        mask = np.asarray(mask, dtype=bool).ravel()
        return cls(np.flatnonzero(mask), spacing, mask.size)

    @classmethod
    def interval(cls, signal, lo: float, hi: float) -> "IndexSet":
        """Cells whose sample coordinate lies in the closed interval ``[lo, hi]``."""
        coords = signal.t if isinstance(signal, SampledSignal) else signal.u
        slack = 1e-9 * signal.cell
        return cls.from_mask((coords >= lo - slack) & (coords <= hi + slack), signal.cell)


def norm2(f) -> float:
    """Discrete L2 norm ``sqrt(cell * sum |values|^2)`` of any sampled object."""
    v = np.asarray(f.values)
    return math.sqrt(f.cell * float(np.sum(np.abs(v) ** 2)))


def pnorm(f, p: float) -> float:
    """Discrete Lp norm ``(cell * sum |values|^p)^(1/p)``."""
    if not p >= 1:
        raise DomainError(f"p-norm requires p >= 1, got {p}")
    v = np.abs(np.asarray(f.values)).ravel()
    if p == 2:
        return norm2(f)
    if math.isinf(p):
        return float(v.max(initial=0.0))
    # scale by the max to keep |v|^p representable for large p
    vmax = float(v.max(initial=0.0))
    if vmax == 0.0:
        return 0.0
    return vmax * (f.cell * float(np.sum((v / vmax) ** p))) ** (1.0 / p)


def inner(f, g) -> complex:
    """Cell-weighted inner product ``<f, g> = cell * sum f * conj(g)``."""
    return complex(f.cell * np.vdot(np.asarray(g.values), np.asarray(f.values)))


# ---------------------------------------------------------------- generators


class LCG64:
    """Knuth's MMIX linear congruential generator.

    ``state <- (6364136223846793005 * state + 1442695040888963407) mod 2**64``;
    each uniform draw is the top 53 bits of the new state divided by 2**53.
    The seed is the initial state.  Fully specified so corpora can be
    regenerated bit-for-bit by any implementation.
    """

    MULT = 6364136223846793005
    INC = 1442695040888963407
    MASK = (1 << 64) - 1

    def __init__(self, seed: int):
        self.state = int(seed) & self.MASK

    def next_u64(self) -> int:
        self.state = (self.MULT * self.state + self.INC) & self.MASK
        return self.state

    def uniform(self, size: int | None = None):
        if size is None:
            return (self.next_u64() >> 11) / 9007199254740992.0
        return np.array([(self.next_u64() >> 11) / 9007199254740992.0 for _ in range(size)])

    def between(self, lo: float, hi: float) -> float:
        return lo + (hi - lo) * self.uniform()


def time_axis(n: int, t0: float, dt: float) -> np.ndarray:
    if n < 2:
        raise GridError("N must be at least 2")
    if not dt > 0:
        raise DomainError(f"dt must be positive, got {dt}")
    return t0 + dt * np.arange(n)


def centered_grid(n: int, dt: float) -> tuple[float, float]:
    """``(t0, dt)`` for an ``n``-point grid whose sample ``n//2`` sits at t=0."""
    return -(n // 2) * dt, dt


def balanced_dt(n: int, b: float = 1.0) -> float:
    """Spacing for which the time grid and the fast OLCT grid have equal extent."""
    return math.sqrt(2 * math.pi * b / n)


def _positive(name, value):
    if not (value > 0 and math.isfinite(value)):
        raise DomainError(f"{name} must be positive, got {value}")


def gen_signal(kind: str, n: int, t0: float, dt: float, **kw) -> SampledSignal:
    """Deterministic test signals.

    ``gaussian(sigma=1, center=0)``: ``exp(-(t-center)^2 / (2 sigma^2))``.
    ``chirp(rate=0, f0=0)``: ``exp(j (rate t^2 / 2 + f0 t))``.
    ``rect(width, center=0)``: indicator of the closed interval of that width.
    ``noise(seed=0)``: i.i.d. real and imaginary parts uniform on [-1, 1],
    drawn from :class:`LCG64` (real part first).
    ``atoms(seed=0, count=3, spread=None)``: sum of ``count`` chirped Gaussian
    atoms with random complex amplitude, center, width, frequency and chirp
    rate, drawn from :class:`LCG64`; smooth and well sampled on the grid.
    """
    t = time_axis(n, t0, dt)
    if kind == "gaussian":
        sigma, center = kw.get("sigma", 1.0), kw.get("center", 0.0)
        _positive("sigma", sigma)
        x = np.exp(-((t - center) ** 2) / (2 * sigma**2))
    elif kind == "chirp":
        rate, f0 = kw.get("rate", 0.0), kw.get("f0", 0.0)
        x = np.exp(1j * (rate * t**2 / 2 + f0 * t))
    elif kind == "rect":
        width, center = kw["width"], kw.get("center", 0.0)
        _positive("width", width)
        half = width / 2
        tol = 1e-9 * dt
        x = ((t >= center - half - tol) & (t <= center + half + tol)).astype(float)
    elif kind == "noise":
        rng = LCG64(kw.get("seed", 0))
        draws = rng.uniform(2 * n).reshape(n, 2)
        x = (2 * draws[:, 0] - 1) + 1j * (2 * draws[:, 1] - 1)
    elif kind == "atoms":
        x = _atoms(t, dt, kw.get("seed", 0), kw.get("count", 3), kw.get("spread"))
    else:
        raise DomainError(f"unknown signal kind {kind!r}")
    return SampledSignal(x, t0, dt)


def _atoms(t, dt, seed, count, spread):
    rng = LCG64(seed)
    half_span = 0.5 * (t[-1] - t[0])
    # keep atoms in the middle third and their bandwidth well under Nyquist
    spread = spread if spread is not None else half_span / 3
    nyq = math.pi / dt
    x = np.zeros(t.size, dtype=complex)
    for _ in range(count):
        amp = rng.between(0.2, 1.0) * np.exp(2j * math.pi * rng.uniform())
        center = rng.between(-spread, spread) + 0.5 * (t[-1] + t[0])
        sigma = rng.between(0.6, 1.5) * max(1.0, 6 * dt)
        freq = rng.between(-0.15, 0.15) * nyq
        rate = rng.between(-0.5, 0.5) / sigma**2
        s = t - center
        x += amp * np.exp(-(s**2) / (2 * sigma**2) + 1j * (freq * s + 0.5 * rate * s**2))
    return x


def gen_window(kind: str, n: int, t0: float, dt: float, normalize: bool = True, **kw) -> SampledSignal:
    """Analysis windows: ``gaussian(sigma)`` centered at t=0, or ``hann(length)``.

    The Hann window occupies ``length`` consecutive samples centered in the
    grid, with zero endpoints.  ``normalize`` rescales to unit discrete norm.
    """
    t = time_axis(n, t0, dt)
    if kind == "gaussian":
        sigma = kw.get("sigma", 1.0)
        _positive("sigma", sigma)
        w = np.exp(-(t**2) / (2 * sigma**2)).astype(complex)
    elif kind == "hann":
        length = int(kw.get("length", n))
        if not 2 <= length <= n:
            raise DomainError(f"hann length must lie in [2, {n}], got {length}")
        w = np.zeros(n, dtype=complex)
        start = (n - length) // 2
        w[start : start + length] = np.hanning(length)
    else:
        raise DomainError(f"unknown window kind {kind!r}")
    win = SampledSignal(w, t0, dt)
    if normalize:
        nrm = norm2(win)
        if nrm == 0:
            raise DomainError("window vanishes on this grid")
        win = win.with_samples(w / nrm)
    return win


def parse_descriptor(text: str) -> tuple[str, dict]:
    """Parse ``kind:k=v,k=v`` or ``kind:v`` descriptors used by the CLI.

    A bare positional value maps to the kind's primary parameter.
    """
    primary = {"gaussian": "sigma", "chirp": "rate", "rect": "width", "noise": "seed",
               "atoms": "seed", "hann": "length"}
    kind, _, rest = text.partition(":")
    kind = kind.strip()
    kw: dict = {}
    for item in filter(None, (s.strip() for s in rest.split(","))):
        key, eq, val = item.partition("=")
        if not eq:
            key, val = primary.get(kind, "value"), item
        val = val.strip()
        kw[key.strip()] = int(val) if key.strip() in ("seed", "length", "count") else float(val)
    return kind, kw
