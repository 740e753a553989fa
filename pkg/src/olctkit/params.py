"""Parameter sets of the offset linear canonical transform.

An OLCT is labelled by a unimodular 2x2 matrix ``[[a, b], [c, d]]`` together
with an offset vector ``(tau, eta)``: ``tau`` shifts in time, ``eta``
modulates in frequency.  The parameter algebra here is a full group (any
sign of ``b`` is accepted); the transform paths impose their own domain
restrictions.
"""

from __future__ import annotations

import math
from dataclasses import dataclass

import numpy as np

from .errors import DomainError, NonFiniteError, UnimodularityError

UNIMODULAR_TOL = 1e-12


@dataclass(frozen=True)
class OLCTParams:
    a: float
    b: float
    c: float
    d: float
    tau: float = 0.0
    eta: float = 0.0

    def __post_init__(self):
        values = (self.a, self.b, self.c, self.d, self.tau, self.eta)
        if not all(math.isfinite(float(v)) for v in values):
            raise NonFiniteError(f"non-finite OLCT parameter in {values}")
        for name, v in zip("a b c d tau eta".split(), values):
            object.__setattr__(self, name, float(v))
        det = self.a * self.d - self.b * self.c
        if abs(det - 1.0) > UNIMODULAR_TOL:
            raise UnimodularityError(
                f"ad - bc must equal 1 (got {det!r} for a={self.a}, b={self.b}, "
                f"c={self.c}, d={self.d})"
            )

    @property
    def matrix(self) -> np.ndarray:
        return np.array([[self.a, self.b], [self.c, self.d]])

    @property
    def offset(self) -> np.ndarray:
        return np.array([self.tau, self.eta])

    def as_tuple(self) -> tuple[float, ...]:
        return (self.a, self.b, self.c, self.d, self.tau, self.eta)

    def to_dict(self) -> dict[str, float]:
        return dict(zip(("a", "b", "c", "d", "tau", "eta"), self.as_tuple()))

    @classmethod
    def from_dict(cls, obj) -> "OLCTParams":
        return cls(obj["a"], obj["b"], obj["c"], obj["d"], obj.get("tau", 0.0), obj.get("eta", 0.0))

    @classmethod
    def from_string(cls, text: str) -> "OLCTParams":
        """Parse the ``a,b,c,d,tau,eta`` command-line form."""
        parts = [p.strip() for p in text.split(",")]
        if len(parts) != 6:
            raise ValueError(f"expected six comma-separated numbers, got {text!r}")
        return cls(*(float(p) for p in parts))

    def allclose(self, other: "OLCTParams", atol: float = 1e-12) -> bool:
        return bool(np.allclose(self.as_tuple(), other.as_tuple(), rtol=0.0, atol=atol))


@dataclass(frozen=True)
class CompositionResult:
    """Composed parameters and the residual global phase (radians)."""

    params: OLCTParams
    phase: float


def make_params(a, b, c, d, tau=0.0, eta=0.0) -> OLCTParams:
    return OLCTParams(a, b, c, d, tau, eta)


def ft() -> OLCTParams:
    return OLCTParams(0.0, 1.0, -1.0, 0.0)


def frft(alpha: float) -> OLCTParams:
    """Fractional Fourier transform of angle ``alpha`` (no reduction mod 2pi)."""
    ca, sa = math.cos(alpha), math.sin(alpha)
    # exact quarter turns keep ad - bc = 1 to the last bit
    if math.isclose(ca, 0.0, abs_tol=1e-15):
        ca = 0.0
    if math.isclose(sa, 0.0, abs_tol=1e-15):
        sa = 0.0
    return OLCTParams(ca, sa, -sa, ca)


def lct(a, b, c, d) -> OLCTParams:
    return OLCTParams(a, b, c, d)


def identity() -> OLCTParams:
    return OLCTParams(1.0, 0.0, 0.0, 1.0)


_SPECIAL = {"ft": ft, "frft": frft, "lct": lct, "identity": identity}


def special_case(kind: str, *args) -> OLCTParams:
    """Build a named special case: ``ft``, ``frft(alpha)``, ``lct(a,b,c,d)``, ``identity``."""
    try:
        ctor = _SPECIAL[kind]
    except KeyError:
        raise DomainError(f"unknown special case {kind!r}; choose from {sorted(_SPECIAL)}") from None
    return ctor(*args)


def inverse_phase(A: OLCTParams) -> float:
    """Global phase multiplying the inverse-kernel integral when undoing ``A``."""
    a, b, c, d, tau, eta = A.as_tuple()
    return 0.5 * c * d * tau**2 - a * d * tau * eta + 0.5 * a * b * eta**2


def invert(A: OLCTParams) -> tuple[OLCTParams, float]:
    """Return the inverse parameters and the phase of the inverse formula.

    ``f = exp(1j * phase) * O_{A^-1}[O_A f]``.
    """
    a, b, c, d, tau, eta = A.as_tuple()
    inv = OLCTParams(d, -b, -c, a, b * eta - d * tau, c * tau - a * eta)
    return inv, inverse_phase(A)


def compose(A1: OLCTParams, A2: OLCTParams) -> CompositionResult:
    """Parameters of applying ``A1`` first and then ``A2``.

    ``O_{A2}[O_{A1} f] = exp(1j * phase) * O_{A3} f``.
    """
    a1, b1, c1, d1, t1, e1 = A1.as_tuple()
    a2, b2, c2, d2, t2, e2 = A2.as_tuple()
    a3 = a2 * a1 + b2 * c1
    b3 = a2 * b1 + b2 * d1
    c3 = c2 * a1 + d2 * c1
    d3 = c2 * b1 + d2 * d1
    t3 = a2 * t1 + b2 * e1 + t2
    e3 = c2 * t1 + d2 * e1 + e2
    phase = (
        -0.5 * a2 * c2 * t1**2
        - b2 * c2 * t1 * e1
        - 0.5 * b2 * d2 * e1**2
        - (t1 * c2 + e1 * d2) * t2
    )
    return CompositionResult(OLCTParams(a3, b3, c3, d3, t3, e3), phase)
