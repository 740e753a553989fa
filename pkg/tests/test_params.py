import math

import numpy as np
import pytest
from hypothesis import given, settings, strategies as st

from olctkit.errors import NonFiniteError, UnimodularityError
from olctkit.params import (
    OLCTParams,
    compose,
    frft,
    ft,
    identity,
    inverse_phase,
    invert,
    lct,
    make_params,
    special_case,
)

finite = st.floats(-3, 3, allow_nan=False)


@st.composite
def params(draw, offsets=True):
    b = draw(st.floats(0.2, 3))
    a = draw(finite)
    d = draw(finite)
    c = (a * d - 1) / b
    tau, eta = (draw(finite), draw(finite)) if offsets else (0.0, 0.0)
    return OLCTParams(a, b, c, d, tau, eta)


def test_valid_examples():
    assert ft().as_tuple() == (0.0, 1.0, -1.0, 0.0, 0.0, 0.0)
    assert identity().as_tuple() == (1.0, 0.0, 0.0, 1.0, 0.0, 0.0)
    with pytest.raises(UnimodularityError):
        make_params(1, 1, 1, 1)


@pytest.mark.parametrize("bad", [math.nan, math.inf, -math.inf])
def test_non_finite(bad):
    with pytest.raises(NonFiniteError):
        make_params(1, 0, 0, 1, bad, 0)


def test_unimodularity_tolerance():
    make_params(1 + 5e-13, 0, 0, 1)
    with pytest.raises(UnimodularityError):
        make_params(1 + 5e-12, 0, 0, 1)


def test_special_cases():
    assert frft(math.pi / 2) == ft()
    r = math.sqrt(2) / 2
    assert frft(math.pi / 4).allclose(OLCTParams(r, r, -r, r))
    assert lct(1, 1, 0, 1) == OLCTParams(1, 1, 0, 1)
    assert special_case("ft") == ft()
    assert special_case("frft", 0.3) == frft(0.3)
    with pytest.raises(UnimodularityError):
        special_case("lct", 1, 1, 1, 1)


def test_serialization():
    A = OLCTParams(2, 1, 1, 1, 0.3, -0.2)
    assert OLCTParams.from_dict(A.to_dict()) == A
    assert OLCTParams.from_string("2,1,1,1,0.3,-0.2") == A
    assert set(A.to_dict()) == {"a", "b", "c", "d", "tau", "eta"}


def test_invert_examples():
    inv, phase = invert(identity())
    assert inv == identity() and phase == 0.0
    inv, phase = invert(ft())
    assert inv.as_tuple() == (0.0, -1.0, 1.0, 0.0, 0.0, 0.0) and phase == 0.0
    inv, phase = invert(OLCTParams(1, 1, 0, 1, 1, 0))
    assert inv.as_tuple() == (1.0, -1.0, 0.0, 1.0, -1.0, 0.0)
    assert phase == 0.0


def test_compose_identity_first():
    A = OLCTParams(2, 1, 1, 1, 0.3, -0.2)
    res = compose(identity(), A)
    assert res.params.allclose(A) and res.phase == 0.0


def test_frft_rotation_additivity():
    res = compose(frft(math.pi / 6), frft(math.pi / 3))
    assert res.params.allclose(ft(), atol=1e-15)
    assert res.phase == 0.0


@given(params(), params(offsets=False))
def test_phase_vanishes_without_first_offset(A2, A1):
    assert compose(A1, A2).phase == 0.0


@given(params(), params())
def test_compose_is_unimodular_and_matrix_product(A1, A2):
    res = compose(A1, A2)
    np.testing.assert_allclose(res.params.matrix, A2.matrix @ A1.matrix, atol=1e-12)
    np.testing.assert_allclose(res.params.offset, A2.matrix @ A1.offset + A2.offset, atol=1e-12)


@given(params())
@settings(max_examples=50)
def test_inverse_composes_to_identity(A):
    inv, phase = invert(A)
    res = compose(A, inv)
    assert res.params.allclose(identity(), atol=1e-9)
    assert res.phase == pytest.approx(-inverse_phase(A), abs=1e-9 * (1 + abs(phase)))
