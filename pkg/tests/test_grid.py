import math

import numpy as np
import pytest
from hypothesis import given, strategies as st

from olctkit.errors import DomainError, GridError
from olctkit.grid import (
    LCG64,
    IndexSet,
    SampledSignal,
    centered_grid,
    gen_signal,
    gen_window,
    inner,
    norm2,
    parse_descriptor,
    pnorm,
)


def test_gaussian_peak():
    f = gen_signal("gaussian", 8, -4, 1.0, sigma=1, center=0)
    assert f.samples[4] == 1.0


def test_rect_boundary_rule():
    f = gen_signal("rect", 8, -4, 1.0, width=2, center=0)
    # closed interval [-1, 1] keeps both endpoints
    assert np.count_nonzero(f.samples) == 3


def test_noise_deterministic():
    a = gen_signal("noise", 64, 0, 0.1, seed=42)
    b = gen_signal("noise", 64, 0, 0.1, seed=42)
    c = gen_signal("noise", 64, 0, 0.1, seed=43)
    assert np.array_equal(a.samples, b.samples)
    assert not np.array_equal(a.samples, c.samples)


def test_lcg_reference_values():
    rng = LCG64(0)
    # one MMIX step from 0 is the increment
    assert rng.next_u64() == 1442695040888963407
    assert rng.next_u64() == (6364136223846793005 * 1442695040888963407 + 1442695040888963407) % 2**64


@pytest.mark.parametrize("kw", [{"sigma": 0}, {"sigma": -1}])
def test_gen_domain_errors(kw):
    with pytest.raises(DomainError):
        gen_signal("gaussian", 8, 0, 1.0, **kw)
    with pytest.raises(DomainError):
        gen_signal("gaussian", 8, 0, 0.0)


def test_windows():
    t0, dt = centered_grid(256, 0.05)
    g = gen_window("gaussian", 256, t0, dt, sigma=1)
    assert abs(norm2(g) - 1) < 1e-12
    h = gen_window("hann", 64, -32, 1.0, length=64, normalize=False)
    assert h.samples[0] == 0 and abs(h.samples[-1]) < 1e-15
    t0, dt = centered_grid(1024, 0.01)
    raw = gen_window("gaussian", 1024, t0, dt, sigma=1, normalize=False)
    assert norm2(raw) ** 2 == pytest.approx(math.sqrt(math.pi), rel=1e-6)


def test_norms():
    assert norm2(SampledSignal(np.zeros(4), 0, 1.0)) == 0
    one = SampledSignal(np.array([1.0, 0, 0]), 0, 0.5)
    assert norm2(one) == pytest.approx(math.sqrt(0.5), abs=1e-15)
    ind = SampledSignal(np.r_[np.ones(5), np.zeros(3)], 0, 0.25)
    assert pnorm(ind, 1) == pytest.approx(5 * 0.25)
    with pytest.raises(DomainError):
        pnorm(ind, 0.5)


@given(st.floats(1, 20))
def test_pnorm_of_indicator(p):
    ind = SampledSignal(np.r_[np.ones(7), np.zeros(9)], 0, 0.3)
    assert pnorm(ind, p) == pytest.approx((7 * 0.3) ** (1 / p), rel=1e-12)


def test_inner_matches_norm():
    f = gen_signal("noise", 32, 0, 0.2, seed=1)
    assert inner(f, f).real == pytest.approx(norm2(f) ** 2, rel=1e-14)


def test_index_sets():
    f = SampledSignal(np.zeros(10), -5, 1.0)
    s = IndexSet.interval(f, -1, 1)
    assert list(s.indices) == [4, 5, 6]
    assert s.measure == 3.0
    assert s.is_proper()
    assert not IndexSet.full(f).is_proper()
    other = IndexSet.interval(f, 0, 3)
    assert list(s.union(other).indices) == [4, 5, 6, 7, 8]
    assert list(s.intersection(other).indices) == [5, 6]
    assert np.array_equal(IndexSet.from_mask(s.mask, 1.0).indices, s.indices)


def test_bad_grids_rejected():
    with pytest.raises(DomainError):
        SampledSignal(np.zeros(4), 0, -1.0)
    with pytest.raises(GridError):
        IndexSet([5], 1.0, 4)


def test_descriptors():
    assert parse_descriptor("gaussian:1.0") == ("gaussian", {"sigma": 1.0})
    assert parse_descriptor("hann:length=32") == ("hann", {"length": 32})
    assert parse_descriptor("noise:42") == ("noise", {"seed": 42})
    assert parse_descriptor("gaussian:sigma=2,center=1") == ("gaussian", {"sigma": 2.0, "center": 1.0})
