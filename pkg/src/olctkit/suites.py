"""Seeded randomized corpora and the verification suites built on them.

All randomness comes from :class:`olctkit.grid.LCG64`, so a suite is a pure
function of ``(seed, n, cases)``.
"""

from __future__ import annotations

import math

import numpy as np

from . import olct, stolct as st, uncertainty as unc
from .grid import LCG64, IndexSet, SampledSignal, balanced_dt, centered_grid, gen_signal, gen_window
from .params import OLCTParams, compose, identity
from .report import BoundReport, combine


def random_params(rng: LCG64, b_range=(0.5, 2.0), ab_max: float = 1.0, offset: float = 0.5) -> OLCTParams:
    """Random OLCT parameters with ``b`` in ``b_range`` and ``|a|/b <= ab_max``."""
    b = rng.between(*b_range)
    a = rng.between(-ab_max, ab_max) * b
    d = rng.between(-1.0, 1.0)
    c = (a * d - 1.0) / b
    return OLCTParams(a, b, c, d, rng.between(-offset, offset), rng.between(-offset, offset))


def suite_grid(n: int) -> tuple[float, float]:
    dt = balanced_dt(n)
    return centered_grid(n, dt)


def random_smooth(rng: LCG64, n: int, t0: float, dt: float) -> SampledSignal:
    count = 1 + int(3 * rng.uniform())
    seed = int(rng.next_u64() >> 1)
    return gen_signal("atoms", n, t0, dt, seed=seed, count=count, spread=1.5)


def random_noise(rng: LCG64, n: int, t0: float, dt: float) -> SampledSignal:
    return gen_signal("noise", n, t0, dt, seed=int(rng.next_u64() >> 1))


def localized_gaussian(rng: LCG64, n: int, t0: float, dt: float) -> SampledSignal:
    """Unit gaussian at a random center in [-1, 1] with a mild random chirp and tone."""
    t = t0 + dt * np.arange(n)
    s = t - rng.between(-1.0, 1.0)
    sigma = rng.between(0.8, 1.2)
    phase = rng.between(-0.3, 0.3) * s**2 / 2 + rng.between(-1.0, 1.0) * s
    return SampledSignal(np.exp(-(s**2) / (2 * sigma**2) + 1j * phase), t0, dt)


# ---------------------------------------------------------------- suites


def parseval_suite(seed: int = 0, n: int = 256, cases: int = 100, params: OLCTParams | None = None):
    rng = LCG64(seed)
    t0, dt = suite_grid(n)
    reports = []
    for _ in range(cases):
        A = params or random_params(rng)
        f, g = random_noise(rng, n, t0, dt), random_noise(rng, n, t0, dt)
        reports.append(olct.check_parseval(f, g, A))
    return reports


def composable_pair(rng: LCG64) -> tuple[OLCTParams, OLCTParams]:
    """Two factors whose chain stays adequately sampled on balanced grids.

    Each factor and the composition have ``|a|/b <= 1``; the chain's output
    grid (spacing ``b2 dt / b1``) must stay inside the alias-free range of
    the composed transform, ``b2 / b1 <= 1.5 b3``.
    """
    while True:
        A1 = random_params(rng, b_range=(0.6, 1.4))
        A2 = random_params(rng, b_range=(0.6, 1.4))
        A3 = compose(A1, A2).params
        if 0.5 <= A3.b <= 2.0 and abs(A3.a) <= A3.b and A2.b / A1.b <= 1.5 * A3.b:
            return A1, A2


def additivity_suite(seed: int = 0, n: int = 1024, cases: int = 20, params: OLCTParams | None = None):
    rng = LCG64(seed)
    t0, dt = suite_grid(n)
    reports = []
    for _ in range(cases):
        A1, A2 = composable_pair(rng)
        if params is not None:
            A1 = params
        f = localized_gaussian(rng, n, t0, dt)
        reports.append(olct.check_additivity(f, A1, A2))
    return reports


def ds_sets(kind: str, rng: LCG64, f: SampledSignal, F, A: OLCTParams):
    """Set geometries: centered intervals, greedy concentration sets, random scatter."""
    if kind == "interval":
        w1, w2 = rng.between(0.5, 4.0), rng.between(0.5, 4.0) * A.b
        return IndexSet.interval(f, -w1, w1), IndexSet.interval(F, A.tau - w2, A.tau + w2)
    if kind == "greedy":
        e1, e2 = rng.between(0.0, 0.5), rng.between(0.0, 0.5)
        return unc.smallest_concentration_set(f, e1), unc.smallest_concentration_set(F, e2)
    if kind == "scatter":
        frac1, frac2 = rng.between(0.05, 0.6), rng.between(0.05, 0.6)
        m1 = rng.uniform(f.n) < frac1
        m2 = rng.uniform(F.n) < frac2
        m1[0] = m2[0] = True
        return IndexSet.from_mask(m1, f.dt), IndexSet.from_mask(m2, F.du)
    raise ValueError(kind)


DS_GEOMETRIES = ("interval", "greedy", "scatter")


def donoho_stark_suite(seed: int = 0, n: int = 256, seeds: int = 100, param_sets: int = 5,
                       params: OLCTParams | None = None):
    """``seeds`` signals x ``param_sets`` parameters x 3 set geometries."""
    rng = LCG64(seed)
    t0, dt = suite_grid(n)
    plist = [params] * param_sets if params else [random_params(rng) for _ in range(param_sets)]
    reports = []
    for i in range(seeds):
        f = random_smooth(rng, n, t0, dt) if i % 2 == 0 else random_noise(rng, n, t0, dt)
        for A in plist:
            F = olct.olct_forward(f, A)
            for kind in DS_GEOMETRIES:
                om, ga = ds_sets(kind, rng, f, F, A)
                r = unc.donoho_stark_check(f, A, om, ga, F=F)
                r.metadata["geometry"] = kind
                reports.append(r)
    return reports


def picket_fence(n: int, spacing: int, t0: float, dt: float, A: OLCTParams, offset: int = 0) -> SampledSignal:
    """Comb whose OLCT is again a comb: the input chirp and grid phases are pre-cancelled.

    Attains ``|supp f| |supp O_A f| = 2 pi b`` exactly.
    """
    t = t0 + dt * np.arange(n)
    u0, _ = olct.fast_grid(n, dt, A)
    omega0 = (u0 - A.tau) / A.b
    comb = np.zeros(n, dtype=complex)
    comb[offset::spacing] = 1.0
    cancel = np.exp(-1j * (A.a / (2 * A.b)) * t**2 + 1j * omega0 * dt * np.arange(n))
    return SampledSignal(comb * cancel, t0, dt)


def support_suite(seed: int = 0, n: int = 256, cases: int = 50):
    rng = LCG64(seed)
    t0, dt = suite_grid(n)
    reports = []
    divisors = [d for d in range(1, n + 1) if n % d == 0]
    for i in range(cases):
        A = random_params(rng)
        if i % 2 == 0:
            spacing = divisors[int(rng.uniform() * len(divisors))]
            f = picket_fence(n, spacing, t0, dt, A, offset=int(rng.uniform() * spacing))
        else:
            width = rng.between(0.5, 6.0)
            f = gen_signal("rect", n, t0, dt, width=width, center=rng.between(-2, 2))
        reports.append(unc.support_product_check(f, A, rtol=1e-9))
    return reports


def abb_sets(rng: LCG64, n: int, t0: float, dt: float, A: OLCTParams):
    """Proper interval pairs with time-bandwidth product ``w1 * w2 / b`` at most 4."""
    f = SampledSignal(np.zeros(n), t0, dt)
    u0, du = olct.fast_grid(n, dt, A)
    w1 = rng.between(0.3, 2.0)
    w2 = rng.between(0.3, 4.0 / w1) * A.b
    om = IndexSet.interval(f, -w1, w1)
    u = u0 + du * np.arange(n)
    ga = IndexSet.from_mask(np.abs(u - A.tau) <= w2, du)
    return om, ga


def abb_suite(seed: int = 0, n: int = 128, cases: int = 30, iters: int = 200,
              params: OLCTParams | None = None):
    rng = LCG64(seed)
    t0, dt = suite_grid(n)
    reports = []
    for i in range(cases):
        A = params or random_params(rng)
        om, ga = abb_sets(rng, n, t0, dt, A)
        r = unc.abb_projection_probe(A, om, ga, iters=iters, seed=seed + i, t0=t0)
        r.metadata["operator_norm"] = unc.projection_operator_norm(A, om, ga, t0=t0)
        reports.append(r)
    return reports


def hy_pair(rng: LCG64, i: int) -> tuple[OLCTParams, OLCTParams]:
    """Admissible pair, ``a2 b1 - a1 b2 > 0``; every fourth pair uses the identity as A2."""
    while True:
        A1 = random_params(rng)
        A2 = identity() if i % 4 == 0 else random_params(rng)
        if A2.a * A1.b - A1.a * A2.b > 0.05:
            return A1, A2


HY_Q = (1.25, 1.5, 1.75, 2.0)


def hausdorff_young_suite(seed: int = 0, n: int = 256, cases: int = 200, qs=HY_Q,
                          params: OLCTParams | None = None):
    rng = LCG64(seed)
    t0, dt = suite_grid(n)
    reports = []
    for i in range(cases):
        A1, A2 = hy_pair(rng, i)
        if params is not None and params.a * A1.b - A1.a * params.b > 0:
            A2 = params
        f = random_smooth(rng, n, t0, dt)
        for q in qs:
            reports.append(unc.hausdorff_young_check(f, A1, A2, q))
    return reports


LIEB_P = (2.0, 2.5, 3.0, 4.0, 8.0)


def random_window(rng: LCG64, n: int, t0: float, dt: float) -> SampledSignal:
    return gen_window("gaussian", n, t0, dt, sigma=rng.between(0.5, 2.0))


def lieb_suite(seed: int = 0, n: int = 128, cases: int = 500, ps=LIEB_P, params: OLCTParams | None = None,
               threads: int | None = None):
    rng = LCG64(seed)
    t0, dt = suite_grid(n)
    reports = []
    for _ in range(cases):
        A = params or random_params(rng)
        f = random_smooth(rng, n, t0, dt)
        g = random_window(rng, n, t0, dt)
        V = st.stolct(f, g, A, hop=1, threads=threads)
        for p in ps:
            reports.append(unc.lieb_check(f, g, A, p, V=V))
    return reports


def essential_support_suite(seed: int = 0, n: int = 128, cases: int = 50, params: OLCTParams | None = None,
                            epsilons=(0.0, 0.01, 0.05, 0.1, 0.3, 0.6), threads: int | None = None):
    rng = LCG64(seed)
    t0, dt = suite_grid(n)
    reports = []
    for i in range(cases):
        A = params or random_params(rng)
        f = random_smooth(rng, n, t0, dt)
        g = random_window(rng, n, t0, dt)
        eps = epsilons[i % len(epsilons)]
        reports.append(unc.essential_support_check(f, g, A, eps, threads=threads))
    return reports


def ft_relation_suite(seed: int = 0, n: int = 128, cases: int = 10, points: int = 16,
                      params: OLCTParams | None = None):
    rng = LCG64(seed)
    t0, dt = suite_grid(n)
    reports = []
    for _ in range(cases):
        A = params or random_params(rng)
        f = random_noise(rng, n, t0, dt)
        g = random_window(rng, n, t0, dt)
        for j in range(points):
            x = t0 + dt * int(rng.uniform() * n)
            # half on the fast grid, half off it
            k = int(rng.uniform() * n) - n // 2
            omega = k * 2 * math.pi / (n * dt)
            if j % 2:
                omega += rng.between(-0.5, 0.5) * 2 * math.pi / (n * dt)
            reports.append(st.check_ft_relation(f, g, A, x, omega))
    return reports


SUITES = {
    "parseval": parseval_suite,
    "additivity": additivity_suite,
    "donoho-stark": donoho_stark_suite,
    "support": support_suite,
    "abb": abb_suite,
    "hausdorff-young": hausdorff_young_suite,
    "lieb": lieb_suite,
    "essential-support": essential_support_suite,
    "ft-relation": ft_relation_suite,
}


def run_suite(name: str, **kw) -> BoundReport:
    return combine(name, SUITES[name](**kw))
