"""Grid refinement of the short-time norm identity and ABB probe convergence.

The norm identity is exact on the discrete grid up to truncation of the
shifted window at the grid edge, so the error falls off with the grid span.
The probe's geometric-mean contraction factor approaches the top singular
value of the composed projection as the cycle count grows.
"""

from olctkit.grid import centered_grid, gen_signal, gen_window, norm2
from olctkit.params import OLCTParams, ft
from olctkit.stolct import check_norm_identity
from olctkit import suites


def norm_identity_chain(A, dt=0.05, sigma=5.0, sizes=(256, 512, 1024, 2048)):
    print(f"norm identity, A = {A.as_tuple()}, dt = {dt}, signal sigma = {sigma}, window sigma = 1")
    print(f"{'N':>6} {'span':>8} {'slack':>12}")
    for n in sizes:
        t0, _ = centered_grid(n, dt)
        f = gen_signal("gaussian", n, t0, dt, sigma=sigma)
        g = gen_window("gaussian", n, t0, dt, sigma=1.0)
        r = check_norm_identity(f.with_samples(f.samples / norm2(f)), g, A)
        print(f"{n:6d} {n * dt:8.1f} {r.slack:12.3e}")


def abb_convergence(cases=30, iters=(25, 50, 100, 200, 400)):
    print("ABB probe: max |rho - sigma_max| over the suite")
    for k in iters:
        reports = suites.abb_suite(cases=cases, iters=k)
        dev = max(abs(r.lhs - r.metadata["operator_norm"]) for r in reports)
        print(f"  iters = {k:4d}: {dev:.3e}")


if __name__ == "__main__":
    norm_identity_chain(ft())
    norm_identity_chain(OLCTParams(0.5, 1.5, -0.5, 0.5, 0.2, -0.1))
    abb_convergence()
