"""Lieb ratio ``lhs / rhs`` for gaussian signal and window as the widths vary.

With ``a = d = 0`` a gaussian signal and a gaussian window of equal width
attain the bound (ratio 1 on the diagonal, for any width and any ``b``);
a width mismatch lowers the ratio.
"""

import math

from olctkit.grid import balanced_dt, centered_grid, gen_signal, gen_window
from olctkit.params import OLCTParams
from olctkit.uncertainty import lieb_check


def scan(b=1.0, p=4.0, n=512, widths=(0.5, 0.7, 1.0, 1.4, 2.0)):
    A = OLCTParams(0.0, b, -1 / b, 0.0)
    t0, dt = centered_grid(n, balanced_dt(n, b))
    print(f"b = {b}, p = {p}; rows: signal sigma / sqrt(b), columns: window sigma / sqrt(b)")
    print("        " + " ".join(f"{w:8.2f}" for w in widths))
    for sf in widths:
        f = gen_signal("gaussian", n, t0, dt, sigma=sf * math.sqrt(b))
        row = []
        for sg in widths:
            g = gen_window("gaussian", n, t0, dt, sigma=sg * math.sqrt(b))
            row.append(lieb_check(f, g, A, p).metadata["ratio"])
        print(f"{sf:8.2f}" + " ".join(f"{r:8.5f}" for r in row))


if __name__ == "__main__":
    for b in (0.5, 1.0, 2.0):
        scan(b=b)
        print()
