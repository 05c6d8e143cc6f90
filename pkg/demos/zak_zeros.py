"""Where the Zak transform of an indicator window vanishes.

Run with ``python3 demos/zak_zeros.py``. Prints the verdict for each bundled
window and the magnitude at its known zeros.
"""

import numpy as np

from zaklab.classify import classify_gabor, find_zero
from zaklab.geometry import IntervalUnion
from zaklab.lattice import make_lattice
from zaklab.presets import load_domain
from zaklab.zak import Gaussian, Indicator, zak_grid, zak_values

z1, z2 = make_lattice(1.0), make_lattice(np.eye(2))

# A tiling window has |Z| = 1 everywhere, so the Gabor system is an orthonormal basis.
unit = Indicator(IntervalUnion([(0.0, 1.0)]))
print("[0,1), M = N = 1:", classify_gabor(zak_grid(unit, z1, z1, 128, 128)).verdict.value)

# Halving the translation step doubles the cover count and creates zeros at odd xi.
half, two = make_lattice(0.5), make_lattice(2.0)
zero = find_zero(unit, half, two)
print(f"[0,1), M = 1/2, N = 2: zero at x = {zero.x[0]:.4f}, xi = {zero.xi[0]:.6f}")

# The Gaussian has a single zero per period cell at (1/2, 1/2).
zero = find_zero(Gaussian(1), z1, z1)
print(f"Gaussian: zero at ({zero.x[0]:.6f}, {zero.xi[0]:.6f}), |Z| = {zero.magnitude:.1e}")

# Multi-tilings in the plane: fixed x, probe the known zero locations in xi.
probes = {
    "lshape": ((0.3, 0.55), [(1 / 3, 2 / 3), (2 / 3, 1 / 3)]),
    "octagon": ((0.5, 0.25), [(0.5, 0.1), (0.5, 0.7), (1 / 6, 0.5), (5 / 6, 0.5)]),
}
for name, (x, xis) in probes.items():
    mags = np.abs(zak_values(Indicator(load_domain(name)), z2, np.array([x]), np.array(xis)))[0]
    print(f"{name} at x = {x}:", ", ".join(f"{m:.1e}" for m in mags))

# Two half-unit pieces an irrational distance apart leave a strip where Z is zero.
report = classify_gabor(zak_grid(Indicator(load_domain("irrational_gap")), z1, z1, 256, 256))
print(f"irrational gap: {report.verdict.value}, zero fraction {report.zero_fraction:.4f} "
      f"(strip width 1.5 - sqrt 2 = {1.5 - np.sqrt(2):.4f})")
