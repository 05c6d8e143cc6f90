"""Multi-tiling levels and the sum-on-pieces identity.

Run with ``python3 demos/multitiling_levels.py``.
"""

import numpy as np

from zaklab.functions import gaussian_function, indicator_function
from zaklab.geometry import IntervalUnion, Polygon
from zaklab.lattice import make_lattice
from zaklab.presets import load_domain
from zaklab.tiling import check_sum_on_pieces, cover_set, multitiling_level

z2 = make_lattice(np.eye(2))

for name in ("tiling_c", "parallelogram", "lshape", "octagon"):
    report = multitiling_level(load_domain(name), z2, 10000, seed=1)
    print(f"{name:14s} level {report.level}, histogram {report.cover_histogram}")

# Every point of the plane sees exactly k translates.
lams = cover_set(load_domain("octagon"), z2, (0.37, 0.61))
print("octagon translates covering (0.37, 0.61):", len(lams))

# Summing ||f||^2 over the pieces gives k ||f||^2.
unit = IntervalUnion([(0.0, 1.0)])
ratio = check_sum_on_pieces(unit, make_lattice(0.5), gaussian_function(-3, 3))
print(f"[0,1) with step 1/2, Gaussian test function: ratio {ratio:.6f}")
square = Polygon([(0, 0), (1, 0), (1, 1), (0, 1)])
ratio = check_sum_on_pieces(load_domain("parallelogram"), z2, indicator_function(square))
print(f"parallelogram with Z^2, unit-square test function: ratio {ratio:.6f}")
