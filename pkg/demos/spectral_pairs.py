"""Exponential bases on [0,1): orthonormal, Riesz and overcomplete sections.

Run with ``python3 demos/spectral_pairs.py``.
"""

import numpy as np

from zaklab.functions import gaussian_function
from zaklab.gabor import biorthogonality_check, frame_sum_check, gabor_system
from zaklab.geometry import IntervalUnion
from zaklab.lattice import make_lattice
from zaklab.spectral import LatticeCosets, gram_section, perturb_spectrum, riesz_bounds_estimate

unit = IntervalUnion([(0.0, 1.0)])
radii = [5, 10, 20]

for label, spec in [("Z", LatticeCosets(make_lattice(1.0))),
                    ("2Z with 2Z + 1/2", LatticeCosets(make_lattice(2.0), [[0.0], [0.5]])),
                    ("Z/2", LatticeCosets(make_lattice(0.5)))]:
    b = riesz_bounds_estimate(unit, spec, radii)
    lows = ", ".join(f"{v:.3g}" for v in b.lower_estimates)
    print(f"{label:18s} lower bounds {lows}  stabilized {b.stabilized}")

# The dual family of a Riesz basis is biorthogonal to it.
dev = biorthogonality_check(unit, [[0]], LatticeCosets(make_lattice(2.0), [[0.0], [0.5]], 10))
print(f"biorthogonality deviation on inner indices: {dev:.1e}")

# Small perturbations of Z keep a uniform lower bound.
base = LatticeCosets(make_lattice(1.0), None, 20)
mins = [np.linalg.eigvalsh(gram_section(unit, perturb_spectrum(base, 0.1, s)).entries)[0] for s in range(5)]
print("Z perturbed by 0.1, smallest Gram eigenvalue per seed:", ", ".join(f"{m:.3f}" for m in mins))

# A level-2 multi-tiling with an orthonormal exponential basis gives frame ratio 2.
system = gabor_system(unit, LatticeCosets(make_lattice(0.5), None, 20), LatticeCosets(make_lattice(1.0), None, 100))
report = frame_sum_check(gaussian_function(-3, 3), system)
print(f"frame sum ratio for step 1/2: {report.ratio:.4f} ({report.truncation_note})")
