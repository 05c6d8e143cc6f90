"""Exponential systems E(Gamma) on L^2(Omega) through finite Gram sections.

The Gram section of frequencies gamma_1..gamma_K over a domain is

    G[j, k] = integral over Omega of exp(2 pi i (gamma_k - gamma_j) . x) dx,

so c^* G c = ||sum_k c_k e_{gamma_k}||^2 and the extreme eigenvalues of G
bound the Riesz constants of the section.
"""

from dataclasses import dataclass

import numpy as np

from .errors import IllConditioned, TooManyFrequencies, ValidationError
from .geometry import as_points, indicator_ft, measure
from .lattice import lattice_from_json

MAX_FREQUENCIES = 4096
DEDUP_TOL = 1e-10


@dataclass(frozen=True, eq=False)
class FiniteList:
    freqs: np.ndarray

    def __init__(self, freqs, dim=None):
        arr = np.asarray(freqs, dtype=float)
        if dim is None:
            dim = 1 if arr.ndim <= 1 else arr.shape[1]
        object.__setattr__(self, "freqs", as_points(arr, dim))

    @property
    def dim(self):
        return self.freqs.shape[1]

    def expand(self):
        return dedup(self.freqs)

    def to_json(self):
        return {"type": "list", "freqs": self.freqs.tolist()}


@dataclass(frozen=True, eq=False)
class LatticeCosets:
    """Union over cosets a of the points N n + a with |n|_inf <= index_radius."""

    lattice: object
    cosets: np.ndarray
    index_radius: int

    def __init__(self, lattice, cosets=None, index_radius=10):
        if cosets is None:
            cosets = np.zeros((1, lattice.dim))
        object.__setattr__(self, "lattice", lattice)
        object.__setattr__(self, "cosets", as_points(cosets, lattice.dim))
        object.__setattr__(self, "index_radius", int(index_radius))

    @property
    def dim(self):
        return self.lattice.dim

    def expand(self):
        r = self.index_radius
        axis = np.arange(-r, r + 1)
        idx = np.array(np.meshgrid(*([axis] * self.dim), indexing="ij")).reshape(self.dim, -1).T
        pts = self.lattice.points(idx)
        return dedup(np.concatenate([pts + a for a in self.cosets]))

    def with_radius(self, radius):
        return LatticeCosets(self.lattice, self.cosets, radius)

    def to_json(self):
        return {"type": "cosets", "lattice": self.lattice.to_json(), "cosets": self.cosets.tolist(),
                "radius": self.index_radius}


def spectrum_from_json(obj):
    if not isinstance(obj, dict):
        raise ValidationError("spectrum JSON must be an object with a \"type\" key")
    kind = obj.get("type")
    if kind == "list":
        return FiniteList(obj["freqs"])
    if kind == "cosets":
        lat = lattice_from_json(obj["lattice"])
        return LatticeCosets(lat, obj.get("cosets"), obj.get("radius", 10))
    raise ValidationError(f"unknown spectrum type {kind!r}")


def dedup(freqs, tol=DEDUP_TOL):
    """Drop frequencies within ``tol`` (sup norm) of an earlier one, keeping order."""
    keep = np.ones(len(freqs), dtype=bool)
    for start in range(0, len(freqs), 512):
        block = freqs[start:start + 512]
        dist = np.max(np.abs(block[:, None, :] - freqs[None, :, :]), axis=2)
        for i, row in enumerate(dist):
            j = start + i
            if keep[j] and np.any(row[:j][keep[:j]] <= tol):
                keep[j] = False
    return freqs[keep]


@dataclass(frozen=True, eq=False)
class GramSection:
    freqs: np.ndarray
    entries: np.ndarray
    domain_measure: float

    @property
    def size(self):
        return len(self.freqs)

    def eigenvalues(self):
        return np.linalg.eigvalsh(self.entries)


@dataclass(frozen=True)
class BoundsEstimate:
    section_sizes: list
    lower_estimates: list
    upper_estimates: list
    stabilized: bool

    def to_json(self):
        return {
            "section_sizes": self.section_sizes,
            "lower_estimates": self.lower_estimates,
            "upper_estimates": self.upper_estimates,
            "stabilized": self.stabilized,
        }


def gram_matrix(dom, freqs):
    """Hermitian Gram matrix of the exponentials at ``freqs`` over ``dom``."""
    freqs = as_points(freqs, dom.dim)
    k = len(freqs)
    if k > MAX_FREQUENCIES:
        raise TooManyFrequencies(f"{k} frequencies exceed the limit of {MAX_FREQUENCIES}")
    diffs = (freqs[:, None, :] - freqs[None, :, :]).reshape(-1, dom.dim)
    g = indicator_ft(dom, diffs).reshape(k, k)
    g = 0.5 * (g + g.conj().T)
    np.fill_diagonal(g, measure(dom))
    return g


def gram_section(dom, spec):
    freqs = spec.expand()
    return GramSection(freqs=freqs, entries=gram_matrix(dom, freqs), domain_measure=measure(dom))


def orthogonality_check(dom, spec):
    """Largest off-diagonal Gram entry relative to the domain measure."""
    g = gram_section(dom, spec)
    off = np.abs(g.entries - np.diag(np.diag(g.entries)))
    return float(off.max() / g.domain_measure) if g.size > 1 else 0.0


def section(spec, radius):
    """The nested truncation of ``spec`` at ``radius``."""
    if isinstance(spec, LatticeCosets):
        return spec.with_radius(radius)
    freqs = spec.expand()
    return FiniteList(freqs[np.max(np.abs(freqs), axis=1) <= radius])


def riesz_bounds_estimate(dom, spec, section_radii):
    """Extreme Gram eigenvalues over nested sections of growing radius.

    The lower estimates can only decrease and the upper ones only increase
    as sections grow (Cauchy interlacing). ``stabilized`` means the last two
    lower estimates agree to within 5 percent.
    """
    radii = list(section_radii)
    if any(b <= a for a, b in zip(radii, radii[1:])):
        raise ValidationError("section radii must be increasing")
    sizes, lows, highs = [], [], []
    for r in radii:
        eig = gram_section(dom, section(spec, r)).eigenvalues()
        sizes.append(int(len(eig)))
        lows.append(float(eig[0]))
        highs.append(float(eig[-1]))
    stabilized = len(lows) >= 2 and lows[-1] > 0 and abs(lows[-1] - lows[-2]) < 0.05 * abs(lows[-2])
    return BoundsEstimate(sizes, lows, highs, bool(stabilized))


def dual_coefficients(gram, min_eig=1e-10):
    """Inverse Gram matrix; column k expands the biorthogonal partner of e_k."""
    g = gram.entries if isinstance(gram, GramSection) else np.asarray(gram)
    lowest = np.linalg.eigvalsh(g)[0]
    if lowest <= min_eig:
        raise IllConditioned(f"smallest Gram eigenvalue {lowest:.3g} <= {min_eig}")
    return np.linalg.inv(g)


def perturb_spectrum(spec, c, seed=0):
    """Move each expanded frequency by an independent uniform vector of sup norm below c."""
    if c < 0:
        raise ValidationError("perturbation size must be nonnegative")
    freqs = spec.expand()
    if c == 0:
        return FiniteList(freqs.copy())
    rng = np.random.default_rng(seed)
    return FiniteList(freqs + c * (2 * rng.random(freqs.shape) - 1))

