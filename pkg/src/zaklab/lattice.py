"""Full-rank lattices M(Z^d), their duals and fundamental domains."""

from dataclasses import dataclass, field

import numpy as np

from .errors import DimensionMismatch, SingularMatrix, UnsupportedDimension, ValidationError
from .geometry import IntervalUnion, Polygon

SINGULAR_TOL = 1e-14
INTEGER_TOL = 1e-9


@dataclass(frozen=True, eq=False)
class Lattice:
    """The lattice ``gen @ Z^d`` with cached inverse and determinant.

    Build instances with :func:`make_lattice`; the constructor trusts its
    arguments.
    """

    gen: np.ndarray
    gen_inv: np.ndarray = field(repr=False)
    det: float

    @property
    def dim(self):
        return self.gen.shape[0]

    def volume(self):
        return abs(self.det)

    def density(self):
        return 1.0 / abs(self.det)

    def points(self, indices):
        """Map integer index vectors of shape (K, d) to lattice points."""
        return np.asarray(indices, dtype=float) @ self.gen.T

    def index_box(self, lo, hi):
        """Integer box of indices n whose points M n can land in the box [lo, hi]."""
        lo = np.atleast_1d(np.asarray(lo, dtype=float))
        hi = np.atleast_1d(np.asarray(hi, dtype=float))
        corners = np.array(np.meshgrid(*zip(lo, hi), indexing="ij")).reshape(self.dim, -1).T
        pre = corners @ self.gen_inv.T
        return np.floor(pre.min(axis=0) - 1e-9).astype(int), np.ceil(pre.max(axis=0) + 1e-9).astype(int)

    def shortest_vector_length(self, radius=3):
        n = _index_cube(self.dim, radius)
        n = n[np.any(n != 0, axis=1)]
        return float(np.min(np.linalg.norm(self.points(n), axis=1)))

    def to_json(self):
        return {"dim": self.dim, "gen": self.gen.tolist()}

    def __eq__(self, other):
        return isinstance(other, Lattice) and np.array_equal(self.gen, other.gen)

    def __hash__(self):
        return hash(self.gen.tobytes())


@dataclass(frozen=True)
class LatticePairReport:
    det_product: float
    product_is_unimodular: bool
    ntm: np.ndarray
    ntm_is_integer: bool

    @property
    def compatible(self):
        return self.product_is_unimodular and self.ntm_is_integer

    def to_json(self):
        return {
            "det_product": self.det_product,
            "product_is_unimodular": self.product_is_unimodular,
            "ntm": self.ntm.tolist(),
            "ntm_is_integer": self.ntm_is_integer,
        }


def make_lattice(gen):
    """Build a :class:`Lattice` from a square generator matrix.

    A scalar or length-1 input is read as a 1x1 generator.
    """
    m = np.atleast_2d(np.asarray(gen, dtype=float))
    if m.ndim != 2 or m.shape[0] != m.shape[1]:
        raise ValidationError(f"generator must be square, got shape {m.shape}")
    if not np.all(np.isfinite(m)):
        raise ValidationError("generator has non-finite entries")
    det = float(np.linalg.det(m))
    if abs(det) < SINGULAR_TOL:
        raise SingularMatrix(f"|det| = {abs(det):.3g} < {SINGULAR_TOL}")
    m = m.copy()
    inv = np.linalg.inv(m)
    m.setflags(write=False)
    inv.setflags(write=False)
    return Lattice(gen=m, gen_inv=inv, det=det)


def lattice_from_json(obj):
    lat = make_lattice(obj["gen"])
    if "dim" in obj and int(obj["dim"]) != lat.dim:
        raise DimensionMismatch(f"dim field {obj['dim']} disagrees with generator size {lat.dim}")
    return lat


def dual(lat):
    """Dual lattice, generated by the inverse transpose."""
    return make_lattice(lat.gen_inv.T)


def check_pair(m, n, tol=INTEGER_TOL):
    """Test det(MN) = 1 and integrality of N^T M."""
    if m.dim != n.dim:
        raise DimensionMismatch(f"lattice dimensions differ: {m.dim} vs {n.dim}")
    det_product = m.det * n.det
    ntm = n.gen.T @ m.gen
    return LatticePairReport(
        det_product=float(det_product),
        product_is_unimodular=bool(abs(det_product - 1.0) <= tol),
        ntm=ntm,
        ntm_is_integer=bool(np.max(np.abs(ntm - np.round(ntm))) <= tol),
    )


def fundamental_domain(lat):
    """The half-open parallelepiped M[0,1)^d as a domain (d <= 2)."""
    if lat.dim == 1:
        a = float(lat.gen[0, 0])
        return IntervalUnion([(min(0.0, a), max(0.0, a))])
    if lat.dim == 2:
        corners = np.array([[0, 0], [1, 0], [1, 1], [0, 1]], dtype=float) @ lat.gen.T
        return Polygon(corners)
    raise UnsupportedDimension(f"fundamental domains are built for d <= 2, got d = {lat.dim}")


def density_product(m, n, coset_counts=(1, 1)):
    """Beurling density of (union of c1 cosets of M Z^d) x (union of c2 cosets of N Z^d)."""
    c1, c2 = coset_counts
    if c1 < 1 or c2 < 1:
        raise ValidationError("coset counts must be positive")
    return (c1 / abs(m.det)) * (c2 / abs(n.det))


def _index_cube(dim, radius):
    axis = np.arange(-radius, radius + 1)
    return np.array(np.meshgrid(*([axis] * dim), indexing="ij")).reshape(dim, -1).T
