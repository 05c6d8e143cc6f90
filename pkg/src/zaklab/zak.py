"""The lattice Zak transform

    Z_M f(x, xi) = |det M|^(1/2) * sum_n f(x + M n) exp(2 pi i xi . M n)

evaluated by direct summation, on midpoint grids over Q_M x Q_N, and with
numerical checks of quasi-periodicity and of the L^2 isometry.
"""

import warnings
from dataclasses import dataclass

import numpy as np

from .errors import TruncationTooSmall, ValidationError
from .geometry import as_points, contains, domain_from_json, measure
from .lattice import check_pair

GAUSSIAN_TRUNCATION = 20


@dataclass(frozen=True)
class Indicator:
    """Indicator window of a domain."""

    dom: object

    @property
    def dim(self):
        return self.dom.dim

    def __call__(self, pts):
        return contains(self.dom, as_points(pts, self.dim)).astype(float)

    def norm_sq(self):
        return measure(self.dom)

    def to_json(self):
        return {"type": "indicator", "domain": self.dom.to_json()}


@dataclass(frozen=True)
class Gaussian:
    """The window exp(-pi |x|^2)."""

    dim: int = 1

    def __call__(self, pts):
        pts = as_points(pts, self.dim)
        return np.exp(-np.pi * np.sum(pts * pts, axis=1))

    def norm_sq(self):
        return 2.0 ** (-self.dim / 2)

    def to_json(self):
        return {"type": "gaussian", "dim": self.dim}


def window_from_json(obj):
    kind = obj.get("type")
    if kind == "indicator":
        return Indicator(domain_from_json(obj["domain"]))
    if kind == "gaussian":
        return Gaussian(int(obj.get("dim", 1)))
    raise ValidationError(f"unknown window type {kind!r}")


@dataclass(frozen=True, eq=False)
class ZakGrid:
    """Samples of Z_M w at the midpoints of a uniform subdivision of Q_M x Q_N.

    ``values[i, j]`` is the transform at ``(x_nodes[i], xi_nodes[j])``; nodes
    are ordered with the last coordinate varying fastest.
    """

    window: object
    m_lattice: object
    n_lattice: object
    res_x: int
    res_xi: int
    x_nodes: np.ndarray
    xi_nodes: np.ndarray
    values: np.ndarray
    truncation: int
    tail_bound: float = 0.0
    prefactor_included: bool = True

    @property
    def dim(self):
        return self.m_lattice.dim

    def magnitude(self):
        return np.abs(self.values)


def midpoint_nodes(lat, res):
    """Images under the generator of the cell midpoints of [0,1)^d at ``res`` per axis."""
    u = (np.arange(res) + 0.5) / res
    unit = np.array(np.meshgrid(*([u] * lat.dim), indexing="ij")).reshape(lat.dim, -1).T
    return unit @ lat.gen.T


def required_truncation(w, m, xs):
    """Index box lo, hi of every n with xs + M n meeting the support of an indicator."""
    xs = as_points(xs, m.dim)
    dlo, dhi = w.dom.bbox()
    return m.index_box(dlo - xs.max(axis=0), dhi - xs.min(axis=0))


def gaussian_tail_bound(m, truncation):
    sigma = m.shortest_vector_length()
    return 2 * m.dim * float(np.exp(-np.pi * truncation ** 2 * sigma ** 2))


def zak_indices(w, m, xs, truncation=None):
    """Summation indices and the truncation radius they realize.

    Indicator windows get the exact finite index box for the given points;
    ``truncation`` is then only checked. Gaussian windows use the cube
    ``|n|_inf <= truncation``.
    """
    if isinstance(w, Indicator):
        lo, hi = required_truncation(w, m, xs)
        needed = int(max(np.max(np.abs(lo)), np.max(np.abs(hi))))
        if truncation is not None and truncation < needed:
            raise TruncationTooSmall(f"indicator sum needs radius {needed}, got {truncation}")
        axes = [np.arange(a, b + 1) for a, b in zip(lo, hi)]
        radius = needed if truncation is None else truncation
    else:
        radius = GAUSSIAN_TRUNCATION if truncation is None else int(truncation)
        if radius < 1:
            raise ValidationError("truncation must be at least 1")
        axes = [np.arange(-radius, radius + 1)] * m.dim
    idx = np.array(np.meshgrid(*axes, indexing="ij")).reshape(m.dim, -1).T
    return idx, radius


def window_matrix(w, m, xs, idx):
    """W[i, k] = w(x_i + M n_k)."""
    lams = m.points(idx)
    out = np.empty((len(xs), len(lams)), dtype=float)
    for k, lam in enumerate(lams):
        out[:, k] = w(xs + lam)
    return out


def zak_values(w, m, xs, xis, truncation=None):
    """Z_M w on all pairs of ``xs`` (N, d) and ``xis`` (K, d); shape (N, K)."""
    xs = as_points(xs, m.dim)
    xis = as_points(xis, m.dim)
    idx, radius = zak_indices(w, m, xs, truncation)
    lams = m.points(idx)
    weights = window_matrix(w, m, xs, idx)
    used = np.any(weights != 0.0, axis=0)
    phases = np.exp(2j * np.pi * (lams[used] @ xis.T))
    return np.sqrt(abs(m.det)) * (weights[:, used] @ phases)


def zak_eval(w, m, x, xi, truncation=None):
    """Z_M w at one point (x, xi)."""
    return complex(zak_values(w, m, as_points(x, m.dim), as_points(xi, m.dim), truncation)[0, 0])


def zak_grid(w, m, n, res_x=64, res_xi=64, truncation=None):
    """Evaluate Z_M w on midpoint nodes of Q_M x Q_N."""
    if res_x < 2 or res_xi < 2:
        raise ValidationError("resolutions must be at least 2")
    if not check_pair(m, n).compatible:
        warnings.warn("det(MN) != 1 or N^T M is not integral; Q_N is not a period cell", stacklevel=2)
    xs = midpoint_nodes(m, res_x)
    xis = midpoint_nodes(n, res_xi)
    _, radius = zak_indices(w, m, xs, truncation)
    values = zak_values(w, m, xs, xis, truncation)
    tail = gaussian_tail_bound(m, radius) if isinstance(w, Gaussian) else 0.0
    return ZakGrid(window=w, m_lattice=m, n_lattice=n, res_x=res_x, res_xi=res_xi, x_nodes=xs,
                   xi_nodes=xis, values=values, truncation=radius, tail_bound=tail)


def quasiperiodicity_residuals(w, m, n, shifts, probes=32, seed=0, truncation=None):
    """Largest violations of the two shift identities over random probes.

    Returns ``(qp1, qp2)`` where qp1 measures
    Z(x + M s, xi) - exp(-2 pi i xi . M s) Z(x, xi) and qp2 measures
    Z(x, xi + N s) - Z(x, xi).
    """
    if probes < 10:
        raise ValidationError("probes must be at least 10")
    rng = np.random.default_rng(seed)
    xs = rng.random((probes, m.dim)) @ m.gen.T
    xis = rng.random((probes, m.dim)) @ n.gen.T
    base = np.array([zak_eval(w, m, x, xi, truncation) for x, xi in zip(xs, xis)])
    qp1 = qp2 = 0.0
    for s in np.atleast_2d(np.asarray(shifts, dtype=float)):
        ms, ns = m.gen @ s, n.gen @ s
        for x, xi, z in zip(xs, xis, base):
            shifted_x = zak_eval(w, m, x + ms, xi, truncation)
            qp1 = max(qp1, abs(shifted_x - np.exp(-2j * np.pi * xi @ ms) * z))
            qp2 = max(qp2, abs(zak_eval(w, m, x, xi + ns, truncation) - z))
    return float(qp1), float(qp2)


def check_quasiperiodicity(w, m, n, shifts, probes=32, seed=0, truncation=None):
    """Maximum residual of both quasi-periodicity identities."""
    return max(quasiperiodicity_residuals(w, m, n, shifts, probes, seed, truncation))


def grid_norm_sq(w, m, n, quad_res, truncation=None):
    """Midpoint-rule value of the squared L^2(Q_M x Q_N) norm of Z_M w.

    The double sum over x and xi nodes is regrouped as a quadratic form
    W_i K W_i^* with K[k, l] = sum_j exp(2 pi i xi_j . M(n_k - n_l)), which
    equals the plain node sum but never stores the full 2d-dimensional grid.
    """
    xs = midpoint_nodes(m, quad_res)
    xis = midpoint_nodes(n, quad_res)
    idx, _ = zak_indices(w, m, xs, truncation)
    weights = window_matrix(w, m, xs, idx)
    used = np.any(weights != 0.0, axis=0)
    weights = weights[:, used]
    phases = np.exp(2j * np.pi * (m.points(idx[used]) @ xis.T))
    kernel = phases @ phases.conj().T
    quad = np.einsum("ik,kl,il->", weights, kernel, weights).real
    cell = abs(m.det) / len(xs) * abs(n.det) / len(xis)
    return float(abs(m.det) * cell * quad)


def check_isometry(w, m, n, quad_res=256, truncation=None):
    """Relative error between the quadrature norm of Z_M w and the exact ||w||^2."""
    if quad_res < 64:
        raise ValidationError("quad_res must be at least 64")
    exact = w.norm_sq()
    return abs(grid_norm_sq(w, m, n, quad_res, truncation) - exact) / exact


def zak_section(w, m, n, x, res_xi=64, truncation=None):
    """Z_M w(x, .) on the midpoint nodes of Q_N for one fixed x.

    Returns ``(xi_nodes, values)``; for d = 2 ``values`` has shape
    (res_xi, res_xi) with xi_1 along rows.
    """
    xis = midpoint_nodes(n, res_xi)
    vals = zak_values(w, m, as_points(x, m.dim), xis, truncation)[0]
    return xis, vals.reshape((res_xi,) * m.dim)
