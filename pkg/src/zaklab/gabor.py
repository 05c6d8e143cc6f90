"""Gabor systems G(w, Lambda x Gamma) with finite translation and modulation sets.

The element indexed by (lambda, gamma) is x -> exp(2 pi i gamma . x) w(x - lambda).
Coefficients of test functions are computed by midpoint quadrature, so every
number here is finite-truncation evidence and reports carry the truncation.
"""

from dataclasses import dataclass

import numpy as np

from .errors import ConditionEGammaLambda, NotATiling, SupportNotCovered, ValidationError
from .functions import midpoint_grid
from .geometry import IntervalUnion, as_points, contains
from .spectral import FiniteList, dual_coefficients, gram_section
from .zak import Indicator

INTEGER_TOL = 1e-9
EDGE_FRACTION = 0.2
GL_ORDER = 8


@dataclass(frozen=True, eq=False)
class GaborSystemSpec:
    """Window, translations and modulations of a finite Gabor system.

    ``shifts`` and ``modulations`` may be point arrays or any spectrum
    object with an ``expand()`` method (for instance a lattice with radius).
    """

    window: object
    shifts: object
    modulations: object

    @property
    def dim(self):
        return self.window.dim

    def translations(self):
        return _expand(self.shifts, self.dim)

    def frequencies(self):
        return _expand(self.modulations, self.dim)

    def to_json(self):
        return {
            "window": self.window.to_json(),
            "shifts": self.translations().tolist(),
            "modulations": self.frequencies().tolist(),
        }


@dataclass(frozen=True)
class FrameSumReport:
    sum_sq_coeffs: float
    norm_sq: float
    ratio: float
    truncation_note: str

    def to_json(self):
        return {
            "sum_sq_coeffs": self.sum_sq_coeffs,
            "norm_sq": self.norm_sq,
            "ratio": self.ratio,
            "truncation_note": self.truncation_note,
        }


def _expand(spec, dim):
    if hasattr(spec, "expand"):
        return spec.expand()
    return FiniteList(as_points(spec, dim)).expand()


def gabor_coefficients(f, sys, quad_res=256):
    """Array c[l, g] = integral of f(x) exp(-2 pi i gamma_g . x) w(x - lambda_l) dx.

    Raises :class:`SupportNotCovered` if some quadrature node where f is
    nonzero lies outside every translate of the window.
    """
    if quad_res < 8:
        raise ValidationError("quad_res must be at least 8")
    lams = sys.translations()
    gammas = sys.frequencies()
    pts, cell = midpoint_grid(f.lo, f.hi, quad_res)
    vals = f(pts)
    live = vals != 0
    pts, vals = pts[live], vals[live]
    coeffs = np.zeros((len(lams), len(gammas)), dtype=complex)
    if len(pts) == 0:
        return coeffs
    covered = np.zeros(len(pts), dtype=bool)
    for i, lam in enumerate(lams):
        w = sys.window(pts - lam)
        hit = w != 0
        covered |= hit
        if np.any(hit):
            phases = np.exp(-2j * np.pi * (pts[hit] @ gammas.T))
            coeffs[i] = (vals[hit] * w[hit]) @ phases * cell
    if not np.all(covered):
        raise SupportNotCovered(f"{np.count_nonzero(~covered)} quadrature nodes of supp f meet no translate")
    return coeffs


def frame_sum_check(f, sys, quad_res=256):
    """Ratio of sum |c|^2 over the finite system to ||f||^2, both by the same quadrature.

    For a level-k multi-tiling with a frame E(Gamma) of bounds l, u the
    ratio lies in [k l, k u] up to truncation; an orthonormal E(Gamma)
    gives k.
    """
    coeffs = gabor_coefficients(f, sys, quad_res)
    pts, cell = midpoint_grid(f.lo, f.hi, quad_res)
    norm_sq = float(np.sum(np.abs(f(pts)) ** 2) * cell)
    total = float(np.sum(np.abs(coeffs) ** 2))
    note = (f"{len(sys.translations())} translations, {len(sys.frequencies())} modulations, "
            f"midpoint quadrature at {quad_res} nodes per unit length")
    return FrameSumReport(sum_sq_coeffs=total, norm_sq=norm_sq, ratio=total / norm_sq if norm_sq else 0.0,
                          truncation_note=note)


def _check_integrality(lams, gammas):
    prods = lams @ gammas.T
    bad = np.abs(prods - np.round(prods)) > INTEGER_TOL
    if np.any(bad):
        i, j = np.argwhere(bad)[0]
        raise ConditionEGammaLambda(f"gamma . lambda = {prods[i, j]:.6g} is not an integer "
                                    f"(lambda = {lams[i].tolist()}, gamma = {gammas[j].tolist()})")


def _check_disjoint(dom, lams, quad_res):
    if isinstance(dom, IntervalUnion):
        pieces = sorted((a + lam[0], b + lam[0]) for lam in lams for a, b in dom.intervals)
        for (a1, b1), (a2, b2) in zip(pieces, pieces[1:]):
            if a2 < b1 - INTEGER_TOL:
                raise NotATiling(f"translates overlap on [{a2:.6g}, {min(b1, b2):.6g})")
        return
    lo, hi = dom.bbox()
    pts, _ = midpoint_grid(np.min(lams, axis=0) + lo, np.max(lams, axis=0) + hi, quad_res)
    counts = np.zeros(len(pts), dtype=int)
    for lam in lams:
        counts += contains(dom, pts - lam)
    if counts.max() > 1:
        raise NotATiling("translates of the domain overlap")


def _gauss_nodes(dom, quad_res):
    """Composite Gauss-Legendre nodes and weights on an interval union."""
    x, w = np.polynomial.legendre.leggauss(GL_ORDER)
    nodes, weights = [], []
    for a, b in dom.intervals:
        panels = max(1, int(np.ceil((b - a) * quad_res / GL_ORDER)))
        edges = np.linspace(a, b, panels + 1)
        half = 0.5 * np.diff(edges)
        mid = 0.5 * (edges[:-1] + edges[1:])
        nodes.append((mid[:, None] + half[:, None] * x).ravel())
        weights.append((half[:, None] * w).ravel())
    return np.concatenate(nodes)[:, None], np.concatenate(weights)


def _domain_nodes(dom, quad_res):
    if isinstance(dom, IntervalUnion):
        return _gauss_nodes(dom, quad_res)
    lo, hi = dom.bbox()
    pts, cell = midpoint_grid(lo, hi, quad_res)
    pts = pts[contains(dom, pts)]
    return pts, np.full(len(pts), cell)


def biorthogonality_check(dom, lam_list, spec, quad_res=256):
    """Deviation from the identity of the pairing between a Gabor system and its dual.

    The system is e_gamma chi_{dom + lambda}; the dual element is
    h_gamma(. - lambda) chi_{dom + lambda}, where h_gamma is the
    biorthogonal partner of e_gamma inside the Gram section of ``spec``.
    Inner products are computed by quadrature and the outer
    ``EDGE_FRACTION`` of frequencies (by distance from the origin) is left
    out of the maximum.
    """
    lams = FiniteList(lam_list, dom.dim).expand()
    gram = gram_section(dom, spec)
    gammas = gram.freqs
    _check_integrality(lams, gammas)
    _check_disjoint(dom, lams, quad_res)
    dual = dual_coefficients(gram)
    nodes, weights = _domain_nodes(dom, quad_res)

    k = len(gammas)
    size = len(lams) * k
    pairing = np.zeros((size, size), dtype=complex)
    for a, lam in enumerate(lams):
        x = nodes + lam
        e = np.exp(2j * np.pi * (x @ gammas.T))
        for b, lam2 in enumerate(lams):
            inside = contains(dom, x - lam2)
            if not np.any(inside):
                continue
            # h_j(x - lambda') = sum_k dual[k, j] exp(2 pi i gamma_k . (x - lambda'))
            shifted = np.exp(2j * np.pi * ((x[inside] - lam2) @ gammas.T))
            h = shifted @ dual
            block = (e[inside] * weights[inside, None]).T @ h.conj()
            pairing[a * k:(a + 1) * k, b * k:(b + 1) * k] = block

    radius = np.max(np.abs(gammas), axis=1)
    inner_gamma = radius <= np.quantile(radius, 1.0 - EDGE_FRACTION) if k > 1 else np.ones(1, bool)
    inner = np.tile(inner_gamma, len(lams))
    dev = pairing[np.ix_(inner, inner)] - np.eye(int(inner.sum()))
    return float(np.max(np.abs(dev)))


def gabor_system(dom, shifts, modulations):
    """Gabor system with the indicator window of ``dom``."""
    return GaborSystemSpec(window=Indicator(dom), shifts=shifts, modulations=modulations)

