"""Multi-tiling detection: cover sets and cover-count histograms."""

from dataclasses import dataclass, field

import numpy as np

from .errors import DegenerateDomain, ValidationError, ZeroFunction
from .functions import midpoint_grid
from .geometry import as_points, boundary_distance, contains, measure

BOUNDARY_REJECT = 1e-9


@dataclass(frozen=True)
class TilingReport:
    """Outcome of :func:`multitiling_level`.

    ``level`` is ``None`` when the cover counts are not concentrated on a
    single value, i.e. the domain does not multi-tile by the lattice.
    """

    level: int | None
    samples_tested: int
    cover_histogram: dict = field(default_factory=dict)
    translation_radius: int = 0

    @property
    def is_multitiling(self):
        return self.level is not None

    def to_json(self):
        return {
            "level": self.level if self.level is not None else "NotMultiTiling",
            "samples_tested": self.samples_tested,
            "cover_histogram": {str(k): v for k, v in sorted(self.cover_histogram.items())},
            "translation_radius": self.translation_radius,
        }


def candidate_indices(dom, lat, points):
    """Every n in Z^d for which some point p may satisfy p - M n in dom."""
    pts = as_points(points, lat.dim)
    dlo, dhi = dom.bbox()
    nlo, nhi = lat.index_box(pts.min(axis=0) - dhi, pts.max(axis=0) - dlo)
    axes = [np.arange(a, b + 1) for a, b in zip(nlo, nhi)]
    return np.array(np.meshgrid(*axes, indexing="ij")).reshape(lat.dim, -1).T


def cover_counts(dom, lat, points):
    """Number of translates dom + M n containing each point."""
    pts = as_points(points, lat.dim)
    counts = np.zeros(len(pts), dtype=int)
    for lam in lat.points(candidate_indices(dom, lat, pts)):
        counts += contains(dom, pts - lam)
    return counts


def cover_set(dom, lat, p):
    """All lattice points lambda with p in dom + lambda, as an array of shape (k, d)."""
    pt = as_points(p, lat.dim)
    if len(pt) != 1:
        raise ValidationError("cover_set takes a single point")
    lams = lat.points(candidate_indices(dom, lat, pt))
    hits = contains(dom, pt - lams)
    found = lams[hits]
    order = np.lexsort(found.T[::-1]) if len(found) else []
    return found[order]


def multitiling_level(dom, lat, n_samples=10000, seed=0):
    """Estimate the multi-tiling level of ``dom`` by ``lat`` from random samples.

    Points are drawn uniformly from the fundamental parallelepiped, discarding
    any within ``BOUNDARY_REJECT`` of the boundary of a translate. The level
    is declared when at least a ``1 - 2/sqrt(n)`` fraction of samples share
    one cover count.
    """
    if n_samples < 100:
        raise ValidationError("n_samples must be at least 100")
    if measure(dom) < 1e-12:
        raise DegenerateDomain("domain has (near) zero measure")
    if dom.dim != lat.dim:
        raise ValidationError("domain and lattice dimensions differ")
    rng = np.random.default_rng(seed)
    cell = lat.points(np.array(np.meshgrid(*([[0, 1]] * lat.dim), indexing="ij")).reshape(lat.dim, -1).T)
    idx = candidate_indices(dom, lat, cell)
    lams = lat.points(idx)
    kept = []
    n_kept = 0
    while n_kept < n_samples:
        pts = rng.random((n_samples, lat.dim)) @ lat.gen.T
        ok = np.ones(len(pts), dtype=bool)
        for lam in lams:
            ok &= boundary_distance(dom, pts - lam) > BOUNDARY_REJECT
        kept.append(pts[ok])
        n_kept += int(ok.sum())
    pts = np.concatenate(kept)[:n_samples]
    counts = np.zeros(n_samples, dtype=int)
    for lam in lams:
        counts += contains(dom, pts - lam)
    values, freq = np.unique(counts, return_counts=True)
    histogram = {int(v): float(f) / n_samples for v, f in zip(values, freq)}
    top = int(values[np.argmax(freq)])
    threshold = 1.0 - 2.0 / np.sqrt(n_samples)
    level = top if top > 0 and histogram[top] >= threshold else None
    return TilingReport(level=level, samples_tested=n_samples, cover_histogram=histogram,
                        translation_radius=int(np.max(np.abs(idx))))


def check_sum_on_pieces(dom, lat, f, quad_res=256):
    """Ratio of sum over lambda of ||f||^2 on dom + lambda to ||f||^2.

    Both sides use the same midpoint rule over the support box of ``f``; for
    a level-k multi-tiling the ratio is k.
    """
    if quad_res < 64:
        raise ValidationError("quad_res must be at least 64")
    pts, cell = midpoint_grid(f.lo, f.hi, quad_res)
    weight = np.abs(f(pts)) ** 2
    total = weight.sum()
    if total * cell < 1e-14:
        raise ZeroFunction("test function has (near) zero norm")
    return float(np.dot(weight, cover_counts(dom, lat, pts)) / total)
