"""Compactly supported test functions and midpoint quadrature grids."""

from dataclasses import dataclass
from typing import Callable

import numpy as np

from .geometry import as_points, contains


@dataclass(frozen=True)
class SampledFunction:
    """A vectorized function on R^d that vanishes outside the box [lo, hi]."""

    func: Callable
    lo: np.ndarray
    hi: np.ndarray
    name: str = "f"

    @property
    def dim(self):
        return len(self.lo)

    def __call__(self, pts):
        pts = as_points(pts, self.dim)
        inside = np.all((pts >= self.lo) & (pts < self.hi), axis=1)
        out = np.zeros(len(pts), dtype=complex)
        if np.any(inside):
            out[inside] = self.func(pts[inside])
        return out


def indicator_function(dom, name=None):
    lo, hi = dom.bbox()
    return SampledFunction(lambda p: contains(dom, p).astype(float), np.asarray(lo, float),
                           np.asarray(hi, float), name or "indicator")


def gaussian_function(lo, hi, name="gaussian"):
    """exp(-pi |x|^2) restricted to the box [lo, hi]."""
    lo = np.atleast_1d(np.asarray(lo, dtype=float))
    hi = np.atleast_1d(np.asarray(hi, dtype=float))
    return SampledFunction(lambda p: np.exp(-np.pi * np.sum(p * p, axis=1)), lo, hi, name)


def piecewise_constant_function(lo, hi, pieces, seed, name="piecewise"):
    """Random complex piecewise-constant function on ``pieces`` equal cells per axis."""
    lo = np.atleast_1d(np.asarray(lo, dtype=float))
    hi = np.atleast_1d(np.asarray(hi, dtype=float))
    rng = np.random.default_rng(seed)
    shape = (pieces,) * len(lo)
    values = rng.standard_normal(shape) + 1j * rng.standard_normal(shape)

    def func(p):
        idx = np.floor((p - lo) / (hi - lo) * pieces).astype(int)
        idx = np.clip(idx, 0, pieces - 1)
        return values[tuple(idx.T)]

    return SampledFunction(func, lo, hi, name)


def midpoint_grid(lo, hi, res_per_unit):
    """Cell midpoints of a uniform grid on [lo, hi] and the cell volume.

    Each axis gets ``ceil(length * res_per_unit)`` cells.
    """
    lo = np.atleast_1d(np.asarray(lo, dtype=float))
    hi = np.atleast_1d(np.asarray(hi, dtype=float))
    counts = np.maximum(1, np.ceil((hi - lo) * res_per_unit - 1e-9).astype(int))
    steps = (hi - lo) / counts
    axes = [lo[i] + (np.arange(counts[i]) + 0.5) * steps[i] for i in range(len(lo))]
    pts = np.array(np.meshgrid(*axes, indexing="ij")).reshape(len(lo), -1).T
    return pts, float(np.prod(steps))
