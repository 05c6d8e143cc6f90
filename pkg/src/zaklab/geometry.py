"""Window-support geometry: interval unions and simple polygons.

Membership follows a half-open convention. Intervals are ``[a, b)``. A point
on a polygon edge counts as inside exactly when moving it a tiny step in the
fixed direction ``BOUNDARY_NUDGE`` (up and to the right) lands in the open
interior, so bottom/left edges are in and top/right edges are out. Lattice
translates of a tiling domain therefore partition every sample point,
including points on shared edges.
"""

from dataclasses import dataclass

import numpy as np

from .errors import DimensionMismatch, InvalidDomain, ValidationError

# Irrational slope so the nudge is never parallel to an edge of the shipped domains.
BOUNDARY_NUDGE = np.array([1.0, 0.2718281828459045])
_ON_EDGE_TOL = 1e-12
_NUDGE_STEP = 1e-9

_GL_ORDER = 12
_gl_x, _gl_w = np.polynomial.legendre.leggauss(_GL_ORDER)
_GL_NODES = 0.5 * (_gl_x + 1.0)
_GL_WEIGHTS = 0.5 * _gl_w


@dataclass(frozen=True, eq=False)
class IntervalUnion:
    """Finite union of sorted, pairwise disjoint half-open intervals."""

    intervals: np.ndarray

    def __init__(self, intervals):
        arr = np.asarray(intervals, dtype=float).reshape(-1, 2)
        if arr.shape[0] == 0:
            raise InvalidDomain("empty interval list")
        if not np.all(np.isfinite(arr)):
            raise InvalidDomain("non-finite interval endpoint")
        if np.any(arr[:, 0] >= arr[:, 1]):
            raise InvalidDomain("each interval needs a < b")
        arr = arr[np.argsort(arr[:, 0])]
        if np.any(arr[1:, 0] < arr[:-1, 1]):
            raise InvalidDomain("intervals overlap")
        arr.setflags(write=False)
        object.__setattr__(self, "intervals", arr)

    dim = 1

    def bbox(self):
        return np.array([self.intervals[0, 0]]), np.array([self.intervals[-1, 1]])

    def to_json(self):
        return {"type": "intervals", "items": self.intervals.tolist()}


@dataclass(frozen=True, eq=False)
class Polygon:
    """Simple polygon; vertices are stored counterclockwise."""

    vertices: np.ndarray

    def __init__(self, vertices):
        v = np.asarray(vertices, dtype=float)
        if v.ndim != 2 or v.shape[1] != 2 or v.shape[0] < 3:
            raise InvalidDomain("polygon needs at least three 2-D vertices")
        if not np.all(np.isfinite(v)):
            raise InvalidDomain("non-finite polygon vertex")
        if np.allclose(v[0], v[-1]):
            v = v[:-1]
        area = _shoelace(v)
        if abs(area) <= 1e-14:
            raise InvalidDomain("polygon has zero area")
        if area < 0:
            v = v[::-1]
        if not _is_simple(v):
            raise InvalidDomain("polygon edges self-intersect")
        v = np.ascontiguousarray(v)
        v.setflags(write=False)
        object.__setattr__(self, "vertices", v)

    dim = 2

    def bbox(self):
        return self.vertices.min(axis=0), self.vertices.max(axis=0)

    def edges(self):
        return self.vertices, np.roll(self.vertices, -1, axis=0)

    def to_json(self):
        return {"type": "polygon", "vertices": self.vertices.tolist()}


@dataclass(frozen=True, eq=False)
class PolygonUnion:
    """Polygons with pairwise disjoint interiors."""

    parts: tuple

    def __init__(self, parts):
        parts = tuple(p if isinstance(p, Polygon) else Polygon(p) for p in parts)
        if not parts:
            raise InvalidDomain("empty polygon union")
        object.__setattr__(self, "parts", parts)

    dim = 2

    def bbox(self):
        los, his = zip(*(p.bbox() for p in self.parts))
        return np.min(los, axis=0), np.max(his, axis=0)

    def to_json(self):
        return {"type": "polygon_union", "parts": [p.vertices.tolist() for p in self.parts]}


def domain_from_json(obj):
    if not isinstance(obj, dict):
        raise ValidationError("domain JSON must be an object with a \"type\" key")
    kind = obj.get("type")
    if kind == "intervals":
        return IntervalUnion(obj["items"])
    if kind == "polygon":
        return Polygon(obj["vertices"])
    if kind == "polygon_union":
        return PolygonUnion([Polygon(p) for p in obj["parts"]])
    raise ValidationError(f"unknown domain type {kind!r}")


def as_points(p, dim):
    """Coerce a point or an array of points to shape (N, dim)."""
    arr = np.asarray(p, dtype=float)
    if dim == 1 and arr.ndim <= 1:
        arr = arr.reshape(-1, 1)
    elif arr.ndim == 1:
        arr = arr.reshape(1, -1)
    if arr.shape[-1] != dim:
        raise DimensionMismatch(f"expected {dim}-D points, got shape {arr.shape}")
    return arr


def diameter(dom):
    lo, hi = dom.bbox()
    return float(np.linalg.norm(hi - lo))


def contains(dom, p):
    """Half-open membership test.

    Returns a bool for a single point and a bool array for an (N, d) array.
    """
    single = np.ndim(p) == 0 or (np.ndim(p) == 1 and dom.dim > 1)
    pts = as_points(p, dom.dim)
    if isinstance(dom, IntervalUnion):
        x = pts[:, 0]
        out = np.zeros(len(x), dtype=bool)
        for a, b in dom.intervals:
            out |= (x >= a) & (x < b)
    elif isinstance(dom, Polygon):
        out = _polygon_contains(dom, pts)
    elif isinstance(dom, PolygonUnion):
        out = np.zeros(len(pts), dtype=bool)
        for part in dom.parts:
            out |= _polygon_contains(part, pts)
    else:
        raise TypeError(f"not a domain: {dom!r}")
    return bool(out[0]) if single else out


def boundary_distance(dom, p):
    """Distance from each point to the boundary of ``dom``."""
    pts = as_points(p, dom.dim)
    if isinstance(dom, IntervalUnion):
        ends = dom.intervals.ravel()
        return np.min(np.abs(pts[:, :1] - ends[None, :]), axis=1)
    parts = dom.parts if isinstance(dom, PolygonUnion) else (dom,)
    chunks = [pts[i:i + 65536] for i in range(0, len(pts), 65536)] or [pts]
    return np.concatenate([np.min([_edge_distance(part, c) for part in parts], axis=0) for c in chunks])


def measure(dom):
    """Lebesgue measure: total length or total shoelace area."""
    if isinstance(dom, IntervalUnion):
        return float(np.sum(dom.intervals[:, 1] - dom.intervals[:, 0]))
    if isinstance(dom, Polygon):
        return _shoelace(dom.vertices)
    if isinstance(dom, PolygonUnion):
        return float(sum(_shoelace(p.vertices) for p in dom.parts))
    raise TypeError(f"not a domain: {dom!r}")


def indicator_ft(dom, omega):
    """Fourier transform of the indicator, integral over dom of exp(-2 pi i omega . x).

    ``omega`` may be a single frequency or an (K, d) array of frequencies.
    """
    single = np.ndim(omega) == 0 or (np.ndim(omega) == 1 and dom.dim > 1)
    w = as_points(omega, dom.dim)
    if isinstance(dom, IntervalUnion):
        out = _interval_ft(dom.intervals, w[:, 0])
    elif isinstance(dom, Polygon):
        out = _polygon_ft(dom.vertices, w)
    elif isinstance(dom, PolygonUnion):
        out = sum(_polygon_ft(p.vertices, w) for p in dom.parts)
    else:
        raise TypeError(f"not a domain: {dom!r}")
    return complex(out[0]) if single else out


def _interval_ft(intervals, w):
    a = intervals[:, 0][None, :]
    length = (intervals[:, 1] - intervals[:, 0])[None, :]
    mid = a + 0.5 * length
    w = w[:, None]
    return np.sum(np.exp(-2j * np.pi * w * mid) * length * np.sinc(w * length), axis=1)


def _polygon_ft(vertices, w):
    center = vertices.mean(axis=0)
    v = vertices - center
    radius = np.max(np.linalg.norm(v, axis=1))
    wnorm2 = np.sum(w * w, axis=1)
    out = np.empty(len(w), dtype=complex)
    # The edge-sum form cancels catastrophically as omega -> 0; integrate directly there.
    small = 2 * np.pi * np.sqrt(wnorm2) * radius < 1.0
    if np.any(small):
        out[small] = _fan_quadrature_ft(v, w[small])
    big = ~small
    if np.any(big):
        wb = w[big]
        e = np.roll(v, -1, axis=0) - v
        mid = v + 0.5 * e
        flux = wb[:, :1] * e[None, :, 1] - wb[:, 1:] * e[None, :, 0]
        terms = flux * np.exp(-2j * np.pi * (wb @ mid.T)) * np.sinc(wb @ e.T)
        out[big] = 1j / (2 * np.pi * wnorm2[big]) * terms.sum(axis=1)
    return out * np.exp(-2j * np.pi * (w @ center))


def _fan_quadrature_ft(v, w):
    """Signed triangle fan from vertex 0 with a collapsed Gauss-Legendre rule."""
    s, t = np.meshgrid(_GL_NODES, _GL_NODES, indexing="ij")
    ws, wt = np.meshgrid(_GL_WEIGHTS, _GL_WEIGHTS, indexing="ij")
    s, t, wgt = s.ravel(), t.ravel(), (ws * wt * s).ravel()
    total = np.zeros(len(w), dtype=complex)
    a = v[0]
    for j in range(1, len(v) - 1):
        b, c = v[j], v[j + 1]
        twice_area = (b[0] - a[0]) * (c[1] - a[1]) - (b[1] - a[1]) * (c[0] - a[0])
        nodes = a + np.outer(s * (1 - t), b - a) + np.outer(s * t, c - a)
        total += twice_area * (np.exp(-2j * np.pi * (w @ nodes.T)) @ wgt)
    return total


def _shoelace(v):
    x, y = v[:, 0], v[:, 1]
    return float(0.5 * np.sum(x * np.roll(y, -1) - np.roll(x, -1) * y))


def _cross(o, a, b):
    return (a[0] - o[0]) * (b[1] - o[1]) - (a[1] - o[1]) * (b[0] - o[0])


def _segments_touch(p1, p2, q1, q2):
    d1, d2 = _cross(q1, q2, p1), _cross(q1, q2, p2)
    d3, d4 = _cross(p1, p2, q1), _cross(p1, p2, q2)
    if ((d1 > 0) != (d2 > 0)) and ((d3 > 0) != (d4 > 0)) and 0 not in (d1, d2, d3, d4):
        return True

    def on_seg(a, b, c, d):
        return d == 0 and min(a[0], b[0]) <= c[0] <= max(a[0], b[0]) and min(a[1], b[1]) <= c[1] <= max(a[1], b[1])

    return on_seg(q1, q2, p1, d1) or on_seg(q1, q2, p2, d2) or on_seg(p1, p2, q1, d3) or on_seg(p1, p2, q2, d4)


def _is_simple(v):
    n = len(v)
    for i in range(n):
        for j in range(i + 1, n):
            if j == i + 1 or (i == 0 and j == n - 1):
                continue
            if _segments_touch(v[i], v[(i + 1) % n], v[j], v[(j + 1) % n]):
                return False
    return True


def _edge_distance(poly, pts):
    a, b = poly.edges()
    e = b - a
    rel = pts[:, None, :] - a[None, :, :]
    t = np.clip(np.sum(rel * e[None], axis=2) / np.sum(e * e, axis=1)[None], 0.0, 1.0)
    closest = a[None] + t[..., None] * e[None]
    return np.min(np.linalg.norm(pts[:, None, :] - closest, axis=2), axis=1)


def _crossing_test(vertices, pts):
    px, py = pts[:, 0], pts[:, 1]
    inside = np.zeros(len(pts), dtype=bool)
    x0, y0 = vertices[-1]
    for x1, y1 in vertices:
        straddle = (y0 > py) != (y1 > py)
        with np.errstate(divide="ignore", invalid="ignore"):
            xint = x0 + (py - y0) * (x1 - x0) / (y1 - y0)
        inside ^= straddle & (px < xint)
        x0, y0 = x1, y1
    return inside


def _polygon_contains(poly, pts, chunk=65536):
    if len(pts) > chunk:
        return np.concatenate([_polygon_contains(poly, pts[i:i + chunk]) for i in range(0, len(pts), chunk)])
    lo, hi = poly.bbox()
    scale = max(1.0, float(np.max(hi - lo)))
    near = (np.all(pts >= lo - 1e-6 * scale, axis=1)) & (np.all(pts <= hi + 1e-6 * scale, axis=1))
    out = np.zeros(len(pts), dtype=bool)
    if not np.any(near):
        return out
    sub = pts[near]
    on_edge = _edge_distance(poly, sub) <= _ON_EDGE_TOL * scale
    if np.any(on_edge):
        sub = sub.copy()
        sub[on_edge] += _NUDGE_STEP * scale * BOUNDARY_NUDGE
    out[near] = _crossing_test(poly.vertices, sub)
    return out
