"""Bundled reproduction presets: windows, lattice pairs and probe points.

Polygon and interval data live in ``zaklab/data`` as versioned JSON files.
"""

import json
from dataclasses import dataclass, field
from importlib import resources

import numpy as np

from .classify import classify_gabor, find_zero
from .errors import ValidationError
from .geometry import IntervalUnion, domain_from_json
from .lattice import make_lattice
from .tiling import multitiling_level
from .zak import Gaussian, Indicator, zak_grid, zak_section, zak_values

PRESET_IDS = ("tiling-a", "tiling-b", "tiling-c", "parallelogram", "lshape", "octagon", "irrational-gap",
              "gaussian")


def load_domain(name):
    """Domain stored as ``zaklab/data/<name>.json``."""
    text = resources.files("zaklab").joinpath("data", f"{name}.json").read_text()
    return domain_from_json(json.loads(text))


@dataclass(frozen=True)
class ReproPreset:
    """Parameters of one reproduction.

    ``probes`` are (label, x, xi) triples where |Z| is reported; for d = 2
    the heatmap is the xi-section at ``section_x``.
    """

    id: str
    description: str
    window: object
    m: np.ndarray
    n: np.ndarray
    res_x: int = 256
    res_xi: int = 256
    section_x: tuple | None = None
    probes: list = field(default_factory=list)

    @property
    def dim(self):
        return self.window.dim

    def lattices(self):
        return make_lattice(self.m), make_lattice(self.n)


def _line_probes(label, x, first, count=20):
    """``count`` points on the line xi_1 = first at equally spaced xi_2 offsets."""
    ts = (np.arange(count) + 0.37) / count
    return [(f"{label} #{i}", x, (first, float(t))) for i, t in enumerate(ts)]


def get_preset(pid):
    unit = IntervalUnion([(0.0, 1.0)])
    eye = np.eye(2)
    if pid == "tiling-a":
        return ReproPreset(pid, "[0,1) with M = N = 1; |Z| is identically one", Indicator(unit), 1.0, 1.0,
                           probes=[("generic point", (0.3,), (0.7,))])
    if pid == "tiling-b":
        return ReproPreset(pid, "[0,1) with M = 1/2, N = 2; zeros at odd xi", Indicator(unit), 0.5, 2.0,
                           probes=[("xi = 1", (0.25,), (1.0,)), ("xi = 0", (0.25,), (0.0,))])
    if pid == "tiling-c":
        return ReproPreset(pid, "sheared parallelogram tiling R^2 by Z^2", Indicator(load_domain("tiling_c")),
                           eye, eye, res_x=8, res_xi=32, section_x=(0.4, 0.6),
                           probes=[("generic point", (0.4, 0.6), (0.3, 0.8))])
    if pid == "parallelogram":
        x = (0.7, 0.3)
        return ReproPreset(pid, "parallelogram P, level 2; zeros on xi_1 = 1/2 for x in the lower triangle",
                           Indicator(load_domain("parallelogram")), eye, eye, res_x=8, res_xi=32,
                           section_x=x, probes=_line_probes("xi_1 = 1/2", x, 0.5))
    if pid == "lshape":
        x = (0.3, 0.55)
        return ReproPreset(pid, "L-shape, level 3; isolated zeros at (1/3, 2/3) and (2/3, 1/3)",
                           Indicator(load_domain("lshape")), eye, eye, res_x=8, res_xi=32, section_x=x,
                           probes=[("(1/3, 2/3)", x, (1 / 3, 2 / 3)), ("(2/3, 1/3)", x, (2 / 3, 1 / 3))])
    if pid == "octagon":
        x = (0.5, 0.25)
        probes = _line_probes("xi_1 = 1/2", x, 0.5)
        probes += [("(1/6, 1/2)", x, (1 / 6, 0.5)), ("(5/6, 1/2)", x, (5 / 6, 0.5))]
        return ReproPreset(pid, "octagon O, level 14; zeros on xi_1 = 1/2 and at (1/6, 1/2), (5/6, 1/2)",
                           Indicator(load_domain("octagon")), eye, eye, res_x=8, res_xi=32, section_x=x,
                           probes=probes)
    if pid == "irrational-gap":
        return ReproPreset(pid, "[0,1/2) and [sqrt2, sqrt2 + 1/2), M = N = 1; vanishes on a strip",
                           Indicator(load_domain("irrational_gap")), 1.0, 1.0,
                           probes=[("inside the strip", (0.95,), (0.3,))])
    if pid == "gaussian":
        return ReproPreset(pid, "exp(-pi x^2), M = N = 1; zero at (1/2, 1/2)", Gaussian(1), 1.0, 1.0,
                           res_x=65, res_xi=65, probes=[("(1/2, 1/2)", (0.5,), (0.5,))])
    raise ValidationError(f"unknown preset {pid!r}; choose one of {', '.join(PRESET_IDS)}")


def run_preset(pid):
    """Run one preset end to end; returns ``(report, heatmap, axes)``.

    ``heatmap`` is |Z| on the (x, xi) grid for d = 1 and on the xi-section
    at ``section_x`` for d = 2.
    """
    p = get_preset(pid)
    m, n = p.lattices()
    w = p.window
    grid = zak_grid(w, m, n, p.res_x, p.res_xi)
    report = {"preset": p.id, "description": p.description, "window": w.to_json(), "M": m.to_json(),
              "N": n.to_json(), "res_x": p.res_x, "res_xi": p.res_xi,
              "classification": classify_gabor(grid).to_json()}
    if isinstance(w, Indicator):
        report["tiling"] = multitiling_level(w.dom, m).to_json()
    report["zero_search"] = find_zero(w, m, n, coarse_res=32 if p.dim == 1 else 16).to_json()
    report["probes"] = [
        {"label": label, "x": list(x), "xi": list(xi),
         "magnitude": float(abs(zak_values(w, m, np.array([x]), np.array([xi]))[0, 0]))}
        for label, x, xi in p.probes
    ]
    if p.dim == 1:
        heat = grid.magnitude()
        axes = {"rows": "x", "cols": "xi", "x_nodes": grid.x_nodes[:, 0], "xi_nodes": grid.xi_nodes[:, 0]}
        zero_cols = np.all(heat < 1e-8, axis=1)
        if np.any(zero_cols):
            xs = grid.x_nodes[zero_cols, 0]
            report["zero_strip_x"] = [float(xs.min()), float(xs.max())]
    else:
        xis, vals = zak_section(w, m, n, p.section_x, p.res_xi)
        heat = np.abs(vals)
        report["section_x"] = list(p.section_x)
        axes = {"rows": "xi_1", "cols": "xi_2", "x": list(p.section_x), "xi_nodes": xis}
    return report, heat, axes
