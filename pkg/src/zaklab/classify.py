"""Classify Gabor systems G(g, M Z^d x N Z^d) from the modulus of Z_M g.

With det(MN) = 1 and N^T M integral, the system is complete iff Z_M g has
no positive-measure zero set, a frame (equivalently a Riesz basis) iff
|Z_M g| is bounded above and below, and an orthonormal basis iff
|Z_M g| = 1 almost everywhere.
"""

from dataclasses import dataclass, field
from enum import Enum

import numpy as np

from .errors import IncompatiblePair
from .lattice import check_pair
from .spectral import LatticeCosets, orthogonality_check
from .tiling import multitiling_level
from .zak import Indicator, zak_grid, zak_values

TOL_ZERO = 1e-8
TOL_FLAT = 1e-6


class Verdict(str, Enum):
    NOT_COMPLETE = "NotComplete"
    COMPLETE_NOT_FRAME = "CompleteNotFrame"
    RIESZ_BASIS_FRAME = "RieszBasisFrame"
    ORTHOGONAL_CONSTANT_MODULUS = "OrthogonalConstantModulus"
    ORTHONORMAL_UNIT_MODULUS = "OrthonormalUnitModulus"

    @property
    def is_frame(self):
        return self in FRAME_VERDICTS

    @property
    def is_orthogonal(self):
        return self in (Verdict.ORTHOGONAL_CONSTANT_MODULUS, Verdict.ORTHONORMAL_UNIT_MODULUS)


FRAME_VERDICTS = (
    Verdict.RIESZ_BASIS_FRAME,
    Verdict.ORTHOGONAL_CONSTANT_MODULUS,
    Verdict.ORTHONORMAL_UNIT_MODULUS,
)


@dataclass(frozen=True)
class ClassificationReport:
    ess_inf_estimate: float
    ess_sup_estimate: float
    zero_fraction: float
    verdict: Verdict
    tol_zero: float
    flatness: float

    def to_json(self):
        return {
            "verdict": self.verdict.value,
            "ess_inf_estimate": self.ess_inf_estimate,
            "ess_sup_estimate": self.ess_sup_estimate,
            "zero_fraction": self.zero_fraction,
            "flatness": self.flatness,
            "tol_zero": self.tol_zero,
        }


@dataclass(frozen=True)
class ZeroSearchResult:
    found: bool
    x: np.ndarray
    xi: np.ndarray
    magnitude: float
    refinement_levels: int
    history: list = field(default_factory=list)

    def to_json(self):
        return {
            "found": self.found,
            "x": self.x.tolist(),
            "xi": self.xi.tolist(),
            "magnitude": self.magnitude,
            "refinement_levels": self.refinement_levels,
            "history": self.history,
        }


def _local_axes(center, half_width, points=9):
    offsets = np.linspace(-1.0, 1.0, points)
    axes = [c + half_width * offsets for c in center]
    return np.array(np.meshgrid(*axes, indexing="ij")).reshape(len(center), -1).T


def _refine(w, m, n, x0, xi0, half_width, levels, tol_zero, stop_on_plateau=False):
    """Zoom 4x per level around the running argmin of |Z|, in lattice coordinates.

    The current best point is always a node of the next local grid, so the
    recorded magnitudes never increase.
    """
    ux, uxi = m.gen_inv @ x0, n.gen_inv @ xi0
    best = abs(zak_values(w, m, x0[None], xi0[None])[0, 0])
    history = [float(best)]
    h = half_width
    stalls = 0
    done = 0
    for _ in range(levels):
        if best < tol_zero:
            break
        xs = _local_axes(ux, h) @ m.gen.T
        xis = _local_axes(uxi, h) @ n.gen.T
        mag = np.abs(zak_values(w, m, xs, xis))
        i, j = np.unravel_index(np.argmin(mag), mag.shape)
        improved = mag[i, j] < best
        if improved:
            ratio = best / max(mag[i, j], 1e-300)
            best = float(mag[i, j])
            ux, uxi = m.gen_inv @ xs[i], n.gen_inv @ xis[j]
        history.append(float(best))
        done += 1
        h /= 4.0
        stalls = stalls + 1 if (not improved or ratio < 1.5) else 0
        if stop_on_plateau and stalls >= 2:
            break
    return m.gen @ ux, n.gen @ uxi, float(best), done, history


def classify_gabor(grid, tol_zero=TOL_ZERO, tol_flat=TOL_FLAT, max_refine=25):
    """Five-way verdict from a :class:`~zaklab.zak.ZakGrid`.

    A zero fraction above ``2 (1/res_x + 1/res_xi)`` is read as a zero set of
    positive measure. Otherwise a grid minimum that refines to below
    ``tol_zero`` means complete but not a frame.
    """
    if not check_pair(grid.m_lattice, grid.n_lattice).compatible:
        raise IncompatiblePair("classification needs det(MN) = 1 and N^T M integral")
    mag = grid.magnitude()
    zero_fraction = float(np.mean(mag < tol_zero))
    ess_sup = float(mag.max())
    ess_inf = float(mag.min())
    if zero_fraction > 2.0 * (1.0 / grid.res_x + 1.0 / grid.res_xi):
        verdict = Verdict.NOT_COMPLETE
    elif ess_inf < tol_zero:
        verdict = Verdict.COMPLETE_NOT_FRAME
    else:
        i, j = np.unravel_index(np.argmin(mag), mag.shape)
        *_, refined, _, _ = _refine(grid.window, grid.m_lattice, grid.n_lattice, grid.x_nodes[i],
                                    grid.xi_nodes[j], 1.0 / min(grid.res_x, grid.res_xi), max_refine,
                                    tol_zero, stop_on_plateau=True)
        ess_inf = min(ess_inf, refined)
        if refined < tol_zero:
            verdict = Verdict.COMPLETE_NOT_FRAME
        elif ess_sup - ess_inf <= tol_flat * ess_sup:
            if abs(ess_sup - 1.0) <= tol_flat and abs(ess_inf - 1.0) <= tol_flat:
                verdict = Verdict.ORTHONORMAL_UNIT_MODULUS
            else:
                verdict = Verdict.ORTHOGONAL_CONSTANT_MODULUS
        else:
            verdict = Verdict.RIESZ_BASIS_FRAME
    return ClassificationReport(ess_inf_estimate=ess_inf, ess_sup_estimate=ess_sup,
                                zero_fraction=zero_fraction, verdict=verdict, tol_zero=tol_zero,
                                flatness=ess_sup - ess_inf)


def find_zero(w, m, n, coarse_res=32, levels=14, tol_zero=TOL_ZERO):
    """Coarse-grid argmin of |Z_M w| followed by ``levels`` rounds of 4x local zoom."""
    if levels < 1 or coarse_res < 16:
        raise ValueError("need levels >= 1 and coarse_res >= 16")
    grid = zak_grid(w, m, n, coarse_res, coarse_res)
    mag = grid.magnitude()
    i, j = np.unravel_index(np.argmin(mag), mag.shape)
    x, xi, best, done, history = _refine(w, m, n, grid.x_nodes[i], grid.xi_nodes[j], 1.0 / coarse_res,
                                         levels, tol_zero)
    # |Z| is M-periodic in x and N-periodic in xi; report the representative in Q_M x Q_N.
    x = m.gen @ np.mod(m.gen_inv @ x, 1.0)
    xi = n.gen @ np.mod(n.gen_inv @ xi, 1.0)
    return ZeroSearchResult(found=best < tol_zero, x=x, xi=xi, magnitude=best, refinement_levels=done,
                            history=history)


@dataclass(frozen=True)
class Implication:
    name: str
    premise: bool
    conclusion: bool

    @property
    def holds(self):
        return (not self.premise) or self.conclusion

    def to_json(self):
        return {"name": self.name, "premise": self.premise, "conclusion": self.conclusion,
                "holds": self.holds}


@dataclass(frozen=True)
class HarnessReport:
    level: int | None
    classification: ClassificationReport
    zero: ZeroSearchResult
    orthogonality: float
    implications: list

    @property
    def passed(self):
        return all(imp.holds for imp in self.implications)

    def to_json(self):
        return {
            "passed": self.passed,
            "level": self.level if self.level is not None else "NotMultiTiling",
            "classification": self.classification.to_json(),
            "zero": self.zero.to_json(),
            "orthogonality": self.orthogonality,
            "implications": [imp.to_json() for imp in self.implications],
        }


def theorem_harness(dom, m, n, n_samples=10000, seed=0, res_x=None, res_xi=None, ortho_radius=None,
                    ortho_tol=1e-8):
    """Run tiling, classification, zero search and orthogonality on one (Omega, M, N).

    Each returned :class:`Implication` is one consequence of the lattice
    theory that the numbers must respect; ``passed`` is their conjunction.
    """
    if not check_pair(m, n).compatible:
        raise IncompatiblePair("harness needs det(MN) = 1 and N^T M integral")
    d = m.dim
    res_x = res_x or (256 if d == 1 else 8)
    res_xi = res_xi or (256 if d == 1 else 32)
    ortho_radius = ortho_radius or (20 if d == 1 else 4)
    w = Indicator(dom)
    tiling = multitiling_level(dom, m, n_samples, seed)
    report = classify_gabor(zak_grid(w, m, n, res_x, res_xi))
    zero = find_zero(w, m, n, coarse_res=32 if d == 1 else 16)
    ortho = orthogonality_check(dom, LatticeCosets(n, None, ortho_radius))
    level = tiling.level
    verdict = report.verdict
    tiles = level == 1
    orthogonal_exps = ortho < ortho_tol
    bound = (level or 0) * np.sqrt(abs(m.det)) + 1e-9
    implications = [
        Implication("frame implies tiling", verdict.is_frame, tiles),
        Implication("frame implies orthogonal exponentials E(N Z^d)", verdict.is_frame, orthogonal_exps),
        Implication("frame implies orthogonal Gabor basis", verdict.is_frame, verdict.is_orthogonal),
        Implication("tiling and orthogonal exponentials imply orthogonal Gabor basis",
                    tiles and orthogonal_exps, verdict.is_orthogonal),
        Implication("level > 1 implies a Zak zero", level is not None and level > 1, zero.found),
        Implication("level > 1 implies not a frame", level is not None and level > 1, not verdict.is_frame),
        Implication("multi-tiling implies complete with |Z| <= k |det M|^(1/2)", level is not None,
                    verdict != Verdict.NOT_COMPLETE and report.ess_sup_estimate <= bound),
    ]
    return HarnessReport(level=level, classification=report, zero=zero, orthogonality=ortho,
                         implications=implications)
