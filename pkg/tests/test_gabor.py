import numpy as np
import pytest

from zaklab.errors import ConditionEGammaLambda, NotATiling, SupportNotCovered, ValidationError
from zaklab.functions import SampledFunction, gaussian_function, indicator_function, piecewise_constant_function
from zaklab.gabor import GaborSystemSpec, biorthogonality_check, frame_sum_check, gabor_coefficients, gabor_system
from zaklab.geometry import IntervalUnion, Polygon
from zaklab.lattice import make_lattice
from zaklab.spectral import LatticeCosets, riesz_bounds_estimate
from zaklab.zak import Gaussian


def lattice_spec(step, radius, cosets=None):
    return LatticeCosets(make_lattice(step), cosets, radius)


def truncated_parseval(segments, radius):
    """Sum over |gamma| <= radius of |integral over [a, b) of exp(-2 pi i gamma x)|^2, in closed form."""
    g = np.arange(-radius, radius + 1)
    return sum(np.sum(((b - a) * np.sinc(g * (b - a))) ** 2) for a, b in segments)


class TestCoefficients:
    def test_reproduces_own_element(self, unit):
        sys_ = gabor_system(unit, lattice_spec(1.0, 5), lattice_spec(1.0, 10))
        c = gabor_coefficients(indicator_function(unit), sys_)
        lams, gammas = sys_.translations()[:, 0], sys_.frequencies()[:, 0]
        i, j = np.flatnonzero(lams == 0)[0], np.flatnonzero(gammas == 0)[0]
        assert c[i, j] == pytest.approx(1.0, abs=1e-12)
        c[i, j] = 0
        assert np.abs(c).max() < 1e-12

    def test_half_lattice_pieces(self, unit):
        f = indicator_function(IntervalUnion([(0.2, 0.7)]))
        sys_ = gabor_system(unit, lattice_spec(0.5, 4), lattice_spec(1.0, 20))
        total = np.sum(np.abs(gabor_coefficients(f, sys_)) ** 2)
        # f meets [-1/2, 1/2), [0, 1) and [1/2, 3/2) in [0.2, 0.5), [0.2, 0.7) and [0.5, 0.7).
        assert total == pytest.approx(truncated_parseval([(0.2, 0.5), (0.2, 0.7), (0.5, 0.7)], 20), abs=1e-3)

    def test_half_lattice_full_band(self, unit):
        """Summing every discrete frequency the quadrature resolves recovers k ||f||^2 = 1."""
        f = indicator_function(IntervalUnion([(0.2, 0.7)]))
        sys_ = gabor_system(unit, lattice_spec(0.5, 4), lattice_spec(1.0, 255))
        total = np.sum(np.abs(gabor_coefficients(f, sys_, quad_res=512)) ** 2)
        assert total == pytest.approx(1.0, abs=1e-3)

    def test_zero_function(self, unit):
        f = SampledFunction(lambda p: np.zeros(len(p)), np.array([0.0]), np.array([1.0]))
        c = gabor_coefficients(f, gabor_system(unit, lattice_spec(1.0, 2), lattice_spec(1.0, 3)))
        assert c.shape == (5, 7)
        assert np.all(c == 0)

    def test_support_not_covered(self, unit):
        f = gaussian_function(-3, 3)
        with pytest.raises(SupportNotCovered):
            gabor_coefficients(f, gabor_system(unit, lattice_spec(1.0, 1), lattice_spec(1.0, 3)))

    def test_localized_function(self, unit):
        """For a tiling, f supported in one translate has no coefficients on the others."""
        f = piecewise_constant_function(2.1, 2.9, 5, seed=3)
        sys_ = gabor_system(unit, lattice_spec(1.0, 4), lattice_spec(1.0, 10))
        c = gabor_coefficients(f, sys_)
        lams = sys_.translations()[:, 0]
        assert np.abs(c[lams != 2]).max() < 1e-15
        assert np.abs(c[lams == 2]).max() > 0.1

    def test_two_dimensional(self, square, z2):
        f = indicator_function(Polygon([(0.25, 0.25), (0.75, 0.25), (0.75, 0.75), (0.25, 0.75)]))
        sys_ = gabor_system(square, LatticeCosets(z2, None, 1), LatticeCosets(z2, None, 0))
        c = gabor_coefficients(f, sys_, quad_res=64)
        assert np.sum(np.abs(c) ** 2) == pytest.approx(0.25 ** 2, abs=1e-12)

    def test_gaussian_window(self):
        sys_ = GaborSystemSpec(Gaussian(), lattice_spec(1.0, 8), lattice_spec(1.0, 0))
        c = gabor_coefficients(gaussian_function(-1, 1), sys_)
        assert np.argmax(np.abs(c[:, 0])) == 8

    def test_low_resolution(self, unit):
        with pytest.raises(ValidationError):
            gabor_coefficients(indicator_function(unit), gabor_system(unit, [[0.0]], [[0.0]]), quad_res=4)

    def test_json(self, unit):
        js = gabor_system(unit, [[0.0], [1.0]], lattice_spec(1.0, 1)).to_json()
        assert js["shifts"] == [[0.0], [1.0]] and len(js["modulations"]) == 3


class TestFrameSum:
    def test_orthonormal_basis(self, unit):
        sys_ = gabor_system(unit, lattice_spec(1.0, 4), lattice_spec(1.0, 100))
        rep = frame_sum_check(gaussian_function(-3, 3), sys_)
        assert rep.ratio == pytest.approx(1.0, abs=5e-3)
        assert rep.norm_sq == pytest.approx(2 ** -0.5, abs=1e-6)
        assert rep.ratio == rep.sum_sq_coeffs / rep.norm_sq

    def test_half_lattice(self, unit):
        sys_ = gabor_system(unit, lattice_spec(0.5, 8), lattice_spec(1.0, 100))
        assert frame_sum_check(gaussian_function(-3, 3), sys_).ratio == pytest.approx(2.0, abs=5e-3)

    def test_riesz_spectrum_bounds(self, unit):
        spec = lattice_spec(2.0, 10, [[0.0], [0.5]])
        est = riesz_bounds_estimate(unit, spec, [5, 10, 20])
        rep = frame_sum_check(indicator_function(IntervalUnion([(0.1, 0.9)])), gabor_system(unit, [[0.0]], spec))
        assert est.lower_estimates[-1] <= rep.ratio <= est.upper_estimates[-1]
        assert "42 modulations" in rep.truncation_note

    def test_random_pieces(self, unit):
        f = piecewise_constant_function(-2, 2, 8, seed=11)
        sys_ = gabor_system(unit, lattice_spec(1.0, 3), lattice_spec(1.0, 127))
        assert frame_sum_check(f, sys_).ratio == pytest.approx(1.0, abs=5e-3)

    @pytest.mark.parametrize("k", [1, 2, 3])
    def test_level_k(self, unit, k):
        sys_ = gabor_system(unit, lattice_spec(1.0 / k, 4 * k), lattice_spec(1.0, 127))
        assert frame_sum_check(gaussian_function(-3, 3), sys_).ratio == pytest.approx(k, abs=5e-3)


class TestBiorthogonality:
    def test_self_dual(self, unit):
        dev = biorthogonality_check(unit, np.arange(-2, 3)[:, None], lattice_spec(1.0, 10))
        assert dev < 1e-10

    def test_two_cosets(self, unit):
        assert biorthogonality_check(unit, [[0.0]], lattice_spec(2.0, 10, [[0.0], [0.5]])) < 1e-6

    def test_condition_rejected(self, unit):
        with pytest.raises(ConditionEGammaLambda):
            biorthogonality_check(unit, np.arange(-2, 3)[:, None], lattice_spec(2.0, 10, [[0.0], [0.5]]))

    def test_condition_accepted_on_even_shifts(self, unit):
        """Half-integer frequencies pair integrally with even translations, but those leave gaps."""
        lams = np.array([[-2.0], [0.0], [2.0]])
        assert biorthogonality_check(unit, lams, lattice_spec(2.0, 10, [[0.0], [0.5]])) < 1e-6

    def test_overlap_rejected(self):
        with pytest.raises(NotATiling):
            biorthogonality_check(IntervalUnion([(0.0, 1.0)]), [[0.0], [0.5]], lattice_spec(2.0, 3))

    def test_polygon_overlap_rejected(self, lshape):
        with pytest.raises(NotATiling):
            biorthogonality_check(lshape, [[0.0, 0.0], [1.0, 0.0]], LatticeCosets(make_lattice(np.eye(2)), None, 1))

    def test_square(self, square, z2):
        dev = biorthogonality_check(square, [[0.0, 0.0], [1.0, 0.0]], LatticeCosets(z2, None, 1), quad_res=64)
        assert dev < 1e-12

    def test_doubling_resolution(self, unit):
        spec = lattice_spec(2.0, 10, [[0.0], [0.5]])
        devs = [biorthogonality_check(unit, [[0.0]], spec, q) for q in (64, 128, 256, 512)]
        for coarse, fine in zip(devs, devs[1:]):
            assert fine <= coarse / 2 or fine < 1e-12
