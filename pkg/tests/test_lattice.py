import numpy as np
import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from zaklab.errors import DimensionMismatch, SingularMatrix, UnsupportedDimension
from zaklab.geometry import IntervalUnion, measure
from zaklab.lattice import (check_pair, density_product, dual, fundamental_domain, lattice_from_json,
                            make_lattice)

SQRT2 = np.sqrt(2.0)

entries = st.floats(min_value=-3, max_value=3, allow_nan=False)
matrices = st.lists(entries, min_size=4, max_size=4).map(lambda v: np.array(v).reshape(2, 2)).filter(
    lambda m: abs(np.linalg.det(m)) > 1e-3)


class TestMakeLattice:
    def test_identity(self):
        lat = make_lattice(np.eye(2))
        assert lat.det == 1.0
        assert lat.dim == 2

    def test_half_integers(self):
        lat = make_lattice([[0.5]])
        assert lat.det == 0.5
        assert lat.density() == 2.0
        assert lat.volume() == 0.5

    def test_scalar_input(self):
        assert make_lattice(0.5) == make_lattice([[0.5]])

    def test_singular(self):
        with pytest.raises(SingularMatrix):
            make_lattice([[1, 1], [1, 1]])

    def test_non_square(self):
        with pytest.raises(ValueError):
            make_lattice([[1, 2, 3]])

    def test_inverse_cached(self):
        lat = make_lattice([[SQRT2, 0], [1, 1]])
        assert np.allclose(lat.gen @ lat.gen_inv, np.eye(2), atol=1e-12)

    def test_generator_is_read_only(self):
        lat = make_lattice(np.eye(2))
        with pytest.raises(ValueError):
            lat.gen[0, 0] = 3.0

    def test_json_roundtrip(self):
        lat = make_lattice([[SQRT2, 0], [1, 1]])
        assert lattice_from_json(lat.to_json()) == lat
        with pytest.raises(DimensionMismatch):
            lattice_from_json({"dim": 1, "gen": [[1, 0], [0, 1]]})


class TestDual:
    def test_identity_self_dual(self):
        assert np.allclose(dual(make_lattice(np.eye(2))).gen, np.eye(2))

    def test_diagonal(self):
        assert dual(make_lattice(0.5)).gen[0, 0] == pytest.approx(2.0)

    def test_cofactor_oracle(self):
        m = np.array([[SQRT2, 0.0], [1.0, 1.0]])
        a, b, c, d = m.ravel()
        inv_t = np.array([[d, -c], [-b, a]]) / (a * d - b * c)
        assert np.allclose(dual(make_lattice(m)).gen, inv_t, atol=1e-12)
        assert np.allclose(inv_t, [[1 / SQRT2, -1 / SQRT2], [0, 1]])

    @settings(max_examples=50, deadline=None)
    @given(matrices)
    def test_involution_and_volume(self, m):
        lat = make_lattice(m)
        back = dual(dual(lat))
        assert np.allclose(back.gen, lat.gen, atol=1e-9 * max(1.0, np.abs(m).max()))
        assert dual(lat).volume() * lat.volume() == pytest.approx(1.0, rel=1e-9)


class TestCheckPair:
    def test_sheared_pair(self):
        m = make_lattice([[SQRT2, 0], [1, 1]])
        n = make_lattice([[1 / SQRT2, -SQRT2], [0, 1]])
        rep = check_pair(m, n)
        assert rep.product_is_unimodular and rep.ntm_is_integer and rep.compatible
        assert np.allclose(rep.ntm, n.gen.T @ m.gen)
        assert np.allclose(rep.ntm, [[1, 0], [-1, 1]], atol=1e-12)

    def test_scalar(self):
        rep = check_pair(make_lattice(0.5), make_lattice(2.0))
        assert rep.compatible
        assert rep.ntm[0, 0] == 1.0

    def test_determinant_fails(self):
        rep = check_pair(make_lattice(np.eye(2)), make_lattice(np.diag([2.0, 1.0])))
        assert not rep.product_is_unimodular
        assert rep.det_product == pytest.approx(2.0)

    def test_non_integer_product(self):
        rep = check_pair(make_lattice(1.0), make_lattice(1.5))
        assert not rep.ntm_is_integer

    def test_dimension_mismatch(self):
        with pytest.raises(DimensionMismatch):
            check_pair(make_lattice(1.0), make_lattice(np.eye(2)))

    @settings(max_examples=50, deadline=None)
    @given(matrices)
    def test_dual_pair_is_compatible(self, m):
        lat = make_lattice(m)
        rep = check_pair(lat, dual(lat))
        assert rep.product_is_unimodular
        assert abs(lat.det) == pytest.approx(1 / abs(dual(lat).det), rel=1e-9)


class TestFundamentalDomain:
    def test_unit(self):
        dom = fundamental_domain(make_lattice(1.0))
        assert isinstance(dom, IntervalUnion)
        assert dom.intervals.tolist() == [[0.0, 1.0]]

    def test_half(self):
        assert fundamental_domain(make_lattice(0.5)).intervals.tolist() == [[0.0, 0.5]]

    def test_negative_generator(self):
        assert fundamental_domain(make_lattice(-2.0)).intervals.tolist() == [[-2.0, 0.0]]

    def test_sheared(self):
        dom = fundamental_domain(make_lattice([[SQRT2, 0], [1, 1]]))
        corners = {tuple(np.round(v, 12)) for v in dom.vertices}
        expected = {tuple(np.round(v, 12)) for v in [(0, 0), (SQRT2, 1), (SQRT2, 2), (0, 1)]}
        assert corners == expected
        assert measure(dom) == pytest.approx(SQRT2, abs=1e-12)

    def test_three_dimensions(self):
        with pytest.raises(UnsupportedDimension):
            fundamental_domain(make_lattice(np.eye(3)))

    @settings(max_examples=50, deadline=None)
    @given(matrices)
    def test_measure_is_volume(self, m):
        lat = make_lattice(m)
        assert measure(fundamental_domain(lat)) == pytest.approx(lat.volume(), rel=1e-9)


class TestDensity:
    def test_unit(self):
        assert density_product(make_lattice(1.0), make_lattice(1.0)) == 1.0

    def test_two_cosets(self):
        assert density_product(make_lattice(0.5), make_lattice(2.0), (1, 2)) == 2.0

    @pytest.mark.parametrize("k", [1, 2, 3, 14])
    def test_k_cosets_of_dual(self, k):
        lat = make_lattice(np.eye(2))
        assert density_product(lat, dual(lat), (1, k)) == k

    def test_bad_counts(self):
        with pytest.raises(ValueError):
            density_product(make_lattice(1.0), make_lattice(1.0), (0, 1))
