import numpy as np
import pytest

from app.core.services.space_service import SpaceService, binomial_kernel
from app.domain.errors import SpecError, TailNotControlled
from app.domain.models import TaylorPolynomial


@pytest.fixture(scope="module")
def spaces(grid):
    return SpaceService(grid)


class TestTestFunctions:
    def test_default_gamma(self, spaces, std1):
        assert spaces.make_test_function(std1, 0.5, 2.0).gamma == 9.0
        assert spaces.make_test_function(std1, 0.5, 4.0).gamma == 15.0

    def test_gamma_below_minimum_rejected(self, spaces, std1):
        with pytest.raises(SpecError):
            spaces.make_test_function(std1, 0.5, 2.0, gamma=5.0)

    def test_norm_at_origin_is_one(self, spaces, std1):
        tf = spaces.make_test_function(std1, 0, 2.0)
        assert spaces.test_function_norm(std1, tf) == pytest.approx(1.0, rel=1e-12)

    @pytest.mark.parametrize("a", [0.5, 0.6j])
    def test_exact_norm_matches_quadrature(self, spaces, std1, a):
        tf = spaces.make_test_function(std1, a, 2.0)
        numeric = spaces.norm_Ap(lambda z: spaces.eval_F(tf, z), std1, 2.0)
        assert spaces.test_function_norm(std1, tf) == pytest.approx(numeric, rel=1e-6)

    def test_evaluation_outside_disk_rejected(self, spaces, std1):
        tf = spaces.make_test_function(std1, 0.5, 2.0)
        with pytest.raises(SpecError):
            spaces.eval_F(tf, np.array([1.0]))


class TestNorms:
    def test_polynomial_norm_from_moments(self, spaces, std1):
        f = TaylorPolynomial([1.0, 1.0])
        # 2 omega_1 + 2 omega_3 for (1-r)
        assert spaces.polynomial_norm_sq(f, std1) == pytest.approx(2.0 / 6.0 + 2.0 / 20.0)
        assert spaces.norm_Ap(f, std1, 2.0) ** 2 == pytest.approx(spaces.polynomial_norm_sq(f, std1), rel=1e-10)

    def test_monomials_are_orthogonal(self, spaces, std1):
        value = spaces.inner_product(lambda z: z, lambda z: z ** 2, std1)
        assert abs(value) < 1e-12

    def test_norm_needs_positive_exponent(self, spaces, std1):
        with pytest.raises(SpecError):
            spaces.norm_Ap(lambda z: z, std1, 0.0)


class TestKernels:
    def test_kernel_coefficients_of_standard_weight(self, spaces, std1):
        c = spaces.kernel_coefficients(std1, 3)
        k = np.arange(4)
        assert np.allclose(c, (2 * k + 2) * (2 * k + 3) / 2.0)

    def test_reproducing_property(self, spaces, std1):
        f = TaylorPolynomial([1.0, 2.0, 1.0j])
        z = 0.3 - 0.2j
        ks = spaces.kernel_series(std1, z)
        value = spaces.inner_product(f, lambda zeta: spaces.kernel_eval(ks, zeta), std1)
        assert value == pytest.approx(complex(f(z)), abs=1e-10)

    def test_tail_bound_is_reported(self, spaces, std1):
        ks = spaces.kernel_series(std1, 0.5, N=64)
        assert 0 < ks.tail_bound < 1e-10
        assert ks.N == 64

    def test_series_radius_must_be_below_one(self, spaces, std1):
        with pytest.raises(TailNotControlled):
            spaces.kernel_series(std1, 0.5, rho=1.0)

    def test_evaluation_beyond_series_radius(self, spaces, std1):
        ks = spaces.kernel_series(std1, 0.3, rho=0.1)
        with pytest.raises(TailNotControlled):
            spaces.kernel_eval(ks, np.array([0.9]))

    def test_kernel_A1_norm_at_origin(self, spaces, std1):
        # c_0 * 2 omega_1 = 3 * 1/3
        assert spaces.kernel_A1_norm(std1, 0) == pytest.approx(1.0)

    def test_kernel_A1_norm_grows_toward_boundary(self, spaces, std1):
        inner = spaces.kernel_A1_norm(std1, 0.3)
        outer = spaces.kernel_A1_norm(std1, 0.7)
        assert 1.0 < inner < outer

    def test_binomial_kernel(self):
        assert binomial_kernel(0.0, 0.0) == pytest.approx(1.0)
        assert binomial_kernel(1.0, 0.5) == pytest.approx(2.0 / 0.125)


class TestCoefficientOperators:
    def test_truncation_for_p_above_one(self, spaces):
        f = TaylorPolynomial([1.0, 2.0, 3.0])
        assert spaces.apply_Kn(f, 1, 2.0) == TaylorPolynomial([1.0, 2.0])
        assert spaces.apply_Rn(f, 1, 2.0) == TaylorPolynomial([0.0, 0.0, 3.0])

    def test_cesaro_means_for_p_one(self, spaces):
        f = TaylorPolynomial([1.0, 2.0, 3.0])
        assert spaces.apply_Kn(f, 1, 1.0) == TaylorPolynomial([1.0, 1.0])

    def test_p_below_one_rejected(self, spaces):
        with pytest.raises(SpecError):
            spaces.apply_Kn(TaylorPolynomial([1.0]), 2, 0.5)

    def test_remainder_kernel_bound(self, spaces, std1):
        sizes = spaces.remainder_kernel_bound(std1, 0.3, n=4, r=0.5)
        assert sizes["sampled_sup"] <= sizes["coefficient_sum"] * (1.0 + 1e-12)
        assert sizes["coefficient_sum"] <= sizes["printed_bound"]
        with pytest.raises(SpecError):
            spaces.remainder_kernel_bound(std1, 0.6, n=4, r=0.5)
