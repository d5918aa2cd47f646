import math

import numpy as np
import pytest
from hypothesis import given
from hypothesis import strategies as st

from conftest import coefficient, disc_points, polynomials
from oplab.analytic import (
    BlochGrid,
    TaylorPolynomial as T,
    bloch_norm,
    bloch_seminorm,
    decompose,
    differentiate,
    dilate,
    evaluate,
    growth_bound_margin,
    little_bloch_tail,
    mz_power,
    q_power,
    random_polynomial,
)
from oplab.errors import ConfigurationError, DomainError

Z2_SEMINORM = 4.0 / (3.0 * math.sqrt(3.0))


class TestPolynomial:
    def test_trailing_zeros_trimmed(self):
        assert T([1, 2, 0, 0]).degree == 1
        assert T([0, 0]).is_zero()

    def test_coefficients_read_only(self):
        with pytest.raises(ValueError):
            T([1, 2]).coeffs[0] = 5

    @pytest.mark.parametrize(
        "coeffs, z, expected",
        [([0, 1], 0.5j, 0.5j), ([3, 2, 1], 0, 3), ([0, 0, 1], 0.5 + 0.5j, 0.5j)],
    )
    def test_evaluate_examples(self, coeffs, z, expected):
        assert evaluate(T(coeffs), z) == pytest.approx(expected, abs=1e-15)

    @pytest.mark.parametrize(
        "coeffs, expected", [([0, 0, 1], [0, 2]), ([5], [0]), ([1, 1, 1, 1], [1, 2, 3])]
    )
    def test_differentiate_examples(self, coeffs, expected):
        assert differentiate(T(coeffs)) == T(expected)

    @pytest.mark.parametrize(
        "coeffs, m, expected",
        [([1], 2, [0, 0, 1]), ([1, 1], 1, [0, 1, 1]), ([2, 0, 3], 3, [0, 0, 0, 2, 0, 3])],
    )
    def test_mz_examples(self, coeffs, m, expected):
        assert mz_power(T(coeffs), m) == T(expected)

    @pytest.mark.parametrize(
        "coeffs, m, expected", [([3, 2, 1], 1, [2, 1]), ([0, 0, 7], 2, [7]), ([1], 1, [0])]
    )
    def test_q_examples(self, coeffs, m, expected):
        assert q_power(T(coeffs), m) == T(expected)

    @pytest.mark.parametrize(
        "coeffs, t, expected",
        [([0, 1], 0.5, [0, 0.5]), ([1, 1, 1], 0.0, [1]), ([0, 0, 1], 0.3, [0, 0, 0.09])],
    )
    def test_dilate_examples(self, coeffs, t, expected):
        assert dilate(T(coeffs), t).allclose(T(expected), rtol=1e-15)

    @pytest.mark.parametrize("t", [-0.1, 1.5])
    def test_dilate_domain(self, t):
        with pytest.raises(DomainError):
            dilate(T([1, 1]), t)

    @pytest.mark.parametrize(
        "coeffs, m, head, tail",
        [
            ([1, 2, 3], 1, [1], [2, 3]),
            ([1, 2, 3], 5, [1, 2, 3, 0, 0], [0]),
            ([0, 0, 4, 5], 2, [0, 0], [4, 5]),
        ],
    )
    def test_decompose_examples(self, coeffs, m, head, tail):
        h, t = decompose(T(coeffs), m)
        assert h == head and t == T(tail)

    @given(polynomials(), st.integers(0, 6))
    def test_q_inverts_mz(self, f, m):
        assert q_power(mz_power(f, m), m) == f

    @given(polynomials(), st.integers(1, 6))
    def test_decompose_reassembles(self, f, m):
        head, tail = decompose(f, m)
        assert T(head) + mz_power(tail, m) == f

    @given(polynomials(), polynomials(), coefficient, coefficient)
    def test_derivative_linear(self, f, g, a, b):
        lhs = differentiate(a * f + b * g)
        rhs = a * differentiate(f) + b * differentiate(g)
        assert lhs.allclose(rhs, rtol=1e-12, atol=1e-12 * (1 + abs(a) + abs(b)) * 200)

    @given(polynomials(), disc_points)
    def test_q_definition(self, f, z):
        # Qf(z) = (f(z) - f(0)) / z away from the origin
        if abs(z) > 1e-3:
            scale = 1 + np.abs(f.coeffs).sum()
            assert abs(q_power(f, 1)(z) - (f(z) - f(0)) / z) <= 1e-11 * scale / abs(z)


class TestBlochNorms:
    def test_seminorm_of_z(self):
        est = bloch_seminorm(T([0, 1]))
        assert est.value == pytest.approx(1.0, abs=1e-12)
        assert abs(est.attained_at) < 1e-6

    def test_seminorm_of_constant(self):
        assert bloch_seminorm(T([5])).value == 0.0

    def test_seminorm_of_z_squared(self):
        est = bloch_seminorm(T([0, 0, 1]))
        assert est.value == pytest.approx(Z2_SEMINORM, rel=1e-12)
        assert abs(est.attained_at) == pytest.approx(1 / math.sqrt(3), rel=1e-6)

    @pytest.mark.parametrize(
        "coeffs, expected", [([1], 1.0), ([0, 1], 1.0), ([2, 0, 1], 2 + Z2_SEMINORM)]
    )
    def test_norm_examples(self, coeffs, expected):
        assert bloch_norm(T(coeffs)).value == pytest.approx(expected, rel=1e-12)

    def test_attained_value_consistent(self, rng):
        for _ in range(10):
            f = random_polynomial(rng, 9)
            est = bloch_seminorm(f)
            z = est.attained_at
            assert est.value == pytest.approx((1 - abs(z) ** 2) * abs(differentiate(f)(z)), rel=1e-14)

    def test_monomial_closed_form(self):
        # sup (1-r^2) n r^(n-1) is attained at r^2 = (n-1)/(n+1)
        for n in range(2, 13):
            r2 = (n - 1) / (n + 1)
            exact = (1 - r2) * n * r2 ** ((n - 1) / 2)
            assert bloch_seminorm(T.monomial(n)).value == pytest.approx(exact, rel=1e-12)

    def test_seminorm_rotation_invariant(self, rng):
        for _ in range(10):
            f = random_polynomial(rng, 12)
            rotated = T(f.coeffs * np.exp(1j * 0.37 * np.arange(len(f.coeffs))))
            assert abs(bloch_seminorm(rotated).value - bloch_seminorm(f).value) < 1e-9

    def test_degree_over_grid_capacity(self):
        grid = BlochGrid(n_theta=16)
        with pytest.raises(ConfigurationError):
            bloch_seminorm(T.monomial(5), grid)

    def test_dilation_does_not_increase(self, rng):
        for _ in range(10):
            f = random_polynomial(rng, 10)
            for t in (0.2, 0.6, 0.95):
                assert bloch_seminorm(dilate(f, t)).value <= bloch_seminorm(f).value + 1e-9

    @given(polynomials(max_degree=10), coefficient)
    def test_seminorm_homogeneous(self, f, a):
        s = bloch_seminorm(f).value
        assert bloch_seminorm(a * f).value == pytest.approx(abs(a) * s, rel=1e-9, abs=1e-12)

    @given(polynomials(max_degree=10), polynomials(max_degree=10))
    def test_norm_triangle(self, f, g):
        lhs = bloch_norm(f + g).value
        assert lhs <= bloch_norm(f).value + bloch_norm(g).value + 1e-9 * (1 + lhs)


class TestLittleBlochTail:
    def test_constant(self):
        assert little_bloch_tail(T([5]), 0.5) == 0.0

    def test_identity(self):
        assert little_bloch_tail(T([0, 1]), 0.9) == pytest.approx(0.19, rel=1e-12)

    def test_square(self):
        assert little_bloch_tail(T([0, 0, 1]), 0.99) == pytest.approx((1 - 0.9801) * 2 * 0.99, rel=1e-12)

    def test_monotone_and_vanishing(self, rng):
        f = random_polynomial(rng, 12)
        vals = [little_bloch_tail(f, r) for r in (0.3, 0.6, 0.9, 0.99, 0.999, 0.9999)]
        assert all(b <= a + 1e-12 for a, b in zip(vals, vals[1:]))
        assert vals[-1] < 0.02

    def test_radius_beyond_grid(self):
        with pytest.raises(ConfigurationError):
            little_bloch_tail(T([0, 1]), 0.9999999)

    def test_nonpositive_radius(self):
        with pytest.raises(DomainError):
            little_bloch_tail(T([0, 1]), 0.0)


class TestGrowthBound:
    @pytest.mark.parametrize(
        "coeffs, z, expected",
        [([1], 0, 0.0), ([0, 1], 0, 1.0), ([0, 1], 0.5, 1 + 0.5 * math.log(3) - 0.5)],
    )
    def test_examples(self, coeffs, z, expected):
        assert growth_bound_margin(T(coeffs), z) == pytest.approx(expected, abs=1e-12)

    def test_outside_disc(self):
        with pytest.raises(DomainError):
            growth_bound_margin(T([1]), 1.0)

    @given(polynomials(max_degree=10), disc_points)
    def test_margin_nonnegative(self, f, z):
        assert growth_bound_margin(f, z) >= -1e-9 * (1 + bloch_norm(f).value)


def test_random_polynomial_unit_norm(rng):
    for deg in (0, 3, 12):
        f = random_polynomial(rng, deg)
        assert bloch_norm(f).value == pytest.approx(1.0, rel=1e-12)


def test_random_polynomial_seeded():
    a = random_polynomial(np.random.default_rng(3), 8)
    b = random_polynomial(np.random.default_rng(3), 8)
    assert a == b


def test_random_polynomial_range_of_shift(rng):
    f = random_polynomial(rng, 9, first_nonzero=4)
    assert np.all(f.coeffs[:4] == 0) and f.degree == 9
