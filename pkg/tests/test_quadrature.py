import math

import numpy as np
import pytest
from hypothesis import given
from hypothesis import strategies as st

from conftest import polynomials
from oplab.analytic import TaylorPolynomial as T
from oplab.bergman import monomial_pairing
from oplab.errors import AliasingError, DivergenceError, DomainError, PreconditionError
from oplab.quadrature import (
    disc_integrate,
    make_disc_rule,
    make_graded_rule,
    make_interval_rule,
    power_integrate,
    power_moments,
    ray_integrate,
)

BETAS = (-0.5, 0.0, 0.5, 1.0, 2.5)


class TestIntervalRule:
    def test_single_node_midpoint(self):
        rule = make_interval_rule(1, 0.0)
        assert rule.nodes[0] == pytest.approx(0.5) and rule.weights[0] == pytest.approx(1.0)

    def test_first_moment(self):
        rule = make_interval_rule(40, 0.0)
        assert rule.weights @ rule.nodes == pytest.approx(0.5, rel=1e-14)

    def test_second_moment_half(self):
        rule = make_interval_rule(16, 0.5)
        assert rule.weights @ rule.nodes**2 == pytest.approx(2 / 7, rel=1e-14)

    @pytest.mark.parametrize("beta", BETAS)
    def test_moment_exactness(self, beta):
        n = 64
        rule = make_interval_rule(n, beta)
        k = np.arange(0, 2 * n - math.ceil(beta))
        got = (rule.nodes[None, :] ** k[:, None]) @ rule.weights
        np.testing.assert_allclose(got, 1.0 / (beta + k + 1.0), rtol=1e-12, atol=0)

    @pytest.mark.parametrize("beta", BETAS)
    def test_nodes_inside_weights_positive(self, beta):
        rule = make_graded_rule(32, beta)
        assert np.all((rule.nodes > 0) & (rule.nodes < 1)) and np.all(rule.weights > 0)

    @pytest.mark.parametrize("beta", [-1.0, -2.0])
    def test_divergent_weight(self, beta):
        with pytest.raises(DivergenceError):
            make_interval_rule(8, beta)
        with pytest.raises(DivergenceError):
            make_graded_rule(8, beta)

    def test_empty_rule(self):
        with pytest.raises(DomainError):
            make_interval_rule(0, 0.0)


class TestOscillatoryMoments:
    @pytest.mark.parametrize("beta", BETAS)
    @pytest.mark.parametrize("b", [0.4, 1.0, -3.0, 7.5])
    def test_graded_complex_moments(self, beta, b):
        a = complex(beta, b)
        rule = make_graded_rule(64, beta)
        got = power_moments(a, rule, 30)
        exact = 1.0 / (a + np.arange(30) + 1.0)
        np.testing.assert_allclose(got, exact, rtol=1e-12, atol=0)

    def test_scaled_moments(self):
        a, r = complex(0.2, 1.3), 0.7
        rule = make_graded_rule(64, 0.2)
        got = power_moments(a, rule, 10, scale=r)
        np.testing.assert_allclose(got, r ** np.arange(10) / (a + np.arange(10) + 1), rtol=1e-12)

    def test_rule_exponent_mismatch(self):
        with pytest.raises(PreconditionError):
            power_integrate(np.ones_like, 0.5 + 1j, make_interval_rule(8, 0.0))


class TestRayIntegrate:
    @pytest.mark.parametrize(
        "coeffs, z, a, expected", [([1], 1, 0, 1), ([0, 1], 2, 0, 1), ([1], 1, 1j, 0.5 - 0.5j)]
    )
    def test_examples(self, coeffs, z, a, expected):
        rule = make_graded_rule(64, complex(a).real)
        assert ray_integrate(T(coeffs), z, a, rule) == pytest.approx(expected, rel=1e-13)

    @given(
        st.floats(-0.9, 3.0),
        st.floats(-6.0, 6.0),
        st.integers(0, 12),
        st.complex_numbers(min_magnitude=0.05, max_magnitude=1.0),
    )
    def test_monomials(self, re, im, k, z):
        a = complex(re, im)
        rule = make_graded_rule(64, re)
        exact = z**k / (a + k + 1)
        assert abs(ray_integrate(T.monomial(k), z, a, rule) - exact) <= 1e-9 * abs(exact)

    def test_divergent_exponent(self):
        with pytest.raises(DivergenceError):
            ray_integrate(T([1]), 1, -1.0 + 0.5j, make_interval_rule(8, 0.0))


class TestDiscRule:
    def test_area(self):
        assert disc_integrate(T([1]), T([1]), make_disc_rule(0.0)) == pytest.approx(math.pi, rel=1e-14)

    def test_orthogonal(self):
        assert abs(disc_integrate(T([0, 1]), T([1]), make_disc_rule(0.0))) < 1e-15

    def test_second_moment(self):
        assert disc_integrate(T([0, 1]), T([0, 1]), make_disc_rule(0.0)) == pytest.approx(math.pi / 2, rel=1e-14)

    @pytest.mark.parametrize("alpha", [0.0, 1.0, 2.5])
    def test_beta_pairing_table(self, alpha):
        rule = make_disc_rule(alpha)
        for n in range(13):
            zn = T.monomial(n)
            got = disc_integrate(zn, zn, rule)
            assert abs(got - monomial_pairing(n, alpha)) <= 1e-10 * monomial_pairing(n, alpha)
            for m in range(n):
                assert abs(disc_integrate(zn, T.monomial(m), rule)) < 1e-14

    def test_pairing_table_gamma_oracle(self):
        # pi n! Gamma(a+1) / Gamma(n+a+2) from scipy's Beta function
        from scipy.special import beta

        for alpha in (0.0, 1.0, 2.5):
            for n in range(13):
                assert monomial_pairing(n, alpha) == pytest.approx(math.pi * beta(n + 1, alpha + 1), rel=1e-13)

    def test_aliasing_detected(self):
        rule = make_disc_rule(0.0, max_degree=2)
        with pytest.raises(AliasingError):
            disc_integrate(T.monomial(10), T.monomial(10), rule)

    def test_alpha_domain(self):
        with pytest.raises(DivergenceError):
            make_disc_rule(-1.0)

    @given(polynomials(), polynomials())
    def test_conjugate_symmetry(self, f, g):
        rule = make_disc_rule(1.0)
        assert abs(disc_integrate(f, g, rule) - np.conj(disc_integrate(g, f, rule))) <= 1e-12 * (
            1 + abs(disc_integrate(f, g, rule))
        )
