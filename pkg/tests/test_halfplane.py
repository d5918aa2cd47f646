import cmath
import math

import numpy as np
import pytest
from hypothesis import given
from hypothesis import strategies as st

from oplab.analytic import TaylorPolynomial as T
from oplab.errors import BranchError, DivergenceError, DomainError, SingularityError, SpectrumError
from oplab.halfplane import (
    MobiusMap,
    PointwiseFunction,
    WeightParam,
    cayley,
    cayley_inv,
    conjugated_resolvent,
    conjugation_identity_residual,
    delta_apply,
    delta_eigenvalue,
    delta_resolvent,
    disc_rotation,
    eigenfunction,
    mobius_apply,
    mobius_derivative,
    principal_power,
    resolvent_residual,
    s_psi,
    s_psi_inv,
    similarity_residual,
    weighted_composition,
)
from oplab.suite import branch_safe_probes

PROBE_GRID = [complex(x, y) for x in np.linspace(-2, 2, 10) for y in np.linspace(0.2, 3.0, 10)]
SAFE = branch_safe_probes(20, np.random.default_rng(5))
smooth = PointwiseFunction(lambda w: 1 / (w + 2j) + 0.3 * w, lambda w: -1 / (w + 2j) ** 2 + 0.3)
upper = st.builds(complex, st.floats(-10, 10), st.floats(1e-3, 10))
disc = st.builds(lambda r, th: r * cmath.exp(1j * th), st.floats(0, 0.999), st.floats(0, 2 * math.pi))


class TestCayley:
    def test_examples(self):
        assert cayley(0) == 1j
        assert cayley_inv(1j) == 0
        assert cayley(-1) == 0

    def test_poles(self):
        with pytest.raises(SingularityError):
            cayley(1)
        with pytest.raises(SingularityError):
            cayley_inv(-1j)

    @given(disc)
    def test_disc_round_trip(self, z):
        w = cayley(z)
        assert w.imag > 0
        assert abs(cayley_inv(w) - z) <= 1e-13 * max(1.0, 1 / abs(1 - z))

    @given(upper)
    def test_halfplane_round_trip(self, w):
        assert abs(cayley_inv(w)) < 1
        assert abs(cayley(cayley_inv(w)) - w) <= 1e-13 * max(1.0, abs(w)) / w.imag


class TestMobius:
    def test_identity(self):
        assert mobius_apply(MobiusMap.rotation(0.0), 2 + 1j) == 2 + 1j

    def test_quarter_turn(self):
        z = 0.3 + 1.2j
        assert mobius_apply(MobiusMap.rotation(math.pi / 2), z) == pytest.approx(-1 / z, rel=1e-15)

    @pytest.mark.parametrize("t", [0.1, 0.7, 1.2])
    def test_derivative_at_origin(self, t):
        assert mobius_derivative(MobiusMap.rotation(t), 0) == pytest.approx(1 / math.cos(t) ** 2, rel=1e-14)

    def test_fixes_i(self):
        for t in (0.3, 1.1, 2.9):
            assert mobius_apply(MobiusMap.rotation(t), 1j) == pytest.approx(1j, abs=1e-15)

    @given(st.floats(-math.pi, math.pi), st.floats(-math.pi, math.pi))
    def test_group_law(self, s, t):
        lhs = (MobiusMap.rotation(s) @ MobiusMap.rotation(t)).matrix()
        assert np.abs(lhs - MobiusMap.rotation(s + t).matrix()).max() <= 1e-14

    def test_pole(self):
        with pytest.raises(SingularityError):
            mobius_apply(MobiusMap.rotation(math.pi / 2), 0)


class TestConjugation:
    @pytest.mark.parametrize("t", [0.0, math.pi])
    def test_trivial_times(self, t):
        assert max(conjugation_identity_residual(t, z) for z in PROBE_GRID) <= 1e-12

    def test_quarter(self):
        assert conjugation_identity_residual(math.pi / 4, 2j) <= 1e-13

    @pytest.mark.parametrize("t", [0.1, 0.7, math.pi / 4, math.pi])
    def test_probe_grid(self, t):
        assert max(conjugation_identity_residual(t, z) for z in PROBE_GRID) <= 1e-12


class TestWeightedComposition:
    def test_identity_map(self):
        out = weighted_composition(MobiusMap.identity(), 0.5, smooth)
        assert out(1 + 1j) == pytest.approx(smooth(1 + 1j), rel=1e-15)

    def test_disc_rotation_on_monomials(self):
        gamma, t, n, z = 0.7, 0.3, 3, 0.2 + 0.4j
        got = disc_rotation(t, gamma, PointwiseFunction.from_polynomial(T.monomial(n)))(z)
        assert got == pytest.approx(cmath.exp(-2j * gamma * t) * cmath.exp(-2j * n * t) * z**n, rel=1e-14)

    def test_weight_closed_form(self):
        z = 0.4 + 0.9j
        got = weighted_composition(MobiusMap.rotation(0.3), 1, PointwiseFunction.constant(1))(z)
        assert got == pytest.approx(1 / (z * math.sin(0.3) + math.cos(0.3)) ** 2, rel=1e-14)

    def test_branch_guard(self):
        with pytest.raises(BranchError):
            principal_power(-2.0 + 0j, 0.5)
        assert principal_power(-2.0 + 0j, 2) == 4

    def test_gamma_positive(self):
        with pytest.raises(DomainError):
            WeightParam(0.0)

    @pytest.mark.parametrize("gamma", [0.5, 1.0, 2.0])
    def test_derivative_assembly(self, gamma):
        f = weighted_composition(MobiusMap.rotation(0.2), gamma, smooth)
        assert max(f.derivative_mismatch(z) for z in SAFE) <= 1e-6


class TestTransport:
    def test_s_psi_at_origin(self):
        assert s_psi(1, PointwiseFunction.constant(1))(0) == pytest.approx(2j)

    def test_round_trip(self):
        f = PointwiseFunction.constant(1)
        assert s_psi_inv(1, s_psi(1, f))(2j) == pytest.approx(1, abs=1e-12)

    @pytest.mark.parametrize("gamma", [0.5, 1.0, 2.0])
    def test_round_trip_smooth(self, gamma):
        back = s_psi_inv(gamma, s_psi(gamma, smooth))
        for w in SAFE:
            assert abs(back(w) - smooth(w)) <= 1e-10 * abs(smooth(w))

    def test_e0_formula(self):
        w = 0.5 + 2j
        assert s_psi_inv(1.5, PointwiseFunction.constant(1))(w) == pytest.approx(
            cmath.exp(1.5 * cmath.log(2j / (w + 1j) ** 2)), rel=1e-14
        )


class TestSimilarity:
    def test_zero_time(self):
        assert similarity_residual(0.0, 0.5, smooth, 1 + 1j) <= 1e-15

    def test_integer_gamma(self):
        assert similarity_residual(0.4, 1, PointwiseFunction.constant(1), 1 + 1j) <= 1e-10

    def test_half_gamma(self):
        assert similarity_residual(0.1, 0.5, smooth, 2j) <= 1e-8

    @pytest.mark.parametrize("gamma", [1.0, 2.0])
    def test_integer_window(self, gamma):
        worst = max(
            similarity_residual(float(t), gamma, smooth, w) for t in np.linspace(-0.5, 0.5, 11) for w in SAFE
        )
        assert worst <= 1e-8

    def test_half_window(self):
        worst = max(similarity_residual(float(t), 0.5, smooth, w) for t in np.linspace(-0.1, 0.1, 5) for w in SAFE)
        assert worst <= 1e-8

    def test_window_enforced(self):
        with pytest.raises(DomainError):
            similarity_residual(0.6, 1.0, smooth, 1j)


class TestDelta:
    @pytest.mark.parametrize("gamma", [0.5, 1.0, 2.0])
    def test_e0(self, gamma):
        e0 = eigenfunction(gamma, 0)
        for w in SAFE:
            assert delta_apply(gamma, e0, w) == pytest.approx(-2j * gamma * e0(w), rel=1e-12)

    def test_constant(self):
        assert delta_apply(1, PointwiseFunction.constant(1), 0.5j) == pytest.approx(-1j)

    @pytest.mark.parametrize("gamma", [0.5, 1.0, 2.0])
    def test_eigen_residuals(self, gamma):
        for n in range(9):
            e = eigenfunction(gamma, n)
            ev = delta_eigenvalue(gamma, n)
            for w in SAFE:
                assert abs(delta_apply(gamma, e, w) - ev * e(w)) <= 1e-9 * abs(e(w))

    def test_eigenfunction_values(self):
        assert eigenfunction(1, 0)(1j) == pytest.approx(-0.5j)
        assert eigenfunction(1, 1)(1j) == 0
        assert eigenfunction(0.5, 0)(1j) == pytest.approx(cmath.sqrt(-0.5j), rel=1e-15)

    def test_eigenfunction_pole(self):
        with pytest.raises(SingularityError):
            eigenfunction(1, 0)(-1j)

    @pytest.mark.parametrize("gamma", [0.5, 1.0, 2.0])
    def test_eigenfunction_derivative(self, gamma):
        for n in range(9):
            e = eigenfunction(gamma, n)
            assert max(e.derivative_mismatch(w) for w in SAFE) <= 1e-6

    @pytest.mark.parametrize("gamma", [0.5, 1.0, 2.0])
    def test_matches_flow_derivative(self, gamma):
        step = 1e-5
        for z in SAFE[:10]:
            plus = weighted_composition(MobiusMap.rotation(step), gamma, smooth)(z)
            minus = weighted_composition(MobiusMap.rotation(-step), gamma, smooth)(z)
            exact = delta_apply(gamma, smooth, z)
            assert abs((plus - minus) / (2 * step) - exact) <= 1e-5 * abs(exact)

    @pytest.mark.parametrize("gamma", [0.5, 1.0, 2.0])
    def test_first_order_quotient(self, gamma):
        z = SAFE[0]
        exact = delta_apply(gamma, smooth, z)

        def err(t):
            moved = weighted_composition(MobiusMap.rotation(t), gamma, smooth)(z)
            return abs((moved - smooth(z)) / t - exact)

        assert 1.8 <= err(1e-3) / err(5e-4) <= 2.2


class TestDeltaResolvent:
    def test_e0_division(self):
        e0 = eigenfunction(1, 0)
        for z in (0.3 + 0.4j, 1 + 1j, 0.5 + 1.7j):
            assert delta_resolvent(1, 1, e0, z) == pytest.approx(e0(z) / (1 + 2j), rel=1e-12)

    @pytest.mark.parametrize("gamma, mu", [(0.5, 1.0), (1.0, 2 - 1j), (2.0, -1 + 0.5j)])
    def test_e1_division(self, gamma, mu):
        e1 = eigenfunction(gamma, 1)
        for z in SAFE[:5]:
            got = delta_resolvent(gamma, mu, e1, z, m=1)
            assert got == pytest.approx(e1(z) / (mu + 2j * (gamma + 1)), rel=1e-10)

    def test_residual_generic_input(self):
        assert resolvent_residual(1.0, 1.0, smooth, 0.3 + 0.4j) <= 1e-6 * (1 + abs(smooth(0.3 + 0.4j)))

    @pytest.mark.parametrize(
        "gamma, mu", [(0.5, 1.0), (1.0, 2 + 3j), (1.0, -1 + 0.5j), (2.0, 0.5 - 2j), (0.5, -3 + 1j)]
    )
    def test_conjugated_route(self, gamma, mu):
        A = 0.5j * mu - gamma
        m = max(0, math.floor(A.real + 0.5) + 1)
        poly = T([0] * m + [0.3 + 0.1j, -0.2, 0.5j, 0.1])
        h = s_psi_inv(gamma, PointwiseFunction.from_polynomial(poly))
        ref = conjugated_resolvent(gamma, mu, poly)
        for z in SAFE[:10]:
            assert abs(delta_resolvent(gamma, mu, h, z, m=m) - ref(z)) <= 1e-6 * abs(ref(z))
            assert resolvent_residual(gamma, mu, h, z, m=m) <= 1e-6 * (1 + abs(h(z)))

    def test_eigenvalue_rejected(self):
        with pytest.raises(SpectrumError):
            delta_resolvent(1.0, -4j, eigenfunction(1.0, 0), 1 + 1j)

    def test_divergent_order(self):
        # Re(A) = 1.5 - 1 needs m >= 1
        with pytest.raises(DivergenceError):
            delta_resolvent(1.0, -3j + 0.1, eigenfunction(1.0, 1), 1 + 1j, m=0)

    def test_lower_halfplane_probe(self):
        with pytest.raises(DomainError):
            delta_resolvent(1.0, 1.0, smooth, 1 - 1j)
