"""Rotation automorphisms of the upper half-plane and their weighted composition groups.

``phi_t(z) = (z cos t - sin t)/(z sin t + cos t)`` fixes ``i`` and is
conjugate, through the Cayley transform ``psi``, to the disc rotation
``u_t(z) = exp(-2it) z``.  Functions here are black-box evaluators
(:class:`PointwiseFunction`); identities are checked pointwise.

Non-integer powers always use the principal logarithm.  Any base that
falls within ``BRANCH_GUARD`` of the cut ``(-inf, 0]`` raises
:class:`~oplab.errors.BranchError` instead of silently jumping sheets.
"""

from __future__ import annotations

import cmath
import math
from dataclasses import dataclass
from typing import Callable

import numpy as np

from oplab.analytic import TaylorPolynomial, as_polynomial, differentiate, evaluate
from oplab.disc_groups import GroupParams, resolvent_diagonal
from oplab.errors import BranchError, DivergenceError, DomainError, SingularityError, SpectrumError
from oplab.quadrature import IntervalRule, make_graded_rule, power_integrate

BRANCH_GUARD = 1e-10
POLE_GUARD = 1e-8
FD_STEP = 1e-5
# per panel of the graded rule; the path integrand is smooth in log t
RULE_NODES = 32

Evaluator = Callable[[complex], complex]


@dataclass(frozen=True)
class MobiusMap:
    """``z -> (a z + b)/(c z + d)`` with real entries and ``ad - bc = 1``."""

    a: float
    b: float
    c: float
    d: float

    def __post_init__(self) -> None:
        det = self.a * self.d - self.b * self.c
        if abs(det - 1.0) > 1e-14:
            raise DomainError(f"Mobius map must satisfy ad - bc = 1, got {det!r}")

    @classmethod
    def rotation(cls, t: float) -> "MobiusMap":
        """``phi_t``: hyperbolic rotation of the half-plane about ``i``."""
        ct, st = math.cos(t), math.sin(t)
        return cls(ct, -st, st, ct)

    @classmethod
    def identity(cls) -> "MobiusMap":
        return cls(1.0, 0.0, 0.0, 1.0)

    def matrix(self) -> np.ndarray:
        return np.array([[self.a, self.b], [self.c, self.d]])

    def __matmul__(self, other: "MobiusMap") -> "MobiusMap":
        """Composition ``self o other``."""
        (a, b), (c, d) = self.matrix() @ other.matrix()
        det = a * d - b * c
        s = 1.0 / math.sqrt(det)
        return MobiusMap(a * s, b * s, c * s, d * s)

    def _denominator(self, z: complex) -> complex:
        den = self.c * z + self.d
        if abs(den) < POLE_GUARD:
            raise SingularityError(f"Mobius pole at z={z}")
        return den


def mobius_apply(m: MobiusMap, z: complex) -> complex:
    return (m.a * z + m.b) / m._denominator(z)


def mobius_derivative(m: MobiusMap, z: complex) -> complex:
    return 1.0 / m._denominator(z) ** 2


def cayley(z: complex) -> complex:
    """``psi(z) = i(1+z)/(1-z)``, disc onto upper half-plane."""
    if abs(1.0 - z) < 1e-15:
        raise SingularityError("Cayley transform has a pole at z = 1")
    return 1j * (1.0 + z) / (1.0 - z)


def cayley_inv(w: complex) -> complex:
    """``psi^{-1}(w) = (w - i)/(w + i)``."""
    if abs(w + 1j) < 1e-15:
        raise SingularityError("inverse Cayley transform has a pole at w = -i")
    return (w - 1j) / (w + 1j)


def cayley_derivative(z: complex) -> complex:
    if abs(1.0 - z) < 1e-15:
        raise SingularityError("Cayley transform has a pole at z = 1")
    return 2j / (1.0 - z) ** 2


def cayley_inv_derivative(w: complex) -> complex:
    if abs(w + 1j) < 1e-15:
        raise SingularityError("inverse Cayley transform has a pole at w = -i")
    return 2j / (w + 1j) ** 2


def principal_power(base: complex, gamma: float) -> complex:
    if float(gamma).is_integer():
        return complex(base) ** int(gamma)
    base = complex(base)
    dist = abs(base.imag) if base.real <= 0.0 else abs(base)
    if dist <= BRANCH_GUARD:
        raise BranchError(f"power base {base} lies on the principal cut")
    return cmath.exp(gamma * cmath.log(base))


@dataclass(frozen=True)
class WeightParam:
    gamma: float

    def __post_init__(self) -> None:
        if not self.gamma > 0:
            raise DomainError(f"cocycle exponent must be positive, got {self.gamma}")


def _gamma(g) -> float:
    return g.gamma if isinstance(g, WeightParam) else WeightParam(float(g)).gamma


def numeric_derivative(value_at: Evaluator, z: complex, step: float = FD_STEP) -> complex:
    """Central difference with one Richardson step; exact for quartics."""

    def central(h: float) -> complex:
        return (value_at(z + h) - value_at(z - h)) / (2.0 * h)

    return (4.0 * central(step / 2.0) - central(step)) / 3.0


@dataclass(frozen=True)
class PointwiseFunction:
    """Analytic function known through its values and first derivative."""

    value_at: Evaluator
    derivative_at: Evaluator
    domain_tag: str = "half-plane"

    def __call__(self, z: complex) -> complex:
        return self.value_at(z)

    @classmethod
    def numeric(cls, value_at: Evaluator, domain_tag: str = "half-plane") -> "PointwiseFunction":
        return cls(value_at, lambda z: numeric_derivative(value_at, z), domain_tag)

    @classmethod
    def from_polynomial(cls, f: TaylorPolynomial) -> "PointwiseFunction":
        f = as_polynomial(f)
        df = differentiate(f)
        return cls(lambda z: evaluate(f, z), lambda z: evaluate(df, z), "disc")

    @classmethod
    def constant(cls, value: complex, domain_tag: str = "half-plane") -> "PointwiseFunction":
        return cls(lambda z: complex(value), lambda z: 0j, domain_tag)

    def derivative_mismatch(self, z: complex) -> float:
        """Relative gap between ``derivative_at`` and a central difference."""
        exact = self.derivative_at(z)
        approx = (self.value_at(z + FD_STEP) - self.value_at(z - FD_STEP)) / (2 * FD_STEP)
        return abs(exact - approx) / max(abs(exact), 1e-300)


def weighted_composition(m: MobiusMap, gamma, f: PointwiseFunction) -> PointwiseFunction:
    """``z -> (m'(z))**gamma f(m(z))``."""
    g = _gamma(gamma)

    def value(z: complex) -> complex:
        return principal_power(mobius_derivative(m, z), g) * f.value_at(mobius_apply(m, z))

    def deriv(z: complex) -> complex:
        den = m._denominator(z)
        mz = mobius_apply(m, z)
        dm = 1.0 / den**2
        return principal_power(dm, g) * (-2.0 * g * m.c / den * f.value_at(mz) + f.derivative_at(mz) * dm)

    return PointwiseFunction(value, deriv, f.domain_tag)


def disc_rotation(t: float, gamma, g: PointwiseFunction) -> PointwiseFunction:
    """``S_{u_t} g(z) = exp(-2 i gamma t) g(exp(-2 i t) z)``, the disc group with ``c = -2 gamma``, ``k = -2``."""
    gm = _gamma(gamma)
    phase = cmath.exp(-2j * gm * t)
    rot = cmath.exp(-2j * t)
    return PointwiseFunction(
        lambda z: phase * g.value_at(rot * z),
        lambda z: phase * rot * g.derivative_at(rot * z),
        "disc",
    )


def s_psi(gamma, f: PointwiseFunction) -> PointwiseFunction:
    """Transport a half-plane function to the disc: ``z -> psi'(z)**gamma f(psi(z))``."""
    g = _gamma(gamma)

    def value(z: complex) -> complex:
        return principal_power(cayley_derivative(z), g) * f.value_at(cayley(z))

    def deriv(z: complex) -> complex:
        dpsi = cayley_derivative(z)
        w = cayley(z)
        return principal_power(dpsi, g) * (2.0 * g / (1.0 - z) * f.value_at(w) + f.derivative_at(w) * dpsi)

    return PointwiseFunction(value, deriv, "disc")


def s_psi_inv(gamma, g_disc: PointwiseFunction) -> PointwiseFunction:
    """Inverse transport: ``w -> ((psi^{-1})'(w))**gamma g(psi^{-1}(w))``."""
    g = _gamma(gamma)

    def value(w: complex) -> complex:
        return principal_power(cayley_inv_derivative(w), g) * g_disc.value_at(cayley_inv(w))

    def deriv(w: complex) -> complex:
        dinv = cayley_inv_derivative(w)
        z = cayley_inv(w)
        return principal_power(dinv, g) * (
            -2.0 * g / (w + 1j) * g_disc.value_at(z) + g_disc.derivative_at(z) * dinv
        )

    return PointwiseFunction(value, deriv, "half-plane")


def conjugation_identity_residual(t: float, z: complex) -> float:
    """``|phi_t(z) - psi(exp(-2it) psi^{-1}(z))|``."""
    if abs(z + 1j) < POLE_GUARD:
        raise SingularityError("probe too close to -i")
    lhs = mobius_apply(MobiusMap.rotation(t), z)
    inner = cmath.exp(-2j * t) * cayley_inv(z)
    if abs(1.0 - inner) < POLE_GUARD:
        raise SingularityError("probe maps to the Cayley pole")
    return abs(lhs - cayley(inner))


def similarity_residual(t: float, gamma, f: PointwiseFunction, w: complex, window: float = 0.5) -> float:
    """``|S_{phi_t} f(w) - S_psi^{-1} S_{u_t} S_psi f(w)|`` for ``|t| <= window``."""
    if abs(t) > window:
        raise DomainError(f"|t|={abs(t)} exceeds the branch-safe window {window}")
    lhs = weighted_composition(MobiusMap.rotation(t), gamma, f).value_at(w)
    rhs = s_psi_inv(gamma, disc_rotation(t, gamma, s_psi(gamma, f))).value_at(w)
    return abs(lhs - rhs)


def delta_apply(gamma, h: PointwiseFunction, z: complex) -> complex:
    """Generator of ``S_{phi_t}``: ``-2 gamma z h(z) - (1 + z^2) h'(z)``."""
    g = _gamma(gamma)
    return -2.0 * g * z * h.value_at(z) - (1.0 + z * z) * h.derivative_at(z)


def delta_eigenvalue(gamma, n: int) -> complex:
    return -2j * (_gamma(gamma) + n)


def eigenfunction(gamma, n: int) -> PointwiseFunction:
    """``e_n = S_psi^{-1} z^n``: ``(2i/(w+i)^2)**gamma ((w-i)/(w+i))**n``."""
    g = _gamma(gamma)
    if n < 0:
        raise DomainError(f"eigenfunction index must be nonnegative, got {n}")

    def parts(w: complex) -> tuple[complex, complex, complex]:
        if abs(w + 1j) < POLE_GUARD:
            raise SingularityError("eigenfunctions have a pole at w = -i")
        s = w + 1j
        return principal_power(2j / s**2, g), (w - 1j) / s, s

    def value(w: complex) -> complex:
        weight, ratio, _ = parts(w)
        return weight * ratio**n

    def deriv(w: complex) -> complex:
        weight, ratio, s = parts(w)
        out = weight * ratio**n * (-2.0 * g / s)
        if n:
            out += weight * n * ratio ** (n - 1) * 2j / s**2
        return out

    return PointwiseFunction(value, deriv, "half-plane")


def conjugated_resolvent(gamma, mu: complex, f: TaylorPolynomial) -> PointwiseFunction:
    """``S_psi^{-1} R(mu, Gamma_{-2 gamma, -2}) f`` for a disc polynomial ``f``."""
    g = _gamma(gamma)
    out = resolvent_diagonal(GroupParams(-2.0 * g, -2.0), mu, f)
    return s_psi_inv(g, PointwiseFunction.from_polynomial(out))


def delta_resolvent(
    gamma,
    mu: complex,
    h: PointwiseFunction,
    z: complex,
    rule: IntervalRule | None = None,
    m: int = 0,
) -> complex:
    """``R(mu, Delta) h`` at ``z`` by the explicit integral solution of ``(mu - Delta) F = h``.

    With ``A = i mu/2 - gamma`` the solution is
    ``(z-i)^A (z+i)^-(A+2 gamma) * integral_i^z (w-i)^(-A-1) (w+i)^(A+2 gamma-1) h(w) dw``.
    The path starts at ``i``, the common fixed point of every ``phi_t``:
    that is the only base point for which the result is analytic there,
    and hence the only one that gives the resolvent.  Along the straight
    segment ``w = i + s(z - i)`` the factor ``w + i`` stays in the upper
    half-plane, so every principal power is continuous.

    ``h`` must vanish to order ``m`` at ``i`` and ``m > Re(A)`` is required
    for convergence.
    """
    g = _gamma(gamma)
    z = complex(z)
    if z.imag <= 0.0:
        raise DomainError(f"probe {z} is not in the upper half-plane")
    A = 0.5j * complex(mu) - g
    n_near = round(A.real)
    if n_near >= 0 and abs(A - n_near) < 1e-12:
        raise SpectrumError(f"mu={mu} is the eigenvalue {delta_eigenvalue(g, n_near)}")
    a = m - A - 1.0
    if a.real <= -1.0:
        raise DivergenceError(f"need m > Re(A) = {A.real}, got m={m}")
    if rule is None:
        rule = make_graded_rule(RULE_NODES, a.real)
    dz = z - 1j

    def integrand(s: np.ndarray) -> np.ndarray:
        w = 1j + s * dz
        hv = np.array([h.value_at(complex(v)) for v in w])
        q = hv / (s * dz) ** m if m else hv
        return np.exp((A + 2.0 * g - 1.0) * np.log(w + 1j)) * q

    integral = power_integrate(integrand, a, rule)
    return dz**m * cmath.exp(-(A + 2.0 * g) * cmath.log(z + 1j)) * integral


def delta_resolvent_function(
    gamma, mu: complex, h: PointwiseFunction, rule: IntervalRule | None = None, m: int = 0
) -> PointwiseFunction:
    """``R(mu, Delta) h`` as an evaluator; the derivative is numerical."""
    if rule is None:
        A = 0.5j * complex(mu) - _gamma(gamma)
        rule = make_graded_rule(RULE_NODES, m - A.real - 1.0)
    return PointwiseFunction.numeric(lambda z: delta_resolvent(gamma, mu, h, z, rule, m))


def resolvent_residual(
    gamma, mu: complex, h: PointwiseFunction, z: complex, rule: IntervalRule | None = None, m: int = 0
) -> float:
    """``|mu F(z) - Delta F(z) - h(z)|`` with ``F = R(mu, Delta) h``."""
    F = delta_resolvent_function(gamma, mu, h, rule, m)
    return abs(complex(mu) * F.value_at(z) - delta_apply(gamma, F, z) - h.value_at(z))
