"""Weighted rotation groups ``T_t f(z) = exp(i c t) f(exp(i k t) z)`` on the disc.

On Taylor coefficients the group, its generator, and its resolvent are all
diagonal: the monomial ``z**n`` is an eigenvector with eigenvalue
``i (c + k n)``.  Besides this exact diagonal calculus the module carries
the integral representation of the resolvent on ``z**m``-divisible
functions, evaluated by quadrature, so the two can be checked against
each other.
"""

from __future__ import annotations

import cmath
import math
from dataclasses import dataclass

import numpy as np

from oplab.analytic import (
    DEFAULT_GRID,
    BlochGrid,
    TaylorPolynomial,
    as_polynomial,
    bloch_norm,
    differentiate,
    mz_power,
    q_power,
    random_polynomial,
)
from oplab.errors import DivergenceError, DomainError, PreconditionError, SpectrumError
from oplab.quadrature import IntervalRule, make_graded_rule, power_moments

EIGEN_GUARD = 1e-12


@dataclass(frozen=True)
class GroupParams:
    """Phase rate ``c`` and rotation rate ``k`` (nonzero)."""

    c: float
    k: float

    def __post_init__(self) -> None:
        if self.k == 0:
            raise DomainError("rotation rate k must be nonzero")

    def eigenvalues(self, n) -> np.ndarray:
        return 1j * (self.c + self.k * np.asarray(n, dtype=float))

    def negated(self) -> "GroupParams":
        return GroupParams(-self.c, -self.k)

    def base_parameter(self, mu: complex) -> complex:
        """``(mu - i c) / k``, the matching point for the ``(0, 1)`` generator."""
        return (complex(mu) - 1j * self.c) / self.k


BASE = GroupParams(0.0, 1.0)


def _indices(f: TaylorPolynomial) -> np.ndarray:
    return np.arange(len(f.coeffs))


def apply_group(p: GroupParams, t: float, f: TaylorPolynomial) -> TaylorPolynomial:
    f = as_polynomial(f)
    return TaylorPolynomial(f.coeffs * np.exp(p.eigenvalues(_indices(f)) * t))


def apply_generator(p: GroupParams, f: TaylorPolynomial) -> TaylorPolynomial:
    """``i (c f + k z f')`` computed diagonally."""
    f = as_polynomial(f)
    return TaylorPolynomial(f.coeffs * p.eigenvalues(_indices(f)))


def apply_generator_differential(p: GroupParams, f: TaylorPolynomial) -> TaylorPolynomial:
    """Same operator assembled from ``f`` and ``z f'``."""
    f = as_polynomial(f)
    return 1j * (p.c * f + p.k * mz_power(differentiate(f), 1))


def adjoint_apply(p: GroupParams, t: float, g: TaylorPolynomial) -> TaylorPolynomial:
    """Adjoint group under the Bergman pairing: ``T_{-t}``."""
    return apply_group(p.negated(), t, g)


def adjoint_generator(p: GroupParams, g: TaylorPolynomial) -> TaylorPolynomial:
    return apply_generator(p.negated(), g)


def reduce_to_base(p: GroupParams, mu: complex) -> tuple[complex, float]:
    """``(lambda, scale)`` with ``R(mu, Gamma_{c,k}) = scale * R(lambda, Gamma_{0,1})``."""
    return p.base_parameter(mu), 1.0 / p.k


def resolvent_diagonal(
    p: GroupParams, mu: complex, f: TaylorPolynomial, guard: float = EIGEN_GUARD
) -> TaylorPolynomial:
    """``(mu - Gamma)^{-1} f`` by dividing each coefficient by ``mu - i(c + k n)``."""
    f = as_polynomial(f)
    if f.is_zero():
        return f
    gaps = complex(mu) - p.eigenvalues(_indices(f))
    hit = (np.abs(gaps) < guard) & (f.coeffs != 0)
    if hit.any():
        n = int(np.flatnonzero(hit)[0])
        raise SpectrumError(f"mu={mu} is within {guard} of the eigenvalue {p.eigenvalues(n)} (n={n})")
    out = np.zeros_like(f.coeffs)
    nz = f.coeffs != 0
    out[nz] = f.coeffs[nz] / gaps[nz]
    return TaylorPolynomial(out)


def _integral_setup(p: GroupParams, mu: complex, h: TaylorPolynomial, m: int) -> tuple[complex, TaylorPolynomial]:
    if m < 1:
        raise DomainError(f"m must be positive, got {m}")
    lam = p.base_parameter(mu)
    if m <= lam.imag:
        raise DivergenceError(f"need m > Im(lambda) = {lam.imag}, got m={m}")
    h = as_polynomial(h)
    if np.any(h.padded(m)[:m] != 0):
        raise PreconditionError(f"h must vanish to order {m} at the origin")
    return m + 1j * lam - 1.0, q_power(h, m)


def resolvent_rule(p: GroupParams, mu: complex, m: int, n: int = 64) -> IntervalRule:
    """Graded rule whose weight absorbs ``t**(m - Im(lambda) - 1)``."""
    lam = p.base_parameter(mu)
    if m <= lam.imag:
        raise DivergenceError(f"need m > Im(lambda) = {lam.imag}, got m={m}")
    return make_graded_rule(n, m - lam.imag - 1.0)


def resolvent_integral(
    p: GroupParams, mu: complex, h: TaylorPolynomial, m: int, rule: IntervalRule | None = None
) -> TaylorPolynomial:
    """``(i/k) z^m integral_0^1 t^(m + i lambda - 1) (Q^m h)(t z) dt`` for ``h`` divisible by ``z^m``.

    Each Taylor coefficient of the result is a ray integral of one
    monomial, evaluated with ``rule``.
    """
    a, tail = _integral_setup(p, mu, h, m)
    if rule is None:
        rule = resolvent_rule(p, mu, m)
    moments = power_moments(a, rule, len(tail.coeffs))
    return mz_power(TaylorPolynomial((1j / p.k) * tail.coeffs * moments), m)


def truncated_resolvent_cr(
    p: GroupParams,
    mu: complex,
    h: TaylorPolynomial,
    m: int,
    r: float,
    rule: IntervalRule | None = None,
) -> TaylorPolynomial:
    """The resolvent integral cut off at ``t = r``; a compact approximant of the resolvent."""
    if not 0.0 < r < 1.0:
        raise DomainError(f"cut-off radius must lie in (0, 1), got {r}")
    a, tail = _integral_setup(p, mu, h, m)
    if rule is None:
        rule = resolvent_rule(p, mu, m)
    # t = r s maps [0, r] onto the standard rule
    moments = power_moments(a, rule, len(tail.coeffs), scale=r) * cmath.exp((a + 1.0) * math.log(r))
    return mz_power(TaylorPolynomial((1j / p.k) * tail.coeffs * moments), m)


def resolvent_split(
    p: GroupParams, mu: complex, f: TaylorPolynomial, rule_nodes: int = 64
) -> TaylorPolynomial:
    """Full resolvent through the decomposition into low monomials plus a ``z^m`` multiple.

    The first ``m`` coefficients (with ``m`` the least admissible order) go
    through the diagonal formula, the rest through the integral.
    """
    f = as_polynomial(f)
    lam = p.base_parameter(mu)
    m = max(1, math.floor(lam.imag) + 1)
    head = TaylorPolynomial(f.padded(m)[:m])
    tail = mz_power(q_power(f, m), m)
    out = resolvent_diagonal(p, mu, head)
    if not tail.is_zero():
        out = out + resolvent_integral(p, mu, tail, m, resolvent_rule(p, mu, m, rule_nodes))
    return out


@dataclass(frozen=True)
class SpectrumReport:
    eigenvalues: tuple[complex, ...]
    eigenfunction_index: tuple[int, ...]
    truncation: int


def spectrum(p: GroupParams, N: int) -> SpectrumReport:
    """Eigenvalues ``i(c + k n)`` for ``n = 0..N``; ``z**n`` spans each eigenspace."""
    if N < 0:
        raise DomainError(f"truncation must be nonnegative, got {N}")
    n = list(range(N + 1))
    return SpectrumReport(tuple(complex(v) for v in p.eigenvalues(n)), tuple(n), N)


@dataclass(frozen=True)
class ResolventSpectrumReport:
    mu: complex
    points: tuple[complex, ...]
    circle_center: complex
    circle_radius: float

    def circle_distances(self) -> np.ndarray:
        pts = np.asarray(self.points, dtype=complex)
        return np.abs(np.abs(pts - self.circle_center) - self.circle_radius)


def resolvent_spectrum(p: GroupParams, mu: complex, N: int) -> ResolventSpectrumReport:
    """Points ``1/(mu - i(c+kn))``; all lie on the circle through 0 centred at ``1/(2 Re mu)``."""
    mu = complex(mu)
    if mu.real == 0:
        raise DomainError("Re(mu) = 0: the eigenvalue circle degenerates to a line")
    pts = 1.0 / (mu - p.eigenvalues(np.arange(N + 1)))
    return ResolventSpectrumReport(
        mu, tuple(complex(v) for v in pts), complex(0.5 / mu.real), 0.5 / abs(mu.real)
    )


def compact_tail_index(p: GroupParams, mu: complex, eps: float = 1e-3) -> int:
    """Least ``n0`` with ``1/|mu - i(c+kn)| < eps`` for every ``n >= n0``."""
    mu = complex(mu)
    if abs(mu.real) >= 1.0 / eps:
        return 0
    reach = math.sqrt(1.0 / eps**2 - mu.real**2)
    y = mu.imag - p.c
    return max(0, math.floor((reach + math.copysign(1.0, p.k) * y) / abs(p.k)) + 1)


def resolvent_norm_bounds(
    p: GroupParams,
    mu: complex,
    sample_count: int,
    grid: BlochGrid = DEFAULT_GRID,
    seed: int = 0,
    degree: int = 8,
) -> tuple[float, float]:
    """Two-sided bracket for ``||R(mu, Gamma)||`` on the little Bloch space.

    Lower: best of the eigenvector ratios and of ``||R f|| / ||f||`` over
    random polynomials.  Upper: ``1/|Re mu|``, valid for any group of
    isometries.
    """
    mu = complex(mu)
    if mu.real == 0:
        raise DomainError("Re(mu) = 0 gives no resolvent bound")
    n_top = max(degree, math.ceil(abs(mu.imag - p.c) / abs(p.k)) + 2)
    lower = float(np.max(1.0 / np.abs(mu - p.eigenvalues(np.arange(n_top + 1)))))
    rng = np.random.default_rng(seed)
    degree = min(degree, grid.max_degree)
    for _ in range(sample_count):
        f = random_polynomial(rng, degree, grid)
        ratio = bloch_norm(resolvent_diagonal(p, mu, f), grid).value / bloch_norm(f, grid).value
        lower = max(lower, ratio)
    return lower, 1.0 / abs(mu.real)
