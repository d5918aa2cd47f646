"""Quadrature for power-weighted intervals, rays, and weighted discs.

Interval rules integrate ``t**beta * g(t)`` over ``(0, 1)`` with the real
power absorbed into the weights.  Complex exponents ``a`` are split as
``t**Re(a) * t**(i Im(a))``: the real part goes to the rule, the
unimodular factor stays in the integrand.  Because ``t**(i b)`` oscillates
without bound near the origin, a single Gauss-Jacobi panel converges only
algebraically on such integrands; :func:`make_graded_rule` adds geometric
refinement towards ``t = 0`` and recovers full double precision.
"""

from __future__ import annotations

import math
from dataclasses import dataclass
from typing import Callable

import numpy as np
from scipy.special import roots_jacobi, roots_legendre

from oplab.analytic import TaylorPolynomial, as_polynomial, evaluate
from oplab.errors import AliasingError, DivergenceError, DomainError, PreconditionError

__all__ = [
    "IntervalRule",
    "DiscRule",
    "make_interval_rule",
    "make_graded_rule",
    "make_disc_rule",
    "power_integrate",
    "power_moments",
    "ray_integrate",
    "disc_integrate",
]


@dataclass(frozen=True, eq=False)
class IntervalRule:
    """``sum(weights * g(nodes)) ~= integral_0^1 t**jacobi_exponent g(t) dt``."""

    nodes: np.ndarray
    weights: np.ndarray
    jacobi_exponent: float

    def __len__(self) -> int:
        return len(self.nodes)


@dataclass(frozen=True, eq=False)
class DiscRule:
    """Product rule for ``integral_D F dm_alpha`` with ``dm_alpha = (1-|z|^2)^alpha dA``.

    ``dA`` is the unnormalised area measure, so the disc has mass ``pi``
    when ``alpha = 0``.  Radial weights already contain the factor
    ``(1-r^2)^alpha r``.
    """

    radial_nodes: np.ndarray
    radial_weights: np.ndarray
    angular_count: int
    alpha: float

    @property
    def radial_capacity(self) -> int:
        """Largest ``n`` with ``|z|^(2n)`` integrated exactly."""
        return 2 * len(self.radial_nodes) - 1

    def points(self) -> tuple[np.ndarray, np.ndarray]:
        """Sample points and matching weights, both of shape ``(n_radial, angular_count)``."""
        theta = 2.0 * np.pi * np.arange(self.angular_count) / self.angular_count
        z = self.radial_nodes[:, None] * np.exp(1j * theta)[None, :]
        w = np.repeat(self.radial_weights[:, None] * (2.0 * np.pi / self.angular_count), self.angular_count, axis=1)
        return z, w


def _check_beta(beta: float) -> None:
    if beta <= -1.0:
        raise DivergenceError(f"weight t**{beta} is not integrable at 0")


def make_interval_rule(n: int, beta: float) -> IntervalRule:
    """``n``-point Gauss-Jacobi rule on ``(0, 1)`` for the weight ``t**beta``."""
    if n < 1:
        raise DomainError(f"rule needs at least one node, got {n}")
    _check_beta(beta)
    x, w = roots_jacobi(n, 0.0, beta)
    return IntervalRule((1.0 + x) / 2.0, w / 2.0 ** (beta + 1.0), float(beta))


def make_graded_rule(n: int, beta: float, ratio: float = 0.1, tol: float = 1e-16) -> IntervalRule:
    """Composite rule, ``n`` nodes per panel, panels ``[ratio**(l+1), ratio**l]``.

    The innermost panel ``[0, eps]`` keeps the Gauss-Jacobi weight; its
    share of the integral is below ``tol`` relative to the full one, so
    the algebraic error of that panel is invisible in double precision.
    """
    if n < 1:
        raise DomainError(f"rule needs at least one node, got {n}")
    if not 0.0 < ratio < 1.0:
        raise DomainError(f"grading ratio must lie in (0, 1), got {ratio}")
    _check_beta(beta)
    levels = max(1, min(400, math.ceil(math.log(tol * (beta + 1.0)) / ((beta + 1.0) * math.log(ratio)))))
    x, w = roots_legendre(n)
    nodes, weights = [], []
    for lvl in range(levels):
        lo, hi = ratio ** (lvl + 1), ratio**lvl
        t = lo + (hi - lo) * (x + 1.0) / 2.0
        nodes.append(t)
        weights.append(w * (hi - lo) / 2.0 * t**beta)
    eps = ratio**levels
    inner = make_interval_rule(n, beta)
    nodes.append(eps * inner.nodes)
    weights.append(eps ** (beta + 1.0) * inner.weights)
    return IntervalRule(np.concatenate(nodes[::-1]), np.concatenate(weights[::-1]), float(beta))


def _split_exponent(a: complex, rule: IntervalRule) -> float:
    a = complex(a)
    if a.real <= -1.0:
        raise DivergenceError(f"t**({a}) is not integrable at 0")
    if abs(rule.jacobi_exponent - a.real) > 1e-12 * max(1.0, abs(a.real)):
        raise PreconditionError(
            f"rule absorbs t**{rule.jacobi_exponent} but the exponent has real part {a.real}"
        )
    return a.imag


def power_integrate(func: Callable[[np.ndarray], np.ndarray], a: complex, rule: IntervalRule) -> complex:
    """``integral_0^1 t**a func(t) dt`` for complex ``a`` with ``Re a > -1``."""
    b = _split_exponent(a, rule)
    t = rule.nodes
    return complex(np.sum(rule.weights * np.exp(1j * b * np.log(t)) * func(t)))


def power_moments(a: complex, rule: IntervalRule, count: int, scale: float = 1.0) -> np.ndarray:
    """Quadrature values of ``integral_0^1 t**(a+j) scale**j dt`` for ``j < count``."""
    b = _split_exponent(a, rule)
    t = rule.nodes
    base = rule.weights * np.exp(1j * b * np.log(t))
    powers = (scale * t)[None, :] ** np.arange(count)[:, None]
    return powers @ base


def ray_integrate(h: TaylorPolynomial, z: complex, a: complex, rule: IntervalRule) -> complex:
    """``integral_0^1 t**a h(t z) dt``, i.e. ``z**-(a+1)`` times the integral of ``w**a h(w)`` along ``[0, z]``."""
    h = as_polynomial(h)
    return power_integrate(lambda t: evaluate(h, t * complex(z)), a, rule)


def make_disc_rule(alpha: float, max_degree: int = 12, n_radial: int = 64) -> DiscRule:
    """Rule exact for pairings of polynomials up to ``max_degree`` each."""
    if alpha <= -1.0:
        raise DivergenceError(f"dm_alpha requires alpha > -1, got {alpha}")
    if n_radial < 1:
        raise DomainError("at least one radial node is required")
    # u = r^2 maps (1-r^2)^alpha r dr to (1-u)^alpha du / 2 on (0, 1)
    x, w = roots_jacobi(n_radial, alpha, 0.0)
    u = (1.0 + x) / 2.0
    return DiscRule(np.sqrt(u), w * 2.0 ** (-alpha - 2.0), 2 * max_degree + 8, float(alpha))


def disc_integrate(f: TaylorPolynomial, g: TaylorPolynomial, rule: DiscRule) -> complex:
    """``integral_D f conj(g) dm_alpha``; exact for polynomial pairs within capacity."""
    f, g = as_polynomial(f), as_polynomial(g)
    if rule.angular_count < f.degree + g.degree + 1:
        raise AliasingError(
            f"angular_count={rule.angular_count} aliases degrees {f.degree} + {g.degree}"
        )
    if min(f.degree, g.degree) > rule.radial_capacity:
        raise AliasingError(f"radial rule exact only up to |z|^{2 * rule.radial_capacity}")
    z, w = rule.points()
    return complex(np.sum(w * evaluate(f, z) * np.conj(evaluate(g, z))))
