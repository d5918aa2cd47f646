"""Weighted Bergman norms and the integral pairing with the little Bloch space.

Pairing convention: ``<f, g> = integral_D f conj(g) dm_alpha``; the first
slot is never conjugated.  In the predual setting the first slot holds
the little Bloch element and the second the ``L^1_a`` element.
"""

from __future__ import annotations

import math
from dataclasses import dataclass

import numpy as np

from oplab.analytic import TaylorPolynomial, as_polynomial, evaluate
from oplab.disc_groups import GroupParams, adjoint_apply, apply_group
from oplab.errors import AliasingError, ConfigurationError, DomainError
from oplab.quadrature import DiscRule, disc_integrate, make_disc_rule


@dataclass(frozen=True)
class PairingConfig:
    alpha: float
    rule: DiscRule

    def __post_init__(self) -> None:
        if self.rule.alpha != self.alpha:
            raise ConfigurationError(f"rule built for alpha={self.rule.alpha}, config says {self.alpha}")

    @classmethod
    def build(cls, alpha: float, max_degree: int = 12, n_radial: int = 64) -> "PairingConfig":
        return cls(float(alpha), make_disc_rule(alpha, max_degree, n_radial))


def monomial_pairing(n: int, alpha: float) -> float:
    """Closed form ``<z^n, z^n> = pi n! Gamma(alpha+1)/Gamma(n+alpha+2)``."""
    return math.pi * math.exp(math.lgamma(n + 1) + math.lgamma(alpha + 1) - math.lgamma(n + alpha + 2))


def closed_form_pairing(f: TaylorPolynomial, g: TaylorPolynomial, alpha: float) -> complex:
    f, g = as_polynomial(f), as_polynomial(g)
    n = min(len(f.coeffs), len(g.coeffs))
    w = np.array([monomial_pairing(j, alpha) for j in range(n)])
    return complex(np.sum(f.coeffs[:n] * np.conj(g.coeffs[:n]) * w))


def bergman_pairing(f: TaylorPolynomial, g: TaylorPolynomial, cfg: PairingConfig) -> complex:
    return disc_integrate(f, g, cfg.rule)


def bergman_norm_p(f: TaylorPolynomial, p: float, cfg: PairingConfig) -> float:
    """``(integral_D |f|^p dm_alpha)^(1/p)`` by the disc rule.

    Exact when ``p`` is an even integer and ``p * deg f`` fits the rule;
    otherwise ``|f|^p`` is not a trigonometric polynomial in the angle and
    the result is a quadrature approximation.
    """
    if p < 1:
        raise DomainError(f"Bergman exponent must be >= 1, got {p}")
    f = as_polynomial(f)
    if cfg.rule.angular_count < 2 * f.degree + 1:
        raise AliasingError(f"angular_count={cfg.rule.angular_count} too small for degree {f.degree}")
    z, w = cfg.rule.points()
    return float(np.sum(w * np.abs(evaluate(f, z)) ** p) ** (1.0 / p))


def adjoint_pairing_residual(
    p: GroupParams, t: float, f: TaylorPolynomial, g: TaylorPolynomial, cfg: PairingConfig
) -> float:
    """``|<g, T_t f> - <T_{-t} g, f>|`` with ``g`` the little Bloch element."""
    lhs = bergman_pairing(g, apply_group(p, t, f), cfg)
    rhs = bergman_pairing(adjoint_apply(p, t, g), f, cfg)
    return abs(lhs - rhs)


def bergman_growth_ratio(f: TaylorPolynomial, z: complex, p: float, cfg: PairingConfig) -> float:
    """``|f(z)| (1-|z|^2)^((alpha+2)/p) / ||f||_{p,alpha}``; bounded in ``z`` and ``f``."""
    if abs(z) >= 1.0:
        raise DomainError(f"point must lie in the open unit disc, |z|={abs(z)}")
    f = as_polynomial(f)
    if f.is_zero():
        raise DomainError("growth ratio is undefined for f = 0")
    expo = (cfg.alpha + 2.0) / p
    return abs(evaluate(f, z)) * (1.0 - abs(z) ** 2) ** expo / bergman_norm_p(f, p, cfg)
