"""Taylor-coefficient calculus on the unit disc and Bloch-norm estimation.

Functions on the disc are carried as finite Taylor polynomials.  Every
operator in the package that acts diagonally on monomials (rotations,
generators, resolvents) is exact on this representation; the only
numerical approximation in this module is the supremum defining the
Bloch seminorm, which is computed by a polar mesh followed by a Newton
polish of each promising local maximum.
"""

from __future__ import annotations

import math
from dataclasses import dataclass, field
from typing import Sequence

import numpy as np
from scipy.optimize import minimize_scalar

from oplab.errors import ConfigurationError, DomainError

__all__ = [
    "TaylorPolynomial",
    "BlochGrid",
    "NormEstimate",
    "DEFAULT_GRID",
    "evaluate",
    "differentiate",
    "mz_power",
    "q_power",
    "dilate",
    "bloch_seminorm",
    "bloch_norm",
    "little_bloch_tail",
    "growth_bound_margin",
    "decompose",
    "random_polynomial",
]


@dataclass(frozen=True, eq=False)
class TaylorPolynomial:
    """Analytic polynomial ``sum coeffs[n] z**n``.

    Trailing zero coefficients are stripped on construction, so two
    polynomials compare equal exactly when their coefficient vectors do.
    The stored array is read-only.
    """

    coeffs: np.ndarray

    def __post_init__(self) -> None:
        c = np.array(self.coeffs, dtype=complex).ravel()
        nonzero = np.flatnonzero(c)
        c = c[: nonzero[-1] + 1] if nonzero.size else np.zeros(1, dtype=complex)
        c.flags.writeable = False
        object.__setattr__(self, "coeffs", c)

    @classmethod
    def monomial(cls, n: int, scale: complex = 1.0) -> "TaylorPolynomial":
        c = np.zeros(n + 1, dtype=complex)
        c[n] = scale
        return cls(c)

    @classmethod
    def zero(cls) -> "TaylorPolynomial":
        return cls([0.0])

    @property
    def degree(self) -> int:
        return len(self.coeffs) - 1

    def is_zero(self) -> bool:
        return self.degree == 0 and self.coeffs[0] == 0

    def coefficient(self, n: int) -> complex:
        return complex(self.coeffs[n]) if 0 <= n <= self.degree else 0j

    def padded(self, length: int) -> np.ndarray:
        """Coefficient vector zero-padded (never truncated) to ``length``."""
        out = np.zeros(max(length, len(self.coeffs)), dtype=complex)
        out[: len(self.coeffs)] = self.coeffs
        return out

    def __call__(self, z):
        return evaluate(self, z)

    def __eq__(self, other: object) -> bool:
        if not isinstance(other, TaylorPolynomial):
            return NotImplemented
        return np.array_equal(self.coeffs, other.coeffs)

    __hash__ = None  # type: ignore[assignment]

    def allclose(self, other: "TaylorPolynomial", rtol: float = 1e-12, atol: float = 0.0) -> bool:
        n = max(len(self.coeffs), len(other.coeffs))
        return bool(np.allclose(self.padded(n), other.padded(n), rtol=rtol, atol=atol))

    def __add__(self, other: "TaylorPolynomial") -> "TaylorPolynomial":
        n = max(len(self.coeffs), len(other.coeffs))
        return TaylorPolynomial(self.padded(n) + other.padded(n))

    def __sub__(self, other: "TaylorPolynomial") -> "TaylorPolynomial":
        n = max(len(self.coeffs), len(other.coeffs))
        return TaylorPolynomial(self.padded(n) - other.padded(n))

    def __neg__(self) -> "TaylorPolynomial":
        return TaylorPolynomial(-self.coeffs)

    def __mul__(self, scalar: complex) -> "TaylorPolynomial":
        return TaylorPolynomial(complex(scalar) * self.coeffs)

    __rmul__ = __mul__

    def __repr__(self) -> str:
        return f"TaylorPolynomial({self.coeffs.tolist()!r})"


def _as_poly(f) -> TaylorPolynomial:
    return f if isinstance(f, TaylorPolynomial) else TaylorPolynomial(f)


def evaluate(f: TaylorPolynomial, z):
    """Horner evaluation; ``z`` may be a scalar or an array."""
    c = _as_poly(f).coeffs
    z = np.asarray(z, dtype=complex)
    acc = np.full(z.shape, c[-1], dtype=complex)
    for a in c[-2::-1]:
        acc = acc * z + a
    return complex(acc) if acc.ndim == 0 else acc


def differentiate(f: TaylorPolynomial) -> TaylorPolynomial:
    c = _as_poly(f).coeffs
    if len(c) == 1:
        return TaylorPolynomial.zero()
    return TaylorPolynomial(c[1:] * np.arange(1, len(c)))


def mz_power(f: TaylorPolynomial, m: int) -> TaylorPolynomial:
    """Multiply by ``z**m``."""
    if m < 0:
        raise DomainError(f"m must be nonnegative, got {m}")
    f = _as_poly(f)
    if f.is_zero():
        return f
    return TaylorPolynomial(np.concatenate([np.zeros(m, dtype=complex), f.coeffs]))


def q_power(f: TaylorPolynomial, m: int) -> TaylorPolynomial:
    """Apply the backward shift ``Qf = (f - f(0))/z`` ``m`` times."""
    if m < 0:
        raise DomainError(f"m must be nonnegative, got {m}")
    c = _as_poly(f).coeffs
    return TaylorPolynomial(c[m:]) if m < len(c) else TaylorPolynomial.zero()


def dilate(f: TaylorPolynomial, t: float) -> TaylorPolynomial:
    """``z -> f(t z)`` for ``0 <= t <= 1``."""
    if not 0.0 <= t <= 1.0:
        raise DomainError(f"dilation parameter must lie in [0, 1], got {t}")
    c = _as_poly(f).coeffs
    return TaylorPolynomial(c * float(t) ** np.arange(len(c)))


def decompose(f: TaylorPolynomial, m: int) -> tuple[list[complex], TaylorPolynomial]:
    """Split ``f`` into its first ``m`` coefficients and ``Q**m f``.

    ``sum(head[n] z**n) + z**m * tail == f`` holds exactly.
    """
    if m < 1:
        raise DomainError(f"m must be positive, got {m}")
    f = _as_poly(f)
    head = [complex(v) for v in f.padded(m)[:m]]
    return head, q_power(f, m)


@dataclass(frozen=True)
class BlochGrid:
    """Polar sampling mesh used to approximate ``sup`` over the disc.

    ``n_theta`` equispaced angles times ``n_radial`` radii in
    ``[r_lo, r_max]``; every mesh local maximum that ranks among the best
    ``candidates`` is then polished by a Newton ascent.  The angular count
    should be at least four times the polynomial degree.
    """

    n_theta: int = 128
    n_radial: int = 64
    r_max: float = 1.0 - 1e-6
    candidates: int = 16

    def __post_init__(self) -> None:
        if self.n_theta < 1 or self.n_radial < 1:
            raise ConfigurationError("Bloch grid must have at least one angle and one radius")
        if not 0.0 < self.r_max < 1.0:
            raise ConfigurationError(f"r_max must lie in (0, 1), got {self.r_max}")
        if self.candidates < 1:
            raise ConfigurationError("at least one refinement candidate is required")

    @property
    def max_degree(self) -> int:
        return self.n_theta // 4

    def check_degree(self, degree: int) -> None:
        if degree > self.max_degree:
            raise ConfigurationError(
                f"grid with n_theta={self.n_theta} supports degree <= {self.max_degree}, got {degree}"
            )


DEFAULT_GRID = BlochGrid()


@dataclass(frozen=True)
class NormEstimate:
    value: float
    attained_at: complex
    grid: BlochGrid = field(repr=False)
    grid_error: float = 0.0


def _weighted_objective(g: TaylorPolynomial, z):
    z = np.asarray(z, dtype=complex)
    return (1.0 - np.abs(z) ** 2) * np.abs(evaluate(g, z))


def _horner(c: list[complex], z: complex) -> complex:
    acc = c[-1]
    for a in c[-2::-1]:
        acc = acc * z + a
    return acc


def _newton_polish(g, dg, ddg, z0: complex, r_lo: float, r_hi: float) -> complex:
    """Maximise ``log(1-|z|^2) + log|g(z)|`` from ``z0`` inside the annulus."""
    g, dg, ddg = (p.coeffs.tolist() for p in (g, dg, ddg))

    def log_obj(z: complex) -> float:
        gv = _horner(g, z)
        if gv == 0:
            return -math.inf
        return math.log1p(-abs(z) ** 2) + math.log(abs(gv))

    z = complex(z0)
    current = log_obj(z)
    if not math.isfinite(current):
        return z
    for _ in range(60):
        x, y = z.real, z.imag
        w = 1.0 - x * x - y * y
        gv = _horner(g, z)
        h = _horner(dg, z) / gv
        hp = _horner(ddg, z) / gv - h * h
        grad = np.array([-2.0 * x / w + h.real, -2.0 * y / w - h.imag])
        hxy = -4.0 * x * y / w**2 - hp.imag
        hess = np.array(
            [
                [-2.0 / w - 4.0 * x * x / w**2 + hp.real, hxy],
                [hxy, -2.0 / w - 4.0 * y * y / w**2 - hp.real],
            ]
        )
        if hess[0, 0] < 0 and np.linalg.det(hess) > 0:
            step = -np.linalg.solve(hess, grad)
        else:
            step = grad / max(np.abs(hess).max(), 1.0)
        lam = 1.0
        while lam > 1e-12:
            cand = z + lam * complex(step[0], step[1])
            if r_lo <= abs(cand) <= r_hi:
                value = log_obj(cand)
                if value >= current - 1e-15:
                    break
            lam *= 0.5
        else:
            return z
        moved = abs(lam * complex(step[0], step[1]))
        z, current = cand, value
        if moved < 1e-13:
            break
    return z


def _circle_polish(g: TaylorPolynomial, radius: float, theta0: float, width: float) -> complex:
    res = minimize_scalar(
        lambda th: -float(_weighted_objective(g, radius * np.exp(1j * th))),
        bounds=(theta0 - width, theta0 + width),
        method="bounded",
        options={"xatol": 1e-12},
    )
    return radius * complex(np.exp(1j * res.x))


def _weighted_sup(g: TaylorPolynomial, r_lo: float, r_hi: float, grid: BlochGrid):
    """Approximate ``sup (1-|z|^2)|g(z)|`` over ``r_lo <= |z| <= r_hi``.

    Returns ``(value, point, grid_error)``; ``value`` is attained at
    ``point`` so it never exceeds the true supremum.
    """
    if g.is_zero():
        return 0.0, complex(r_lo), 0.0
    thetas = 2.0 * np.pi * np.arange(grid.n_theta) / grid.n_theta
    radii = np.linspace(r_lo, r_hi, max(grid.n_radial, 2))
    mesh = radii[:, None] * np.exp(1j * thetas)[None, :]
    vals = _weighted_objective(g, mesh)
    grid_error = float(np.max(np.abs(np.roll(vals, -1, axis=1) - vals)))

    padded = np.pad(vals, ((1, 1), (0, 0)), constant_values=-np.inf)
    is_peak = np.ones_like(vals, dtype=bool)
    for dr in (-1, 0, 1):
        for dt in (-1, 0, 1):
            if dr == 0 and dt == 0:
                continue
            shifted = np.roll(padded, dt, axis=1)[1 + dr : 1 + dr + vals.shape[0]]
            is_peak &= vals >= shifted
    rows, cols = np.nonzero(is_peak)
    order = np.argsort(-vals[rows, cols], kind="stable")[: grid.candidates]

    dg = differentiate(g)
    ddg = differentiate(dg)
    best_i, best_j = np.unravel_index(np.argmax(vals), vals.shape)
    best_z = complex(mesh[best_i, best_j])
    best_val = float(vals[best_i, best_j])
    width = 2.0 * np.pi / grid.n_theta
    last_row = vals.shape[0] - 1
    origin_done = False
    for idx in order:
        i, j = rows[idx], cols[idx]
        if radii[i] == 0.0:
            if origin_done:
                continue
            origin_done = True
        trials = [_newton_polish(g, dg, ddg, complex(mesh[i, j]), r_lo, r_hi)]
        if (i == 0 or i == last_row) and radii[i] > 0.0:
            trials.append(_circle_polish(g, float(radii[i]), float(thetas[j]), width))
        for z in trials:
            v = float(_weighted_objective(g, z))
            if v > best_val:
                best_val, best_z = v, z
    return best_val, best_z, grid_error


def bloch_seminorm(f: TaylorPolynomial, grid: BlochGrid = DEFAULT_GRID) -> NormEstimate:
    """``sup (1-|z|^2)|f'(z)|`` over the disc of radius ``grid.r_max``."""
    f = _as_poly(f)
    grid.check_degree(f.degree)
    value, point, err = _weighted_sup(differentiate(f), 0.0, grid.r_max, grid)
    return NormEstimate(value, point, grid, err)


def bloch_norm(f: TaylorPolynomial, grid: BlochGrid = DEFAULT_GRID) -> NormEstimate:
    """``|f(0)| + ||f||_semi``."""
    f = _as_poly(f)
    semi = bloch_seminorm(f, grid)
    return NormEstimate(abs(f.coeffs[0]) + semi.value, semi.attained_at, grid, semi.grid_error)


def little_bloch_tail(f: TaylorPolynomial, r: float, grid: BlochGrid = DEFAULT_GRID) -> float:
    """Supremum of ``(1-|z|^2)|f'(z)|`` over the annulus ``r <= |z| <= r_max``.

    Tends to zero as ``r -> 1`` exactly for members of the little Bloch space.
    """
    if r <= 0.0:
        raise DomainError(f"inner radius must be positive, got {r}")
    if r >= grid.r_max:
        raise ConfigurationError(f"inner radius {r} must be below r_max={grid.r_max}")
    f = _as_poly(f)
    grid.check_degree(f.degree)
    return _weighted_sup(differentiate(f), float(r), grid.r_max, grid)[0]


def growth_bound_margin(f: TaylorPolynomial, z: complex, grid: BlochGrid = DEFAULT_GRID) -> float:
    """Slack in ``|f(z)| <= (1 + log((1+|z|)/(1-|z|))/2) ||f||``; never negative up to grid error."""
    rho = abs(z)
    if rho >= 1.0:
        raise DomainError(f"point must lie in the open unit disc, |z|={rho}")
    f = _as_poly(f)
    factor = 1.0 + 0.5 * math.log((1.0 + rho) / (1.0 - rho))
    return factor * bloch_norm(f, grid).value - abs(evaluate(f, z))


def random_polynomial(
    rng: np.random.Generator,
    degree: int,
    grid: BlochGrid | None = DEFAULT_GRID,
    first_nonzero: int = 0,
) -> TaylorPolynomial:
    """Coefficients uniform on the square ``[-1,1] + i[-1,1]``.

    Normalised to unit Bloch norm when ``grid`` is given.  Coefficients
    below ``first_nonzero`` are zero, placing the result in the range of
    ``z**first_nonzero``.
    """
    c = rng.uniform(-1.0, 1.0, degree + 1) + 1j * rng.uniform(-1.0, 1.0, degree + 1)
    c[:first_nonzero] = 0.0
    f = TaylorPolynomial(c)
    if grid is not None:
        f = f * (1.0 / bloch_norm(f, grid).value)
    return f


def as_polynomial(coeffs: Sequence[complex] | TaylorPolynomial) -> TaylorPolynomial:
    return _as_poly(coeffs)
