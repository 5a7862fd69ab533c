"""Potential energy, stationarity residuals and constrained variations.

The energy of an admissible curve is the dual-valued integral of
``<u, gamma>**alpha * |gamma'|``.  Its real part depends only on the graph y;
its eps part adds the first-order response of the energy to the deformation
(w, z).  Stationary curves satisfy an Euler-Lagrange equation in each
component, checked here pointwise, and make the first variation vanish for
every fixed-endpoint variation that respects admissibility to first order.
"""

from __future__ import annotations

from dataclasses import dataclass, field

import numpy as np
from scipy.integrate import quad

from . import quadrature
from .curves import ClosedForm, Coordinate, GraphCurve
from .dual import DirectionSpec, DualScalar
from .errors import DegenerateVariation, DomainError, InvalidParams

# Bump amplitude used for seeded variations; small enough that quadrature
# error on the bump tails stays far below the stationarity tolerances.
VARIATION_AMP = 0.05

# Thresholds for the solvability of the one-dimensional constraint correction.
FIXER_DENOM_MIN = 1e-10
CONSTRAINT_NEGLIGIBLE = 1e-12

FD_STEP = 1e-4


@dataclass(frozen=True)
class EnergyValue:
    """Dual energy with its real/eps split.

    ``e0`` integrates ``y**alpha * nu`` and ``e1`` integrates
    ``alpha*(z + v*x)*y**(alpha-1)*nu``; ``total`` additionally carries the
    admissibility defect through the dual speed, so on admissible curves
    ``total = e0 + e1*eps`` up to rounding.
    """

    total: DualScalar
    e0: float
    e1: float


def _heights(curve: GraphCurve, x: np.ndarray) -> np.ndarray:
    y = np.asarray(curve.y.value(x), dtype=float)
    if np.any(y <= 0.0) or not np.all(np.isfinite(y)):
        raise DomainError("curve height must stay positive on the integration interval")
    return y


def energy(
    curve: GraphCurve,
    u: DirectionSpec,
    alpha: float,
    panels: int = quadrature.PANELS,
    breakpoints=(),
) -> EnergyValue:
    """Dual potential energy of the curve over its whole interval.

    Extra quadrature breakpoints keep full accuracy when the integrand is
    only piecewise smooth, as for curves deformed by compactly supported
    bumps.
    """
    a, b = curve.domain
    if breakpoints:
        x, wts = quadrature.partitioned_nodes(a, b, breakpoints, panels)
    else:
        x, wts = quadrature.gauss_legendre_nodes(a, b, panels)
    y = _heights(curve, x)
    yp = np.asarray(curve.y.deriv(x), float)
    zv = np.asarray(curve.z.value(x), float)
    zp = np.asarray(curve.z.deriv(x), float)
    wp = np.asarray(curve.w.deriv(x), float)
    nu = np.hypot(1.0, yp)

    pot = y**alpha
    pot_du = alpha * (zv + u.v * x) * y ** (alpha - 1.0)
    defect = (wp + yp * zp) / nu

    e0 = float(np.dot(wts, pot * nu))
    e1 = float(np.dot(wts, pot_du * nu))
    total_du = float(np.dot(wts, pot * defect + pot_du * nu))
    return EnergyValue(DualScalar(e0, total_du), e0, e1)


def el_residual_real(curve: GraphCurve, alpha: float, x):
    """Residual ``y''/(1 + y'**2) - alpha/y`` of the graph equation."""
    curve._check(x)
    y = _heights(curve, np.asarray(x, dtype=float))
    yp = curve.y.deriv(x)
    ypp = curve.y.deriv2(x)
    return ypp / (1.0 + yp * yp) - alpha / y


def el_residual_dual(curve: GraphCurve, alpha: float, u: DirectionSpec, x):
    """Residual ``z'' + alpha*(y'/y)*(z' + v) + alpha*(z + v*x)/y**2``.

    This is the linearization of the graph equation along the deformation,
    and vanishes on the eps part of a stationary admissible curve.
    """
    curve._check(x)
    xs = np.asarray(x, dtype=float)
    y = _heights(curve, xs)
    yp = curve.y.deriv(x)
    zv = curve.z.value(x)
    zp = curve.z.deriv(x)
    zpp = curve.z.deriv2(x)
    return zpp + alpha * (yp / y) * (zp + u.v) + alpha * (zv + u.v * xs) / (y * y)


def first_integral_residual(curve: GraphCurve, alpha: float, c: float, x):
    """Residual ``1 + y'**2 - c**2 * y**(2*alpha)`` of the conserved quantity."""
    if not (c > 0.0 and np.isfinite(c)):
        raise InvalidParams(f"c must be positive, got {c}")
    curve._check(x)
    y = _heights(curve, np.asarray(x, dtype=float))
    yp = curve.y.deriv(x)
    return 1.0 + yp * yp - c * c * y ** (2.0 * alpha)


def infer_c(curve: GraphCurve, alpha: float, x0: float) -> float:
    """Constant ``sqrt((1 + y'**2) / y**(2*alpha))`` read off at one point."""
    curve._check(x0)
    y = float(_heights(curve, np.asarray(x0, dtype=float)))
    yp = float(curve.y.deriv(x0))
    return float(np.sqrt((1.0 + yp * yp) / y ** (2.0 * alpha)))


def multiplier_residual(curve: GraphCurve, alpha: float, c: float, x):
    """Residual ``y''/c - alpha*c*y**(2*alpha - 1)`` of the scaled graph equation."""
    if not (c > 0.0 and np.isfinite(c)):
        raise InvalidParams(f"c must be positive, got {c}")
    curve._check(x)
    y = _heights(curve, np.asarray(x, dtype=float))
    ypp = curve.y.deriv2(x)
    return ypp / c - alpha * c * y ** (2.0 * alpha - 1.0)


@dataclass(frozen=True)
class Bump:
    """Polynomial bump ``(1 - t**2)**3`` on ``|x - center| < radius``.

    Twice continuously differentiable across the support edges, which keeps
    fixed-panel quadrature of bump integrands well behaved.
    """

    center: float
    radius: float

    def _t(self, x):
        return (np.asarray(x, dtype=float) - self.center) / self.radius

    def value(self, x):
        t = self._t(x)
        s = np.maximum(0.0, 1.0 - t * t)
        return s**3

    def deriv(self, x):
        t = self._t(x)
        s = np.maximum(0.0, 1.0 - t * t)
        return -6.0 * t * s * s / self.radius

    def deriv2(self, x):
        t = self._t(x)
        s = np.maximum(0.0, 1.0 - t * t)
        return 6.0 * s * (5.0 * t * t - 1.0) / self.radius**2


@dataclass(frozen=True)
class BumpSum:
    """Linear combination of bumps, used as a compactly supported test function."""

    bumps: tuple[Bump, ...]
    coeffs: tuple[float, ...]

    def value(self, x):
        return sum(a * b.value(x) for a, b in zip(self.coeffs, self.bumps))

    def deriv(self, x):
        return sum(a * b.deriv(x) for a, b in zip(self.coeffs, self.bumps))

    def deriv2(self, x):
        return sum(a * b.deriv2(x) for a, b in zip(self.coeffs, self.bumps))

    def with_bump(self, coeff: float, bump: Bump) -> "BumpSum":
        return BumpSum(self.bumps + (bump,), self.coeffs + (coeff,))

    def edges(self) -> tuple[float, ...]:
        """Support endpoints of every bump (the smoothness breakpoints)."""
        out = []
        for b in self.bumps:
            out.extend((b.center - b.radius, b.center + b.radius))
        return tuple(out)

    def sup(self, a: float, b: float, n: int = 1024) -> float:
        xs = np.linspace(a, b, n)
        return float(np.max(np.abs(self.value(xs))))


@dataclass(frozen=True)
class VariationField:
    """Pair of test functions (delta_y, delta_z) vanishing at the endpoints.

    ``constraint`` records the quadrature value of
    ``integral(y'*delta_z' + z'*delta_y')``, which admissible variations keep
    at zero so the rebuilt w component returns to its endpoint value.
    """

    delta_y: BumpSum
    delta_z: BumpSum
    constraint: float


def _random_bumps(rng: np.random.Generator, a: float, b: float, count: int = 3) -> BumpSum:
    span = b - a
    bumps = []
    coeffs = []
    for _ in range(count):
        radius = span * rng.uniform(0.08, 0.20)
        lo = a + radius + 0.02 * span
        hi = b - radius - 0.02 * span
        bumps.append(Bump(rng.uniform(lo, hi), radius))
        coeffs.append(rng.uniform(-VARIATION_AMP, VARIATION_AMP))
    return BumpSum(tuple(bumps), tuple(coeffs))


def make_constrained_variation(
    curve: GraphCurve, seed: int, panels: int = quadrature.PANELS
) -> VariationField:
    """Seeded random variation satisfying the admissibility constraint.

    Three bumps are drawn for each component; a fixed central bump added to
    delta_z absorbs the constraint integral.  When the correction is unsolvable
    (its denominator vanishes while the constraint does not) the seed is
    rejected with DegenerateVariation.
    """
    a, b = curve.domain
    rng = np.random.default_rng(seed)
    dy = _random_bumps(rng, a, b)
    dz = _random_bumps(rng, a, b)
    fixer = Bump(0.5 * (a + b), 0.3 * (b - a))

    breaks = dy.edges() + dz.edges() + (fixer.center - fixer.radius, fixer.center + fixer.radius)
    x, wts = quadrature.partitioned_nodes(a, b, breaks, panels)
    yp = np.asarray(curve.y.deriv(x), float)
    zp = np.asarray(curve.z.deriv(x), float)

    k_raw = float(np.dot(wts, yp * dz.deriv(x) + zp * dy.deriv(x)))
    denom = float(np.dot(wts, yp * fixer.deriv(x)))

    if abs(denom) < FIXER_DENOM_MIN:
        if abs(k_raw) > CONSTRAINT_NEGLIGIBLE:
            raise DegenerateVariation(
                f"seed {seed}: constraint {k_raw:.3e} cannot be corrected, denominator {denom:.3e}"
            )
        corrected = dz
    else:
        corrected = dz.with_bump(-k_raw / denom, fixer)

    k_final = float(np.dot(wts, yp * corrected.deriv(x) + zp * dy.deriv(x)))
    return VariationField(dy, corrected, k_final)


def perturbed_curve(
    curve: GraphCurve, delta_y, delta_z, scale: float
) -> GraphCurve:
    """Deform y and z by ``scale*delta`` and rebuild w from admissibility.

    The rebuilt w has ``w' = -y'*z'`` for the new coordinates, so the result
    is admissible by construction; its value is anchored at the left endpoint
    to the original w.
    """
    a, _ = curve.domain
    s = float(scale)

    y2 = Coordinate(
        lambda x: curve.y.value(x) + s * delta_y.value(x),
        lambda x: curve.y.deriv(x) + s * delta_y.deriv(x),
        lambda x: curve.y.deriv2(x) + s * delta_y.deriv2(x),
    )
    z2 = Coordinate(
        lambda x: curve.z.value(x) + s * delta_z.value(x),
        lambda x: curve.z.deriv(x) + s * delta_z.deriv(x),
        lambda x: curve.z.deriv2(x) + s * delta_z.deriv2(x),
    )

    def w_d1(x):
        return -(y2.deriv(x) * z2.deriv(x))

    def w_d2(x):
        return -(y2.deriv2(x) * z2.deriv(x) + y2.deriv(x) * z2.deriv2(x))

    w_anchor = float(curve.w.value(a))

    def w_scalar(xx: float) -> float:
        val, _ = quad(w_d1, a, xx, epsabs=1e-12, epsrel=1e-12, limit=200)
        return w_anchor + val

    def w_val(x):
        if np.ndim(x) == 0:
            return w_scalar(float(x))
        return np.array([w_scalar(float(xx)) for xx in np.asarray(x, float)])

    return GraphCurve(curve.domain, y2, Coordinate(w_val, w_d1, w_d2), z2, source=None)


def first_variation(
    curve: GraphCurve,
    var: VariationField,
    u: DirectionSpec,
    alpha: float,
    h: float = FD_STEP,
    panels: int = quadrature.PANELS,
) -> DualScalar:
    """Central-difference directional derivative of the energy along var.

    The step shrinks if the deformation could push the curve out of the upper
    half plane.  Both dual components of the derivative vanish (to quadrature
    and finite-difference accuracy) exactly at stationary curves.
    """
    a, b = curve.domain
    x, _ = quadrature.gauss_legendre_nodes(a, b, panels)
    min_y = float(np.min(_heights(curve, x)))
    sup_dy = var.delta_y.sup(a, b)
    h_eff = float(h)
    if sup_dy > 0.0:
        h_eff = min(h_eff, 0.1 * min_y / sup_dy)

    breaks = var.delta_y.edges() + var.delta_z.edges()
    plus = energy(perturbed_curve(curve, var.delta_y, var.delta_z, h_eff), u, alpha, panels, breaks)
    minus = energy(perturbed_curve(curve, var.delta_y, var.delta_z, -h_eff), u, alpha, panels, breaks)
    inv = 0.5 / h_eff
    return DualScalar(
        (plus.total.re - minus.total.re) * inv,
        (plus.total.du - minus.total.du) * inv,
    )


@dataclass(frozen=True)
class ResidualReport:
    """Residual columns on a sample grid plus their max-abs summary."""

    grid: np.ndarray
    columns: dict = field(default_factory=dict)
    max_abs: dict = field(default_factory=dict)
    c_used: float | None = None


def resolve_c(curve: GraphCurve, alpha: float, x0: float) -> float:
    """First-integral constant: from closed-form parameters when they match
    the requested exponent, otherwise read off the curve at x0."""
    if isinstance(curve.source, ClosedForm) and curve.source.params is not None:
        p = curve.source.params
        if p.alpha == alpha:
            return p.R if alpha == -1.0 else p.c
    return infer_c(curve, alpha, x0)


def residual_report(
    curve: GraphCurve,
    alpha: float,
    u: DirectionSpec,
    c: float | None = None,
    num: int = 201,
    grid: np.ndarray | None = None,
) -> ResidualReport:
    """Evaluate all pointwise residuals on a uniform (or given) grid."""
    a, b = curve.domain
    xs = np.linspace(a, b, num) if grid is None else np.asarray(grid, dtype=float)
    curve._check(xs)

    y = np.asarray(curve.y.value(xs), float)
    yp = np.asarray(curve.y.deriv(xs), float)
    ypp = np.asarray(curve.y.deriv2(xs), float)
    wv = np.asarray(curve.w.value(xs), float)
    wp = np.asarray(curve.w.deriv(xs), float)
    zv = np.asarray(curve.z.value(xs), float)
    zp = np.asarray(curve.z.deriv(xs), float)
    zpp = np.asarray(curve.z.deriv2(xs), float)
    nu = np.hypot(1.0, yp)
    v = u.v

    if np.any(y <= 0.0):
        raise DomainError("curve height must stay positive on the report grid")

    c_used = resolve_c(curve, alpha, float(xs[len(xs) // 2])) if c is None else float(c)

    kappa_re = ypp / nu**3
    kappa_du = zpp / nu

    # Dual division <N,u>/<gamma,u> expanded in components.
    num_re = 1.0 / nu
    num_du = -yp * (v + zp) / nu
    den_re = y
    den_du = v * xs + zv
    rhs_re = num_re / den_re
    rhs_du = (num_du * den_re - num_re * den_du) / (den_re * den_re)

    columns = {
        "x": xs,
        "y": y,
        "w": wv,
        "z": zv,
        "yp": yp,
        "zp": zp,
        "kappa_re": kappa_re,
        "kappa_du": kappa_du,
        "char_res_re": kappa_re - alpha * rhs_re,
        "char_res_du": kappa_du - alpha * rhs_du,
        "admis_res": wp + yp * zp,
    }
    el_re = ypp / (1.0 + yp * yp) - alpha / y
    el_du = zpp + alpha * (yp / y) * (zp + v) + alpha * (zv + v * xs) / (y * y)
    fi = 1.0 + yp * yp - c_used * c_used * y ** (2.0 * alpha)

    max_abs = {
        "admissibility": float(np.max(np.abs(columns["admis_res"]))),
        "el_real": float(np.max(np.abs(el_re))),
        "el_dual": float(np.max(np.abs(el_du))),
        "first_integral": float(np.max(np.abs(fi))),
        "characterization_re": float(np.max(np.abs(columns["char_res_re"]))),
        "characterization_du": float(np.max(np.abs(columns["char_res_du"]))),
    }
    return ResidualReport(xs, columns, max_abs, c_used)
