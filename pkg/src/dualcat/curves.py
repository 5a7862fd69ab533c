"""Graph curves over the dual plane and their differential geometry.

A curve is parametrized by x as ``(x, y(x)) + eps*(w(x), z(x))``.  The real
part is an ordinary plane graph; the eps part is a first-order deformation.
The curve is admissible when ``w' + y'*z' = 0``, which makes its dual speed
purely real and lets the Frenet frame and curvature split into a Euclidean
part plus an eps correction driven by z.
"""

from __future__ import annotations

from dataclasses import dataclass
from typing import TYPE_CHECKING, Callable

import numpy as np
from scipy.integrate import quad
from scipy.interpolate import CubicHermiteSpline

from .dual import DirectionSpec, DualScalar, DualVec2, dual_dot
from .errors import InvalidParams, OutOfDomain

if TYPE_CHECKING:
    from .closed_forms import CatenaryParams

# Absolute slack when checking that a point lies inside a curve's interval.
DOMAIN_SLACK = 1e-12

# scipy.integrate.quad tolerances for arc length.
QUAD_EPS = 1e-12

# Arc-length inversion: bisection passes before secant refinement, and the
# tolerance on the arc-length mismatch.
BISECT_STEPS = 12
ARCLEN_TOL = 1e-12


def _const(c: float) -> Callable:
    c = float(c)

    def fn(x):
        x = np.asarray(x, dtype=float)
        if x.ndim == 0:
            return c
        return np.full(x.shape, c)

    return fn


class Coordinate:
    """Scalar function of x with analytic first and second derivatives.

    The three callables must accept floats and numpy arrays elementwise.
    """

    __slots__ = ("_f", "_d1", "_d2")

    def __init__(self, f: Callable, d1: Callable, d2: Callable):
        self._f = f
        self._d1 = d1
        self._d2 = d2

    def value(self, x):
        return self._f(x)

    def deriv(self, x):
        return self._d1(x)

    def deriv2(self, x):
        return self._d2(x)

    @staticmethod
    def constant(c: float) -> "Coordinate":
        return Coordinate(_const(c), _const(0.0), _const(0.0))

    @staticmethod
    def linear(slope: float, intercept: float) -> "Coordinate":
        slope = float(slope)
        intercept = float(intercept)
        return Coordinate(lambda x: slope * np.asarray(x, float) + intercept, _const(slope), _const(0.0))


def _dedim(out):
    return float(out) if np.ndim(out) == 0 else out


class SampledCoordinate(Coordinate):
    """Coordinate built from grid samples of value, first and second derivative.

    Values interpolate with a cubic Hermite spline on (value, d1); the first
    derivative with a spline on (d1, d2); the second derivative as the exact
    derivative of the latter, so it reproduces the d2 samples at the nodes.
    """

    __slots__ = ("grid",)

    def __init__(self, grid: np.ndarray, vals: np.ndarray, d1: np.ndarray, d2: np.ndarray):
        grid = np.asarray(grid, dtype=float)
        s_val = CubicHermiteSpline(grid, np.asarray(vals, float), np.asarray(d1, float))
        s_d1 = CubicHermiteSpline(grid, np.asarray(d1, float), np.asarray(d2, float))
        s_d2 = s_d1.derivative()
        super().__init__(
            lambda x: _dedim(s_val(x)),
            lambda x: _dedim(s_d1(x)),
            lambda x: _dedim(s_d2(x)),
        )
        self.grid = grid


@dataclass(frozen=True)
class ClosedForm:
    """Source tag for curves built from an explicit parametric family."""

    params: "CatenaryParams"


@dataclass(frozen=True, eq=False)
class Numeric:
    """Source tag for curves assembled from an ODE solve."""

    grid: np.ndarray


@dataclass(frozen=True)
class Frame:
    """Unit tangent and normal at a point, as dual-plane vectors."""

    T: DualVec2
    N: DualVec2
    nu: float  # Euclidean speed sqrt(1 + y'(x)**2)


@dataclass(frozen=True)
class CurvatureSample:
    x: float
    kappa: DualScalar


class GraphCurve:
    """Graph curve ``(x, y(x)) + eps*(w(x), z(x))`` on a closed interval."""

    def __init__(
        self,
        domain: tuple[float, float],
        y: Coordinate,
        w: Coordinate,
        z: Coordinate,
        source: ClosedForm | Numeric | None = None,
    ):
        a, b = float(domain[0]), float(domain[1])
        if not (np.isfinite(a) and np.isfinite(b)) or a >= b:
            raise InvalidParams(f"domain must be a finite interval with a < b, got ({a}, {b})")
        self.domain = (a, b)
        self.y = y
        self.w = w
        self.z = z
        self.source = source

    def _check(self, x) -> None:
        a, b = self.domain
        slack = DOMAIN_SLACK * (1.0 + abs(a) + abs(b))
        arr = np.asarray(x, dtype=float)
        if np.any(arr < a - slack) or np.any(arr > b + slack):
            raise OutOfDomain(f"x = {x} outside [{a}, {b}]")

    def evaluate(self, x: float) -> DualVec2:
        """Curve point as a dual-plane vector."""
        self._check(x)
        x = float(x)
        return DualVec2((x, float(self.y.value(x))), (float(self.w.value(x)), float(self.z.value(x))))

    def admissibility_residual(self, x):
        """Defect ``w' + y'*z'``; identically zero on admissible curves."""
        self._check(x)
        return self.w.deriv(x) + self.y.deriv(x) * self.z.deriv(x)

    def frame(self, x: float) -> Frame:
        """Frenet frame, assuming the curve is admissible at x.

        The tangent is the Euclidean tangent plus ``eps*z'*N``; the normal is
        the Euclidean normal (left-pointing: ``(-y', 1)/nu``) minus
        ``eps*z'*T``.  Both have unit dual norm.
        """
        self._check(x)
        x = float(x)
        yp = float(self.y.deriv(x))
        zp = float(self.z.deriv(x))
        nu = np.hypot(1.0, yp)
        t_re = (1.0 / nu, yp / nu)
        n_re = (-yp / nu, 1.0 / nu)
        T = DualVec2(t_re, (zp * n_re[0], zp * n_re[1]))
        N = DualVec2(n_re, (-zp * t_re[0], -zp * t_re[1]))
        return Frame(T, N, float(nu))

    def curvature(self, x: float) -> CurvatureSample:
        """Signed curvature ``y''/nu**3 + eps*z''/nu`` for an admissible curve."""
        self._check(x)
        x = float(x)
        yp = float(self.y.deriv(x))
        ypp = float(self.y.deriv2(x))
        zpp = float(self.z.deriv2(x))
        nu = float(np.hypot(1.0, yp))
        return CurvatureSample(x, DualScalar(ypp / nu**3, zpp / nu))

    def characterization_residual(self, alpha: float, u: DirectionSpec, x: float) -> DualScalar:
        """Residual of the curvature identity ``kappa = alpha*<N,u>/<gamma,u>``.

        Vanishes exactly on the curves that are stationary for the potential
        energy with exponent alpha and reference direction u.  Raises
        ZeroRealPart when the height ``y(x)`` is zero.
        """
        self._check(x)
        x = float(x)
        kappa = self.curvature(x).kappa
        fr = self.frame(x)
        num = dual_dot(fr.N, u.vector)
        den = dual_dot(self.evaluate(x), u.vector)
        return kappa - float(alpha) * (num / den)

    def arc_length(self, x0: float, x1: float) -> float:
        """Euclidean arc length of the real part between x0 and x1."""
        self._check(x0)
        self._check(x1)

        def speed(x):
            return np.hypot(1.0, self.y.deriv(x))

        val, _ = quad(speed, x0, x1, epsabs=QUAD_EPS, epsrel=QUAD_EPS, limit=200)
        return float(val)

    def x_at_arclength(self, s: float) -> float:
        """Parameter x at which arc length from the left endpoint reaches s.

        The speed is at least 1, so the map is strictly increasing; a short
        bisection brackets the root and secant iterations polish it.
        """
        a, b = self.domain
        total = self.arc_length(a, b)
        if s < -ARCLEN_TOL or s > total + ARCLEN_TOL:
            raise OutOfDomain(f"arc length {s} outside [0, {total}]")
        s = min(max(s, 0.0), total)

        def g(x: float) -> float:
            return self.arc_length(a, x) - s

        lo, hi = a, b
        glo, ghi = -s, total - s
        if abs(glo) <= ARCLEN_TOL:
            return a
        if abs(ghi) <= ARCLEN_TOL:
            return b
        for _ in range(BISECT_STEPS):
            mid = 0.5 * (lo + hi)
            gm = g(mid)
            if abs(gm) <= ARCLEN_TOL:
                return mid
            if gm < 0.0:
                lo, glo = mid, gm
            else:
                hi, ghi = mid, gm
        # Secant refinement inside the bracket; the speed bound keeps it stable.
        x0, g0, x1, g1 = lo, glo, hi, ghi
        for _ in range(60):
            if g1 == g0:
                break
            x2 = x1 - g1 * (x1 - x0) / (g1 - g0)
            x2 = min(max(x2, lo), hi)
            g2 = g(x2)
            if abs(g2) <= ARCLEN_TOL:
                return x2
            if g2 < 0.0:
                lo = x2
            else:
                hi = x2
            x0, g0, x1, g1 = x1, g1, x2, g2
        return x1
