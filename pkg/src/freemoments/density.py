"""Floating-point densities, special functions, and singularity-aware integrals.

The catalog densities are:

* ``v_mu0``    the absolutely continuous law on (0, 27/4) whose n-th moment
               is C(3n,n)/(n+1); closed form in powers of (1 +- sqrt(1-4x/27))
* ``mp``       Marchenko-Pastur with parameter t: bulk
               sqrt(4t-(x-1-t)^2)/(2 pi x) on ((1-sqrt t)^2, (1+sqrt t)^2),
               plus an atom of mass max(1-t, 0) at 0
* ``mu1``      bulk sqrt(8-(x-3)^2)/(4 pi x) on (3-sqrt8, 3+sqrt8), atom 1/2 at 0
* ``mu2``      bulk sqrt(4x-x^2)/(4 pi x) on (0,4), atom 1/2 at 0
* ``beta``     Beta(a,b) on (0,1)
* ``arcsine``  1/(pi sqrt(x(4-x))) on (0,4)

Each kind carries a substitution that removes its endpoint singularities, so
plain composite Gauss-Legendre converges fast:

* ``v_mu0``:   x = u^3 (the x^(-2/3) and x^(-1/3) parts become bounded); the
               remaining square-root behavior at the right edge is absorbed
               by geometrically graded panels toward that endpoint.
* mp family:   x = center + radius*sin(theta), which turns both square-root
               edges (and the 1/x factor at a hard edge at zero) analytic.
* ``beta``:    x = s^q at each endpoint with q the denominator of the edge
               exponent, making the substituted integrand analytic.
"""

from __future__ import annotations

import math
from dataclasses import dataclass
from fractions import Fraction

import numpy as np

from .measures import (
    Beta,
    MarchenkoPastur,
    MeasureSpec,
    Named,
    named_coefficient,
)
from .quadrature import adaptive_panels, fixed_panels, graded_breakpoints

__all__ = [
    "OutOfSupport",
    "NonPositiveArgument",
    "NonConvergent",
    "OutOfDomain",
    "DensityFn",
    "gamma",
    "hyp2f1",
    "g_closed_form",
    "g_series",
    "v_density",
    "v_density_hypergeometric",
    "mp_density",
    "mu1_density",
    "mu2_density",
    "density_mu0",
    "density_mp",
    "density_mu1",
    "density_mu2",
    "density_beta",
    "density_arcsine",
    "density_of",
    "quad_moment",
    "cdf",
    "cdf_values",
    "mellin_density_numeric",
    "density_grid",
    "V_SUPPORT_HI",
]


class OutOfSupport(ValueError):
    """Density evaluation requested outside the admissible interval."""


class NonPositiveArgument(ValueError):
    """Gamma function argument must be positive here."""


class NonConvergent(ValueError):
    """Hypergeometric series does not converge for this argument."""


class OutOfDomain(ValueError):
    """Closed-form evaluation requested outside its domain."""


V_SUPPORT_HI = 27.0 / 4.0
_U1 = V_SUPPORT_HI ** (1.0 / 3.0)
_SQRT8 = math.sqrt(8.0)

# prefactors of the two-term closed form of the v_mu0 density
_C1 = math.sqrt(3.0) / (2.0 ** (10.0 / 3.0) * math.pi)
_C2 = 1.0 / (2.0 ** (8.0 / 3.0) * math.sqrt(3.0) * math.pi)


# ---------------------------------------------------------------------------
# special functions
# ---------------------------------------------------------------------------


def gamma(x: float) -> float:
    """Gamma function for x > 0 (C-library implementation, ~1e-15 relative)."""
    if x <= 0.0:
        raise NonPositiveArgument(f"gamma requires x > 0, got {x}")
    return math.gamma(x)


def hyp2f1(a: float, b: float, c: float, x: float, tol: float = 1e-15) -> float:
    """Gauss hypergeometric series sum (a)_n (b)_n x^n / ((c)_n n!).

    Convergence needs |x| < 1 (the only regime used here). The loop stops when
    the geometric tail bound |term| * q / (1 - q), q = max(|x|, next ratio),
    drops below tol times the partial sum.
    """
    if abs(x) >= 1.0:
        raise NonConvergent(f"hypergeometric series needs |x| < 1, got {x}")
    if c <= 0.0 and float(c).is_integer():
        a_stops = a <= 0.0 and float(a).is_integer() and -a < -c
        b_stops = b <= 0.0 and float(b).is_integer() and -b < -c
        if not (a_stops or b_stops):
            raise NonConvergent("third parameter is a nonpositive integer hit by the series")
    settle = 8 + 2 * int(max(abs(a), abs(b), abs(c)))
    total = 1.0
    term = 1.0
    for n in range(500_000):
        ratio = (a + n) * (b + n) / ((c + n) * (n + 1.0)) * x
        term *= ratio
        total += term
        if term == 0.0:
            return total
        if n >= settle:
            q = max(abs(x), abs(ratio))
            if q < 1.0 and abs(term) * q / (1.0 - q) <= tol * max(abs(total), 1e-300):
                return total
    raise NonConvergent("hypergeometric series did not settle within the iteration cap")


def g_closed_form(z: float) -> float:
    """Trigonometric closed form of the doubled moment generating series.

    Valid on (0, 4/27]: with alpha = arcsin(sqrt(27 z / 4)) / 3, the value is
    (12 cos^2(alpha) + 6) / (4 cos^2(alpha) - 1)^2.
    """
    u = 27.0 * z / 4.0
    if z <= 0.0 or u > 1.0 + 1e-12:
        raise OutOfDomain(f"closed form needs 0 < z <= 4/27, got {z}")
    u = min(u, 1.0)
    alpha = math.asin(math.sqrt(u)) / 3.0
    c2 = math.cos(alpha) ** 2
    return (12.0 * c2 + 6.0) / (4.0 * c2 - 1.0) ** 2


def g_series(z: float, order: int) -> float:
    """Partial sum through z^order of sum C(3n,n) * 2 z^n / (n+1).

    Accumulated exactly over rationals (z taken at its binary-float value),
    rounded once at the end.
    """
    if order < 1:
        raise ValueError("series order must be >= 1")
    zf = Fraction(z)
    zp = Fraction(1)
    total = Fraction(0)
    for n in range(order + 1):
        total += named_coefficient("g", n) * zp
        zp *= zf
    return float(total)


# ---------------------------------------------------------------------------
# pointwise densities
# ---------------------------------------------------------------------------


def _v_bulk(x: np.ndarray) -> np.ndarray:
    """Vectorized closed form of the v_mu0 density on (0, 27/4]."""
    w = np.sqrt(np.maximum(1.0 - 4.0 * x / 27.0, 0.0))
    a = np.cbrt(1.0 + w)
    cr = np.cbrt(x)
    return _C1 * (3.0 * w - 1.0) * a / (cr * cr) + _C2 * (3.0 * w + 1.0) / (a * cr)


def v_density(x: float) -> float:
    """Density of the C(3n,n)/(n+1) moment law at x in (0, 27/4).

    The value at the right endpoint is the continuous limit 0; the density
    diverges at 0+, so nonpositive x raises OutOfSupport.
    """
    if x <= 0.0 or x > V_SUPPORT_HI:
        raise OutOfSupport(f"density support is (0, 27/4), got {x}")
    if x == V_SUPPORT_HI:
        return 0.0
    return float(_v_bulk(np.asarray([x]))[0])


def v_density_hypergeometric(x: float) -> float:
    """Same density through its two-term hypergeometric representation."""
    if x <= 0.0 or x > V_SUPPORT_HI:
        raise OutOfSupport(f"density support is (0, 27/4), got {x}")
    if x == V_SUPPORT_HI:
        return 0.0
    u = 4.0 * x / 27.0
    first = math.sqrt(3.0) / (4.0 * math.pi * x ** (2.0 / 3.0)) * hyp2f1(
        -2.0 / 3.0, 5.0 / 6.0, 2.0 / 3.0, u
    )
    second = 1.0 / (2.0 * math.pi * math.sqrt(3.0) * x ** (1.0 / 3.0)) * hyp2f1(
        -1.0 / 3.0, 7.0 / 6.0, 4.0 / 3.0, u
    )
    return first + second


def mp_density(t: float, x: float) -> float:
    """Marchenko-Pastur bulk density; 0 outside the open bulk interval.

    The atom max(1-t, 0) at 0 is carried separately by the DensityFn catalog.
    """
    if t <= 0.0:
        raise ValueError("Marchenko-Pastur parameter must be > 0")
    rt = math.sqrt(t)
    lo, hi = (1.0 - rt) ** 2, (1.0 + rt) ** 2
    if x <= lo or x >= hi:
        return 0.0
    return math.sqrt(4.0 * t - (x - 1.0 - t) ** 2) / (2.0 * math.pi * x)


def mu1_density(x: float) -> float:
    """Bulk density sqrt(8-(x-3)^2)/(4 pi x) on (3-sqrt8, 3+sqrt8)."""
    if x <= 3.0 - _SQRT8 or x >= 3.0 + _SQRT8:
        return 0.0
    return math.sqrt(8.0 - (x - 3.0) ** 2) / (4.0 * math.pi * x)


def mu2_density(x: float) -> float:
    """Bulk density sqrt(4x-x^2)/(4 pi x) on (0, 4)."""
    if x <= 0.0 or x >= 4.0:
        return 0.0
    return math.sqrt(4.0 * x - x * x) / (4.0 * math.pi * x)


# ---------------------------------------------------------------------------
# density catalog
# ---------------------------------------------------------------------------


@dataclass(frozen=True)
class DensityFn:
    """A catalog density: bulk support, atoms, and edge singularity exponents.

    ``edge_exponents = (e_lo, e_hi)`` describe f(x) ~ (x-lo)^e_lo near lo and
    f(x) ~ (hi-x)^e_hi near hi; they drive the quadrature substitutions.
    """

    kind: str
    support: tuple[float, float]
    atoms: tuple[tuple[float, float], ...]
    edge_exponents: tuple[Fraction, Fraction]
    params: tuple[Fraction, ...] = ()

    def pdf(self, x: float) -> float:
        """Bulk density value at x (atoms excluded); 0 outside the open bulk."""
        if self.kind == "v_mu0":
            lo, hi = self.support
            return 0.0 if (x <= lo or x >= hi) else v_density(x)
        if self.kind == "mp":
            return mp_density(float(self.params[0]), x)
        if self.kind == "mu1":
            return mu1_density(x)
        if self.kind == "mu2":
            return mu2_density(x)
        if self.kind == "arcsine":
            if x <= 0.0 or x >= 4.0:
                return 0.0
            return 1.0 / (math.pi * math.sqrt(x * (4.0 - x)))
        if self.kind == "beta":
            a, b = (float(p) for p in self.params)
            if x <= 0.0 or x >= 1.0:
                return 0.0
            norm = gamma(a + b) / (gamma(a) * gamma(b))
            return norm * x ** (a - 1.0) * (1.0 - x) ** (b - 1.0)
        raise ValueError(f"unknown density kind {self.kind!r}")

    def pdf_vec(self, xs: np.ndarray) -> np.ndarray:
        return np.asarray([self.pdf(float(x)) for x in xs], dtype=float)


def density_mu0() -> DensityFn:
    return DensityFn(
        kind="v_mu0",
        support=(0.0, V_SUPPORT_HI),
        atoms=(),
        edge_exponents=(Fraction(-2, 3), Fraction(1, 2)),
    )


def density_mp(t) -> DensityFn:
    t = Fraction(t)
    if t <= 0:
        raise ValueError("Marchenko-Pastur parameter must be > 0")
    tf = float(t)
    rt = math.sqrt(tf)
    atoms = ((0.0, 1.0 - tf),) if t < 1 else ()
    e_lo = Fraction(-1, 2) if t == 1 else Fraction(1, 2)
    return DensityFn(
        kind="mp",
        support=((1.0 - rt) ** 2, (1.0 + rt) ** 2),
        atoms=atoms,
        edge_exponents=(e_lo, Fraction(1, 2)),
        params=(t,),
    )


def density_mu1() -> DensityFn:
    return DensityFn(
        kind="mu1",
        support=(3.0 - _SQRT8, 3.0 + _SQRT8),
        atoms=((0.0, 0.5),),
        edge_exponents=(Fraction(1, 2), Fraction(1, 2)),
    )


def density_mu2() -> DensityFn:
    return DensityFn(
        kind="mu2",
        support=(0.0, 4.0),
        atoms=((0.0, 0.5),),
        edge_exponents=(Fraction(-1, 2), Fraction(1, 2)),
    )


def density_arcsine() -> DensityFn:
    return DensityFn(
        kind="arcsine",
        support=(0.0, 4.0),
        atoms=(),
        edge_exponents=(Fraction(-1, 2), Fraction(-1, 2)),
    )


def density_beta(alpha, beta) -> DensityFn:
    alpha, beta = Fraction(alpha), Fraction(beta)
    if alpha <= 0 or beta <= 0:
        raise ValueError("Beta parameters must be > 0")
    return DensityFn(
        kind="beta",
        support=(0.0, 1.0),
        atoms=(),
        edge_exponents=(alpha - 1, beta - 1),
        params=(alpha, beta),
    )


def density_of(spec: MeasureSpec) -> DensityFn:
    """DensityFn for a measure spec that has a catalog density."""
    if isinstance(spec, Named):
        table = {
            "mu0": density_mu0,
            "mu1": density_mu1,
            "mu2": density_mu2,
            "arcsine": density_arcsine,
        }
        if spec.name in table:
            return table[spec.name]()
        raise ValueError(f"measure {spec.name!r} has no absolutely continuous density")
    if isinstance(spec, MarchenkoPastur):
        return density_mp(spec.t)
    if isinstance(spec, Beta):
        return density_beta(spec.alpha, spec.beta)
    raise ValueError(f"no density representation for {spec!r}")


# ---------------------------------------------------------------------------
# quadrature in substituted coordinates
# ---------------------------------------------------------------------------


def _trig_data(f: DensityFn) -> tuple[float, float, float]:
    """(center, radius, scale) for bulk = scale * sqrt(r^2-(x-c)^2)/(2 pi x)."""
    if f.kind == "mp":
        t = float(f.params[0])
        return 1.0 + t, 2.0 * math.sqrt(t), 1.0
    if f.kind == "mu1":
        return 3.0, _SQRT8, 0.5
    if f.kind == "mu2":
        return 2.0, 2.0, 0.5
    raise ValueError(f"{f.kind!r} is not a semicircle-over-x density")


def _trig_moment_integrand(f: DensityFn, n: int):
    c, r, scale = _trig_data(f)
    base = scale * r * r / (2.0 * math.pi)
    hard_edge = abs(c - r) < 1e-14

    def integrand(theta: np.ndarray) -> np.ndarray:
        s = np.sin(theta)
        x = c + r * s
        cos2 = np.cos(theta) ** 2
        if n == 0:
            if hard_edge:
                # cos^2(theta) / (1 + sin(theta)) == 1 - sin(theta), exactly
                return base * (1.0 - s) / c
            return base * cos2 / x
        return base * cos2 * x ** (n - 1)

    return integrand


def _arcsine_moment_integrand(n: int):
    def integrand(theta: np.ndarray) -> np.ndarray:
        x = 2.0 + 2.0 * np.sin(theta)
        return x**n / math.pi

    return integrand


def _v_moment_integrand(n: int):
    def integrand(u: np.ndarray) -> np.ndarray:
        x = u**3
        return 3.0 * u * u * x**n * _v_bulk(x)

    return integrand


def _beta_piece_integrands(f: DensityFn, n: int):
    """Two substituted pieces of the Beta moment integral, split at x = 1/2."""
    alpha, beta = f.params
    a, b = float(alpha), float(beta)
    norm = gamma(a + b) / (gamma(a) * gamma(b))
    qa, qb = alpha.denominator, beta.denominator
    pa, pb = alpha.numerator, beta.numerator

    def left(s: np.ndarray) -> np.ndarray:
        # x = s^qa; x^(alpha-1) dx = qa s^(pa-1) ds, an integer power
        x = s**qa
        return norm * qa * s ** (pa - 1 + qa * n) * (1.0 - x) ** (b - 1.0)

    def right(v: np.ndarray) -> np.ndarray:
        # 1-x = v^qb; (1-x)^(beta-1) dx = qb v^(pb-1) dv
        x = 1.0 - v**qb
        return norm * qb * v ** (pb - 1) * x ** (a - 1.0 + n)

    s_hi = 0.5 ** (1.0 / qa)
    v_hi = 0.5 ** (1.0 / qb)
    return (left, np.linspace(0.0, s_hi, 5)), (right, np.linspace(0.0, v_hi, 5))


_THETA_BREAKS = np.linspace(-math.pi / 2.0, math.pi / 2.0, 9)


def _bulk_moment(f: DensityFn, n: int, rel_tol: float, abs_tol: float) -> float:
    if f.kind == "v_mu0":
        breaks = graded_breakpoints(0.0, _U1, toward_hi=True)
        return adaptive_panels(_v_moment_integrand(n), breaks, rel_tol, abs_tol)
    if f.kind in ("mp", "mu1", "mu2"):
        return adaptive_panels(_trig_moment_integrand(f, n), _THETA_BREAKS, rel_tol, abs_tol)
    if f.kind == "arcsine":
        return adaptive_panels(_arcsine_moment_integrand(n), _THETA_BREAKS, rel_tol, abs_tol)
    if f.kind == "beta":
        (left, lbreaks), (right, rbreaks) = _beta_piece_integrands(f, n)
        return adaptive_panels(left, lbreaks, rel_tol, abs_tol) + adaptive_panels(
            right, rbreaks, rel_tol, abs_tol
        )
    raise ValueError(f"unknown density kind {f.kind!r}")


def quad_moment(f: DensityFn, n: int, rel_tol: float = 1e-12, abs_tol: float = 1e-13) -> float:
    """n-th moment of the density: atom contributions plus the bulk integral."""
    if n < 0:
        raise ValueError("moment index must be >= 0")
    atom_part = math.fsum(mass * loc**n for loc, mass in f.atoms)
    return atom_part + _bulk_moment(f, n, rel_tol, abs_tol)


# ---------------------------------------------------------------------------
# CDF evaluation
# ---------------------------------------------------------------------------

_PREFIX_POINTS = 24


def _prefix_from_panels(integrand, base_cuts: np.ndarray, targets: np.ndarray) -> np.ndarray:
    """Cumulative integral from base_cuts[0] to each target.

    Targets must lie within [base_cuts[0], base_cuts[-1]]; they are merged
    into the panel layout so every panel stays smooth.
    """
    cuts = np.union1d(np.asarray(base_cuts, dtype=float), targets)
    nodes, weights = np.polynomial.legendre.leggauss(_PREFIX_POINTS)
    lo, hi = cuts[:-1], cuts[1:]
    half = 0.5 * (hi - lo)
    mid = 0.5 * (hi + lo)
    xs = (mid[:, None] + half[:, None] * nodes[None, :]).ravel()
    vals = np.asarray(integrand(xs), dtype=float).reshape(len(lo), _PREFIX_POINTS)
    panel = (vals @ weights) * half
    cumulative = np.concatenate([[0.0], np.cumsum(panel)])
    idx = np.searchsorted(cuts, targets)
    return cumulative[idx]


def _bulk_cdf_values(f: DensityFn, xs_sorted: np.ndarray) -> np.ndarray:
    lo, hi = f.support
    if f.kind == "v_mu0":
        u = np.cbrt(np.clip(xs_sorted, 0.0, hi))
        base = np.asarray(graded_breakpoints(0.0, _U1, toward_hi=True))
        return _prefix_from_panels(_v_moment_integrand(0), base, u)
    if f.kind in ("mp", "mu1", "mu2", "arcsine"):
        c, r = (2.0, 2.0) if f.kind == "arcsine" else _trig_data(f)[:2]
        integrand = (
            _arcsine_moment_integrand(0)
            if f.kind == "arcsine"
            else _trig_moment_integrand(f, 0)
        )
        theta = np.arcsin(np.clip((xs_sorted - c) / r, -1.0, 1.0))
        base = np.linspace(-math.pi / 2.0, math.pi / 2.0, 17)
        return _prefix_from_panels(integrand, base, theta)
    if f.kind == "beta":
        (left, lbreaks), (right, rbreaks) = _beta_piece_integrands(f, 0)
        left_mass = adaptive_panels(left, lbreaks)
        out = np.empty_like(xs_sorted)
        qa = f.params[0].denominator
        qb = f.params[1].denominator
        for i, x in enumerate(xs_sorted):
            if x <= 0.0:
                out[i] = 0.0
            elif x <= 0.5:
                out[i] = adaptive_panels(left, np.linspace(0.0, x ** (1.0 / qa), 5))
            elif x >= 1.0:
                out[i] = left_mass + adaptive_panels(right, rbreaks)
            else:
                v_x = (1.0 - x) ** (1.0 / qb)
                v_hi = 0.5 ** (1.0 / qb)
                out[i] = left_mass + adaptive_panels(right, np.linspace(v_x, v_hi, 5))
        return out
    raise ValueError(f"unknown density kind {f.kind!r}")


def cdf_values(f: DensityFn, xs) -> np.ndarray:
    """CDF (atoms at-or-below plus bulk integral) at each query point."""
    xs = np.atleast_1d(np.asarray(xs, dtype=float))
    order = np.argsort(xs, kind="stable")
    bulk_sorted = _bulk_cdf_values(f, xs[order])
    bulk = np.empty_like(bulk_sorted)
    bulk[order] = bulk_sorted
    atom = np.zeros_like(bulk)
    for loc, mass in f.atoms:
        atom += np.where(xs >= loc, mass, 0.0)
    return bulk + atom


def cdf(f: DensityFn, x: float) -> float:
    """CDF at a single point; monotone, and cdf(hi) = 1 up to quadrature error."""
    return float(cdf_values(f, [x])[0])


# ---------------------------------------------------------------------------
# Mellin-convolution density, computed directly from the two Beta factors
# ---------------------------------------------------------------------------


def mellin_density_numeric(x: float, rel_tol: float = 1e-10, abs_tol: float = 1e-12) -> float:
    """Density at x of the scaled product Beta(1/3,1/6) * Beta(2/3,4/3) * 27/4.

    Evaluates the product-density integral
        integral over y in (x/c, 1) of f1(y) f2(x/(c y)) / (c y) dy,  c = 27/4,
    with power substitutions at both endpoints: y = a + s^3 kills the
    (y-a)^(1/3) zero at the lower limit (and the factor (1-w)^(1/3) = s/y^(1/3)
    is folded in analytically), and 1-y = v^6 turns the (1-y)^(-5/6) blow-up
    at the upper limit into a bounded analytic integrand.
    """
    c = V_SUPPORT_HI
    if x <= 0.0 or x >= c:
        raise OutOfSupport(f"product density support is (0, 27/4), got {x}")
    a = x / c
    norm1 = gamma(0.5) / (gamma(1.0 / 3.0) * gamma(1.0 / 6.0))
    norm2 = gamma(2.0) / (gamma(2.0 / 3.0) * gamma(4.0 / 3.0))
    mid = 0.5 * (a + 1.0)

    def left(s: np.ndarray) -> np.ndarray:
        y = a + s**3
        w = a / y
        f1 = norm1 * y ** (-2.0 / 3.0) * (1.0 - y) ** (-5.0 / 6.0)
        # f2(w) = norm2 w^(-1/3) (1-w)^(1/3) with (1-w)^(1/3) = s / y^(1/3)
        f2_over_s = norm2 * w ** (-1.0 / 3.0) / np.cbrt(y)
        return 3.0 * s**3 * f1 * f2_over_s / (c * y)

    def right(v: np.ndarray) -> np.ndarray:
        y = 1.0 - v**6
        w = a / y
        # (1-y)^(-5/6) dy = -6 v^5 dv cancels to an analytic factor of 6
        f1_reduced = norm1 * y ** (-2.0 / 3.0)
        f2 = norm2 * w ** (-1.0 / 3.0) * (1.0 - w) ** (1.0 / 3.0)
        return 6.0 * f1_reduced * f2 / (c * y)

    s_hi = (mid - a) ** (1.0 / 3.0)
    v_hi = (1.0 - mid) ** (1.0 / 6.0)
    return adaptive_panels(left, np.linspace(0.0, s_hi, 5), rel_tol, abs_tol) + adaptive_panels(
        right, np.linspace(0.0, v_hi, 5), rel_tol, abs_tol
    )


# ---------------------------------------------------------------------------
# sampling grids for CSV output
# ---------------------------------------------------------------------------


def density_grid(f: DensityFn, points: int) -> tuple[np.ndarray, np.ndarray]:
    """Midpoint grid over the bulk support with density values.

    Midpoints keep the grid clear of endpoint divergences.
    """
    if points < 1:
        raise ValueError("grid needs at least one point")
    lo, hi = f.support
    xs = lo + (hi - lo) * (np.arange(points) + 0.5) / points
    return xs, f.pdf_vec(xs)
