"""Explicit counting bounds and their audit reports.

Every operation returns a BoundReport pairing the evaluated bound with the
exact count it dominates, so sweeps can log slack rather than just pass/fail.
The remainder estimates follow the classical two-term shape

    | N(r,s) - r^2 Area + r (L/s + s M)/2 |  <=  curvature terms,

with the curvature terms assembled from thirds-power integrals of f'' and g'',
endpoint maxima of 1/sqrt|f''|, and boundary-slope terms; sums of the sawtooth
psi(x) = x - floor(x) - 1/2 along the curve are controlled by the van der
Corput estimate

    |sum_{a<n<=b} psi(h(n))|  <=  6 int_a^b |h''|^(1/3) + 175 max 1/sqrt|h''| + 1

for C^2 functions h with monotone nonzero second derivative.

Hypothesis checking is by sampling, not proof: curvature sign, monotonicity,
and non-vanishing at the closed endpoint are tested on a geometric ladder plus
a uniform grid, and a violating sample aborts with the witness point.
"""

from __future__ import annotations

import math
from dataclasses import dataclass
from typing import Callable

import numpy as np
from scipy.integrate import quad

from .counting import CountQuery, count
from .curves import Curve, quadrant_area

__all__ = [
    "BoundReport",
    "GeneralCurveParams",
    "HypothesisError",
    "PreconditionError",
    "sawtooth",
    "sawtooth_antiderivative",
    "sawtooth_sum",
    "vdc_bound",
    "rough_lower_bound",
    "two_term_upper_bound",
    "neumann_lower_bound",
    "remainder_bound_smooth",
    "remainder_bound_general",
    "balanced_deviation_bound",
    "pcircle_params",
]

HOLDS_TOL = 1e-9


class PreconditionError(ValueError):
    """Inputs outside an inequality's stated range of validity."""


class HypothesisError(PreconditionError):
    """A sampled curve hypothesis (sign/monotonicity of f'') failed."""


@dataclass(frozen=True)
class BoundReport:
    """One evaluated inequality: slack = rhs - lhs, holds iff slack is not
    meaningfully negative (tolerance 1e-9 relative to the bound side)."""

    name: str
    lhs: float
    rhs: float
    slack: float
    holds: bool
    inputs: dict

    @staticmethod
    def build(name: str, lhs: float, rhs: float, inputs: dict) -> "BoundReport":
        slack = rhs - lhs
        return BoundReport(
            name=name,
            lhs=lhs,
            rhs=rhs,
            slack=slack,
            holds=bool(slack >= -HOLDS_TOL * (1.0 + abs(rhs))),
            inputs=inputs,
        )


@dataclass(frozen=True)
class GeneralCurveParams:
    """Cutoff functions and decay exponents for the piecewise-C^2 remainder
    bound; the effective rate exponent is e = min(1/6, a1, a2, b1, b2)."""

    delta: Callable[[float], float]
    epsilon: Callable[[float], float]
    a1: float
    a2: float
    b1: float
    b2: float

    @property
    def e(self) -> float:
        return min(1.0 / 6.0, self.a1, self.a2, self.b1, self.b2)


def pcircle_params(p: float) -> GeneralCurveParams:
    """Default cutoffs for the l^p family: delta(r) = epsilon(r) = r^(-1/p),
    all four exponents 1/(2p), hence e = min(1/6, 1/(2p))."""
    if not (1.0 < p < math.inf):
        raise ValueError("finite p > 1 required")
    cut = lambda r: r ** (-1.0 / p)
    a = 1.0 / (2.0 * p)
    return GeneralCurveParams(delta=cut, epsilon=cut, a1=a, a2=a, b1=a, b2=a)


# ---------------------------------------------------------------------------
# sawtooth machinery

def sawtooth(x: float) -> float:
    """psi(x) = x - floor(x) - 1/2, in [-1/2, 1/2)."""
    return x - math.floor(x) - 0.5


def sawtooth_antiderivative(t: float) -> float:
    """Integral of psi from 0 to t; 1-periodic, between -1/8 and 0."""
    frac = t - math.floor(t)
    return 0.5 * frac * (frac - 1.0)


def sawtooth_sum(h: Callable[[float], float], a: float, b: float) -> float:
    """Exact sum of psi(h(n)) over integers a < n <= b."""
    total = 0.0
    for n in range(math.floor(a) + 1, math.floor(b) + 1):
        if n > a:  # floor(a)+1 > a unless a is integral; guard the boundary
            total += sawtooth(h(n))
    return total


def _sample_check_hpp(h_second, a, b, n=100):
    t = np.linspace(a, b, n)
    v = np.array([h_second(x) for x in t])
    if np.any(v == 0.0) or (v.max() > 0.0 and v.min() < 0.0):
        i = int(np.argmin(np.abs(v)))
        raise HypothesisError(
            f"second derivative vanishes or changes sign near t={t[i]!r} "
            f"(sampled value {v[i]!r})")
    d = np.diff(v)
    scale = 1e-12 * (1.0 + np.abs(v).max())
    pos, neg = d > scale, d < -scale
    if pos.any() and neg.any():
        i = int(max(np.argmax(pos), np.argmax(neg)))  # later of the two onsets
        raise HypothesisError(
            f"second derivative is not monotone on [{a}, {b}]; "
            f"direction changes near t={t[i + 1]!r}")
    return v


def vdc_bound(h_second: Callable[[float], float], a: float, b: float) -> float:
    """Right side of the exponential-sum estimate:
    6 int_a^b |h''|^(1/3) + 175 max_[a,b] 1/sqrt|h''| + 1.

    Samples h'' at 100 points to check the monotone-nonzero hypothesis and
    raises HypothesisError with a witness on failure.
    """
    if b < a:
        raise ValueError("need a <= b")
    if b == a:
        return 175.0 / math.sqrt(abs(h_second(a))) + 1.0
    samples = _sample_check_hpp(h_second, a, b)
    integral, _ = quad(lambda t: abs(h_second(t)) ** (1.0 / 3.0), a, b, limit=200)
    max_inv = 1.0 / math.sqrt(np.abs(samples).min())
    return 6.0 * integral + 175.0 * max_inv + 1.0


# ---------------------------------------------------------------------------
# rough and two-term count bounds

def _exact_count(curve: Curve, r: float, s: float, mode: str) -> int:
    return count(CountQuery(curve, r, s, mode))


def rough_lower_bound(curve: Curve, r: float, s: float) -> BoundReport:
    """Open count >= r^2 Area - r (L/s + s M) - 1, all r, s > 0."""
    area = quadrant_area(curve)
    lhs = r * r * area - r * (curve.L / s + s * curve.M) - 1.0
    rhs = float(_exact_count(curve, r, s, "positive"))
    return BoundReport.build("rough_lower_bound", lhs, rhs,
                             {"curve": curve.label, "r": r, "s": s})


def two_term_upper_bound(curve: Curve, r: float, s: float) -> BoundReport:
    """Open count <= r^2 Area - C r s / 2 with C = M - f(L/2), valid for
    r >= s/L (strict decrease makes C > 0)."""
    if r < s / curve.L:
        raise PreconditionError(f"two-term upper bound needs r >= s/L; got r={r}, s/L={s / curve.L}")
    c = curve.M - curve.f(curve.L / 2.0)
    area = quadrant_area(curve)
    lhs = float(_exact_count(curve, r, s, "positive"))
    rhs = r * r * area - 0.5 * c * r * s
    return BoundReport.build("two_term_upper_bound", lhs, rhs,
                             {"curve": curve.label, "r": r, "s": s, "C": c})


def neumann_lower_bound(curve: Curve, r: float, s: float) -> BoundReport:
    """Closed count >= r^2 Area + C r s / 2 with C = M - f(L/4), all r, s > 0."""
    c = curve.M - curve.f(curve.L / 4.0)
    area = quadrant_area(curve)
    lhs = r * r * area + 0.5 * c * r * s
    rhs = float(_exact_count(curve, r, s, "nonnegative"))
    return BoundReport.build("neumann_lower_bound", lhs, rhs,
                             {"curve": curve.label, "r": r, "s": s, "C": c})


# ---------------------------------------------------------------------------
# remainder estimates

_EXCLUSION = 1e-8


def _third_power_integral(fpp, hi):
    """int_0^hi |f''|^(1/3) with an exclusion zone at 0 and a power-law tail
    estimate there (the integrand may have an integrable singularity)."""
    integrand = lambda x: abs(fpp(x)) ** (1.0 / 3.0)
    a = _EXCLUSION
    v1 = integrand(a)
    v2 = integrand(a / 2.0)
    if v1 == 0.0 or v2 == 0.0:
        tail = 0.0
    else:
        q = math.log(v2 / v1) / math.log(0.5)  # local exponent: integrand ~ C x^q
        tail = v1 * a / (q + 1.0) if q > -1.0 else math.inf
    main, _ = quad(integrand, a, hi, limit=200)
    return main + tail


def _grid_max(fun, lo, hi, n=10_000, refine_iters=60):
    """Max of fun on [lo, hi]: dense grid plus golden-section refinement
    around the grid argmax (robust for the monotone-by-pieces use here)."""
    xs = np.linspace(lo, hi, n)
    vals = np.array([fun(x) for x in xs])
    i = int(np.argmax(vals))
    best = float(vals[i])
    a = xs[max(i - 1, 0)]
    b = xs[min(i + 1, n - 1)]
    phi = (math.sqrt(5.0) - 1.0) / 2.0
    x1 = b - phi * (b - a)
    x2 = a + phi * (b - a)
    f1, f2 = fun(x1), fun(x2)
    for _ in range(refine_iters):
        if f1 < f2:
            a, x1, f1 = x1, x2, f2
            x2 = a + phi * (b - a)
            f2 = fun(x2)
        else:
            b, x2, f2 = x2, x1, f1
            x1 = b - phi * (b - a)
            f1 = fun(x1)
    return max(best, f1, f2)


def _check_smooth_side(fpp, hi, side):
    """Sampled version of: f'' < 0, monotone, and bounded away from 0 on the
    closed interval [0, hi] (so 1/sqrt|f''| stays finite at the endpoint)."""
    ladder = hi * 10.0 ** (-np.arange(1.0, 9.0))
    grid = np.linspace(hi / 200.0, hi, 200)
    xs = np.unique(np.concatenate([ladder, grid]))
    v = np.array([fpp(x) for x in xs])
    if np.any(v >= 0.0):
        i = int(np.argmax(v >= 0.0))
        raise HypothesisError(f"{side}'' must be negative; {side}''({xs[i]!r}) = {v[i]!r}")
    d = np.diff(v)
    scale = 1e-12 * (1.0 + np.abs(v).max())
    pos, neg = d > scale, d < -scale
    if pos.any() and neg.any():
        i = int(max(np.argmax(pos), np.argmax(neg)))
        raise HypothesisError(
            f"{side}'' must be monotone on (0, {hi}]; direction change near x={xs[i + 1]!r}")
    inner = np.abs(v[:4])  # innermost ladder points, decreasing x
    if inner[0] < 1e-4 * abs(v[-1]) and np.all(np.diff(inner[::-1]) <= 0.0):
        raise HypothesisError(
            f"{side}'' appears to vanish at the closed endpoint "
            f"(|{side}''({xs[0]!r})| = {inner[0]!r}); use the piecewise bound")


def _count_remainder(curve, r, s):
    area = quadrant_area(curve)
    n = float(_exact_count(curve, r, s, "positive"))
    return abs(n - r * r * area + r * (curve.L / s + s * curve.M) / 2.0)


def remainder_bound_smooth(curve: Curve, r: float, s: float) -> BoundReport:
    """Two-term remainder bound for curves with negative, monotone curvature
    up to the corner on both sides:

        lhs = |N(r,s) - r^2 Area + r(L/s + sM)/2|
        rhs = 6 r^(2/3) (I_f + I_g)
              + 175 sqrt(r) (s^(-3/2) X_f + s^(3/2) X_g)
              + (s^2 |f'(alpha)| + s^(-2) |g'(beta)|)/4 + 3

    with I the thirds-power curvature integrals and X the maxima of
    1/sqrt|curvature| over the corner intervals.
    """
    alpha, beta = curve.corner
    _check_smooth_side(curve.fpp, alpha, "f")
    _check_smooth_side(curve.gpp, beta, "g")
    i_f = _third_power_integral(curve.fpp, alpha)
    i_g = _third_power_integral(curve.gpp, beta)
    x_f = _grid_max(lambda x: 1.0 / math.sqrt(abs(curve.fpp(x))), alpha * 1e-10, alpha)
    x_g = _grid_max(lambda y: 1.0 / math.sqrt(abs(curve.gpp(y))), beta * 1e-10, beta)
    rhs = (6.0 * r ** (2.0 / 3.0) * (i_f + i_g)
           + 175.0 * math.sqrt(r) * (s ** -1.5 * x_f + s ** 1.5 * x_g)
           + 0.25 * (s * s * abs(curve.fp(alpha)) + s ** -2.0 * abs(curve.gp(beta)))
           + 3.0)
    lhs = _count_remainder(curve, r, s)
    return BoundReport.build("remainder_bound_smooth", lhs, rhs,
                             {"curve": curve.label, "r": r, "s": s})


def remainder_bound_general(curve: Curve, r: float, s: float,
                            params: GeneralCurveParams | None = None) -> BoundReport:
    """Piecewise-C^2 remainder bound: curvature may blow up or vanish at the
    intercepts; cutoffs delta(r), epsilon(r) replace the closed-endpoint
    maxima, and each partition point contributes its own terms:

        rhs = 6 r^(2/3) (I_f + I_g)
              + 175 sqrt(r) (s^(-3/2)/sqrt|f''(delta)| + s^(3/2)/sqrt|g''(eps)|)
              + 350 sqrt(r) (sum_i s^(-3/2)/sqrt|f''(a_i)| + sum_j s^(3/2)/sqrt|g''(b_j)|)
              + (sum_i s^2 |f'(a_i)| + sum_j s^(-2) |g'(b_j)|)/4
              + (r/2)(delta/s + s*eps) + l + ell + 1.
    """
    if params is None:
        if curve.pnorm is None or not (1.0 < curve.pnorm < math.inf):
            raise ValueError("params required for curves outside the finite l^p family")
        params = pcircle_params(curve.pnorm)
    alpha, beta = curve.corner
    delta = params.delta(r)
    eps = params.epsilon(r)
    if not (0.0 < delta < alpha):
        raise PreconditionError(f"delta(r) = {delta} must lie in (0, alpha = {alpha})")
    if not (0.0 < eps < beta):
        raise PreconditionError(f"epsilon(r) = {eps} must lie in (0, beta = {beta})")
    pf = curve.partition_f[1:]
    pg = curve.partition_g[1:]
    i_f = _third_power_integral(curve.fpp, alpha)
    i_g = _third_power_integral(curve.gpp, beta)
    cut_f = 1.0 / math.sqrt(abs(curve.fpp(delta)))
    cut_g = 1.0 / math.sqrt(abs(curve.gpp(eps)))
    part_f = sum(1.0 / math.sqrt(abs(curve.fpp(x))) for x in pf)
    part_g = sum(1.0 / math.sqrt(abs(curve.gpp(y))) for y in pg)
    slope_f = sum(abs(curve.fp(x)) for x in pf)
    slope_g = sum(abs(curve.gp(y)) for y in pg)
    rhs = (6.0 * r ** (2.0 / 3.0) * (i_f + i_g)
           + 175.0 * math.sqrt(r) * (s ** -1.5 * cut_f + s ** 1.5 * cut_g)
           + 350.0 * math.sqrt(r) * (s ** -1.5 * part_f + s ** 1.5 * part_g)
           + 0.25 * (s * s * slope_f + s ** -2.0 * slope_g)
           + 0.5 * r * (delta / s + s * eps)
           + len(pf) + len(pg) + 1.0)
    lhs = _count_remainder(curve, r, s)
    return BoundReport.build("remainder_bound_general", lhs, rhs,
                             {"curve": curve.label, "r": r, "s": s,
                              "delta": delta, "epsilon": eps, "e": params.e})


def balanced_deviation_bound(t: float) -> float:
    """For 0 < t < 1: every s with s + 1/s <= 2 + t satisfies |s-1| <= 3 sqrt(t);
    returns that deviation bound."""
    if not (0.0 < t < 1.0):
        raise ValueError("t must lie in (0, 1)")
    return 3.0 * math.sqrt(t)
