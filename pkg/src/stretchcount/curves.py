"""Concave decreasing curves in the first quadrant.

A curve is the graph y = f(x) between the intercepts (0, M) and (L, 0), with
f strictly decreasing and concave, together with its inverse x = g(y), the
first two one-sided derivatives of both, a piecewise-C^2 partition for each
(second derivative monotone on every subinterval), and a distinguished corner
point (alpha, beta) on the curve that splits the boundary for the remainder
estimates.

The built-in family is the unit ball boundary of the l^p norm:

    f(x) = (1 - x^p)^(1/p),   1 < p < infinity,

plus the degenerate ends of the family: the diamond (p = 1, a line segment)
and the square (p = infinity).  Derivative evaluators are defined on the open
interval only; the family's curvature blows up or vanishes at the endpoints,
so endpoint queries raise CurveDomainError rather than returning junk.
"""

from __future__ import annotations

import json
import math
from dataclasses import dataclass, field
from typing import Callable

from scipy.integrate import quad

__all__ = [
    "Curve",
    "CurveDomainError",
    "QuadratureError",
    "pcircle",
    "diamond",
    "curve_for_exponent",
    "quadrant_area",
    "from_spec",
    "load_spec",
]


class CurveDomainError(ValueError):
    """Evaluator queried outside the open interval it is defined on."""


class QuadratureError(RuntimeError):
    """Adaptive quadrature did not reach the requested tolerance."""


@dataclass(frozen=True)
class Curve:
    """Immutable curve record; safe to share across threads/processes.

    partition_f is the increasing list 0 = a_0 < a_1 < ... < a_l with a_l equal
    to the corner abscissa; the second derivative is monotone and negative on
    each open subinterval.  partition_g mirrors it for the inverse.
    """

    L: float
    M: float
    f: Callable[[float], float]
    fp: Callable[[float], float]
    fpp: Callable[[float], float]
    g: Callable[[float], float]
    gp: Callable[[float], float]
    gpp: Callable[[float], float]
    partition_f: tuple[float, ...]
    partition_g: tuple[float, ...]
    corner: tuple[float, float]
    pnorm: float | None = None  # set for the l^p family; enables fast paths
    label: str = "curve"
    _area: float | None = field(default=None, repr=False)

    def __post_init__(self):
        if not (self.L > 0 and self.M > 0):
            raise ValueError("intercepts must be positive")
        for name, part, last in (
            ("partition_f", self.partition_f, self.corner[0]),
            ("partition_g", self.partition_g, self.corner[1]),
        ):
            if len(part) < 2 or part[0] != 0.0:
                raise ValueError(f"{name} must start at 0")
            if any(b <= a for a, b in zip(part, part[1:])):
                raise ValueError(f"{name} must be strictly increasing")
            if not math.isclose(part[-1], last, rel_tol=1e-9, abs_tol=1e-12):
                raise ValueError(f"{name} must end at the corner coordinate")


def _open_interval(x: float, hi: float, what: str) -> None:
    if not (0.0 < x < hi):
        raise CurveDomainError(f"{what} defined on the open interval (0, {hi}); got {x}")


def pcircle(p: float) -> Curve:
    """Quarter boundary of the unit l^p ball, 1 < p <= infinity.

    The corner is the symmetry point (2^(-1/p), 2^(-1/p)).  The partition of
    (0, alpha] gets one interior point when the curvature has an inflection
    there (1 < p < 2), located by bisection to 1e-12; otherwise the second
    derivative is monotone on all of (0, alpha].  By symmetry g = f.

    Raises ValueError for finite p <= 1 (the diamond has its own constructor)
    and for NaN.
    """
    if math.isnan(p):
        raise ValueError("p must be a real number > 1 or math.inf")
    if p == math.inf:
        return _square()
    if not p > 1.0:
        raise ValueError(f"finite p must exceed 1, got {p}; use diamond() for p=1")

    invp = 1.0 / p

    def f(x: float) -> float:
        _open_interval(x, 1.0, "f")
        return (1.0 - x**p) ** invp

    def fp(x: float) -> float:
        _open_interval(x, 1.0, "f'")
        return -(x ** (p - 1.0)) * (1.0 - x**p) ** (invp - 1.0)

    def fpp(x: float) -> float:
        _open_interval(x, 1.0, "f''")
        return -(p - 1.0) * x ** (p - 2.0) * (1.0 - x**p) ** (invp - 2.0)

    alpha = 2.0 ** (-invp)
    partition = _pcircle_partition(p, alpha)
    return Curve(
        L=1.0,
        M=1.0,
        f=f,
        fp=fp,
        fpp=fpp,
        g=f,
        gp=fp,
        gpp=fpp,
        partition_f=partition,
        partition_g=partition,
        corner=(alpha, alpha),
        pnorm=float(p),
        label=f"pcircle({p:g})",
        _area=_pcircle_area(p),
    )


def _pcircle_partition(p: float, alpha: float) -> tuple[float, ...]:
    # Curvature inflection: the third derivative changes sign exactly where
    # (1+p) x^p + p - 2 does, at most once in (0, 1); present only for p < 2.
    if p >= 2.0:
        return (0.0, alpha)

    def sign_factor(x: float) -> float:
        return (1.0 + p) * x**p + p - 2.0

    lo, hi = 1e-300, alpha
    if sign_factor(hi) <= 0.0:  # inflection beyond the corner; single piece
        return (0.0, alpha)
    while hi - lo > 1e-12:
        mid = 0.5 * (lo + hi)
        if sign_factor(mid) <= 0.0:
            lo = mid
        else:
            hi = mid
    return (0.0, 0.5 * (lo + hi), alpha)


def _pcircle_area(p: float) -> float | None:
    if p == 1.0:
        return 0.5
    if p == 2.0:
        return math.pi / 4.0
    if p == math.inf:
        return 1.0
    return None


def diamond() -> Curve:
    """The p=1 end of the family: the segment x + y = 1, a right triangle
    with the axes.  Linear, so the curvature is identically zero and the
    remainder estimates do not apply; counting and sweeps use closed forms."""

    def f(x: float) -> float:
        _open_interval(x, 1.0, "f")
        return 1.0 - x

    def fp(x: float) -> float:
        _open_interval(x, 1.0, "f'")
        return -1.0

    def fpp(x: float) -> float:
        _open_interval(x, 1.0, "f''")
        return 0.0

    return Curve(
        L=1.0,
        M=1.0,
        f=f,
        fp=fp,
        fpp=fpp,
        g=f,
        gp=fp,
        gpp=fpp,
        partition_f=(0.0, 0.5),
        partition_g=(0.0, 0.5),
        corner=(0.5, 0.5),
        pnorm=1.0,
        label="diamond",
        _area=0.5,
    )


def _square() -> Curve:
    # p = infinity: unit square boundary.  Not strictly decreasing, so the
    # generic Curve invariants do not apply; counting handles this family
    # through the floor-product closed form.
    def f(x: float) -> float:
        _open_interval(x, 1.0, "f")
        return 1.0

    def zero(x: float) -> float:
        _open_interval(x, 1.0, "derivative")
        return 0.0

    return Curve(
        L=1.0,
        M=1.0,
        f=f,
        fp=zero,
        fpp=zero,
        g=f,
        gp=zero,
        gpp=zero,
        partition_f=(0.0, 1.0),
        partition_g=(0.0, 1.0),
        corner=(1.0, 1.0),
        pnorm=math.inf,
        label="square",
        _area=1.0,
    )


def curve_for_exponent(p: float) -> Curve:
    """Map an exponent to its curve: 1 -> diamond, (1, inf) -> pcircle, inf -> square."""
    if p == 1.0:
        return diamond()
    return pcircle(p)


def quadrant_area(curve: Curve, rel_tol: float = 1e-10) -> float:
    """Area enclosed by the curve and the two axes.

    Exact constants for the p in {1, 2, inf} members; adaptive quadrature of
    the profile to `rel_tol` otherwise.  Raises QuadratureError with the
    achieved error estimate when the quadrature cannot certify the tolerance.
    """
    if curve._area is not None:
        return curve._area
    value, abserr = quad(curve.f, 0.0, curve.L, epsabs=0.0, epsrel=rel_tol / 4, limit=200)
    if abserr > rel_tol * abs(value):
        raise QuadratureError(
            f"area quadrature reached {abserr:.3e} absolute error on value {value!r}, "
            f"above the requested {rel_tol:.1e} relative tolerance"
        )
    return value


# ---------------------------------------------------------------------------
# Curve specification files (JSON)

def from_spec(spec: dict) -> Curve:
    """Build a curve from a parsed JSON specification.

    Two kinds (schema documented in the README):
      {"kind": "pcircle", "p": 2.0}            p > 1 or the string "inf"
      {"kind": "diamond"}
      {"kind": "custom", ...}                  sampled tables; see below

    Custom curves supply explicit derivative tables (no automatic
    differentiation): strictly increasing "x" with "f", "fp", "fpp" sampled
    there, the partition points, and optionally the mirrored "y"/"g"/... side
    ("symmetric": true reuses the f side when L == M).  Evaluators are
    monotone piecewise-cubic interpolants of the tables.
    """
    kind = spec.get("kind")
    if kind == "pcircle":
        p = spec["p"]
        return pcircle(math.inf if p in ("inf", "Infinity") else float(p))
    if kind == "diamond":
        return diamond()
    if kind == "custom":
        return _custom_from_tables(spec)
    raise ValueError(f"unknown curve kind: {kind!r}")


def load_spec(path) -> Curve:
    with open(path, "r", encoding="utf-8") as fh:
        return from_spec(json.load(fh))


def _interp_side(xs, ys, hi, what):
    from scipy.interpolate import PchipInterpolator

    interp = PchipInterpolator(xs, ys, extrapolate=False)

    def ev(x: float) -> float:
        _open_interval(x, hi, what)
        return float(interp(x))

    return ev


def _custom_from_tables(spec: dict) -> Curve:
    L = float(spec["L"])
    M = float(spec["M"])
    xs = spec["x"]
    f = _interp_side(xs, spec["f"], L, "f")
    fp = _interp_side(xs, spec["fp"], L, "f'")
    fpp = _interp_side(xs, spec["fpp"], L, "f''")
    if spec.get("symmetric"):
        if L != M:
            raise ValueError("symmetric custom curve needs equal intercepts")
        g, gp, gpp = f, fp, fpp
    else:
        ys = spec["y"]
        g = _interp_side(ys, spec["g"], M, "g")
        gp = _interp_side(ys, spec["gp"], M, "g'")
        gpp = _interp_side(ys, spec["gpp"], M, "g''")
    if "corner" in spec:
        corner = (float(spec["corner"][0]), float(spec["corner"][1]))
    else:
        corner = (L / 2.0, f(L / 2.0))  # midpoint-parameter default
    part_f = tuple(float(v) for v in spec.get("partition_f", (0.0, corner[0])))
    part_g = tuple(float(v) for v in spec.get("partition_g", (0.0, corner[1])))
    return Curve(
        L=L,
        M=M,
        f=f,
        fp=fp,
        fpp=fpp,
        g=g,
        gp=gp,
        gpp=gpp,
        partition_f=part_f,
        partition_g=part_g,
        corner=corner,
        pnorm=None,
        label=spec.get("label", "custom"),
    )
