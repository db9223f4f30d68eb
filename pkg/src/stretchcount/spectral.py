"""Rectangle eigenvalue optimization through lattice counting.

The Dirichlet eigenvalues of the rectangle with sides pi/s and pi*s are the
double sequence (js)^2 + (k/s)^2 over positive integer pairs, listed with
multiplicity; the Neumann sequence runs over nonnegative pairs (so the first
eigenvalue is identically 0).  Counting eigenvalues below E is exactly the
lattice count at radius sqrt(E), which makes extremal eigenvalues dual to
extremal counts:

    min over s of the n-th Dirichlet eigenvalue = rn^2,
        rn = inf { r : max over s of the open count at r >= n },

and the mirrored statement ties the max of the n-th Neumann eigenvalue to the
minimal closed count.  Point evaluation locates the n-th level by bisecting E
against the integer counting function and finishing with an exact enumeration
pass in the located window.

The harmonic-oscillator levels s(j - 1/2) + (k - 1/2)/s reduce to the same
machinery on the half-shifted lattice with linear membership.
"""

from __future__ import annotations

import math
from dataclasses import dataclass

from ._backend import kernels
from .counting import floor_snapped
from .sweep import StretchResult, maximize_from_bounds, maximize_count, minimize_count_nonneg

__all__ = [
    "EigenResult",
    "dirichlet_eigenvalue",
    "neumann_eigenvalue",
    "oscillator_eigenvalue",
    "minimize_dirichlet",
    "maximize_neumann",
    "minimize_oscillator",
]

SNAP = 1e-9


@dataclass(frozen=True)
class EigenResult:
    n: int
    value: float
    s_set: tuple[tuple[float, float], ...]
    problem: str  # dirichlet_min | neumann_max | oscillator_min
    sup_s: float
    degenerate: bool = False


# ---------------------------------------------------------------------------
# point evaluation: n-th level of the double sequence at fixed s

def _dirichlet_counter(s: float):
    t = max(s, 1.0 / s)  # axis swap symmetry; fewer columns

    def counter(e: float) -> int:
        if e <= 0.0:
            return 0
        return kernels.count_columns(2.0, math.sqrt(e), t)

    return counter


def _neumann_counter(s: float):
    interior = _dirichlet_counter(s)

    def counter(e: float) -> int:
        if e < 0.0:
            return 0
        if e == 0.0:
            return 1
        r = math.sqrt(e)
        return interior(e) + floor_snapped(r / s) + floor_snapped(r * s) + 1

    return counter


def _oscillator_counter(s: float):
    def counter(e: float) -> int:
        if e <= 0.0:
            return 0
        return kernels.count_columns_shifted(e, s, 0.5)

    return counter


def _dirichlet_levels(s, lo, hi):
    out = []
    jmax = int(math.sqrt(max(hi, 0.0)) / s) + 1
    for j in range(1, jmax + 1):
        base = (j * s) ** 2
        if base > hi:
            break
        kmin = max(1, math.ceil(s * math.sqrt(max(lo - base, 0.0))) - 1)
        kmax = math.floor(s * math.sqrt(max(hi - base, 0.0))) + 1
        for k in range(kmin, kmax + 1):
            lev = base + (k / s) ** 2
            if lo <= lev <= hi:
                out.append(lev)
    return out


def _neumann_levels(s, lo, hi):
    out = _dirichlet_levels(s, lo, hi)
    if lo <= 0.0 <= hi:
        out.append(0.0)
    for j in range(1, int(math.sqrt(max(hi, 0.0)) / s) + 2):
        lev = (j * s) ** 2
        if lo <= lev <= hi:
            out.append(lev)
    for k in range(1, int(math.sqrt(max(hi, 0.0)) * s) + 2):
        lev = (k / s) ** 2
        if lo <= lev <= hi:
            out.append(lev)
    return out


def _oscillator_levels(s, lo, hi):
    out = []
    jmax = int(hi / s + 0.5) + 1
    for j in range(1, jmax + 1):
        base = s * (j - 0.5)
        if base > hi:
            break
        kmin = max(1, math.floor(s * (lo - base) + 0.5) - 1)
        kmax = math.floor(s * (hi - base) + 0.5) + 1
        for k in range(kmin, kmax + 1):
            lev = base + (k - 0.5) / s
            if lo <= lev <= hi:
                out.append(lev)
    return out


def _nth_level(n: int, counter, levels_in, hint: float) -> float:
    """Smallest E with counter(E) >= n, finished by enumerating the levels in
    the located window so the returned value is an exact level."""
    if n < 1:
        raise ValueError("n must be a positive integer")
    hi = max(hint, 1.0)
    for _ in range(200):
        if counter(hi) >= n:
            break
        hi *= 2.0
    else:
        raise RuntimeError("level bracket failed to close")
    lo = 0.0
    for _ in range(240):
        mid = 0.5 * (lo + hi)
        if not (lo < mid < hi):
            break
        if counter(mid) >= n:
            hi = mid
        else:
            lo = mid
    # The snapped counter can flip up to ~snap-width early, so the true level
    # sits in [hi - ulp, hi + O(snap * E)]; enumerate a generous window and
    # take the smallest level not meaningfully below the located jump.
    pad = 64.0 * SNAP * (1.0 + hi)
    cands = levels_in(hi - pad, hi + pad)
    floor_guard = hi - 1e-13 * (1.0 + hi)
    above = [lev for lev in cands if lev >= floor_guard]
    if above:
        return min(above)
    if cands:
        return min(cands, key=lambda lev: abs(lev - hi))
    return hi


def dirichlet_eigenvalue(n: int, s: float) -> float:
    """n-th smallest of {(js)^2 + (k/s)^2 : j, k >= 1}, with multiplicity."""
    if s <= 0:
        raise ValueError("s must be positive")
    hint = 4.0 / math.pi * n * max(s, 1.0 / s) ** 2 + 4.0
    return _nth_level(n, _dirichlet_counter(s), lambda a, b: _dirichlet_levels(s, a, b), hint)


def neumann_eigenvalue(n: int, s: float) -> float:
    """n-th smallest of {(js)^2 + (k/s)^2 : j, k >= 0}; the first is 0."""
    if s <= 0:
        raise ValueError("s must be positive")
    if n == 1:
        return 0.0
    hint = 4.0 / math.pi * n * max(s, 1.0 / s) ** 2 + 4.0
    return _nth_level(n, _neumann_counter(s), lambda a, b: _neumann_levels(s, a, b), hint)


def oscillator_eigenvalue(n: int, s: float) -> float:
    """n-th smallest of {s(j-1/2) + (k-1/2)/s : j, k >= 1}, with multiplicity."""
    if s <= 0:
        raise ValueError("s must be positive")
    hint = math.sqrt(2.0 * n) * max(s, 1.0 / s) + 2.0
    return _nth_level(n, _oscillator_counter(s), lambda a, b: _oscillator_levels(s, a, b), hint)


# ---------------------------------------------------------------------------
# optimization over the stretch factor (duality with extremal counts)

def _bisect_radius(pred_true_above, lo, hi, rel=1e-13, iters=200):
    """Boundary of a monotone predicate: pred False at lo, True at hi."""
    for _ in range(iters):
        if hi - lo <= rel * hi:
            break
        mid = 0.5 * (lo + hi)
        if not (lo < mid < hi):
            break
        if pred_true_above(mid):
            hi = mid
        else:
            lo = mid
    return lo, hi


def _representatives(res: StretchResult):
    return [0.5 * (a + b) for a, b in res.intervals]


def _sweep_at_value(sweeper, accept, radius: float, step: float,
                    fallback: StretchResult) -> StretchResult:
    """Re-derive the optimal s-set at a radius pinned to the polished level,
    so the reported intervals contain the true optimizers (the bisected
    radius alone can sit a snap-width off the jump).  `step` nudges the
    radius toward the accepting side on retry."""
    r2 = radius
    for _ in range(6):
        res = sweeper(r2)
        if accept(res):
            return res
        r2 *= step
    return fallback


def minimize_dirichlet(n: int) -> EigenResult:
    """min over s of the n-th Dirichlet level, with the optimizing s-set.

    Dual search: the minimal level is rn^2 at the smallest radius rn whose
    maximal open count reaches n; the optimal set is the maximizer's interval
    union there, and the value is polished to an exact level by point
    evaluation at interval representatives.
    """
    if n < 1:
        raise ValueError("n must be a positive integer")
    lam1 = dirichlet_eigenvalue(n, 1.0)
    hi = math.sqrt(lam1) * (1.0 + 1e-12) + 1e-12
    lo = 0.5 * math.sqrt(4.0 / math.pi * n)
    pred = lambda r: maximize_count(2.0, r).extremal_count >= n
    while lo >= hi or pred(lo):
        lo *= 0.5
        if lo < 1e-12:
            break
    lo, hi = _bisect_radius(pred, lo, hi)
    res = maximize_count(2.0, hi)
    value = min((dirichlet_eigenvalue(n, sm) for sm in _representatives(res)),
                default=hi * hi)
    res = _sweep_at_value(lambda r: maximize_count(2.0, r),
                          lambda sr: sr.extremal_count >= n,
                          math.sqrt(value) * (1.0 + 1e-13), 1.0 + 1e-12, res)
    return EigenResult(n=n, value=value, s_set=res.intervals,
                       problem="dirichlet_min", sup_s=res.sup_s)


def maximize_neumann(n: int) -> EigenResult:
    """max over s of the n-th Neumann level; n = 1 is degenerate (the level
    is 0 for every s)."""
    if n < 1:
        raise ValueError("n must be a positive integer")
    if n == 1:
        return EigenResult(n=1, value=0.0, s_set=((0.0, math.inf),),
                           problem="neumann_max", sup_s=math.inf, degenerate=True)
    mu1 = neumann_eigenvalue(n, 1.0)
    hi = math.sqrt(mu1) * 2.0 + 2.0
    lo = min(0.25, 0.25 * math.sqrt(mu1))
    # predicate: some s keeps the closed count at or below n-1, i.e. the n-th
    # level still exceeds r^2 for some stretch; true below the dual radius
    pred_low = lambda r: minimize_count_nonneg(2.0, r).extremal_count <= n - 1
    while not pred_low(lo):
        lo *= 0.5
        if lo < 1e-12:
            raise RuntimeError("failed to bracket the dual radius from below")
    while pred_low(hi):
        hi *= 2.0
    lo, hi = _bisect_radius(lambda r: not pred_low(r), lo, hi)
    res = minimize_count_nonneg(2.0, lo)
    value = max((neumann_eigenvalue(n, sm) for sm in _representatives(res)),
                default=lo * lo)
    res = _sweep_at_value(lambda r: minimize_count_nonneg(2.0, r),
                          lambda sr: sr.extremal_count <= n - 1,
                          math.sqrt(value) * (1.0 - 1e-13), 1.0 - 1e-12, res)
    return EigenResult(n=n, value=value, s_set=res.intervals,
                       problem="neumann_max", sup_s=res.sup_s)


def _maximize_oscillator_count(e: float) -> StretchResult:
    j, k, lo, hi = kernels.stretch_events_shifted(e, 0.5)
    return maximize_from_bounds(e, lo, hi)


def minimize_oscillator(n: int) -> EigenResult:
    """min over s of the n-th oscillator level, via the shifted-lattice sweep."""
    if n < 1:
        raise ValueError("n must be a positive integer")
    e1 = oscillator_eigenvalue(n, 1.0)
    hi = e1 * (1.0 + 1e-12) + 1e-12
    lo = 0.25 * hi
    pred = lambda e: _maximize_oscillator_count(e).extremal_count >= n
    while lo >= hi or pred(lo):
        lo *= 0.5
        if lo < 1e-12:
            break
    lo, hi = _bisect_radius(pred, lo, hi)
    res = _maximize_oscillator_count(hi)
    value = min((oscillator_eigenvalue(n, sm) for sm in _representatives(res)),
                default=hi)
    res = _sweep_at_value(_maximize_oscillator_count,
                          lambda sr: sr.extremal_count >= n,
                          value * (1.0 + 1e-13), 1.0 + 1e-12, res)
    return EigenResult(n=n, value=value, s_set=res.intervals,
                       problem="oscillator_min", sup_s=res.sup_s)
