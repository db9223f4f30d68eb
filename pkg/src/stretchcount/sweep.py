"""Exact optimal-stretch computation.

Each lattice point (j, k) lies inside the stretched curve for s in one closed
interval [s_enter, s_exit] (possibly a single point); the endpoints are the
only places the count can change.  Sorting all endpoints and scanning with a
counter that increments AT each entry and decrements just AFTER each exit
gives the exact extremum of the count over all s > 0, together with the full
set of optimal stretch factors as intervals.

Conventions
-----------
* Membership intervals are closed, so maximizing sets are closed and reported
  exactly.  Minimizing sets of the closed-quadrant count are generically open
  or half-open at event coordinates (the count is upper semicontinuous);
  `intervals` then stores the closure of each attaining component.
* Optimal intervals separated by less than ~1e-12 (relative) are merged;
  closed-form roots of coincident events can split by a last-ulp rounding.
* Above `stream_threshold` the maximizer switches to a two-pass bucket
  refinement: a streaming pass ranks every event against a log-spaced probe
  grid, then only buckets that can still contain the maximum are materialized.
  Memory stays proportional to the bucket population instead of the full
  Theta(r^2 log r) event list.
"""

from __future__ import annotations

import math
from dataclasses import dataclass

import numpy as np

from ._backend import kernels
from ._ref import _floor_snapped_array
from .counting import floor_snapped

__all__ = [
    "Event",
    "StretchResult",
    "events_p1",
    "events_p",
    "maximize_count",
    "minimize_count_nonneg",
]

MERGE_TOL = 1e-12
EVENT_LIST_CAP = 5_000_000  # guard for the list-of-records API only

_NO_PROBES = np.empty(0, dtype=np.float64)


@dataclass(frozen=True)
class Event:
    """Membership interval of one lattice point in stretch-parameter space."""

    j: int
    k: int
    s_enter: float
    s_exit: float


@dataclass(frozen=True)
class StretchResult:
    """Extremal count at radius r and the optimal set as s-intervals.

    `sup_s` is the right endpoint of the last interval (NaN when no lattice
    point is reachable and `intervals` is empty).
    """

    r: float
    extremal_count: int
    intervals: tuple[tuple[float, float], ...]
    sup_s: float


def _as_event_list(j, k, lo, hi) -> list[Event]:
    if len(j) > EVENT_LIST_CAP:
        raise ValueError(
            f"{len(j)} events; the record API is capped at {EVENT_LIST_CAP}. "
            "Use maximize_count, which streams above its r threshold.")
    return [Event(int(a), int(b), float(c), float(d))
            for a, b, c, d in zip(j, k, lo, hi)]


def events_p1(r: float) -> list[Event]:
    """Events for the triangle family: one per positive lattice point under
    the hyperbola 4jk <= r^2, endpoints (r -+ sqrt(r^2-4jk))/(2j)."""
    if r <= 0:
        raise ValueError("r must be positive")
    return _as_event_list(*kernels.stretch_events_shifted(r, 0.0))


def events_p(p: float, r: float) -> list[Event]:
    """Events for the finite-p family: (j,k) participates iff
    2 (jk)^(p/2) <= r^p; endpoints are the exact roots in t = s^p of the
    membership quadratic j^p t^2 - r^p t + k^p = 0."""
    if not (1.0 < p < math.inf):
        raise ValueError("events_p needs finite p > 1; use events_p1 for the triangle")
    if r <= 0:
        raise ValueError("r must be positive")
    return _as_event_list(*kernels.stretch_events(p, r))


def _merge(intervals):
    merged: list[list[float]] = []
    for lo, hi in intervals:
        if merged and lo - merged[-1][1] <= MERGE_TOL * (1.0 + abs(merged[-1][1])):
            merged[-1][1] = max(merged[-1][1], hi)
        else:
            merged.append([lo, hi])
    return tuple((a, b) for a, b in merged)


def _result(r, m, intervals):
    intervals = _merge(sorted(intervals))
    sup_s = intervals[-1][1] if intervals else math.nan
    return StretchResult(r=r, extremal_count=int(m), intervals=intervals, sup_s=sup_s)


# ---------------------------------------------------------------------------
# maximization (open quadrant)

def maximize_count(p: float, r: float, stream_threshold: float = 1e4) -> StretchResult:
    """Maximum of the positive-quadrant count over all stretch factors s > 0,
    with the full optimal set.

    p = 1 or finite p > 1.  The square family (p = inf) has the floor-product
    closed form in `counting` and is out of scope here.
    """
    if p == math.inf:
        raise ValueError("p=inf maximization reduces to the closed form "
                         "floor(r/s)*floor(r*s); see counting.count")
    if not (p == 1.0 or p > 1.0):
        raise ValueError("p must be 1 or a finite value > 1")
    if r <= 0:
        raise ValueError("r must be positive")
    if r > stream_threshold:
        return _maximize_bucketed(p, r)
    _, _, lo, hi = kernels.stretch_events(p, r)
    return maximize_from_bounds(r, lo, hi)


def maximize_from_bounds(r: float, lo, hi) -> StretchResult:
    """Max-scan over explicit membership intervals [lo_i, hi_i]; used by the
    direct path here and by the shifted-lattice oscillator dual."""
    lo = np.sort(np.asarray(lo, dtype=np.float64))
    hi = np.sort(np.asarray(hi, dtype=np.float64))
    if len(lo) == 0:
        return StretchResult(r=r, extremal_count=0, intervals=(), sup_s=math.nan)
    m, runs = kernels.sweep_intervals(lo, hi, _NO_PROBES, 0, False)
    return _result(r, m, runs)


def _bucket_edges(r: float, n_buckets: int):
    return np.geomspace(1.0 / (2.0 * r), 2.0 * r, n_buckets + 1)


def _maximize_bucketed(p: float, r: float) -> StretchResult:
    # pass 1: rank every event against log-spaced probes, never materializing
    q = r * r / 4.0 if p == 1.0 else r * r / 2.0 ** (2.0 / p)
    est_total = q * (math.log(max(q, 2.0)) + 1.0)
    n_buckets = int(min(max(est_total / 2e6, 64), 65536))
    edges = _bucket_edges(r, n_buckets)
    n_enter_le, n_exit_le = kernels.event_rank_counts(p, r, edges)
    v_after_edge = n_enter_le - n_exit_le  # count just after each edge
    enters_in = np.diff(n_enter_le)
    upper = v_after_edge[:-1] + enters_in  # bound for bucket (e_i, e_{i+1}]
    lower = int(v_after_edge.max())

    results = []  # (m_bucket, runs)
    for i in np.flatnonzero(upper >= lower):
        a, b = edges[i], edges[i + 1]
        _, _, lo, hi, base = kernels.events_in_range(p, r, a, b)
        lo = np.asarray(lo)
        hi = np.asarray(hi)
        enters = np.sort(lo[(lo > a) & (lo <= b)])
        exits = np.sort(hi[(hi > a) & (hi <= b)])
        mb, runs = kernels.sweep_intervals(enters, exits, np.array([a, b]), base, False)
        results.append((int(mb), runs))

    if not results:
        return StretchResult(r=r, extremal_count=0, intervals=(), sup_s=math.nan)
    m = max(mb for mb, _ in results)
    if m == 0:
        return StretchResult(r=r, extremal_count=0, intervals=(), sup_s=math.nan)
    intervals: list[tuple[float, float]] = []
    for mb, runs in results:
        if mb == m:
            intervals.extend(runs)
    return _result(r, m, intervals)


# ---------------------------------------------------------------------------
# minimization (closed quadrant)

def _window(r: float) -> tuple[float, float]:
    # Outside [1/W, W] only one axis family keeps growing, so the count is
    # monotone there and the minimum lives inside the window.
    w = 2.0 * max(r, 1.0 / r, 1.0)
    return 1.0 / w, w


def minimize_count_nonneg(p: float, r: float, stream_threshold: float = 1e4) -> StretchResult:
    """Minimum of the closed-quadrant count over s > 0, with the optimal set.

    Interior events are the same as for maximization; axis points contribute
    exit-only events at s = rL/j (x-axis) and enter-only events at s = k/(rM)
    (y-axis), and the origin is always inside.  Intervals are closures of the
    attaining components (see module docstring).
    """
    if r <= 0:
        raise ValueError("r must be positive")
    if p == math.inf:
        return _minimize_inf(r)
    if not (p == 1.0 or p > 1.0):
        raise ValueError("p must be 1, a finite value > 1, or math.inf")
    if r > stream_threshold:
        raise ValueError(
            "minimization above the stream threshold would materialize the "
            "full event list; raise stream_threshold explicitly to allow it")
    w_lo, w_hi = _window(r)
    _, _, int_lo, int_hi = kernels.stretch_events(p, r)
    jmaxx = floor_snapped(r / w_lo)
    axis_exits = r / np.arange(1.0, jmaxx + 1.0)
    kmaxy = floor_snapped(r * w_hi)
    axis_enters = np.arange(1.0, kmaxy + 1.0) / r
    enters = np.sort(np.concatenate([int_lo, np.zeros(len(axis_exits)), axis_enters]))
    exits = np.sort(np.concatenate([int_hi, axis_exits]))
    # roll everything at or before the window start into the running value
    running = 1 + int(np.searchsorted(enters, w_lo, side="right")
                      - np.searchsorted(exits, w_lo, side="left"))
    enters_f = enters[(enters > w_lo) & (enters <= w_hi)]
    exits_f = exits[(exits >= w_lo) & (exits <= w_hi)]
    m, runs = kernels.sweep_intervals(enters_f, exits_f, np.array([w_lo, w_hi]),
                                      running, True)
    return _result(r, m, runs)


def _count_inf_vec(r, s):
    nx = np.maximum(_floor_snapped_array(r / s), 0)
    ny = np.maximum(_floor_snapped_array(r * s), 0)
    return (nx + 1) * (ny + 1)


def _assemble(u, v_at, v_gap, m):
    """Closure intervals of {value == m} for an explicit step function given
    by coordinate values and open-gap values."""
    n = len(u)
    att = np.empty(2 * n - 1, dtype=bool)
    left = np.empty(2 * n - 1)
    right = np.empty(2 * n - 1)
    att[0::2] = v_at == m
    left[0::2] = u
    right[0::2] = u
    if n > 1:
        att[1::2] = v_gap == m
        left[1::2] = u[:-1]
        right[1::2] = u[1:]
    padded = np.concatenate(([False], att, [False]))
    d = np.diff(padded.astype(np.int8))
    starts = np.flatnonzero(d == 1)
    ends = np.flatnonzero(d == -1) - 1
    return [(float(left[a]), float(right[b])) for a, b in zip(starts, ends)]


def _minimize_inf(r: float) -> StretchResult:
    # Rectangles: the count (floor(r/s)+1)(floor(rs)+1) jumps only where r/s
    # or r*s crosses an integer; probe those candidates plus gap midpoints.
    w_lo, w_hi = _window(r)
    js = np.arange(1.0, floor_snapped(r / w_lo) + 1.0)
    ks = np.arange(1.0, floor_snapped(r * w_hi) + 1.0)
    cand = np.concatenate([[w_lo, w_hi], r / js, ks / r])
    u = np.unique(cand[(cand >= w_lo) & (cand <= w_hi)])
    v_at = _count_inf_vec(r, u)
    v_gap = _count_inf_vec(r, 0.5 * (u[:-1] + u[1:]))
    m = int(min(v_at.min(), v_gap.min()))
    return _result(r, m, _assemble(u, v_at, v_gap, m))
