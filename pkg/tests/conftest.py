"""Shared independent oracles for the test suite.

These deliberately avoid the library's own computation paths: counts come
from direct membership double loops, areas from Romberg extrapolation,
derivatives from central differences, and eigenvalue minima from dense
s-grids with multi-basin zoom refinement over a plain enumeration evaluator.
"""

import math

import numpy as np
import pytest


# ---------------------------------------------------------------------------
# counting

def brute_count(p, r, s, mode="positive"):
    """Direct membership double loop, inclusive boundary with a relative guard."""
    guard = 1e-9
    if p == math.inf:
        n = max(math.floor(r / s * (1 + guard)), 0) * max(math.floor(r * s * (1 + guard)), 0)
    else:
        jmax = max(int(r / s * (1 + guard)), 0)
        kmax = max(int(r * s * (1 + guard)), 0)
        if jmax == 0 or kmax == 0:
            n = 0
        else:
            j = (np.arange(1, jmax + 1, dtype=np.float64) * s)[:, None]
            k = (np.arange(1, kmax + 1, dtype=np.float64) / s)[None, :]
            lhs = j ** p + k ** p
            n = int((lhs <= r ** p * (1 + guard) + guard).sum())
    if mode == "nonnegative":
        n += math.floor(r / s * (1 + guard)) + math.floor(r * s * (1 + guard)) + 1
    return n


# ---------------------------------------------------------------------------
# quadrature

def romberg(f, a, b, max_levels=22, tol=1e-12):
    """Romberg extrapolation of the trapezoid rule."""
    table = [[0.5 * (b - a) * (f(a) + f(b))]]
    h = b - a
    for i in range(1, max_levels):
        h *= 0.5
        xs = a + h * np.arange(1, 2 ** i, 2)
        t = 0.5 * table[i - 1][0] + h * sum(f(x) for x in xs)
        row = [t]
        for k in range(1, i + 1):
            row.append(row[k - 1] + (row[k - 1] - table[i - 1][k - 1]) / (4 ** k - 1))
        table.append(row)
        if i > 3 and abs(table[i][i] - table[i - 1][i - 1]) < tol * (1 + abs(table[i][i])):
            return table[i][i]
    return table[-1][-1]


def central_diff(f, x, h=1e-5):
    return (f(x + h) - f(x - h)) / (2 * h)


# ---------------------------------------------------------------------------
# eigenvalue oracles: plain enumeration plus dense-grid multi-basin zoom

def brute_dirichlet_eigenvalue(n, s):
    bound = (4.0 / math.pi * n + 10.0 * math.sqrt(n) + 20.0) * max(s, 1.0 / s) ** 2
    for _ in range(40):
        j = np.arange(1, int(math.sqrt(bound) / s) + 2, dtype=np.float64)
        k = np.arange(1, int(math.sqrt(bound) * s) + 2, dtype=np.float64)
        levels = (j[:, None] * s) ** 2 + (k[None, :] / s) ** 2
        flat = levels[levels <= bound]
        if len(flat) >= n:
            return float(np.partition(flat, n - 1)[n - 1])
        bound *= 2.0
    raise RuntimeError("enumeration bound failed to close")


def brute_oscillator_eigenvalue(n, s):
    bound = (math.sqrt(2.0 * n) + 10.0) * max(s, 1.0 / s)
    for _ in range(40):
        j = np.arange(1, int(bound / s + 0.5) + 2, dtype=np.float64)
        k = np.arange(1, int(bound * s + 0.5) + 2, dtype=np.float64)
        levels = (j[:, None] - 0.5) * s + (k[None, :] - 0.5) / s
        flat = levels[levels <= bound]
        if len(flat) >= n:
            return float(np.partition(flat, n - 1)[n - 1])
        bound *= 2.0
    raise RuntimeError("enumeration bound failed to close")


def grid_min_oracle(fun, lo, hi, coarse_n=2000, zooms=9, zoom_n=80, max_basins=12):
    """Global min of a continuous piecewise-smooth function: coarse grid,
    keep every basin that could still hide the minimum, zoom each."""
    xs = np.linspace(lo, hi, coarse_n)
    vals = np.array([fun(x) for x in xs])
    step = xs[1] - xs[0]
    slack = 2.0 * np.abs(np.diff(vals)).max() + 1e-9
    best = vals.min()
    cand = np.flatnonzero(vals <= best + slack)
    # merge adjacent candidate indices into windows
    windows = []
    start = prev = cand[0]
    for i in cand[1:]:
        if i > prev + 1:
            windows.append((start, prev))
            start = i
        prev = i
    windows.append((start, prev))
    windows.sort(key=lambda w: vals[w[0]:w[1] + 1].min())
    result = math.inf
    for a, b in windows[:max_basins]:
        w_lo = max(lo, xs[a] - step)
        w_hi = min(hi, xs[b] + step)
        c, h = 0.5 * (w_lo + w_hi), 0.5 * (w_hi - w_lo)
        for _ in range(zooms):
            zs = np.linspace(c - h, c + h, zoom_n + 1)
            zv = np.array([fun(z) for z in zs])
            i = int(np.argmin(zv))
            c = zs[i]
            result = min(result, float(zv[i]))
            h = max(2.0 * (2.0 * h / zoom_n), 1e-15)
    return result


@pytest.fixture(scope="session")
def rng():
    return np.random.default_rng(20260810)
