"""Pure numpy fallback for the compiled kernels.

Same functions, same argument conventions, same snap rule as `_kernels`;
selected by `_backend` when the extension is absent or STRETCHCOUNT_PURE is
set.  Vectorized over whole column/event ranges, so it stays usable for the
figure-scale scans, just a few times slower than the extension.
"""

import numpy as np

SNAP = 1e-9


def _snap_array(v):
    rv = np.round(v)
    return np.where(np.abs(v - rv) <= SNAP * (1.0 + np.abs(v)), rv, v)


def _floor_snapped_array(v):
    return np.floor(_snap_array(v)).astype(np.int64)


def floor_snapped(v: float) -> int:
    rv = round(v)
    if abs(v - rv) <= SNAP * (1.0 + abs(v)):
        return int(rv)
    return int(np.floor(v))


def count_columns(p: float, r: float, s: float) -> int:
    if r <= 0.0 or s <= 0.0:
        return 0
    jmax = floor_snapped(r / s)
    if jmax < 1:
        return 0
    j = np.arange(1, jmax + 1, dtype=np.float64)
    if p == 1.0:
        v = s * (r - j * s)
    elif p == 2.0:
        v = s * np.sqrt(np.maximum(r * r - (j * s) ** 2, 0.0))
    else:
        t = np.maximum(1.0 - (j * (s / r)) ** p, 0.0)
        v = r * s * t ** (1.0 / p)
    cols = _floor_snapped_array(v)
    return int(cols[cols > 0].sum())


def count_columns_shifted(r: float, s: float, shift: float) -> int:
    if r <= 0.0 or s <= 0.0:
        return 0
    jmax = floor_snapped((r - (1.0 - shift) / s) / s + shift)
    if jmax < 1:
        return 0
    j = np.arange(1, jmax + 1, dtype=np.float64)
    v = s * (r - s * (j - shift)) + shift
    cols = _floor_snapped_array(v)
    return int(cols[cols > 0].sum())


def _ragged_jk(Q: float, shift: float = 0.0):
    """(j, k) pairs with (j-shift)(k-shift) <= Q, vectorized ragged ranges."""
    q = 1.0 - shift
    jmax = floor_snapped(Q / q + shift)
    if jmax < 1:
        empty = np.empty(0, dtype=np.int64)
        return empty, empty
    ji = np.arange(1, jmax + 1, dtype=np.int64)
    a = ji.astype(np.float64) - shift
    lengths = _floor_snapped_array(Q / a + shift)
    lengths = np.maximum(lengths, 0)
    total = int(lengths.sum())
    j = np.repeat(ji, lengths)
    ends = np.cumsum(lengths)
    starts = ends - lengths
    k = np.arange(total, dtype=np.int64) - np.repeat(starts, lengths) + 1
    return j, k


def stretch_events(p: float, r: float):
    if p == 1.0:
        return stretch_events_shifted(r, 0.0)
    Q = r * r / 2.0 ** (2.0 / p)
    j, k = _ragged_jk(Q)
    quadratic = p == 2.0
    if quadratic:
        rp = r * r
        jp = (j * j).astype(np.float64)
        kp = (k * k).astype(np.float64)
    else:
        rp = r ** p
        jp = j.astype(np.float64) ** p
        kp = k.astype(np.float64) ** p
    disc = rp * rp - 4.0 * jp * kp
    deg = disc <= 0.0  # tangency (or snapped-in boundary event): collapse
    sq = np.sqrt(np.maximum(disc, 0.0))
    thi = np.where(deg, rp / (2.0 * jp), (rp + sq) / (2.0 * jp))
    tlo = np.where(deg, thi, kp / (jp * thi))
    if quadratic:
        lo, hi = np.sqrt(tlo), np.sqrt(thi)
    else:
        lo, hi = tlo ** (1.0 / p), thi ** (1.0 / p)
    return j, k, lo, hi


def stretch_events_shifted(r: float, shift: float):
    Q = r * r / 4.0
    j, k = _ragged_jk(Q, shift)
    a = j.astype(np.float64) - shift
    b = k.astype(np.float64) - shift
    disc = r * r - 4.0 * a * b
    deg = disc <= 0.0
    sq = np.sqrt(np.maximum(disc, 0.0))
    hi = np.where(deg, r / (2.0 * a), (r + sq) / (2.0 * a))
    lo = np.where(deg, hi, b / (a * hi))
    return j, k, lo, hi


def _generate(p: float, r: float):
    return stretch_events_shifted(r, 0.0) if p == 1.0 else stretch_events(p, r)


def sweep_intervals(enters, exits, probes, running_init: int, minimize: bool):
    """Merged scan over sorted enter/exit coordinates plus zero-delta probes:
    (extreme value, closure intervals where it is attained).  Value AT a
    coordinate includes exits at it; the open gap after it drops them."""
    enters = np.asarray(enters, dtype=np.float64)
    exits = np.asarray(exits, dtype=np.float64)
    u = np.unique(np.concatenate([enters, exits, np.asarray(probes, dtype=np.float64)]))
    n = len(u)
    if n == 0:
        return 0, []
    ce = np.searchsorted(enters, u, side="right")
    cx_before = np.searchsorted(exits, u, side="left")
    cx_after = np.searchsorted(exits, u, side="right")
    v_at = running_init + ce - cx_before
    v_after = running_init + ce - cx_after
    v_gap = v_after[:-1]  # open gaps between consecutive coordinates
    if minimize:
        m = int(min(v_at.min(), v_gap.min())) if n > 1 else int(v_at.min())
    else:
        m = int(v_at.max())
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
    return m, [(float(left[a]), float(right[b])) for a, b in zip(starts, ends)]


def event_rank_counts(p: float, r: float, edges):
    # The fallback materializes the event list (no memory bound here; that is
    # what the compiled backend buys).  Results are identical.
    edges = np.ascontiguousarray(edges, dtype=np.float64)
    _, _, lo, hi = _generate(p, r)
    n_enter_le = np.searchsorted(np.sort(lo), edges, side="right")
    n_exit_le = np.searchsorted(np.sort(hi), edges, side="right")
    return n_enter_le.astype(np.int64), n_exit_le.astype(np.int64)


def events_in_range(p: float, r: float, a: float, b: float):
    j, k, lo, hi = _generate(p, r)
    keep = ((lo > a) & (lo <= b)) | ((hi > a) & (hi <= b))
    base = int(np.count_nonzero((lo <= a) & (hi > a)))
    return j[keep], k[keep], lo[keep], hi[keep], base
