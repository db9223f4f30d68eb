# cython: language_level=3, boundscheck=False, wraparound=False, cdivision=True
"""Compiled kernels: column-sum lattice counts and stretch-event generation.

Mirrors the API of `_ref` (the pure numpy fallback); `_backend` picks one at
import time.  All floor operations snap values within 1e-9 relative distance
of an integer onto that integer first, so boundary lattice points ("inside or
on") are counted on exact hits.
"""

from libc.math cimport floor, sqrt, pow, fabs

import numpy as np

cdef double SNAP = 1e-9


cdef inline double snap_to_int(double v) noexcept nogil:
    cdef double rv = floor(v + 0.5)
    if fabs(v - rv) <= SNAP * (1.0 + fabs(v)):
        return rv
    return v


cdef inline long long floor_snapped(double v) noexcept nogil:
    return <long long> floor(snap_to_int(v))


def count_columns(double p, double r, double s):
    """Positive-quadrant count for the p-circle profile, finite p >= 1.

    Returns sum over columns j = 1..floor(r/s) of floor(r*s*(1-(js/r)^p)^(1/p)).
    """
    cdef long long total = 0, j, jmax, c
    cdef double v, x, t, rr, invp
    if r <= 0.0 or s <= 0.0:
        return 0
    jmax = floor_snapped(r / s)
    if jmax < 1:
        return 0
    rr = r * r
    if p == 1.0:
        for j in range(1, jmax + 1):
            v = s * (r - j * s)
            c = floor_snapped(v)
            if c > 0:
                total += c
    elif p == 2.0:
        for j in range(1, jmax + 1):
            t = rr - (j * s) * (j * s)
            if t < 0.0:
                t = 0.0
            v = s * sqrt(t)
            c = floor_snapped(v)
            if c > 0:
                total += c
    else:
        invp = 1.0 / p
        for j in range(1, jmax + 1):
            x = j * s / r
            t = 1.0 - pow(x, p)
            if t < 0.0:
                t = 0.0
            v = r * s * pow(t, invp)
            c = floor_snapped(v)
            if c > 0:
                total += c
    return total


def count_columns_shifted(double r, double s, double shift):
    """Count of (j,k), j,k >= 1, with s*(j-shift) + (k-shift)/s <= r."""
    cdef long long total = 0, j, jmax, c
    cdef double a, v
    if r <= 0.0 or s <= 0.0:
        return 0
    # largest j with s*(j-shift) + (1-shift)/s <= r
    jmax = floor_snapped((r - (1.0 - shift) / s) / s + shift)
    for j in range(1, jmax + 1):
        a = j - shift
        v = s * (r - s * a) + shift
        c = floor_snapped(v)
        if c > 0:
            total += c
    return total


cdef inline long long _events_total(double Q):
    cdef long long total = 0, j, jmax, c
    jmax = floor_snapped(Q)
    for j in range(1, jmax + 1):
        c = floor_snapped(Q / j)
        if c > 0:
            total += c
    return total


def stretch_events(double p, double r):
    """Entry/exit stretch factors for every positive lattice point that the
    scaled p-circle can reach: membership (js)^p + (k/s)^p <= r^p holds on
    [lo, hi], the roots in t = s^p of j^p t^2 - r^p t + k^p = 0.

    Returns (j, k, lo, hi) as int64/float64 arrays, (j, k)-lexicographic.
    """
    if p == 1.0:
        return stretch_events_shifted(r, 0.0)
    cdef double Q = r * r / pow(2.0, 2.0 / p)
    cdef long long total = _events_total(Q), idx = 0, j, k, kmax
    j_arr = np.empty(total, dtype=np.int64)
    k_arr = np.empty(total, dtype=np.int64)
    lo_arr = np.empty(total, dtype=np.float64)
    hi_arr = np.empty(total, dtype=np.float64)
    cdef long long[::1] jv = j_arr
    cdef long long[::1] kv = k_arr
    cdef double[::1] lov = lo_arr
    cdef double[::1] hiv = hi_arr
    cdef double rp, rp2, jp, kp, disc, sq, thi, tlo, invp
    cdef long long jmax = floor_snapped(Q)
    cdef bint quadratic = (p == 2.0)
    rp = r * r if quadratic else pow(r, p)
    rp2 = rp * rp
    invp = 1.0 / p
    for j in range(1, jmax + 1):
        kmax = floor_snapped(Q / j)
        if kmax < 1:
            continue
        jp = <double> (j * j) if quadratic else pow(<double> j, p)
        for k in range(1, kmax + 1):
            kp = <double> (k * k) if quadratic else pow(<double> k, p)
            disc = rp2 - 4.0 * jp * kp
            if disc <= 0.0:
                thi = rp / (2.0 * jp)  # tangency; snapped-in boundary events
                tlo = thi
            else:
                sq = sqrt(disc)
                thi = (rp + sq) / (2.0 * jp)
                tlo = kp / (jp * thi)
            jv[idx] = j
            kv[idx] = k
            if quadratic:
                lov[idx] = sqrt(tlo)
                hiv[idx] = sqrt(thi)
            else:
                lov[idx] = pow(tlo, invp)
                hiv[idx] = pow(thi, invp)
            idx += 1
    return j_arr[:idx], k_arr[:idx], lo_arr[:idx], hi_arr[:idx]


def stretch_events_shifted(double r, double shift):
    """Events for the linear profile with coordinates (j-shift, k-shift):
    membership s*(j-shift) + (k-shift)/s <= r holds on [lo, hi], the roots of
    (j-shift) s^2 - r s + (k-shift) = 0."""
    cdef double q = 1.0 - shift
    cdef double Q = r * r / 4.0
    cdef long long jmax = floor_snapped(Q / q + shift)
    cdef long long total = 0, idx = 0, j, k, kmax
    cdef double a, b, disc, sq, shi, slo
    for j in range(1, jmax + 1):
        a = j - shift
        kmax = floor_snapped(Q / a + shift)
        if kmax > 0:
            total += kmax
    j_arr = np.empty(total, dtype=np.int64)
    k_arr = np.empty(total, dtype=np.int64)
    lo_arr = np.empty(total, dtype=np.float64)
    hi_arr = np.empty(total, dtype=np.float64)
    cdef long long[::1] jv = j_arr
    cdef long long[::1] kv = k_arr
    cdef double[::1] lov = lo_arr
    cdef double[::1] hiv = hi_arr
    for j in range(1, jmax + 1):
        a = j - shift
        kmax = floor_snapped(Q / a + shift)
        for k in range(1, kmax + 1):
            b = k - shift
            disc = r * r - 4.0 * a * b
            if disc <= 0.0:
                shi = r / (2.0 * a)
                slo = shi
            else:
                sq = sqrt(disc)
                shi = (r + sq) / (2.0 * a)
                slo = b / (a * shi)
            jv[idx] = j
            kv[idx] = k
            lov[idx] = slo
            hiv[idx] = shi
            idx += 1
    return j_arr[:idx], k_arr[:idx], lo_arr[:idx], hi_arr[:idx]


def sweep_intervals(enters, exits, probes, long long running_init, bint minimize):
    """Merged scan over sorted enter/exit coordinates (plus zero-delta probe
    coordinates): returns (extreme value, list of closure intervals where it
    is attained).  The value AT a coordinate includes entries at it and
    exits at it; the value on the open gap after it drops the exits.
    """
    cdef double[::1] ev = np.ascontiguousarray(enters, dtype=np.float64)
    cdef double[::1] xv = np.ascontiguousarray(exits, dtype=np.float64)
    cdef double[::1] pv = np.ascontiguousarray(probes, dtype=np.float64)
    cdef Py_ssize_t ne = ev.shape[0], nx = xv.shape[0], npr = pv.shape[0]
    cdef Py_ssize_t ie, ix, ip
    cdef long long running, v_at, v_after, m
    cdef double coord, right, start
    cdef bint have_m = False, run_open, gap_pending, last_coord
    cdef int phase
    runs = []
    m = 0
    for phase in range(2):
        ie = ix = ip = 0
        running = running_init
        run_open = False
        gap_pending = False
        start = right = 0.0
        while ie < ne or ix < nx or ip < npr:
            coord = 1e308
            if ie < ne and ev[ie] < coord:
                coord = ev[ie]
            if ix < nx and xv[ix] < coord:
                coord = xv[ix]
            if ip < npr and pv[ip] < coord:
                coord = pv[ip]
            v_at = running
            while ie < ne and ev[ie] == coord:
                v_at += 1
                ie += 1
            v_after = v_at
            while ix < nx and xv[ix] == coord:
                v_after -= 1
                ix += 1
            while ip < npr and pv[ip] == coord:
                ip += 1
            last_coord = ie >= ne and ix >= nx and ip >= npr
            if phase == 0:
                if not have_m:
                    m = v_at
                    have_m = True
                elif (minimize and v_at < m) or (not minimize and v_at > m):
                    m = v_at
                if minimize and not last_coord and v_after < m:
                    m = v_after  # open-gap value can undercut every coordinate
            else:
                if gap_pending:
                    right = coord
                    gap_pending = False
                if v_at == m:
                    if not run_open:
                        run_open = True
                        start = coord
                    right = coord
                elif run_open:
                    runs.append((start, right))
                    run_open = False
                if v_after == m and not last_coord:
                    if not run_open:
                        run_open = True
                        start = coord
                        right = coord
                    gap_pending = True
                elif run_open:
                    runs.append((start, right))
                    run_open = False
            running = v_after
        if phase == 1 and run_open:
            runs.append((start, right))
    return m, runs


cdef inline Py_ssize_t _first_ge(double[::1] edges, Py_ssize_t n, double x) noexcept nogil:
    cdef Py_ssize_t lo = 0, hi = n, mid
    while lo < hi:
        mid = (lo + hi) >> 1
        if edges[mid] < x:
            lo = mid + 1
        else:
            hi = mid
    return lo


def event_rank_counts(double p, double r, edges):
    """Streaming pass for the bucketed sweep: for each probe edge e, count
    events with lo <= e and events with hi <= e.  Never materializes events.

    Returns (n_enter_le, n_exit_le), int64 arrays aligned with `edges`.
    """
    edges = np.ascontiguousarray(edges, dtype=np.float64)
    cdef double[::1] ev = edges
    cdef Py_ssize_t ne = ev.shape[0], pos
    hist_e = np.zeros(ne + 1, dtype=np.int64)
    hist_x = np.zeros(ne + 1, dtype=np.int64)
    cdef long long[::1] he = hist_e
    cdef long long[::1] hx = hist_x
    cdef bint linear = (p == 1.0)
    cdef bint quadratic = (p == 2.0)
    cdef double Q, rp, rp2, jp, kp, disc, sq, thi, tlo, lo, hi, invp, a, b
    cdef long long j, k, jmax, kmax
    Q = r * r / 4.0 if linear else r * r / pow(2.0, 2.0 / p)
    rp = r * r if quadratic else (r if linear else pow(r, p))
    rp2 = rp * rp
    invp = 1.0 / p
    jmax = floor_snapped(Q)
    for j in range(1, jmax + 1):
        kmax = floor_snapped(Q / j)
        if kmax < 1:
            continue
        if linear:
            jp = <double> j
        elif quadratic:
            jp = <double> (j * j)
        else:
            jp = pow(<double> j, p)
        for k in range(1, kmax + 1):
            if linear:
                kp = <double> k
            elif quadratic:
                kp = <double> (k * k)
            else:
                kp = pow(<double> k, p)
            disc = rp2 - 4.0 * jp * kp
            if disc <= 0.0:
                thi = rp / (2.0 * jp)
                tlo = thi
            else:
                sq = sqrt(disc)
                thi = (rp + sq) / (2.0 * jp)
                tlo = kp / (jp * thi)
            if linear:
                lo = tlo
                hi = thi
            elif quadratic:
                lo = sqrt(tlo)
                hi = sqrt(thi)
            else:
                lo = pow(tlo, invp)
                hi = pow(thi, invp)
            he[_first_ge(ev, ne, lo)] += 1
            hx[_first_ge(ev, ne, hi)] += 1
    n_enter_le = np.cumsum(hist_e[:ne])
    n_exit_le = np.cumsum(hist_x[:ne])
    return n_enter_le, n_exit_le


def events_in_range(double p, double r, double a, double b):
    """Second streaming pass: materialize only events with an endpoint in
    (a, b], plus `base`, the number of events active just after a
    (lo <= a < hi).  Memory is proportional to the bucket population.
    """
    cdef bint linear = (p == 1.0)
    cdef bint quadratic = (p == 2.0)
    cdef double Q, rp, rp2, jp, kp, disc, sq, thi, tlo, lo, hi, invp
    cdef long long j, k, jmax, kmax, base = 0, nkeep = 0, idx = 0
    cdef int phase
    Q = r * r / 4.0 if linear else r * r / pow(2.0, 2.0 / p)
    rp = r * r if quadratic else (r if linear else pow(r, p))
    rp2 = rp * rp
    invp = 1.0 / p
    jmax = floor_snapped(Q)
    j_arr = k_arr = lo_arr = hi_arr = None
    cdef long long[::1] jv = None
    cdef long long[::1] kv = None
    cdef double[::1] lov = None
    cdef double[::1] hiv = None
    for phase in range(2):
        if phase == 1:
            j_arr = np.empty(nkeep, dtype=np.int64)
            k_arr = np.empty(nkeep, dtype=np.int64)
            lo_arr = np.empty(nkeep, dtype=np.float64)
            hi_arr = np.empty(nkeep, dtype=np.float64)
            jv = j_arr
            kv = k_arr
            lov = lo_arr
            hiv = hi_arr
        for j in range(1, jmax + 1):
            kmax = floor_snapped(Q / j)
            if kmax < 1:
                continue
            if linear:
                jp = <double> j
            elif quadratic:
                jp = <double> (j * j)
            else:
                jp = pow(<double> j, p)
            for k in range(1, kmax + 1):
                if linear:
                    kp = <double> k
                elif quadratic:
                    kp = <double> (k * k)
                else:
                    kp = pow(<double> k, p)
                disc = rp2 - 4.0 * jp * kp
                if disc <= 0.0:
                    thi = rp / (2.0 * jp)
                    tlo = thi
                else:
                    sq = sqrt(disc)
                    thi = (rp + sq) / (2.0 * jp)
                    tlo = kp / (jp * thi)
                if linear:
                    lo = tlo
                    hi = thi
                elif quadratic:
                    lo = sqrt(tlo)
                    hi = sqrt(thi)
                else:
                    lo = pow(tlo, invp)
                    hi = pow(thi, invp)
                if phase == 0:
                    if (a < lo <= b) or (a < hi <= b):
                        nkeep += 1
                    if lo <= a < hi:
                        base += 1
                else:
                    if (a < lo <= b) or (a < hi <= b):
                        jv[idx] = j
                        kv[idx] = k
                        lov[idx] = lo
                        hiv[idx] = hi
                        idx += 1
    return j_arr, k_arr, lo_arr, hi_arr, base
