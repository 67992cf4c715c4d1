# cython: language_level=3, boundscheck=False, wraparound=False, cdivision=True
"""Compiled integration kernels for the three catalog classes.

Hardcodes h1, h2, their gradients, the area-form weight and the first two
basis fields per class; everything deformed is reconstructed from those by
the same closed formulas as the pure-Python path. Selected at import by
lhdef.backend when built.
"""
from libc.math cimport sinh, cosh, exp, sin, floor, isfinite, NAN

import numpy as np

BACKEND = "compiled"

cdef double SHC_CUTOFF = 1e-2


cdef inline double shc_c(double u) nogil:
    cdef double q
    if u < SHC_CUTOFF and u > -SHC_CUTOFF:
        q = u * u
        return 1.0 + q / 6.0 * (1.0 + q / 20.0 * (1.0 + q / 42.0))
    return sinh(u) / u


cdef inline double shc_p(double u) nogil:
    cdef double q
    if u < SHC_CUTOFF and u > -SHC_CUTOFF:
        q = u * u
        return u / 3.0 * (1.0 + q / 10.0 * (1.0 + q / 28.0))
    return (cosh(u) - sinh(u) / u) / u


cdef inline int primitives(int tag, double x, double y, double eps,
                           double* h1, double* h2,
                           double* g1x, double* g1y, double* g2x, double* g2y,
                           double* w,
                           double* x1x, double* x1y, double* x2x, double* x2y) nogil:
    """Class data at one point; returns 0 when the guard fails."""
    cdef double t
    if not (isfinite(x) and isfinite(y)):
        return 0
    if tag == 0:  # P2
        if y <= eps:
            return 0
        h1[0] = -1.0 / y
        h2[0] = -x / y
        g1x[0] = 0.0
        g1y[0] = 1.0 / (y * y)
        g2x[0] = -1.0 / y
        g2y[0] = x / (y * y)
        w[0] = 1.0 / (y * y)
        x1x[0] = 1.0
        x1y[0] = 0.0
        x2x[0] = x
        x2y[0] = y
        return 1
    if tag == 1:  # I4
        t = x - y
        if t <= eps:
            return 0
        h1[0] = 1.0 / t
        h2[0] = (x + y) / (2.0 * t)
        g1x[0] = -1.0 / (t * t)
        g1y[0] = 1.0 / (t * t)
        g2x[0] = -y / (t * t)
        g2y[0] = x / (t * t)
        w[0] = 1.0 / (t * t)
        x1x[0] = 1.0
        x1y[0] = 1.0
        x2x[0] = x
        x2y[0] = y
        return 1
    # I5
    if y <= eps:
        return 0
    h1[0] = -1.0 / (2.0 * y * y)
    h2[0] = -x / (2.0 * y * y)
    g1x[0] = 0.0
    g1y[0] = 1.0 / (y * y * y)
    g2x[0] = -1.0 / (2.0 * y * y)
    g2y[0] = x / (y * y * y)
    w[0] = 1.0 / (y * y * y)
    x1x[0] = 1.0
    x1y[0] = 0.0
    x2x[0] = x
    x2y[0] = y / 2.0
    return 1


cdef inline double curve_val(int kind, double[:, ::1] params, int row, int n,
                             double t) nogil:
    cdef double acc = 0.0
    cdef int i
    if kind == 0:
        return params[row, 0]
    if kind == 1:
        for i in range(n - 1, -1, -1):
            acc = acc * t + params[row, i]
        return acc
    return params[row, 0] * sin(params[row, 1] * t + params[row, 2]) + params[row, 3]


cdef inline int single_rhs(int tag, double z, double c,
                           double b1, double b2, double b3,
                           double x, double y, double eps,
                           double* vx, double* vy) nogil:
    cdef double h1, h2, g1x, g1y, g2x, g2y, w, x1x, x1y, x2x, x2y
    cdef double u, S, C, r, a1, a2
    if not primitives(tag, x, y, eps, &h1, &h2, &g1x, &g1y, &g2x, &g2y,
                      &w, &x1x, &x1y, &x2x, &x2y):
        return 0
    u = 2.0 * z * h1
    S = shc_c(u)
    C = cosh(u)
    r = h2 / h1
    a1 = b1 + b2 * r * (C - S) + b3 * (r * r * (C - 2.0 * S)
                                       - c * C / (4.0 * h1 * h1 * S * S))
    a2 = b2 * S + 2.0 * b3 * r * S
    vx[0] = a1 * x1x + a2 * x2x
    vy[0] = a1 * x1y + a2 * x2y
    return 1


cdef inline int copy_data(int tag, double z, double c, double x, double y,
                          double eps,
                          double* hz1, double* hz2, double* hz3,
                          double* d1, double* d2, double* d3,
                          double* w) nogil:
    """Deformed Hamiltonian values and gradients at one copy point.

    d1, d2, d3 are 2-element output arrays.
    """
    cdef double h1, h2, g1x, g1y, g2x, g2y, x1x, x1y, x2x, x2y
    cdef double u, S, Sp, k, k1, k2
    if not primitives(tag, x, y, eps, &h1, &h2, &g1x, &g1y, &g2x, &g2y,
                      w, &x1x, &x1y, &x2x, &x2y):
        return 0
    u = 2.0 * z * h1
    S = shc_c(u)
    Sp = shc_p(u)
    hz1[0] = h1
    d1[0] = g1x
    d1[1] = g1y
    hz2[0] = S * h2
    k = 2.0 * z * Sp * h2
    d2[0] = k * g1x + S * g2x
    d2[1] = k * g1y + S * g2y
    hz3[0] = S * h2 * h2 / h1 + c / (4.0 * S * h1)
    k1 = (2.0 * z * Sp * h2 * h2 / h1 - S * h2 * h2 / (h1 * h1)
          - c * (2.0 * z * Sp * h1 + S) / (4.0 * S * S * h1 * h1))
    k2 = 2.0 * S * h2 / h1
    d3[0] = k1 * g1x + k2 * g2x
    d3[1] = k1 * g1y + k2 * g2y
    return 1


cdef inline int two_copy_rhs(int tag, double z, double c,
                             double b1, double b2, double b3,
                             double x1, double y1, double x2, double y2,
                             double eps, double* out) nogil:
    cdef double hz1a, hz2a, hz3a, hz1b, hz2b, hz3b, wa, wb
    cdef double d1a[2]
    cdef double d2a[2]
    cdef double d3a[2]
    cdef double d1b[2]
    cdef double d2b[2]
    cdef double d3b[2]
    cdef double g[4]
    cdef double ep, em, coeff
    cdef int i, k
    if not copy_data(tag, z, c, x1, y1, eps, &hz1a, &hz2a, &hz3a, d1a, d2a, d3a, &wa):
        return 0
    if not copy_data(tag, z, c, x2, y2, eps, &hz1b, &hz2b, &hz3b, d1b, d2b, d3b, &wb):
        return 0
    ep = exp(2.0 * z * hz1b)
    em = exp(-2.0 * z * hz1a)
    for i in range(4):
        g[i] = 0.0
    # lifted H1 = hz1(p1) + hz1(p2)
    if b1 != 0.0:
        g[0] += b1 * d1a[0]
        g[1] += b1 * d1a[1]
        g[2] += b1 * d1b[0]
        g[3] += b1 * d1b[1]
    # lifted Hk = hzk(p1) e^{2z hz1(p2)} + e^{-2z hz1(p1)} hzk(p2), k = 2, 3
    if b2 != 0.0:
        for i in range(2):
            g[i] += b2 * (d2a[i] * ep - 2.0 * z * d1a[i] * em * hz2b)
            g[2 + i] += b2 * (2.0 * z * hz2a * ep * d1b[i] + em * d2b[i])
    if b3 != 0.0:
        for i in range(2):
            g[i] += b3 * (d3a[i] * ep - 2.0 * z * d1a[i] * em * hz3b)
            g[2 + i] += b3 * (2.0 * z * hz3a * ep * d1b[i] + em * d3b[i])
    out[0] = g[1] / wa
    out[1] = -g[0] / wa
    out[2] = g[3] / wb
    out[3] = -g[2] / wb
    return 1


def integrate_single(int tag, double z, double c,
                     int[:] kinds, double[:, ::1] params, int[:] lens,
                     double[:] state0, double t0, double t1, double dt,
                     double eps):
    """Fixed-step RK4 for the driven single-copy field; lands exactly on t1."""
    cdef int n_full = <int>floor((t1 - t0) / dt + 1e-9)
    cdef double rem = (t1 - t0) - n_full * dt
    cdef int total, k, ok, truncated = 0, count
    cdef double h, t, b1, b2, b3
    cdef double x, y, k1x, k1y, k2x, k2y, k3x, k3y, k4x, k4y, sx, sy
    if rem <= 1e-12 * dt:
        rem = 0.0
    total = n_full + (1 if rem > 0.0 else 0)
    times_arr = np.empty(total + 1, dtype=np.float64)
    states_arr = np.empty((total + 1, 2), dtype=np.float64)
    cdef double[:] times = times_arr
    cdef double[:, ::1] states = states_arr
    x = state0[0]
    y = state0[1]
    times[0] = t0
    states[0, 0] = x
    states[0, 1] = y
    count = 1
    with nogil:
        for k in range(total):
            h = dt if k < n_full else rem
            t = t0 + k * dt
            b1 = curve_val(kinds[0], params, 0, lens[0], t)
            b2 = curve_val(kinds[1], params, 1, lens[1], t)
            b3 = curve_val(kinds[2], params, 2, lens[2], t)
            ok = single_rhs(tag, z, c, b1, b2, b3, x, y, eps, &k1x, &k1y)
            if not ok:
                truncated = 1
                break
            sx = x + 0.5 * h * k1x
            sy = y + 0.5 * h * k1y
            b1 = curve_val(kinds[0], params, 0, lens[0], t + 0.5 * h)
            b2 = curve_val(kinds[1], params, 1, lens[1], t + 0.5 * h)
            b3 = curve_val(kinds[2], params, 2, lens[2], t + 0.5 * h)
            ok = single_rhs(tag, z, c, b1, b2, b3, sx, sy, eps, &k2x, &k2y)
            if not ok:
                truncated = 1
                break
            sx = x + 0.5 * h * k2x
            sy = y + 0.5 * h * k2y
            ok = single_rhs(tag, z, c, b1, b2, b3, sx, sy, eps, &k3x, &k3y)
            if not ok:
                truncated = 1
                break
            sx = x + h * k3x
            sy = y + h * k3y
            b1 = curve_val(kinds[0], params, 0, lens[0], t + h)
            b2 = curve_val(kinds[1], params, 1, lens[1], t + h)
            b3 = curve_val(kinds[2], params, 2, lens[2], t + h)
            ok = single_rhs(tag, z, c, b1, b2, b3, sx, sy, eps, &k4x, &k4y)
            if not ok:
                truncated = 1
                break
            x = x + h / 6.0 * (k1x + 2.0 * k2x + 2.0 * k3x + k4x)
            y = y + h / 6.0 * (k1y + 2.0 * k2y + 2.0 * k3y + k4y)
            if tag == 1:
                ok = (x - y) > eps and isfinite(x) and isfinite(y)
            else:
                ok = y > eps and isfinite(x) and isfinite(y)
            if not ok:
                truncated = 1
                break
            times[count] = t1 if k == total - 1 else t0 + (k + 1) * dt
            states[count, 0] = x
            states[count, 1] = y
            count += 1
    return times_arr[:count], states_arr[:count], bool(truncated)


def integrate_two_copy(int tag, double z, double c,
                       int[:] kinds, double[:, ::1] params, int[:] lens,
                       double[:] state0, double t0, double t1, double dt,
                       double eps):
    """Fixed-step RK4 for the driven two-copy Hamiltonian field."""
    cdef int n_full = <int>floor((t1 - t0) / dt + 1e-9)
    cdef double rem = (t1 - t0) - n_full * dt
    cdef int total, k, i, ok, truncated = 0, count
    cdef double h, t, b1, b2, b3
    cdef double s[4]
    cdef double st[4]
    cdef double k1[4]
    cdef double k2[4]
    cdef double k3[4]
    cdef double k4[4]
    if rem <= 1e-12 * dt:
        rem = 0.0
    total = n_full + (1 if rem > 0.0 else 0)
    times_arr = np.empty(total + 1, dtype=np.float64)
    states_arr = np.empty((total + 1, 4), dtype=np.float64)
    cdef double[:] times = times_arr
    cdef double[:, ::1] states = states_arr
    for i in range(4):
        s[i] = state0[i]
        states[0, i] = s[i]
    times[0] = t0
    count = 1
    with nogil:
        for k in range(total):
            h = dt if k < n_full else rem
            t = t0 + k * dt
            b1 = curve_val(kinds[0], params, 0, lens[0], t)
            b2 = curve_val(kinds[1], params, 1, lens[1], t)
            b3 = curve_val(kinds[2], params, 2, lens[2], t)
            ok = two_copy_rhs(tag, z, c, b1, b2, b3, s[0], s[1], s[2], s[3], eps, k1)
            if not ok:
                truncated = 1
                break
            for i in range(4):
                st[i] = s[i] + 0.5 * h * k1[i]
            b1 = curve_val(kinds[0], params, 0, lens[0], t + 0.5 * h)
            b2 = curve_val(kinds[1], params, 1, lens[1], t + 0.5 * h)
            b3 = curve_val(kinds[2], params, 2, lens[2], t + 0.5 * h)
            ok = two_copy_rhs(tag, z, c, b1, b2, b3, st[0], st[1], st[2], st[3], eps, k2)
            if not ok:
                truncated = 1
                break
            for i in range(4):
                st[i] = s[i] + 0.5 * h * k2[i]
            ok = two_copy_rhs(tag, z, c, b1, b2, b3, st[0], st[1], st[2], st[3], eps, k3)
            if not ok:
                truncated = 1
                break
            for i in range(4):
                st[i] = s[i] + h * k3[i]
            b1 = curve_val(kinds[0], params, 0, lens[0], t + h)
            b2 = curve_val(kinds[1], params, 1, lens[1], t + h)
            b3 = curve_val(kinds[2], params, 2, lens[2], t + h)
            ok = two_copy_rhs(tag, z, c, b1, b2, b3, st[0], st[1], st[2], st[3], eps, k4)
            if not ok:
                truncated = 1
                break
            for i in range(4):
                s[i] = s[i] + h / 6.0 * (k1[i] + 2.0 * k2[i] + 2.0 * k3[i] + k4[i])
            if tag == 1:
                ok = ((s[0] - s[1]) > eps and (s[2] - s[3]) > eps
                      and isfinite(s[0]) and isfinite(s[1])
                      and isfinite(s[2]) and isfinite(s[3]))
            else:
                ok = (s[1] > eps and s[3] > eps
                      and isfinite(s[0]) and isfinite(s[1])
                      and isfinite(s[2]) and isfinite(s[3]))
            if not ok:
                truncated = 1
                break
            times[count] = t1 if k == total - 1 else t0 + (k + 1) * dt
            for i in range(4):
                states[count, i] = s[i]
            count += 1
    return times_arr[:count], states_arr[:count], bool(truncated)


def coupled_invariant_values(int tag, double z, double c,
                             double[:, ::1] states, double eps):
    """Two-copy invariant sampled along a state array."""
    cdef int n = states.shape[0]
    cdef int j, ok
    cdef double hz1a, hz2a, hz3a, hz1b, hz2b, hz3b, wa, wb
    cdef double d1a[2]
    cdef double d2a[2]
    cdef double d3a[2]
    cdef double d1b[2]
    cdef double d2b[2]
    cdef double d3b[2]
    cdef double ep, em, H1, H2, H3
    out_arr = np.empty(n, dtype=np.float64)
    cdef double[:] out = out_arr
    with nogil:
        for j in range(n):
            ok = copy_data(tag, z, c, states[j, 0], states[j, 1], eps,
                           &hz1a, &hz2a, &hz3a, d1a, d2a, d3a, &wa)
            ok = ok and copy_data(tag, z, c, states[j, 2], states[j, 3], eps,
                                  &hz1b, &hz2b, &hz3b, d1b, d2b, d3b, &wb)
            if not ok:
                out[j] = NAN
                continue
            ep = exp(2.0 * z * hz1b)
            em = exp(-2.0 * z * hz1a)
            H1 = hz1a + hz1b
            H2 = hz2a * ep + em * hz2b
            H3 = hz3a * ep + em * hz3b
            out[j] = shc_c(2.0 * z * H1) * H1 * H3 - H2 * H2
    return out_arr


def casimir_values(int tag, double z, double c, double[:, ::1] states, double eps):
    """Single-copy Casimir level sampled along a state array."""
    cdef int n = states.shape[0]
    cdef int j, ok
    cdef double hz1, hz2, hz3, w
    cdef double d1[2]
    cdef double d2[2]
    cdef double d3[2]
    out_arr = np.empty(n, dtype=np.float64)
    cdef double[:] out = out_arr
    with nogil:
        for j in range(n):
            ok = copy_data(tag, z, c, states[j, 0], states[j, 1], eps,
                           &hz1, &hz2, &hz3, d1, d2, d3, &w)
            if not ok:
                out[j] = NAN
                continue
            out[j] = shc_c(2.0 * z * hz1) * hz1 * hz3 - hz2 * hz2
    return out_arr
