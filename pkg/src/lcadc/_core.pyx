# cython: language_level=3, boundscheck=False, wraparound=False, cdivision=True, initializedcheck=False
"""Compiled crossing kernels.

Operation order matches ``_core_py`` exactly; keep the two in lockstep.
"""
from libc.math cimport sin, floor, nextafter, INFINITY, M_PI

cdef int SINE = 0
cdef int TRIANGLE = 1
cdef int SAMPLED = 2

cdef int NOT_FOUND = 0
cdef int FOUND = 1
cdef int TOL_FAILED = -1

cdef double _TWO_PI = 2.0 * M_PI


cdef inline Py_ssize_t _seg(const double[:] times, Py_ssize_t n, double t, Py_ssize_t i) nogil:
    while i + 1 < n and times[i + 1] <= t:
        i += 1
    while i > 0 and times[i] > t:
        i -= 1
    return i


cdef inline double _value(int kind, double amp, double freq, double offset,
                          const double[:] times, const double[:] values, Py_ssize_t n,
                          double lo, double hi, double t, Py_ssize_t i) nogil:
    cdef double ph, v, t0, v0
    if kind == SINE:
        ph = t * freq
        ph -= floor(ph)
        v = offset + amp * sin(_TWO_PI * ph)
    elif kind == TRIANGLE:
        ph = t * freq
        ph -= floor(ph)
        if ph < 0.25:
            v = offset + amp * (4.0 * ph)
        elif ph < 0.75:
            v = offset + amp * (2.0 - 4.0 * ph)
        else:
            v = offset + amp * (4.0 * ph - 4.0)
    else:
        if t <= times[0]:
            v = values[0]
        elif t >= times[n - 1]:
            v = values[n - 1]
        else:
            t0 = times[i]
            v0 = values[i]
            v = v0 + (values[i + 1] - v0) * ((t - t0) / (times[i + 1] - t0))
    if v < lo:
        v = lo
    elif v > hi:
        v = hi
    return v


cdef inline double _next_break(int kind, double freq, const double[:] times, Py_ssize_t n,
                               double t, Py_ssize_t i) nogil:
    cdef double q, k, b
    if kind == SAMPLED:
        if i + 1 < n and times[i + 1] > t:
            return times[i + 1]
        return INFINITY
    if freq <= 0.0:
        return INFINITY
    q = 4.0 * freq
    k = floor((q * t - 1.0) / 2.0) + 1.0
    b = (2.0 * k + 1.0) / q
    while b <= t:
        k += 1.0
        b = (2.0 * k + 1.0) / q
    return b


def eval_point(int kind, double amp, double freq, double offset,
               const double[:] times, const double[:] values,
               double lo, double hi, double t):
    cdef Py_ssize_t n = times.shape[0]
    cdef Py_ssize_t i = 0
    if kind == SAMPLED:
        i = _seg(times, n, t, 0)
    return _value(kind, amp, freq, offset, times, values, n, lo, hi, t, i)


def scan_crossing(int kind, double amp, double freq, double offset,
                  const double[:] times, const double[:] values,
                  double lo, double hi, double v_minus, double v_plus,
                  double t_from, double t_to, double step, double tol, int max_iter):
    cdef Py_ssize_t n = times.shape[0]
    cdef Py_ssize_t i = 0, j
    cdef double t_lo, t_hi, b, v, a, z, mid
    cdef int direction, it
    if kind == SAMPLED:
        i = _seg(times, n, t_from, 0)
    t_lo = t_from
    with nogil:
        while t_lo < t_to:
            t_hi = t_lo + step
            b = _next_break(kind, freq, times, n, t_lo, i)
            if b < t_hi:
                t_hi = b
            if t_hi > t_to:
                t_hi = t_to
            if t_hi <= t_lo:
                t_hi = nextafter(t_lo, INFINITY)
            if kind == SAMPLED:
                i = _seg(times, n, t_hi, i)
            v = _value(kind, amp, freq, offset, times, values, n, lo, hi, t_hi, i)
            if v > v_plus:
                direction = 1
            elif v < v_minus:
                direction = -1
            else:
                t_lo = t_hi
                continue

            a = t_lo
            z = t_hi
            j = i
            it = 0
            while z - a > tol:
                if it >= max_iter:
                    with gil:
                        return TOL_FAILED, z, direction
                it += 1
                mid = a + 0.5 * (z - a)
                if mid <= a or mid >= z:
                    with gil:
                        return TOL_FAILED, z, direction
                if kind == SAMPLED:
                    j = _seg(times, n, mid, j)
                v = _value(kind, amp, freq, offset, times, values, n, lo, hi, mid, j)
                if (direction > 0 and v > v_plus) or (direction < 0 and v < v_minus):
                    z = mid
                else:
                    a = mid
            with gil:
                return FOUND, z, direction
    return NOT_FOUND, t_to, 0
