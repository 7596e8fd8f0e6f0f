"""Pure-Python crossing kernels.

Mirror of ``_core.pyx`` operation for operation, so both backends return
bit-identical results. Used when the compiled extension is unavailable or
``LCADC_PURE_PYTHON`` is set.
"""
import math

SINE = 0
TRIANGLE = 1
SAMPLED = 2

NOT_FOUND = 0
FOUND = 1
TOL_FAILED = -1

_TWO_PI = 2.0 * math.pi


def _seg(times, n, t, i):
    while i + 1 < n and times[i + 1] <= t:
        i += 1
    while i > 0 and times[i] > t:
        i -= 1
    return i


def _value(kind, amp, freq, offset, times, values, n, lo, hi, t, i):
    if kind == SINE:
        ph = t * freq
        ph -= math.floor(ph)
        v = offset + amp * math.sin(_TWO_PI * ph)
    elif kind == TRIANGLE:
        ph = t * freq
        ph -= math.floor(ph)
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


def eval_point(kind, amp, freq, offset, times, values, lo, hi, t):
    """Evaluate one source at time ``t``."""
    n = len(times)
    i = 0
    if kind == SAMPLED:
        i = _seg(times, n, t, 0)
    return _value(kind, amp, freq, offset, times, values, n, lo, hi, t, i)


def _next_break(kind, freq, times, n, t, i):
    # end of the monotone piece containing t
    if kind == SAMPLED:
        if i + 1 < n and times[i + 1] > t:
            return times[i + 1]
        return math.inf
    if freq <= 0.0:
        return math.inf
    q = 4.0 * freq
    k = math.floor((q * t - 1.0) / 2.0) + 1.0
    b = (2.0 * k + 1.0) / q
    while b <= t:
        k += 1.0
        b = (2.0 * k + 1.0) / q
    return b


def scan_crossing(kind, amp, freq, offset, times, values, lo, hi,
                  v_minus, v_plus, t_from, t_to, step, tol, max_iter):
    """Earliest exit of the source from ``[v_minus, v_plus]`` in ``(t_from, t_to]``.

    Returns ``(status, t_cross, direction)`` with status one of FOUND,
    NOT_FOUND or TOL_FAILED, and direction +1 (above ``v_plus``) or -1.
    """
    n = len(times)
    i = 0
    if kind == SAMPLED:
        i = _seg(times, n, t_from, 0)
    t_lo = t_from
    while t_lo < t_to:
        t_hi = t_lo + step
        b = _next_break(kind, freq, times, n, t_lo, i)
        if b < t_hi:
            t_hi = b
        if t_hi > t_to:
            t_hi = t_to
        if t_hi <= t_lo:
            # step below float resolution at this magnitude
            t_hi = math.nextafter(t_lo, math.inf)
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
                return TOL_FAILED, z, direction
            it += 1
            mid = a + 0.5 * (z - a)
            if mid <= a or mid >= z:
                return TOL_FAILED, z, direction
            if kind == SAMPLED:
                j = _seg(times, n, mid, j)
            v = _value(kind, amp, freq, offset, times, values, n, lo, hi, mid, j)
            if (direction > 0 and v > v_plus) or (direction < 0 and v < v_minus):
                z = mid
            else:
                a = mid
        return FOUND, z, direction
    return NOT_FOUND, t_to, 0
