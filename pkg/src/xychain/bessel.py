"""Integer-order Bessel functions of the first kind.

The isotropic chain propagates a locally inserted excitation with amplitudes
i^x J_x(lambda*t), so whole ladders J_0..J_n are needed at a single argument.
Miller's downward recurrence produces the full ladder in one sweep and stays
accurate in the tail where upward recurrence blows up.  The values are
normalized with J_0(x) + 2*sum_k J_{2k}(x) = 1.

Supported range is |n| <= 2000 and 0 <= x <= 2000, plenty for light cones of
a few hundred sites; outside that an OutOfRangeError is raised rather than
returning something quietly wrong.
"""

import math

import numpy as np

from .errors import OutOfRangeError

MAX_ORDER = 2000
MAX_ARGUMENT = 2000.0

_SMALL_X = 1e-4


def _series_row(nmax, x):
    # Ascending series for tiny argument: J_n(x) ~ (x/2)^n/n! * (1 - q/(n+1)
    # + q^2/(2(n+1)(n+2))), q = (x/2)^2.  At x <= 1e-4 the dropped q^3 term
    # is below 1e-26 relative.
    row = np.zeros(nmax + 1)
    half = 0.5 * x
    q = half * half
    lead = 1.0
    for n in range(nmax + 1):
        corr = 1.0 - q / (n + 1.0) + q * q / (2.0 * (n + 1.0) * (n + 2.0))
        row[n] = lead * corr
        lead *= half / (n + 1.0)
        if lead == 0.0:
            break
    return row


def bessel_row(nmax, x):
    """Return the array [J_0(x), J_1(x), ..., J_nmax(x)].

    Parameters
    ----------
    nmax : int
        Largest order, 0 <= nmax <= 2000.
    x : float
        Argument, 0 <= x <= 2000.

    Returns
    -------
    numpy.ndarray
        Shape (nmax + 1,), float64.
    """
    nmax = int(nmax)
    if nmax < 0 or nmax > MAX_ORDER:
        raise OutOfRangeError(f"order {nmax} outside [0, {MAX_ORDER}]")
    if not (0.0 <= x <= MAX_ARGUMENT):
        raise OutOfRangeError(f"argument {x} outside [0, {MAX_ARGUMENT}]")
    if x < _SMALL_X:
        return _series_row(nmax, x)

    # Start the downward sweep far enough above both the order and the
    # turning point that the minimal solution dominates by > 1e18.
    m_start = max(nmax, int(math.ceil(x))) + 16
    m_start += int(2.0 * math.sqrt(m_start)) + 20
    if m_start % 2:
        m_start += 1

    row = np.zeros(nmax + 1)
    jp = 0.0           # J_{m+1}
    j = 1e-290         # J_m, arbitrary seed
    even_sum = 0.0     # J_0 + 2*sum_{k>=1} J_{2k}
    for m in range(m_start, 0, -1):
        jm = (2.0 * m / x) * j - jp
        jp = j
        j = jm
        n = m - 1
        if n <= nmax:
            row[n] = jm
        if n % 2 == 0:
            even_sum += jm if n == 0 else 2.0 * jm
        if abs(j) > 1e250:
            j *= 1e-250
            jp *= 1e-250
            even_sum *= 1e-250
            row *= 1e-250
    row /= even_sum
    return row


def bessel_j(n, x):
    """J_n(x) for integer n (either sign), 0 <= x <= 2000.

    Negative orders use J_{-n}(x) = (-1)^n J_n(x).
    """
    n = int(n)
    sign = 1.0
    if n < 0:
        n = -n
        if n % 2:
            sign = -1.0
    return sign * bessel_row(n, x)[n]


def bessel_signed_row(nmax, x):
    """Array of J_n(x) for n = -nmax..nmax, indexed by n + nmax."""
    pos = bessel_row(nmax, x)
    out = np.empty(2 * nmax + 1)
    out[nmax:] = pos
    signs = np.where(np.arange(1, nmax + 1) % 2 == 1, -1.0, 1.0)
    out[:nmax] = (signs * pos[1:])[::-1]
    return out
