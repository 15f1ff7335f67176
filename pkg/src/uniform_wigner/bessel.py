"""Integer-order Bessel functions of the first kind, J_n(x), for x >= 0.

Three regimes are used:

* ascending power series for ``x < SERIES_MAX_X``;
* Hankel's large-argument expansion for ``x >= max(ASYMPTOTIC_MIN_X, n**2)``;
* Miller's downward recurrence, normalized with
  ``J_0(x) + 2 * sum_k J_2k(x) = 1``, in between.

Accuracy is about 1e-15 * max(1, |J_n(x)|) for ``x <= 1e4`` and ``n <= 64``.
"""

import math

from .errors import DomainError, NegativeArgument

__all__ = ["bessel_j", "SERIES_MAX_X", "ASYMPTOTIC_MIN_X", "regime"]

SERIES_MAX_X = 2.0
ASYMPTOTIC_MIN_X = 25.0

_RESCALE_AT = 1e250
_RESCALE_BY = 1e-250
_SQRT_HALF = math.sqrt(0.5)


def regime(n, x):
    """Name of the method :func:`bessel_j` uses at (n, x)."""
    if x < SERIES_MAX_X:
        return "series"
    if x >= max(ASYMPTOTIC_MIN_X, float(n) * n):
        return "asymptotic"
    return "miller"


def bessel_j(n, x):
    """J_n(x) for integer ``n >= 0`` and real ``x >= 0``.

    Parameters
    ----------
    n : int
        Order.  Negative orders are rejected; reduce them with
        ``J_{-n}(x) = (-1)**n J_n(x)`` first.
    x : float
        Argument.

    Returns
    -------
    float

    Raises
    ------
    NegativeArgument
        If ``x < 0``.
    """
    if isinstance(n, bool) or int(n) != n or n < 0:
        raise DomainError(f"order must be a non-negative integer, got {n!r}")
    n = int(n)
    x = float(x)
    if not x >= 0.0:
        raise NegativeArgument(f"x must be >= 0, got {x!r}")
    if x == 0.0:
        return 1.0 if n == 0 else 0.0
    method = regime(n, x)
    if method == "series":
        return _series(n, x)
    if method == "asymptotic":
        return _hankel(n, x)
    return _miller(n, x)


def _series(n, x):
    # sum_k (-1)^k (x/2)^(2k+n) / (k! (k+n)!)
    half = 0.5 * x
    log_lead = n * math.log(half) - math.lgamma(n + 1)
    if log_lead < -745.0:
        return 0.0
    lead = math.exp(log_lead)
    q = -half * half
    term = 1.0
    total = 1.0
    k = 0
    while True:
        k += 1
        term *= q / (k * (k + n))
        total += term
        if abs(term) < 1e-17 * abs(total):
            break
    return lead * total


def _hankel(n, x):
    mu = 4.0 * n * n
    p_sum = 1.0
    q_sum = 0.0
    term = 1.0
    prev = math.inf
    k = 0
    while True:
        k += 1
        term *= (mu - (2 * k - 1) ** 2) / (k * 8.0 * x)
        mag = abs(term)
        if mag > prev or term == 0.0:
            break
        # terms k = 1, 2, 3, 4, ... enter Q, P, Q, P with signs +, -, -, +
        if k % 2:
            q_sum += term if (k // 2) % 2 == 0 else -term
        else:
            p_sum += -term if (k // 2) % 2 else term
        if mag < 1e-17:
            break
        prev = mag
    # chi = x - (2n+1) pi/4, reduced exactly through the phase octant
    octant = (2 * n + 1) % 8
    cphi = _SQRT_HALF if octant in (1, 7) else -_SQRT_HALF
    sphi = _SQRT_HALF if octant in (1, 3) else -_SQRT_HALF
    cx, sx = math.cos(x), math.sin(x)
    cos_chi = cx * cphi + sx * sphi
    sin_chi = sx * cphi - cx * sphi
    return math.sqrt(2.0 / (math.pi * x)) * (p_sum * cos_chi - q_sum * sin_chi)


def _miller_start(n, x):
    top = max(n, x)
    start = int(top) + 30 + int(math.sqrt(50.0 * top))
    return start + (start % 2)


def _miller(n, x):
    start = _miller_start(n, x)
    two_over_x = 2.0 / x
    upper = 0.0  # J_{k+1}, unnormalized
    cur = 1e-300  # J_k
    norm = 0.0
    value = 0.0
    for k in range(start, 0, -1):
        lower = k * two_over_x * cur - upper  # J_{k-1}
        upper, cur = cur, lower
        if abs(cur) > _RESCALE_AT:
            cur *= _RESCALE_BY
            upper *= _RESCALE_BY
            norm *= _RESCALE_BY
            value *= _RESCALE_BY
        order = k - 1
        if order == n:
            value = cur
        if order % 2 == 0 and order > 0:
            norm += 2.0 * cur
    norm += cur  # J_0
    return value / norm
