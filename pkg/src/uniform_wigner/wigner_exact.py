"""Reference values of the Wigner small-d matrix.

``d_exact`` runs the three-term recurrence in j at fixed (m1, m2, theta),
seeded with the single-term closed form at the lowest admissible j.  The
recurrence is carried in difference form,

    a_{j+1} (d_{j+1} - d_j) = c_j (d_j - d_{j-1}) + (E_j - (2j+1) j (j+1) u) d_j,

with ``u = 1 - cos(theta) = 2 sin^2(theta/2)`` and ``E_j`` evaluated without
cancellation.  The textbook form multiplies ``cos(theta)`` into terms of size
j**2, so its rounding error grows like j**2 * eps near theta = 0; this one
stays at the few-ulp level for small angles.

``d_series_highprec`` sums the terminating hypergeometric (Wigner) series in
MPFR arithmetic through gmpy2 and serves as an independent oracle.
"""

import functools
import math

import gmpy2
import numpy as np

from .angular_core import AngularIndex, canonicalize, check_angle, log_factorial_ratio, make_index
from .errors import ArgumentOutOfRange, DomainError, PrecisionExhausted

__all__ = [
    "d_exact",
    "d_exact_j_range",
    "d_exact_many",
    "d_matrix_row",
    "d_series_highprec",
    "legendre_p",
    "legendre_p_1mu",
    "DEFAULT_DIGITS",
]

DEFAULT_DIGITS = 60

_RESCALE_AT = 1e200
_LOG_RESCALE = math.log(_RESCALE_AT)
_LOG_TINY = -745.2  # below this exp() underflows to zero


def _seed_log(two_j0, two_m1, two_m2, log_s, log_c):
    """log|d| and sign of the single-term closed form at j = j0 (canonical index)."""
    alpha = (two_m1 - two_m2) // 2
    idx0 = AngularIndex(two_j0, two_m1, two_m2)
    logmag = (
        0.5 * log_factorial_ratio(idx0)
        - math.lgamma(alpha + 1)
        + alpha * log_s
        + (two_j0 - alpha) * log_c
    )
    return logmag, (-1.0 if alpha % 2 else 1.0)


def _excess(p1, p2, sq1, sq2, diff):
    # (p1 + p2)/2 - sqrt(p1 p2) = (sqrt p1 - sqrt p2)^2 / 2, with p1 - p2 = diff
    if diff == 0.0:
        return 0.0
    t = diff / (sq1 + sq2)
    return 0.5 * t * t


def _ladder(two_m1, two_m2, theta, two_j_max):
    """d^j_{m1 m2}(theta) for j = j0, j0+1, ..., j_max (canonical index, theta > 0).

    Returns a list of floats.
    """
    m1 = two_m1 / 2
    m2 = two_m2 / 2
    two_j0 = max(abs(two_m1), abs(two_m2))
    alpha = (two_m1 - two_m2) // 2
    half = 0.5 * theta
    s = math.sin(half)
    u = 2.0 * s * s
    msq1, msq2 = m1 * m1, m2 * m2
    mdiff = msq2 - msq1  # P1 - P2 and Q1 - Q2
    base_e = 0.5 * alpha * alpha

    out = []
    if two_j0 == 0:
        # j0 = 0 has a vanishing leading coefficient; start from j = 1
        out.append(1.0)
        if two_j_max == 0:
            return out
        d, diff, logscale = 1.0 - u, -u, 0.0
        j = 1.0
        out.append(d)
    else:
        logmag, sign = _seed_log(two_j0, two_m1, two_m2, math.log(s), 0.5 * math.log1p(-s * s))
        d, diff, logscale = sign, sign, logmag
        j = two_j0 / 2
        out.append(_unscale(d, logscale))

    steps = (two_j_max - int(round(2 * j))) // 2
    for _ in range(steps):
        jp = j + 1.0
        p1, p2 = jp * jp - msq1, jp * jp - msq2
        q1, q2 = j * j - msq1, j * j - msq2
        sp1, sp2 = math.sqrt(p1), math.sqrt(p2)
        sq1, sq2 = math.sqrt(q1), math.sqrt(q2)
        a = j * sp1 * sp2
        c = jp * sq1 * sq2
        e = (2 * j + 1) * base_e + j * _excess(p1, p2, sp1, sp2, mdiff) + jp * _excess(
            q1, q2, sq1, sq2, mdiff
        )
        force = e - (2 * j + 1) * j * jp * u
        diff = (c * diff + force * d) / a
        d += diff
        if abs(d) > _RESCALE_AT:
            d /= _RESCALE_AT
            diff /= _RESCALE_AT
            logscale += _LOG_RESCALE
        j = jp
        out.append(_unscale(d, logscale))
    return out


def _unscale(mant, logscale):
    if mant == 0.0:
        return 0.0
    total = math.log(abs(mant)) + logscale
    if total < _LOG_TINY:
        return 0.0
    return math.copysign(math.exp(total), mant)


def d_exact(idx, theta):
    """Wigner small-d element d^j_{m1 m2}(theta), Condon-Shortley phases.

    Parameters
    ----------
    idx : AngularIndex
    theta : float
        Angle in [0, pi).

    Returns
    -------
    float
        Absolute error is below 1e-11 for j up to a few thousand.
    """
    theta = check_angle(theta)
    if theta == 0.0:
        return 1.0 if idx.two_m1 == idx.two_m2 else 0.0
    can, sign = canonicalize(idx)
    return sign * _ladder(can.two_m1, can.two_m2, theta, can.two_j)[-1]


def d_exact_j_range(two_m1, two_m2, theta, two_j_max):
    """All d^j_{m1 m2}(theta) for j from max(|m1|, |m2|) up to j_max.

    Returns ``(two_j, values)`` as numpy arrays; one recurrence pass serves
    the whole range.
    """
    theta = check_angle(theta)
    top = make_index(two_j_max, two_m1, two_m2)
    two_j0 = max(abs(two_m1), abs(two_m2))
    two_js = np.arange(two_j0, two_j_max + 1, 2)
    if theta == 0.0:
        return two_js, np.full(two_js.shape, 1.0 if two_m1 == two_m2 else 0.0)
    can, sign = canonicalize(top)
    vals = np.asarray(_ladder(can.two_m1, can.two_m2, theta, two_j_max)) * sign
    return two_js, vals


def d_exact_many(two_j, two_m1, two_m2, theta):
    """Vectorized :func:`d_exact` over arrays of (two_m1, two_m2) at one j.

    All pairs run through one recurrence pass in numpy; each pair joins at its
    own starting j.  Inputs must already be valid for ``two_j``.
    """
    theta = check_angle(theta)
    tm1 = np.atleast_1d(np.asarray(two_m1, dtype=np.int64))
    tm2 = np.atleast_1d(np.asarray(two_m2, dtype=np.int64))
    tm1, tm2 = np.broadcast_arrays(tm1, tm2)
    if np.any(np.abs(tm1) > two_j) or np.any(np.abs(tm2) > two_j):
        raise DomainError("|m| exceeds j")
    if np.any((tm1 - two_j) % 2) or np.any((tm2 - two_j) % 2):
        raise DomainError("parity mismatch between j and m")
    if theta == 0.0:
        return (tm1 == tm2).astype(float)

    swap = tm1 < tm2
    sign = np.where(swap & (((tm2 - tm1) // 2) % 2 == 1), -1.0, 1.0)
    a1 = np.where(swap, tm2, tm1)
    a2 = np.where(swap, tm1, tm2)
    m1 = a1 / 2.0
    m2 = a2 / 2.0
    two_j0 = np.maximum(np.abs(a1), np.abs(a2))
    alpha = (a1 - a2) // 2

    half = 0.5 * theta
    s = math.sin(half)
    u = 2.0 * s * s
    log_s, log_c = math.log(s), 0.5 * math.log1p(-s * s)

    logmag = np.empty(a1.shape)
    for i in range(a1.size):
        idx0 = AngularIndex(int(two_j0[i]), int(a1[i]), int(a2[i]))
        logmag[i] = (
            0.5 * log_factorial_ratio(idx0)
            - math.lgamma(int(alpha[i]) + 1)
            + alpha[i] * log_s
            + (two_j0[i] - alpha[i]) * log_c
        )
    seed_sign = np.where(alpha % 2 == 1, -1.0, 1.0)

    d = np.zeros(a1.shape)
    diff = np.zeros(a1.shape)
    logscale = np.zeros(a1.shape)
    active = np.zeros(a1.shape, dtype=bool)
    msq1, msq2 = m1 * m1, m2 * m2
    mdiff = msq2 - msq1
    base_e = 0.5 * alpha * alpha
    nz = mdiff != 0.0

    zero_start = two_j0 == 0
    start = int(two_j0.min())
    for tj in range(start, two_j + 1, 2):
        j = tj / 2
        join = (two_j0 == tj) & ~zero_start
        if np.any(join):
            d[join] = seed_sign[join]
            diff[join] = seed_sign[join]
            logscale[join] = logmag[join]
            active |= join
        if tj == 2 and np.any(zero_start):
            d[zero_start] = 1.0 - u
            diff[zero_start] = -u
            logscale[zero_start] = 0.0
            active |= zero_start
        if tj == two_j:
            break
        jp = j + 1.0
        p1 = np.maximum(jp * jp - msq1, 0.0)
        p2 = np.maximum(jp * jp - msq2, 0.0)
        q1 = np.maximum(j * j - msq1, 0.0)
        q2 = np.maximum(j * j - msq2, 0.0)
        sp1, sp2 = np.sqrt(p1), np.sqrt(p2)
        sq1, sq2 = np.sqrt(q1), np.sqrt(q2)
        with np.errstate(divide="ignore", invalid="ignore"):
            t1 = np.where(nz, mdiff / (sp1 + sp2), 0.0)
            t2 = np.where(nz & (sq1 + sq2 > 0), mdiff / (sq1 + sq2), 0.0)
            e = (2 * j + 1) * base_e + j * 0.5 * t1 * t1 + jp * 0.5 * t2 * t2
            force = e - (2 * j + 1) * j * jp * u
            a = j * sp1 * sp2
            c = jp * sq1 * sq2
            new_diff = (c * diff + force * d) / a
        new_diff = np.where(active, new_diff, 0.0)
        diff = new_diff
        d = d + new_diff
        big = np.abs(d) > _RESCALE_AT
        if np.any(big):
            d[big] /= _RESCALE_AT
            diff[big] /= _RESCALE_AT
            logscale[big] += _LOG_RESCALE
    if two_j == 0:
        d[zero_start] = 1.0
        logscale[zero_start] = 0.0

    with np.errstate(divide="ignore"):
        total = np.log(np.abs(d)) + logscale
    out = np.where((d == 0.0) | (total < _LOG_TINY), 0.0, np.sign(d) * np.exp(np.minimum(total, 709.0)))
    return sign * out


def d_matrix_row(two_j, two_m1, theta):
    """Row ``d^j_{m1, m2}(theta)`` for m2 = -j, ..., j (ascending)."""
    two_m2 = np.arange(-two_j, two_j + 1, 2)
    return two_m2, d_exact_many(two_j, two_m1, two_m2, theta)


def d_series_highprec(idx, theta, digits=DEFAULT_DIGITS):
    """Sum Wigner's terminating hypergeometric series in extended precision.

    The index must be canonical (m1 >= m2).  Terms are accumulated as MPFR
    numbers with ``digits`` decimal digits of working precision; the loss to
    cancellation is estimated as ``log10(max|term| / |sum|)`` and must leave
    at least 15 digits.

    Raises
    ------
    PrecisionExhausted
        If the estimated cancellation exceeds ``digits - 15``.
    """
    if not idx.is_canonical:
        raise DomainError(f"index {idx} is not canonical; apply canonicalize first")
    if digits < 30:
        raise DomainError(f"digits must be >= 30, got {digits}")
    theta = check_angle(theta)
    alpha = idx.alpha
    jm1 = (idx.two_j - idx.two_m1) // 2  # j - m1
    jp2 = (idx.two_j + idx.two_m2) // 2  # j + m2
    two_j = idx.two_j
    if theta == 0.0:
        return 1.0 if alpha == 0 else 0.0

    bits = int(math.ceil(digits * math.log2(10))) + 8
    n_terms = min(jm1, jp2)
    # Integer coefficients: c_k (alpha+K)! K! / alpha! with c_k the 2F1 coefficient.
    # Consecutive ratios are (n1-k)(n2-k) / ((alpha+1+k)(k+1)), divisions exact.
    coef = [math.perm(alpha + n_terms, n_terms) * math.factorial(n_terms)]
    for k in range(n_terms):
        coef.append(coef[-1] * (jm1 - k) * (jp2 - k) // ((alpha + 1 + k) * (k + 1)))

    with gmpy2.context(gmpy2.get_context(), precision=bits):
        s, c, z = _half_angle(theta, bits)
        num = math.factorial(jp2 + alpha) * math.factorial(jm1 + alpha)  # (j+m1)! (j-m2)!
        den = math.factorial(jm1) * math.factorial(jp2)  # (j-m1)! (j+m2)!
        lead = gmpy2.sqrt(gmpy2.mpfr(num) / den) / (math.factorial(alpha + n_terms) * math.factorial(n_terms))
        lead *= s**alpha * c ** (two_j - alpha)
        if alpha % 2:
            lead = -lead
        poly = gmpy2.mpfr(coef[-1])
        for ck in reversed(coef[:-1]):
            poly = poly * z + ck
        if poly == 0:
            raise PrecisionExhausted(f"series for {idx} at theta={theta} summed to zero")
        # |c_k z^k| is unimodal in k: find the peak in floats
        tan2 = math.tan(0.5 * theta) ** 2
        peak = 0
        while peak < n_terms and (jm1 - peak) * (jp2 - peak) * tan2 > (alpha + 1 + peak) * (peak + 1):
            peak += 1
        biggest = math.log(coef[peak]) + peak * 2.0 * math.log(math.tan(0.5 * theta))
        fpoly = abs(float(poly))
        log_poly = math.log(fpoly) if 0.0 < fpoly < math.inf else float(gmpy2.log(abs(poly)))
        lost = (biggest - log_poly) / math.log(10)
        if lost > digits - 15:
            raise PrecisionExhausted(
                f"cancellation of {lost:.1f} digits exceeds the {digits}-digit budget"
            )
        return float(lead * poly)


@functools.lru_cache(maxsize=32)
def _half_angle(theta, bits):
    """sin(theta/2), cos(theta/2) and -tan^2(theta/2) as MPFR numbers of ``bits`` precision."""
    with gmpy2.context(gmpy2.get_context(), precision=bits):
        th = gmpy2.mpfr(theta)
        s = gmpy2.sin(th / 2)
        c = gmpy2.cos(th / 2)
        return s, c, -((s / c) ** 2)


def legendre_p(l, x):
    """Legendre polynomial P_l(x) by upward recurrence.

    ``x`` may be a scalar or a numpy array with entries in [-1, 1].  For
    ``|x| >= 0.5`` the recurrence runs in the difference form of
    :func:`legendre_p_1mu` on ``u = 1 - |x|`` (exact there), which keeps the
    absolute error near 1e-15 up to l = 5000 where the plain form drifts to
    1e-12.
    """
    if isinstance(l, bool) or int(l) != l or l < 0:
        raise DomainError(f"degree must be a non-negative integer, got {l!r}")
    l = int(l)
    xa = np.asarray(x, dtype=float)
    if np.any(np.abs(xa) > 1.0) or np.any(np.isnan(xa)):
        raise ArgumentOutOfRange("x must lie in [-1, 1]")
    scalar = xa.ndim == 0
    ax = np.abs(xa)
    near = ax >= 0.5
    out = np.empty_like(xa)
    if np.any(near):
        folded = _p_difference(l, 1.0 - ax[near])
        out[near] = np.where((l % 2 == 1) & (xa[near] < 0), -folded, folded)
    if not np.all(near):
        out[~near] = _p_plain(l, xa[~near])
    return float(out) if scalar else out


def _p_plain(l, x):
    prev = np.ones_like(x)
    if l == 0:
        return prev
    cur = x.copy()
    for n in range(1, l):
        prev, cur = cur, ((2 * n + 1) * x * cur - n * prev) / (n + 1)
    return cur


def _p_difference(l, u):
    p = np.ones_like(u)
    diff = np.zeros_like(u)
    for n in range(l):
        # (n+1)(P_{n+1} - P_n) = -(2n+1) u P_n + n (P_n - P_{n-1})
        diff = (n * diff - (2 * n + 1) * u * p) / (n + 1)
        p = p + diff
    return p


def legendre_p_1mu(l, u):
    """P_l(1 - u) for u in [0, 2], accurate for small u.

    Carries the recurrence on P_n and P_n - P_{n-1} so that u enters
    exactly and rounding of ``1 - u`` never happens.
    """
    if isinstance(l, bool) or int(l) != l or l < 0:
        raise DomainError(f"degree must be a non-negative integer, got {l!r}")
    ua = np.asarray(u, dtype=float)
    if np.any(ua < 0.0) or np.any(ua > 2.0) or np.any(np.isnan(ua)):
        raise ArgumentOutOfRange("u must lie in [0, 2]")
    p = _p_difference(int(l), ua)
    return float(p) if ua.ndim == 0 else p
