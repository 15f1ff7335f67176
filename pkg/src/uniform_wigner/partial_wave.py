"""Partial-wave overlap integral for a Gaussian wavepacket.

The quantity of interest is

    I(rho, l) = 1/(2 eps^2) * int_0^pi sin(t) exp(-rho (1 - cos t) / (2 eps^2)) P_l(cos t) dt

with ``rho = k/p`` and ``eps = sigma_p/p``.  Three evaluations are provided:

* :func:`integral_exact` - adaptive composite Gauss-Legendre quadrature in
  ``u = 1 - cos t``;
* :func:`integral_approx` - the closed form ``exp(-eps^2 (l(l+1) + 1/3)/rho)/rho``;
* :func:`integral_bessel_form` - the identity
  ``I = exp(-a) i_l(a) / eps^2`` with ``a = rho/(2 eps^2)`` and ``i_l`` the
  modified spherical Bessel function, evaluated by downward recurrence.  It
  shares nothing with the quadrature and is used to cross-check it.
"""

from dataclasses import dataclass
import math
import warnings

import numpy as np

from .errors import DivisionByNearZero, DomainError, QuadratureNotConverged

__all__ = [
    "WavepacketParams",
    "RadialPoint",
    "integral_exact",
    "integral_exact_table",
    "integral_approx",
    "integral_bessel_form",
    "integral_rel_error",
    "transform_wavefunction",
    "wavefunction_table",
]

QUAD_RTOL = 1e-10
GL_NODES = 16
MAX_PANELS = 200_000

# exp(-x) is below the smallest subnormal past this point
_EXP_CUTOFF = 745.0
_GL_X, _GL_W = np.polynomial.legendre.leggauss(GL_NODES)


@dataclass(frozen=True)
class WavepacketParams:
    """Mean momentum ``p`` and momentum spread ``sigma_p`` (same units)."""

    p: float
    sigma_p: float

    def __post_init__(self):
        if not (self.p > 0 and self.sigma_p > 0):
            raise DomainError(f"p and sigma_p must be positive, got p={self.p}, sigma_p={self.sigma_p}")
        if self.epsilon > 0.1:
            warnings.warn(
                f"epsilon = sigma_p/p = {self.epsilon:.3g} is not small; the closed form degrades",
                stacklevel=3,
            )

    @property
    def epsilon(self):
        return self.sigma_p / self.p

    @classmethod
    def from_epsilon(cls, epsilon, p=1.0):
        return cls(p=p, sigma_p=epsilon * p)


@dataclass(frozen=True)
class RadialPoint:
    k: float
    p: float

    def __post_init__(self):
        if not (self.k > 0 and self.p > 0):
            raise DomainError("k and p must be positive")

    @property
    def rho(self):
        return self.k / self.p


def _check_args(rho, l, epsilon):
    if not rho > 0:
        raise DomainError(f"rho must be positive, got {rho!r}")
    if not epsilon > 0:
        raise DomainError(f"epsilon must be positive, got {epsilon!r}")
    if isinstance(l, bool) or int(l) != l or l < 0:
        raise DomainError(f"l must be a non-negative integer, got {l!r}")
    return float(rho), int(l), float(epsilon)


def _legendre_moments(u, w_coarse, w_fine, l_max, every_l):
    """Panel sums of w * P_l(1 - u) for the coarse and fine rules.

    ``u`` holds the coarse nodes followed by the fine nodes of each panel,
    shape (panels, 3 * GL_NODES).  Returns ``(coarse, fine)`` of shape
    (panels,), or (l_max + 1, panels) when ``every_l`` is set.  The recurrence
    runs on P_n and P_n - P_{n-1} so that ``1 - u`` is never rounded.
    """
    nc = w_coarse.shape[1]

    def sums(p):
        return (w_coarse * p[:, :nc]).sum(axis=1), (w_fine * p[:, nc:]).sum(axis=1)

    p = np.ones_like(u)
    diff = np.zeros_like(u)
    if every_l:
        coarse = np.empty((l_max + 1, u.shape[0]))
        fine = np.empty_like(coarse)
        coarse[0], fine[0] = sums(p)
    for n in range(l_max):
        diff = (n * diff - (2 * n + 1) * u * p) / (n + 1)
        p = p + diff
        if every_l:
            coarse[n + 1], fine[n + 1] = sums(p)
    if every_l:
        return coarse, fine
    return sums(p)


def _panel_nodes(lo, hi):
    mid = 0.5 * (lo + hi)
    half = 0.5 * (hi - lo)
    u = mid[:, None] + half[:, None] * _GL_X[None, :]
    w = half[:, None] * _GL_W[None, :]
    return u, w


def _initial_edges(rho, l, epsilon):
    scale = 2.0 * epsilon * epsilon / rho  # e-folding length of the weight in u
    u_max = min(2.0, _EXP_CUTOFF * scale)
    theta_max = 2.0 * math.asin(math.sqrt(0.5 * u_max))
    step = min(epsilon / 4.0, math.pi / (8 * l + 8))
    n = max(1, math.ceil(theta_max / step))
    theta = np.linspace(0.0, theta_max, n + 1)
    return 2.0 * np.sin(0.5 * theta) ** 2, scale


def _quadrature(rho, l, epsilon, rtol, every_l):
    edges, scale = _initial_edges(rho, l, epsilon)
    lo, hi = edges[:-1], edges[1:]
    done_val = 0.0
    done_err = 0.0
    done_abs = 0.0
    norm = 1.0 / (2.0 * epsilon * epsilon)

    def evaluate(a, b):
        u, w = _panel_nodes(a, b)
        mid = 0.5 * (a + b)
        u1, w1 = _panel_nodes(a, mid)
        u2, w2 = _panel_nodes(mid, b)
        uf = np.concatenate([u1, u2], axis=1)
        wf = np.concatenate([w1, w2], axis=1)
        wc = w * np.exp(-u / scale) * norm
        wf = wf * np.exp(-uf / scale) * norm
        return _legendre_moments(np.concatenate([u, uf], axis=1), wc, wf, l, every_l)

    total_panels = lo.size
    abs_weight = 0.0
    while True:
        coarse, fine = evaluate(lo, hi)
        err = np.abs(fine - coarse)
        val = done_val + fine.sum(axis=-1)
        tot_err = done_err + err.sum(axis=-1)
        # mass of |integrand| bounds the roundoff floor of any summation
        abs_weight = done_abs + np.abs(fine).sum(axis=-1)
        if every_l:
            target = rtol * np.max(np.abs(val))
        else:
            target = rtol * abs(val)
        if np.all(tot_err <= target):
            break
        floor = 64 * np.finfo(float).eps * abs_weight
        if np.any(floor > target) and np.all(tot_err <= 4 * floor + target):
            raise QuadratureNotConverged(
                f"cancellation: |I| = {np.min(np.abs(val)):.3g} is below the roundoff floor "
                f"{np.max(floor):.3g} of the quadrature (rho={rho}, l={l}, epsilon={epsilon})"
            )
        panel_err = err if err.ndim == 1 else err.max(axis=0)
        limit = (np.min(target) if np.ndim(target) else target) / lo.size
        bad = panel_err > limit
        if not np.any(bad):
            bad = panel_err >= panel_err.max()
        good = ~bad
        done_val = done_val + fine[..., good].sum(axis=-1)
        done_err = done_err + err[..., good].sum(axis=-1)
        done_abs = done_abs + np.abs(fine[..., good]).sum(axis=-1)
        a, b = lo[bad], hi[bad]
        mid = 0.5 * (a + b)
        lo = np.concatenate([a, mid])
        hi = np.concatenate([mid, b])
        order = np.argsort(lo)
        lo, hi = lo[order], hi[order]
        total_panels += a.size
        if total_panels > MAX_PANELS:
            raise QuadratureNotConverged(
                f"panel budget {MAX_PANELS} exhausted (rho={rho}, l={l}, epsilon={epsilon})"
            )
    return val


def integral_exact(rho, l, epsilon, rtol=QUAD_RTOL):
    """I(rho, l) by adaptive Gauss-Legendre quadrature.

    Integrates ``exp(-rho u / (2 eps^2)) P_l(1 - u) / (2 eps^2)`` over
    ``u in [0, 2]`` (the part beyond the underflow of the weight is dropped).
    Initial panels are uniform in the polar angle with width
    ``min(eps/4, pi/(8l + 8))``; panels are bisected until the 16-point and
    2x16-point rules agree to ``rtol`` relative to the total.

    Raises
    ------
    QuadratureNotConverged
        If the panel budget runs out, or if ``|I|`` is so far below the
        magnitude of the integrand that double-precision summation cannot
        reach ``rtol`` (large ``l * eps``).
    """
    rho, l, epsilon = _check_args(rho, l, epsilon)
    return float(_quadrature(rho, l, epsilon, rtol, every_l=False))


def integral_exact_table(rho, l_max, epsilon, rtol=QUAD_RTOL):
    """I(rho, l) for every l in 0..l_max from one adaptive quadrature.

    The tolerance is applied relative to the largest entry, so the smallest
    entries carry an absolute rather than relative error.
    """
    rho, l_max, epsilon = _check_args(rho, l_max, epsilon)
    return np.asarray(_quadrature(rho, l_max, epsilon, rtol, every_l=True))


def integral_approx(rho, l, epsilon):
    """Closed form exp(-eps^2 (l(l+1) + 1/3) / rho) / rho."""
    rho, l, epsilon = _check_args(rho, l, epsilon)
    return math.exp(-epsilon * epsilon * (l * (l + 1) + 1.0 / 3.0) / rho) / rho


def _scaled_sph_i(l, a):
    """exp(-a) * i_l(a) for a > 0 by Miller's downward recurrence.

    i_{n-1} = i_{n+1} + (2n + 1)/a * i_n, normalized by
    exp(-a) i_0(a) = (1 - exp(-2a)) / (2a).
    """
    if a < 1e-3:
        # ascending series i_l(a) = a^l / (2l+1)!! * (1 + a^2/(2(2l+3)) + ...)
        log_lead = l * math.log(a) - sum(math.log(2 * k + 1) for k in range(l + 1))
        term, total, k = 1.0, 1.0, 0
        while abs(term) > 1e-17 * total:
            k += 1
            term *= a * a / (2 * k * (2 * l + 2 * k + 1))
            total += term
        return math.exp(log_lead - a) * total if log_lead - a > -_EXP_CUTOFF else 0.0
    start = int(math.sqrt(l * l + 50.0 * a + 400.0)) + 30
    upper = 0.0
    cur = 1e-300
    value = 0.0
    for n in range(start, 0, -1):
        lower = upper + (2 * n + 1) / a * cur
        upper, cur = cur, lower
        if n - 1 == l:
            value = cur
        if cur > 1e250:
            upper *= 1e-250
            cur *= 1e-250
            value *= 1e-250
    i0 = -math.expm1(-2.0 * a) / (2.0 * a)
    ratio = value / cur
    return i0 * ratio


def integral_bessel_form(rho, l, epsilon):
    """I(rho, l) from exp(-a) i_l(a) / eps^2, a = rho / (2 eps^2).

    Exact identity for the full integral over [0, pi]; accurate to about
    1e-14 relative for every l, including values far too small for
    quadrature to resolve.
    """
    rho, l, epsilon = _check_args(rho, l, epsilon)
    a = rho / (2.0 * epsilon * epsilon)
    return _scaled_sph_i(l, a) / (epsilon * epsilon)


def integral_rel_error(rho, l, epsilon):
    """(I_exact - I_approx) / I_exact with I_exact from quadrature."""
    exact = integral_exact(rho, l, epsilon)
    if abs(exact) < 1e-280:
        raise DivisionByNearZero(f"|I(rho={rho}, l={l})| = {exact:.3g} is too close to zero")
    return (exact - integral_approx(rho, l, epsilon)) / exact


def _radial_factor(k, params):
    p, sig = params.p, params.sigma_p
    norm = (2.0 * math.pi * sig * sig) ** -0.75
    return norm * math.sqrt(2.0 * math.pi) * k * math.exp(-((k - p) ** 2) / (4.0 * sig * sig))


def transform_wavefunction(k, l, m, params, mode="quadrature"):
    """Psi(k, l, m): the Gaussian wavepacket in the (k, l, m) basis.

    ``Psi = delta_{m0} (2 pi sigma^2)^(-3/4) sqrt(2 pi) k exp(-(k-p)^2 / (4 sigma^2))
    sqrt(l + 1/2) 2 eps^2 I(k/p, l)``.  The ``(2 pi sigma^2)^(-3/4)`` factor is
    the normalization of the momentum-space wavepacket, so that
    ``sum_l int dk |Psi|^2 = 1``.

    ``mode`` selects ``I`` from :func:`integral_exact` (``"quadrature"``) or
    :func:`integral_approx` (``"closed_form"``).
    """
    if not k > 0:
        raise DomainError(f"k must be positive, got {k!r}")
    if isinstance(l, bool) or int(l) != l or l < 0:
        raise DomainError(f"l must be a non-negative integer, got {l!r}")
    if int(m) != m:
        raise DomainError(f"m must be an integer, got {m!r}")
    if mode not in ("quadrature", "closed_form"):
        raise DomainError(f"unknown mode {mode!r}")
    if m != 0:
        return 0.0
    eps = params.epsilon
    rho = k / params.p
    if mode == "quadrature":
        integral = integral_exact(rho, l, eps)
    else:
        integral = integral_approx(rho, l, eps)
    return _radial_factor(k, params) * math.sqrt(l + 0.5) * 2.0 * eps * eps * integral


def wavefunction_table(k, l_max, params, mode="quadrature"):
    """Psi(k, l, 0) for l = 0..l_max as an array (one quadrature for all l)."""
    if not k > 0:
        raise DomainError(f"k must be positive, got {k!r}")
    eps = params.epsilon
    rho = k / params.p
    ls = np.arange(l_max + 1)
    if mode == "quadrature":
        integrals = integral_exact_table(rho, l_max, eps)
    elif mode == "closed_form":
        integrals = np.exp(-eps * eps * (ls * (ls + 1) + 1.0 / 3.0) / rho) / rho
    else:
        raise DomainError(f"unknown mode {mode!r}")
    return _radial_factor(k, params) * np.sqrt(ls + 0.5) * 2.0 * eps * eps * integrals
