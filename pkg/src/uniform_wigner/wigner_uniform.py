"""Uniform low-angle Bessel approximation of the Wigner small-d matrix.

For m1 >= m2,

    d^j_{m1 m2}(theta) ~ D(j, m1, m2) (theta / sin theta)^(1/2) J_{m1-m2}(Delta theta),

and the case m1 < m2 follows from ``d_{m1 m2} = (-1)^(m1-m2) d_{m2 m1}``.
"""

import math

from .angular_core import approx_params, check_angle, canonicalize, log_factorial_ratio
from .bessel import bessel_j
from .errors import DomainError

__all__ = ["d_approx", "kinematic_factor", "small_angle_leading", "KINEMATIC_SERIES_BELOW"]

KINEMATIC_SERIES_BELOW = 1e-4


def kinematic_factor(theta):
    """(theta / sin theta)**0.5 on [0, pi), equal to 1 at theta = 0."""
    theta = check_angle(theta)
    if theta < KINEMATIC_SERIES_BELOW:
        t2 = theta * theta
        return 1.0 + t2 / 12.0 + t2 * t2 / 160.0
    return math.sqrt(theta / math.sin(theta))


def d_approx(idx, theta):
    """Approximate d^j_{m1 m2}(theta) by the uniform Bessel form.

    No cutoff in theta is imposed; the error grows with angle.  At
    ``theta = 0`` the exact limit (1 when m1 == m2, else 0) is returned.
    """
    theta = check_angle(theta)
    if theta == 0.0:
        return 1.0 if idx.two_m1 == idx.two_m2 else 0.0
    p = approx_params(idx)
    return p.sign_flip * p.prefactor * kinematic_factor(theta) * bessel_j(p.alpha, p.delta * theta)


def small_angle_leading(idx, theta):
    """Leading small-angle monomial of d^j_{m1 m2}(theta) for a canonical index.

    sqrt((j+m1)! (j-m2)! / ((j-m1)! (j+m2)!)) (-1)^(m1-m2) (theta/2)^(m1-m2) / (m1-m2)!
    """
    if not idx.is_canonical:
        raise DomainError(f"index {idx} is not canonical (m1 < m2)")
    theta = check_angle(theta)
    alpha = idx.alpha
    if alpha == 0:
        return 1.0
    if theta == 0.0:
        return 0.0
    logmag = 0.5 * log_factorial_ratio(idx) - math.lgamma(alpha + 1) + alpha * math.log(0.5 * theta)
    mag = math.exp(logmag) if logmag > -745.2 else 0.0
    return -mag if alpha % 2 else mag
