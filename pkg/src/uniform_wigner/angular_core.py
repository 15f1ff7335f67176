"""Half-integer angular-momentum indices and the constants of the uniform approximation.

Quantum numbers are stored doubled (``two_j = 2j`` and so on) so integer and
half-integer spins are both exact.  The two derived constants used by
:func:`uniform_wigner.wigner_uniform.d_approx` are

.. math::

    \\Delta(j, m_1, m_2) = \\sqrt{j(j+1) - \\tfrac13 (m_1^2 + m_2^2 + m_1 m_2 - 1)}

    D(j, m_1, m_2) = (-1)^{m_1-m_2}
        \\left[\\frac{(j+m_1)!\\,(j-m_2)!}{(j-m_1)!\\,(j+m_2)!}\\right]^{1/2}
        \\Delta^{-(m_1-m_2)}
"""

from dataclasses import dataclass
import math

from .errors import AngleOutOfRange, DomainError, MOutOfRange, NegativeJ, ParityMismatch

__all__ = [
    "AngularIndex",
    "ApproxParams",
    "DerivationConstants",
    "make_index",
    "check_angle",
    "canonicalize",
    "delta",
    "delta_squared",
    "prefactor_d",
    "log_factorial_ratio",
    "approx_params",
    "derivation_constants",
]


@dataclass(frozen=True)
class AngularIndex:
    """A validated triple (j, m1, m2) held as doubled integers.

    Build through :func:`make_index`; the constructor itself does not validate.
    """

    two_j: int
    two_m1: int
    two_m2: int

    @property
    def j(self) -> float:
        return self.two_j / 2

    @property
    def m1(self) -> float:
        return self.two_m1 / 2

    @property
    def m2(self) -> float:
        return self.two_m2 / 2

    @property
    def alpha(self) -> int:
        """m1 - m2, always an integer."""
        return (self.two_m1 - self.two_m2) // 2

    @property
    def beta(self) -> int:
        """m1 + m2, always an integer."""
        return (self.two_m1 + self.two_m2) // 2

    @property
    def is_canonical(self) -> bool:
        return self.two_m1 >= self.two_m2

    def swapped(self) -> "AngularIndex":
        return AngularIndex(self.two_j, self.two_m2, self.two_m1)

    def __str__(self):
        def half(n):
            return str(n // 2) if n % 2 == 0 else f"{n}/2"

        return f"(j={half(self.two_j)}, m1={half(self.two_m1)}, m2={half(self.two_m2)})"


@dataclass(frozen=True)
class ApproxParams:
    delta: float
    prefactor: float
    alpha: int
    sign_flip: int


@dataclass(frozen=True)
class DerivationConstants:
    """alpha = m1 - m2 and beta = m1 + m2; kept for documentation and checks only."""

    alpha: int
    beta: int


def make_index(two_j, two_m1, two_m2):
    """Validate doubled quantum numbers and return an :class:`AngularIndex`.

    Raises
    ------
    NegativeJ
        If ``two_j < 0``.
    MOutOfRange
        If ``|two_m1|`` or ``|two_m2|`` exceeds ``two_j``.
    ParityMismatch
        If the three numbers are not all even or all odd.
    """
    for name, v in (("two_j", two_j), ("two_m1", two_m1), ("two_m2", two_m2)):
        if isinstance(v, bool) or int(v) != v:
            raise DomainError(f"{name} must be an integer, got {v!r}")
    two_j, two_m1, two_m2 = int(two_j), int(two_m1), int(two_m2)
    if two_j < 0:
        raise NegativeJ(f"two_j must be >= 0, got {two_j}")
    if abs(two_m1) > two_j or abs(two_m2) > two_j:
        raise MOutOfRange(f"|m| exceeds j for two_j={two_j}, two_m1={two_m1}, two_m2={two_m2}")
    if not (two_j % 2 == two_m1 % 2 == two_m2 % 2):
        raise ParityMismatch(
            f"two_j={two_j}, two_m1={two_m1}, two_m2={two_m2} do not share parity"
        )
    return AngularIndex(two_j, two_m1, two_m2)


def check_angle(theta):
    """Return ``theta`` as a float after checking 0 <= theta < pi.

    Angles are never wrapped: anything outside the interval is an error.
    """
    theta = float(theta)
    if not (0.0 <= theta < math.pi):
        raise AngleOutOfRange(f"theta must lie in [0, pi), got {theta!r}")
    return theta


def canonicalize(idx):
    """Return ``(index with m1 >= m2, sign)``.

    When the index is swapped the sign is ``(-1)**(m1 - m2)``, so that
    ``d(idx) == sign * d(canonical)``; otherwise it is +1.
    """
    if idx.is_canonical:
        return idx, 1
    sign = -1 if idx.alpha % 2 else 1
    return idx.swapped(), sign


def _delta_sq_numerator(idx):
    # 12 * Delta^2 as an exact integer
    tj, a, b = idx.two_j, idx.two_m1, idx.two_m2
    return 3 * tj * (tj + 2) - (a * a + b * b + a * b) + 4


def delta_squared(idx):
    return _delta_sq_numerator(idx) / 12


def delta(idx):
    """Delta(j, m1, m2), the effective Bessel wavenumber.

    ``Delta**2 >= j + 1/3`` for every valid index; this is checked exactly in
    integer arithmetic.
    """
    num = _delta_sq_numerator(idx)
    # Delta^2 >= j + 1/3  <=>  12 Delta^2 >= 6 two_j + 4
    assert num >= 6 * idx.two_j + 4, f"Delta^2 < j + 1/3 for {idx}"
    return math.sqrt(num / 12)


def log_factorial_ratio(idx):
    """log of (j+m1)! (j-m2)! / ((j-m1)! (j+m2)!) for a canonical index.

    Both ratios telescope to products of ``m1 - m2`` consecutive integers, so
    the log is an exactly-rounded sum of logs rather than a difference of
    large log-gamma values.
    """
    if not idx.is_canonical:
        raise DomainError(f"index {idx} is not canonical (m1 < m2)")
    jp2 = (idx.two_j + idx.two_m2) // 2  # j + m2
    jm1 = (idx.two_j - idx.two_m1) // 2  # j - m1
    alpha = idx.alpha
    logs = [math.log(i) for i in range(jp2 + 1, jp2 + alpha + 1)]
    logs += [math.log(i) for i in range(jm1 + 1, jm1 + alpha + 1)]
    return math.fsum(logs)


def prefactor_d(idx):
    """The normalization constant D(j, m1, m2), sign included.

    Requires a canonical index.  Evaluated in log space; safe for j well past
    10**4.
    """
    alpha = idx.alpha
    logmag = 0.5 * log_factorial_ratio(idx) - alpha * math.log(delta(idx))
    sign = -1.0 if alpha % 2 else 1.0
    return sign * math.exp(logmag)


def approx_params(idx):
    """Canonicalize and bundle Delta, D, the Bessel order and the swap phase."""
    can, sign = canonicalize(idx)
    return ApproxParams(delta=delta(can), prefactor=prefactor_d(can), alpha=can.alpha, sign_flip=sign)


def derivation_constants(idx):
    return DerivationConstants(alpha=idx.alpha, beta=idx.beta)
