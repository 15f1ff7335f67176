import math

import mpmath
import numpy as np
import pytest
from scipy import integrate

from uniform_wigner import NegativeArgument, bessel_j
from uniform_wigner.bessel import ASYMPTOTIC_MIN_X, SERIES_MAX_X, _hankel, _miller, _series, regime


def series_oracle(n, x, dps=40):
    """Ascending series of J_n at high precision; independent of the library."""
    with mpmath.workdps(dps):
        x = mpmath.mpf(x)
        total = mpmath.mpf(0)
        k = 0
        while True:
            term = (-1) ** k * (x / 2) ** (2 * k + n) / (mpmath.factorial(k) * mpmath.factorial(k + n))
            total += term
            if k > 5 and abs(term) < mpmath.mpf(10) ** (-dps):
                return total
            k += 1


def integral_oracle(n, x):
    """(1/pi) int_0^pi cos(n t - x sin t) dt by adaptive quadrature."""
    val, _ = integrate.quad(lambda t: math.cos(n * t - x * math.sin(t)), 0.0, math.pi, limit=400, epsabs=1e-13, epsrel=1e-12)
    return val / math.pi


def test_values_at_zero():
    assert bessel_j(0, 0.0) == 1.0
    for n in (1, 2, 17, 64):
        assert bessel_j(n, 0.0) == 0.0


def test_first_zero_of_j0():
    lo, hi = mpmath.mpf(2), mpmath.mpf(3)
    for _ in range(80):
        mid = (lo + hi) / 2
        if series_oracle(0, mid) > 0:
            lo = mid
        else:
            hi = mid
    assert float(lo) == pytest.approx(2.404825557695773, abs=1e-15)
    assert abs(bessel_j(0, 2.404825557695773)) < 1e-12


@pytest.mark.parametrize("n", [0, 1, 2, 5, 20])
def test_small_x_leading_term(n):
    for x in (1e-3, 1e-5, 1e-8):
        lead = (x / 2) ** n / math.factorial(n)
        assert bessel_j(n, x) / lead == pytest.approx(1.0, abs=x * x + 1e-14)


def test_negative_argument():
    with pytest.raises(NegativeArgument):
        bessel_j(0, -1.0)


@pytest.mark.parametrize("x", [0.1, 1.0, 10.0, 100.0, 1000.0])
def test_three_term_recurrence(x):
    for n in range(1, 33):
        lo, mid, hi = bessel_j(n - 1, x), bessel_j(n, x), bessel_j(n + 1, x)
        rhs = 2 * n / x * mid
        scale = max(abs(lo), abs(hi), abs(rhs))
        assert abs(lo + hi - rhs) <= 1e-11 * scale


@pytest.mark.parametrize("x", [0.5, 1.0, 3.7, 10.0, 42.0, 100.0])
def test_normalization_sum(x):
    total = bessel_j(0, x)
    k = 1
    while True:
        term = bessel_j(2 * k, x)
        total += 2 * term
        if 2 * k > x and abs(term) < 1e-17:
            break
        k += 1
    assert total == pytest.approx(1.0, abs=1e-11)


def test_integral_representation():
    for n in range(0, 17):
        for x in (0.01, 0.5, 1.0, 2.0, 5.0, 12.5, 25.0, 37.0, 50.0):
            assert bessel_j(n, x) == pytest.approx(integral_oracle(n, x), abs=1e-10)


def test_against_mpmath_all_regimes():
    rng = np.random.default_rng(7)
    xs = list(np.concatenate([rng.uniform(0, 2, 8), rng.uniform(2, 100, 8), rng.uniform(100, 1e4, 8)]))
    xs += [SERIES_MAX_X, ASYMPTOTIC_MIN_X, 4096.0, 1e4]
    seen = set()
    for n in (0, 1, 3, 8, 16, 33, 64):
        for x in xs:
            ref = float(mpmath.besselj(n, x))
            assert abs(bessel_j(n, x) - ref) <= 1e-13 * max(1.0, abs(ref))
            seen.add(regime(n, x))
    assert seen == {"series", "miller", "asymptotic"}


def test_regime_continuity():
    # adjacent methods agree where the dispatcher switches between them
    for n in range(0, 65):
        assert abs(_series(n, SERIES_MAX_X) - _miller(n, SERIES_MAX_X)) < 1e-11
        edge = max(ASYMPTOTIC_MIN_X, float(n * n))
        assert abs(_miller(n, edge) - _hankel(n, edge)) < 1e-11
        assert abs(bessel_j(n, edge - 1e-9) - _miller(n, edge - 1e-9)) == 0.0


def test_large_order_small_value():
    # deep in the evanescent region the value must stay relatively accurate
    ref = float(mpmath.besselj(40, 5.0))
    assert bessel_j(40, 5.0) == pytest.approx(ref, rel=1e-12)
    assert bessel_j(300, 1e-3) == 0.0
