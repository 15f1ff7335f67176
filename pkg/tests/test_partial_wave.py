import math
import warnings

from hypothesis import assume, given, settings, strategies as st
import numpy as np
import pytest
from scipy import integrate, special

from uniform_wigner import (
    DivisionByNearZero,
    DomainError,
    QuadratureNotConverged,
    RadialPoint,
    WavepacketParams,
    integral_approx,
    integral_bessel_form,
    integral_exact,
    integral_exact_table,
    integral_rel_error,
    transform_wavefunction,
    wavefunction_table,
)


def l0_closed_form(rho, eps):
    return -math.expm1(-rho / (eps * eps)) / rho


def scipy_bessel_oracle(rho, l, eps):
    # exp(-a) i_l(a) with a = rho / (2 eps^2), via scipy's scaled I_{l+1/2}
    a = rho / (2 * eps * eps)
    return math.sqrt(math.pi / (2 * a)) * special.ive(l + 0.5, a) / (eps * eps)


# -- parameter types ----------------------------------------------------------


def test_wavepacket_params():
    wp = WavepacketParams(p=2.0, sigma_p=0.02)
    assert wp.epsilon == pytest.approx(0.01)
    assert WavepacketParams.from_epsilon(0.01, p=2.0) == wp
    with pytest.raises(DomainError):
        WavepacketParams(p=-1.0, sigma_p=0.1)


def test_wavepacket_warns_for_wide_packets():
    with pytest.warns(UserWarning):
        WavepacketParams(p=1.0, sigma_p=0.2)
    with warnings.catch_warnings():
        warnings.simplefilter("error")
        WavepacketParams(p=1.0, sigma_p=0.1)


def test_radial_point():
    assert RadialPoint(k=3.0, p=2.0).rho == 1.5
    with pytest.raises(DomainError):
        RadialPoint(k=0.0, p=1.0)


# -- the closed form ----------------------------------------------------------


def test_approx_values():
    for eps in (1e-3, 1e-2, 0.1):
        assert integral_approx(1.0, 0, eps) == pytest.approx(math.exp(-eps * eps / 3), rel=1e-15)
    rho, l, eps = 1.3, 40, 0.01
    expected = math.exp(-eps * eps * (l * (l + 1) + 1 / 3) / rho) / rho
    assert integral_approx(rho, l, eps) == pytest.approx(expected, rel=1e-15)


@settings(max_examples=100)
@given(
    st.floats(min_value=0.5, max_value=2.0),
    st.integers(min_value=0, max_value=3000),
    st.floats(min_value=1e-4, max_value=0.05),
)
def test_approx_scaling_identity(rho, l, eps):
    assume(eps * eps * (l * (l + 1) + 1 / 3) / rho < 600)  # both sides representable
    lhs = integral_approx(2 * rho, l, eps) * 2 * rho / (integral_approx(rho, l, eps) * rho)
    rhs = math.exp(-eps * eps * (l * (l + 1) + 1 / 3) * (1 / (2 * rho) - 1 / rho))
    assert lhs == pytest.approx(rhs, rel=1e-12)


def test_rejects_bad_arguments():
    for args in [(0.0, 1, 0.01), (1.0, -1, 0.01), (1.0, 1, 0.0), (1.0, 1.5, 0.01)]:
        with pytest.raises(DomainError):
            integral_approx(*args)
        with pytest.raises(DomainError):
            integral_exact(*args)


# -- quadrature ---------------------------------------------------------------


@pytest.mark.parametrize("rho", [0.9, 1.0, 1.1])
@pytest.mark.parametrize("eps", [1e-3, 1e-2, 0.1])
def test_exact_l0_closed_form(rho, eps):
    assert integral_exact(rho, 0, eps) == pytest.approx(l0_closed_form(rho, eps), rel=1e-10)


@pytest.mark.parametrize(
    "rho,l,eps", [(1.0, 1, 1e-3), (1.0, 700, 1e-3), (0.95, 2500, 1e-3), (1.0, 30, 0.01), (1.2, 60, 0.05), (0.7, 5, 0.3)]
)
def test_exact_against_bessel_identity(rho, l, eps):
    quad = integral_exact(rho, l, eps)
    assert quad == pytest.approx(integral_bessel_form(rho, l, eps), rel=1e-9)
    assert quad == pytest.approx(scipy_bessel_oracle(rho, l, eps), rel=1e-9)


def test_exact_against_scipy_quad():
    rho, l, eps = 1.0, 12, 0.05
    w = 1 / (2 * eps * eps)

    def f(t):
        return math.sin(t) * math.exp(-rho * (1 - math.cos(t)) * w) * special.eval_legendre(l, math.cos(t)) * w

    ref, _ = integrate.quad(f, 0.0, math.pi, points=[0.1, 0.3, 0.6], limit=500, epsabs=0, epsrel=1e-12)
    assert integral_exact(rho, l, eps) == pytest.approx(ref, rel=1e-10)


def test_bessel_form_small_argument_branch():
    # a < 1e-3 takes the ascending series
    for l in (0, 1, 4):
        assert integral_bessel_form(1e-4, l, 1.0) == pytest.approx(scipy_bessel_oracle(1e-4, l, 1.0), rel=1e-13)


def test_table_matches_single():
    table = integral_exact_table(1.0, 400, 1e-3)
    assert table.shape == (401,)
    for l in (0, 17, 200, 400):
        assert table[l] == pytest.approx(integral_exact(1.0, l, 1e-3), rel=1e-9)


def test_positivity_on_grid():
    for eps in (1e-3, 1e-2):
        for rho in (0.99, 1.0, 1.01):
            top = int(3 / eps)
            for l in range(0, top + 1, max(1, top // 6)):
                assert integral_exact(rho, l, eps) > 0


def test_far_tail_is_out_of_reach_of_quadrature():
    # the true value (~4e-44) is below the cancellation floor of the quadrature
    with pytest.raises(QuadratureNotConverged):
        integral_exact(1.0, 10000, 1e-3)
    with pytest.raises(QuadratureNotConverged):
        integral_rel_error(1.0, 10000, 1e-3)
    value = integral_bessel_form(1.0, 10000, 1e-3)
    bound = math.exp(-(1e-3**2) * 10000 * 10001 * 0.9)
    assert 0 < value < bound
    assert value == pytest.approx(scipy_bessel_oracle(1.0, 10000, 1e-3), rel=1e-10)


def test_rel_error_values():
    exact = l0_closed_form(1.0, 1e-3)
    expected = (exact - math.exp(-1e-6 / 3)) / exact
    assert integral_rel_error(1.0, 0, 1e-3) == pytest.approx(expected, rel=1e-6, abs=1e-16)
    assert abs(integral_rel_error(1.0, 1000, 1e-3)) < 3e-5


def test_rel_error_near_zero(monkeypatch):
    import uniform_wigner.partial_wave as pw

    monkeypatch.setattr(pw, "integral_exact", lambda rho, l, eps: 1e-300)
    with pytest.raises(DivisionByNearZero):
        pw.integral_rel_error(1.0, 5, 1e-3)


# -- wavefunction -------------------------------------------------------------


def test_wavefunction_vanishes_off_axis():
    params = WavepacketParams.from_epsilon(0.01)
    for m in (1, -1, 7):
        for mode in ("quadrature", "closed_form"):
            assert transform_wavefunction(1.0, 3, m, params, mode) == 0.0


def test_wavefunction_closed_form_at_peak():
    p, eps, l = 2.0, 0.01, 50
    params = WavepacketParams.from_epsilon(eps, p=p)
    sigma = eps * p
    norm = (2 * math.pi * sigma * sigma) ** -0.75  # momentum-space normalization
    bare = math.sqrt(2 * math.pi) * p * math.sqrt(l + 0.5) * 2 * eps * eps * math.exp(-eps * eps * (l * (l + 1) + 1 / 3))
    assert transform_wavefunction(p, l, 0, params, "closed_form") == pytest.approx(norm * bare, rel=1e-14)


def test_wavefunction_modes_agree():
    params = WavepacketParams.from_epsilon(0.01, p=1.0)
    for k in (0.98, 1.0, 1.03):
        q = transform_wavefunction(k, 40, 0, params, "quadrature")
        c = transform_wavefunction(k, 40, 0, params, "closed_form")
        assert q == pytest.approx(c, rel=1e-3)


def test_wavefunction_table_matches_scalar():
    params = WavepacketParams.from_epsilon(0.01, p=1.0)
    table = wavefunction_table(1.01, 60, params)
    closed = wavefunction_table(1.01, 60, params, mode="closed_form")
    for l in (0, 10, 60):
        assert table[l] == pytest.approx(transform_wavefunction(1.01, l, 0, params), rel=1e-9)
        assert closed[l] == pytest.approx(transform_wavefunction(1.01, l, 0, params, "closed_form"), rel=1e-14)
    with pytest.raises(DomainError):
        wavefunction_table(1.0, 5, params, mode="other")
    with pytest.raises(DomainError):
        transform_wavefunction(1.0, 5, 0, params, mode="other")


def test_wavefunction_normalization_coarse():
    # a wider packet keeps this quick; the tight check lives in the acceptance suite
    eps = 0.05
    params = WavepacketParams.from_epsilon(eps, p=1.0)
    l_max = 120
    nodes, weights = np.polynomial.legendre.leggauss(48)
    ks = 1.0 + 8 * eps * nodes
    total = sum(w * 8 * eps * np.sum(wavefunction_table(k, l_max, params) ** 2) for k, w in zip(ks, weights))
    assert total == pytest.approx(1.0, abs=1e-4)
