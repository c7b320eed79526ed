"""Tests for the closed-form evaluator: parameter validation, the exact
building blocks (endpoint weights, E-polynomials, Gaussian moments, the
residual integral) and the assembled transform values.

Expected numbers here were frozen from independent references: analytic
special cases, scipy quadrature, or 40-digit arbitrary-precision
quadrature of the defining integrals.
"""

import math

import pytest
from hypothesis import given, settings, strategies as st
from scipy import integrate

from besselgauss.closed_form import (
    BETA_MIN,
    EvalParams,
    EvaluationError,
    OverflowGuardError,
    ParameterError,
    e_poly,
    endpoint_weights,
    eval_closed,
    gaussian_moment_even,
    gaussian_moment_odd,
    residual_integral,
)
from besselgauss.numerics import MAX_ORDER, Polynomial, one_minus_t2_pow, poly_derivative

SQRT_PI = math.sqrt(math.pi)


# ---------------------------------------------------------------------------
# parameter validation

def test_params_accept_and_normalize():
    p = EvalParams(2, 3, 1, 0)
    assert (p.m, p.n, p.beta, p.q) == (2, 3, 1.0, 0.0)
    assert isinstance(p.beta, float) and isinstance(p.q, float)


def test_params_reject_bad_orders():
    with pytest.raises(ParameterError):
        EvalParams(-1, 0, 1.0, 0.0)
    with pytest.raises(ParameterError):
        EvalParams(0, -2, 1.0, 0.0)
    with pytest.raises(ParameterError):
        EvalParams(0, MAX_ORDER + 1, 1.0, 0.0)
    with pytest.raises(ParameterError):
        EvalParams(1.5, 0, 1.0, 0.0)


def test_params_reject_bad_beta_and_q():
    with pytest.raises(ParameterError):
        EvalParams(0, 0, 0.0, 0.0)
    with pytest.raises(ParameterError):
        EvalParams(0, 0, -1.0, 0.0)
    with pytest.raises(ParameterError):
        EvalParams(0, 0, float("nan"), 0.0)
    with pytest.raises(ParameterError):
        EvalParams(0, 0, 1.0, float("inf"))


def test_tiny_beta_hits_overflow_guard():
    with pytest.raises(ParameterError, match="overflow guard"):
        EvalParams(0, 0, BETA_MIN / 2, 0.0)
    # ParameterError doubles as ValueError and as the package base error
    assert issubclass(ParameterError, ValueError)
    assert issubclass(ParameterError, EvaluationError)
    assert issubclass(OverflowGuardError, ArithmeticError)


# ---------------------------------------------------------------------------
# endpoint weights

def test_endpoint_weight_spot_values():
    w1 = endpoint_weights(1)
    assert w1.at_plus1(1) == -2
    assert w1.at_plus1(2) == -2
    assert w1.at_minus1(1) == 2
    assert w1.at_minus1(2) == -2
    w2 = endpoint_weights(2)
    assert w2.at_plus1(3) == 24
    assert w2.at_minus1(3) == -24


def test_endpoint_weights_vanish_outside_band():
    w = endpoint_weights(3)
    for k in (0, 1, 2, 7, 8, 50):
        assert w.at_plus1(k) == 0
        assert w.at_minus1(k) == 0


@pytest.mark.parametrize("n", range(11))
def test_endpoint_weights_equal_exact_derivatives(n):
    # Brute force: differentiate (1 - t^2)^n symbolically and evaluate at +-1.
    w = endpoint_weights(n)
    p = one_minus_t2_pow(n)
    for k in range(0, 2 * n + 2):
        d = poly_derivative(p, k)
        assert w.at_plus1(k) == d(1)
        assert w.at_minus1(k) == d(-1)
        assert isinstance(w.at_plus1(k), int)


# ---------------------------------------------------------------------------
# E-polynomials

def test_e_poly_low_orders():
    p = EvalParams(0, 0, 1.0, 1.0)
    assert e_poly(0, p).coeffs == (1.0,)
    assert e_poly(1, p).coeffs == (0.5, -0.5)
    q0 = EvalParams(0, 0, 1.0, 0.0)
    assert e_poly(2, q0).coeffs == (-0.5, 0.0, 0.25)
    with pytest.raises(ValueError):
        e_poly(-1, p)


@pytest.mark.parametrize("beta", [0.5, 1.0, 2.0])
@pytest.mark.parametrize("q", [0.5, 1.0, 3.0])
def test_e_poly_satisfies_derivative_recursion(beta, q):
    # E_{j+1} = E_j' + ((q - t)/2b^2) E_j, coefficient by coefficient
    p = EvalParams(0, 0, beta, q)
    inv = 1.0 / (2.0 * beta * beta)
    shift = Polynomial((q * inv, -inv))
    for j in range(9):
        lhs = e_poly(j + 1, p)
        rhs = e_poly(j, p).derivative() + shift * e_poly(j, p)
        assert lhs.degree == rhs.degree
        for a, b in zip(lhs.coeffs, rhs.coeffs):
            assert a == pytest.approx(b, rel=1e-12, abs=1e-15)


# ---------------------------------------------------------------------------
# Gaussian moments over the transform interval

def test_moment_frozen_values():
    p = EvalParams(0, 0, 1.0, 1.0)     # interval [-1, 0]
    assert gaussian_moment_even(0, p) == pytest.approx(0.746824132812427, abs=1e-14)
    assert gaussian_moment_even(0, p) == pytest.approx(0.5 * SQRT_PI * math.erf(1.0), rel=1e-14)
    assert gaussian_moment_odd(0, p) == pytest.approx(-0.31606027941427883, abs=1e-14)
    assert gaussian_moment_odd(0, p) == pytest.approx(-(1 - math.exp(-1)) / 2, rel=1e-14)


def test_odd_moments_vanish_exactly_on_symmetric_interval():
    p = EvalParams(0, 0, 0.7, 0.0)
    for s in range(9):
        assert gaussian_moment_odd(s, p) == 0.0


def test_moment_rejects_negative_order():
    p = EvalParams(0, 0, 1.0, 0.0)
    with pytest.raises(ValueError):
        gaussian_moment_even(-1, p)
    with pytest.raises(ValueError):
        gaussian_moment_odd(-1, p)


@pytest.mark.filterwarnings("ignore::scipy.integrate.IntegrationWarning")
@pytest.mark.parametrize("beta", [0.5, 2.0])
@pytest.mark.parametrize("q", [0.0, 3.0])
def test_moments_match_quadrature(beta, q):
    # quadpack's roundoff warning here is conservative; its returned error
    # estimate is asserted below and was cross-checked at 40 digits
    p = EvalParams(0, 0, beta, q)
    lo = -(q + 1.0) / (2.0 * beta)
    up = (1.0 - q) / (2.0 * beta)
    assert up - lo == pytest.approx(1.0 / beta, rel=1e-15)
    for s in range(9):
        for power, got in ((2 * s, gaussian_moment_even(s, p)),
                           (2 * s + 1, gaussian_moment_odd(s, p))):
            ref, err = integrate.quad(
                lambda u, pw=power: u ** pw * math.exp(-u * u),
                lo, up, epsabs=1e-13, epsrel=1e-14, limit=200,
            )
            assert err < 1e-13 * (1.0 + abs(ref))
            assert abs(got - ref) / (1.0 + max(abs(got), abs(ref))) < 1e-12


# ---------------------------------------------------------------------------
# residual integral (the extra term when m < n)

def test_residual_zero_when_no_residual_needed():
    # m >= n makes the derivative order exceed 2n, so the term is absent
    assert residual_integral(EvalParams(2, 2, 0.8, 1.3)) == 0.0
    assert residual_integral(EvalParams(5, 1, 1.0, 2.0)) == 0.0


def test_residual_odd_symmetry_gives_exact_zero():
    # q = 0 with odd derivative order: odd polynomial against an even Gaussian
    assert residual_integral(EvalParams(0, 2, 1.0, 0.0)) == 0.0


def test_residual_frozen_against_analytic_form():
    # m=0, n=1: the second derivative of (1 - t^2) is the constant -2, so
    # R = -2 * 2b * (sqrt(pi)/2) * (erf((q+1)/2b) - erf((q-1)/2b))
    beta, q = 1.0, 0.7
    got = residual_integral(EvalParams(0, 1, beta, q))
    assert got == pytest.approx(-3.3274773459416838, rel=1e-13)
    ana = -2.0 * SQRT_PI * beta * (
        math.erf((q + 1) / (2 * beta)) - math.erf((q - 1) / (2 * beta))
    )
    assert got == pytest.approx(ana, rel=1e-13)


def test_residual_frozen_against_quadrature():
    # m=1, n=2: reference from 40-digit quadrature of the defining integral
    got = residual_integral(EvalParams(1, 2, 1.0, 0.7))
    assert got == pytest.approx(39.92972815130021, rel=1e-11)


def test_residual_matches_quadrature_generic():
    for (m, n, beta, q) in [(0, 3, 0.6, 1.3), (2, 4, 1.1, -0.4), (0, 5, 2.0, 3.0)]:
        r = m + n + 1
        poly = poly_derivative(one_minus_t2_pow(n), r)
        ref, err = integrate.quad(
            lambda t: math.exp(-(q - t) ** 2 / (4 * beta * beta)) * poly(t),
            -1.0, 1.0, epsabs=1e-10, epsrel=1e-12, limit=200,
        )
        assert err < 1e-9 * (1.0 + abs(ref))
        got = residual_integral(EvalParams(m, n, beta, q))
        assert abs(got - ref) / (1.0 + max(abs(got), abs(ref))) < 1e-10


# ---------------------------------------------------------------------------
# assembled transform values

def test_frozen_point_with_elementary_closed_form():
    # I at m=n=0, b=q=1 equals (1 - e^-1)/(i sqrt(2))
    got = eval_closed(EvalParams(0, 0, 1.0, 1.0))
    assert got.real == 0.0
    assert got.imag == pytest.approx(-(1 - math.exp(-1)) / math.sqrt(2), abs=1e-15)
    assert got.imag == pytest.approx(-0.44697673367510304, abs=1e-15)


def test_frozen_points_from_quadrature():
    # references from 40-digit quadrature of the defining integral
    got = eval_closed(EvalParams(2, 1, 1.0, 0.5))
    assert got.imag == 0.0
    assert got.real == pytest.approx(0.20280430300433142, rel=1e-12)
    got = eval_closed(EvalParams(1, 3, 0.5, 1.0))
    assert got.real == 0.0
    assert got.imag == pytest.approx(-0.07317783305987428, rel=1e-12)
    got = eval_closed(EvalParams(2, 2, 0.8, 1.3))
    assert got.imag == pytest.approx(-0.127066054017638, rel=1e-12)


def test_odd_integrand_vanishes_at_zero_q():
    # m+n even and q = 0 leaves an odd integrand over the whole line
    for m, n in [(3, 1), (0, 2), (2, 4), (1, 1)]:
        assert eval_closed(EvalParams(m, n, 2.0, 0.0)) == 0.0


def test_phase_is_pure_by_construction():
    for m in range(5):
        for n in range(5):
            v = eval_closed(EvalParams(m, n, 0.8, 1.7))
            if (m + n + 1) % 2 == 0:
                assert v.imag == 0.0
            else:
                assert v.real == 0.0


@settings(max_examples=60, deadline=None)
@given(
    st.integers(min_value=0, max_value=6),
    st.integers(min_value=0, max_value=6),
    st.floats(min_value=0.3, max_value=3.0, allow_nan=False),
    st.floats(min_value=-5.0, max_value=5.0, allow_nan=False),
)
def test_conjugate_symmetry_under_q_negation(m, n, beta, q):
    a = eval_closed(EvalParams(m, n, beta, q))
    b = eval_closed(EvalParams(m, n, beta, -q))
    assert a.real == b.real
    assert a.imag == -b.imag
