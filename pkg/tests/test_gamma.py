import math

import mpmath
import numpy as np
import pytest
from hypothesis import given
from hypothesis import strategies as st
from scipy import integrate, special

from airyseries.errors import ConvergenceError, DomainError
from airyseries.gamma import (
    GammaConfig,
    LogScaled,
    ln_gamma,
    log_regularized_lower,
    log_upper_incomplete,
    lower_incomplete_log,
    regularized_lower_P,
    scaled_upper_incomplete,
    upper_incomplete,
)


def upper_by_quadrature(a, x):
    # int_x^inf t^(a-1) e^-t dt
    val, _ = integrate.quad(lambda t: t ** (a - 1) * math.exp(-t), x, np.inf, epsabs=0, epsrel=1e-13, limit=200)
    return val


# --- LogScaled ---------------------------------------------------------------------


def test_logscaled_zero_and_sign_rules():
    zero = LogScaled.zero()
    assert zero.to_float() == 0.0
    assert (zero * LogScaled.from_float(3.0)).sign == 0
    neg = LogScaled.from_float(-2.0) * LogScaled.from_float(-4.0)
    assert neg.sign == 1
    assert neg.to_float() == pytest.approx(8.0, rel=1e-15)
    assert (LogScaled.from_float(6.0) / LogScaled.from_float(-3.0)).to_float() == pytest.approx(-2.0, rel=1e-15)


def test_logscaled_divide_by_zero():
    with pytest.raises(ZeroDivisionError):
        LogScaled.from_float(1.0) / LogScaled.zero()


@given(st.floats(min_value=-1e300, max_value=1e300, allow_nan=False).filter(lambda v: v == 0 or abs(v) > 1e-300))
def test_logscaled_round_trip_within_two_ulp(v):
    back = LogScaled.from_float(v).to_float()
    if v == 0:
        assert back == 0
    else:
        assert abs(back - v) <= 2 * math.ulp(v)


def test_logscaled_holds_values_beyond_binary64():
    huge = LogScaled.from_log(1000.0) * LogScaled.from_log(1000.0)
    assert huge.log_mag == pytest.approx(2000.0)
    assert math.isinf(huge.to_float())
    assert (huge / LogScaled.from_log(1999.0)).to_float() == pytest.approx(math.e, rel=1e-13)


# --- ln_gamma ----------------------------------------------------------------------


@pytest.mark.parametrize("x, expected", [
    (1.0, 0.0),
    (0.5, 0.5 * math.log(math.pi)),
    (3.5, math.log(15 * math.sqrt(math.pi) / 8)),
])
def test_ln_gamma_examples(x, expected):
    assert ln_gamma(x) == pytest.approx(expected, rel=1e-14, abs=1e-15)


@pytest.mark.parametrize("x", [1e-3, 0.3, 7.25, 180.5, 1999.0])
def test_ln_gamma_against_mpmath(x):
    assert ln_gamma(x) == pytest.approx(float(mpmath.loggamma(x)), rel=1e-14)


@pytest.mark.parametrize("bad", [0.0, -1.5, math.nan, math.inf])
def test_ln_gamma_domain(bad):
    with pytest.raises(DomainError):
        ln_gamma(bad)


# --- regularized lower P --------------------------------------------------------------


def test_lower_p_examples():
    assert regularized_lower_P(2.5, 0.0) == 0.0
    assert regularized_lower_P(0.5, 1.0) == pytest.approx(math.erf(1.0), rel=1e-13)
    # oracle for the erf value by quadrature as well
    quad, _ = integrate.quad(lambda t: t ** -0.5 * math.exp(-t), 0, 1.0, epsabs=0, epsrel=1e-13)
    assert regularized_lower_P(0.5, 1.0) == pytest.approx(quad / math.sqrt(math.pi), rel=1e-12)


def test_lower_p_tiny_value_survives_in_log_form():
    value = regularized_lower_P(100.5, 1.0)
    assert 0 < value < 1e-150
    # leading term x^a e^-x / Gamma(a+1) dominates the series
    leading = math.exp(-1.0 - math.lgamma(101.5))
    assert value == pytest.approx(leading, rel=1e-2)
    log_value = log_regularized_lower(np.array([400.5]), 1.0)[0]
    assert log_value == pytest.approx(float(mpmath.log(mpmath.gammainc(400.5, 0, 1.0, regularized=True))), rel=1e-13)


@pytest.mark.parametrize("a", [0.5, 3.5, 40.5, 200.5, 799.5])
@pytest.mark.parametrize("x", [0.3, 5.0, 42.0, 100.0])
def test_lower_p_against_mpmath(a, x):
    expected = mpmath.gammainc(a, 0, x, regularized=True)
    got = log_regularized_lower(np.array([a]), x)[0]
    assert got == pytest.approx(float(mpmath.log(expected)), rel=1e-13, abs=1e-13)


@given(st.floats(0.05, 300), st.lists(st.floats(0, 100), min_size=2, max_size=6))
def test_lower_p_is_a_monotone_probability(a, xs):
    xs = sorted(xs)
    values = [regularized_lower_P(a, x) for x in xs]
    assert all(0.0 <= v <= 1.0 for v in values)
    assert all(v1 <= v2 * (1 + 1e-15) for v1, v2 in zip(values, values[1:]))


@pytest.mark.parametrize("a, x", [(0.0, 1.0), (-1.0, 1.0), (1.0, -0.5)])
def test_lower_p_domain(a, x):
    with pytest.raises(DomainError):
        regularized_lower_P(a, x)


# --- upper incomplete ---------------------------------------------------------------------


@pytest.mark.parametrize("x", [0.5, 2.0, 10.0])
def test_upper_order_one_is_exponential(x):
    assert upper_incomplete(1.0, x).to_float() == pytest.approx(math.exp(-x), rel=1e-14)


def test_upper_minus_half_closed_form():
    expected = 2 * (math.exp(-1) - math.sqrt(math.pi) * math.erfc(1.0))
    assert upper_incomplete(-0.5, 1.0).to_float() == pytest.approx(expected, rel=1e-12)
    assert upper_incomplete(-0.5, 1.0).to_float() == pytest.approx(upper_by_quadrature(-0.5, 1.0), rel=1e-10)


def test_upper_recurrence_example():
    a, x = 1 / 3, 4 / 3
    lhs = upper_incomplete(a, x).to_float()
    rhs = (a - 1) * upper_incomplete(a - 1, x).to_float() + x ** (a - 1) * math.exp(-x)
    assert abs(lhs - rhs) <= 1e-13 * lhs


@pytest.mark.parametrize("a", [1 / 3, -1 / 3, -2 / 3, -5 / 3, -10 / 3])
@pytest.mark.parametrize("x", [0.5, 4 / 3, 10.0])
def test_upper_against_quadrature(a, x):
    assert upper_incomplete(a, x).to_float() == pytest.approx(upper_by_quadrature(a, x), rel=1e-10)


@given(st.floats(-800, 5).filter(lambda a: abs(a - round(a)) > 1e-6), st.floats(1e-3, 100))
def test_upper_against_mpmath(a, x):
    # mpmath cancels internally for large negative orders; 2000 bits covers a >= -800
    with mpmath.workprec(2000):
        expected = mpmath.log(mpmath.gammainc(a, x))
    assert log_upper_incomplete(np.array([a]), x)[0] == pytest.approx(float(expected), rel=1e-12, abs=1e-12)


@pytest.mark.parametrize("a", [-3 + 2e-6, -3 - 2e-6, 1e-6, -1e-6, 0.001953125, 0.49, -0.5, -40.5])
@pytest.mark.parametrize("x", [1e-3, 0.2, 0.49, 0.5, 1.0])
def test_upper_near_integer_and_small_orders(a, x):
    # small-x base order plus downward recurrence, and small positive orders via the fraction
    with mpmath.workprec(2000):
        expected = mpmath.log(mpmath.gammainc(mpmath.mpf(a), x))
    assert log_upper_incomplete(np.array([a]), x)[0] == pytest.approx(float(expected), rel=1e-13, abs=1e-13)


def test_ln_gamma_1p_series():
    from airyseries.gamma import _ln_gamma_1p

    a = np.array([1e-9, -1e-9, 0.25, -0.5, 0.5])
    with mpmath.workdps(30):
        expected = [float(mpmath.loggamma(1 + mpmath.mpf(v))) for v in a]
    np.testing.assert_allclose(_ln_gamma_1p(a), expected, rtol=1e-15)


@pytest.mark.parametrize("a", [0.0, -1.0, -7.0])
@pytest.mark.parametrize("x", [0.1, 3.0])
def test_upper_integer_orders(a, x):
    expected = float(mpmath.log(mpmath.gammainc(a, x)))
    assert log_upper_incomplete(np.array([a]), x)[0] == pytest.approx(expected, rel=1e-12)


@given(st.floats(-300, 5).filter(lambda a: abs(a - round(a)) > 1e-6), st.floats(0.5, 60))
def test_upper_recurrence_property(a, x):
    h = scaled_upper_incomplete(np.array([a, a - 1]), x)
    # Gamma(a,x) = (a-1) Gamma(a-1,x) + x^(a-1) e^-x, divided by x^(a-1) e^-x
    lhs = x * h[0]
    assert abs(lhs - (a - 1) * h[1] - 1) <= 1e-12 * lhs


@given(st.floats(0.01, 170), st.floats(1e-3, 100))
def test_complementarity(a, x):
    total = upper_incomplete(a, x).to_float() + lower_incomplete_log(a, x).to_float()
    assert total == pytest.approx(math.gamma(a), rel=1e-13)


@pytest.mark.parametrize("a, x", [(155.0, 1.0), (0.001953125, 1.0), (160.0, 170.0), (100.5, 99.0)])
def test_complementarity_hard_cases(a, x):
    # large ln Gamma and tiny Q both used to cost accuracy here
    total = upper_incomplete(a, x).to_float() + lower_incomplete_log(a, x).to_float()
    assert total == pytest.approx(math.gamma(a), rel=1e-13)


def test_complementarity_example():
    total = math.exp(lower_incomplete_log(2.5, 1.7).log) + upper_incomplete(2.5, 1.7).to_float()
    assert total == pytest.approx(math.gamma(2.5), rel=1e-13)


def test_lower_log_limits():
    big = lower_incomplete_log(0.5, 1e4)
    assert big.sign == 1
    assert big.log == pytest.approx(0.5 * math.log(math.pi), rel=1e-14)
    assert lower_incomplete_log(1.5, 0.0).sign == 0


def test_scaled_upper_stays_order_one():
    a = 1 / 3 - np.arange(500)
    h = scaled_upper_incomplete(a, 24.7)
    assert np.all(np.isfinite(h))
    # h ~ 1 / (x + 1 - a)
    assert np.allclose(h * (24.7 + 1 - a), 1.0, rtol=0.05)


def test_negative_family_against_mpmath_complement():
    # Gamma(a, x) = Gamma(a) - gamma(a, x) at precision wide enough for the cancellation
    for a in (1 / 3 - 40, -1 / 3 - 120):
        for x in (0.47, 4.0, 42.0):
            got = log_upper_incomplete(np.array([a]), x)[0]
            with mpmath.workprec(1200):
                ma = mpmath.mpf(a)
                lower = mpmath.gammainc(ma, 0, x)
                expected = mpmath.log(mpmath.gamma(ma) - lower)
            assert got == pytest.approx(float(expected), rel=1e-13)


@pytest.mark.parametrize("x", [0.0, -1.0, math.nan])
def test_upper_domain(x):
    with pytest.raises(DomainError):
        upper_incomplete(0.5, x)


def test_iteration_cap_raises():
    tight = GammaConfig(max_iter=2)
    with pytest.raises(ConvergenceError):
        upper_incomplete(-0.5, 1.0, tight)


def test_scipy_reference_agrees_for_positive_orders():
    for a, x in [(0.5, 0.2), (3.0, 7.0), (12.5, 11.0)]:
        expected = special.gammaincc(a, x) * special.gamma(a)
        assert upper_incomplete(a, x).to_float() == pytest.approx(expected, rel=1e-12)
