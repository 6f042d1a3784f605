import cmath
import math

import numpy as np
import pytest
from hypothesis import given
from hypothesis import strategies as st

from airyseries.errors import DomainError, SectorError
from airyseries.geometry import (
    BRANCH_S,
    S_HAT_MAX,
    alpha_middle,
    alpha_outer,
    exponent_field,
    middle_residual,
    outer_residual,
    saddle_points,
    sample_paths,
)

PHASES = [0.0, 0.5, 7 * math.pi / 12, -math.pi / 3, 2 * math.pi / 3, -2 * math.pi / 3]
unit_phase = st.floats(-2 * math.pi / 3, 2 * math.pi / 3)


def f(w, alpha):
    return w * alpha - alpha ** 3 / 3


def test_saddle_examples():
    assert saddle_points(1) == (-1, 1)
    lo, hi = saddle_points(1j)
    assert hi == pytest.approx(cmath.exp(1j * math.pi / 4), abs=1e-15)
    assert lo == -hi


@given(st.floats(-math.pi, math.pi))
def test_exponent_at_saddles(phi):
    w = cmath.exp(1j * phi)
    lo, hi = saddle_points(w)
    w32 = cmath.exp(1.5j * phi)
    assert abs(f(w, lo) + (2 / 3) * w32) <= 1e-14
    assert abs(f(w, hi) - (2 / 3) * w32) <= 1e-14


def test_saddle_domain():
    with pytest.raises(DomainError):
        saddle_points(2.0)


def test_exponent_field_examples():
    assert exponent_field(1, -1) == pytest.approx((-2 / 3, 0.0), abs=1e-15)
    assert exponent_field(cmath.exp(0.4j), 0) == (0.0, 0.0)


@given(unit_phase, st.complex_numbers(max_magnitude=5.0))
def test_exponent_field_matches_complex_evaluation(phi, alpha):
    w = cmath.exp(1j * phi)
    direct = f(w, alpha)
    fr, fi = exponent_field(w, alpha)
    assert abs(complex(fr, fi) - direct) <= 1e-14 * max(1.0, abs(alpha) ** 3)


# --- segment II ------------------------------------------------------------------------------


@pytest.mark.parametrize("phi", PHASES)
def test_alpha_middle_at_saddle(phi):
    w = cmath.exp(1j * phi)
    assert alpha_middle(w, 0.0) == pytest.approx(-cmath.sqrt(w), abs=1e-15)


def test_alpha_middle_example():
    value = alpha_middle(1, 0.2)
    # the quoted -1.00667 + 0.19921i keeps only the first three terms; the full series gives
    assert value == pytest.approx(-1.0066083120 + 0.1994514515j, abs=1e-10)
    assert abs(value - (-1 + 0.2j - 0.04 / 6)) < 2e-3
    assert middle_residual(1, 0.2, value) <= 1e-12


def test_f_imag_constant_at_pi_over_three():
    w = cmath.exp(1j * math.pi / 3)
    target = -(2 / 3) * math.sin(math.pi / 2)
    for s in np.linspace(-0.99 * BRANCH_S, 0.99 * BRANCH_S, 41):
        assert exponent_field(w, alpha_middle(w, s))[1] == pytest.approx(target, abs=1e-10)


@given(unit_phase, st.floats(-0.999 * BRANCH_S, 0.999 * BRANCH_S))
def test_alpha_middle_solves_cubic(phi, s):
    w = cmath.exp(1j * phi)
    assert middle_residual(w, s, alpha_middle(w, s)) <= 1e-11


@pytest.mark.parametrize("s", [BRANCH_S, -BRANCH_S, 1.5])
def test_alpha_middle_domain(s):
    with pytest.raises(DomainError):
        alpha_middle(1, s)


# --- segments I and III ------------------------------------------------------------------------


@given(unit_phase, st.floats(1e-3, S_HAT_MAX))
def test_outer_roots_sum_to_zero(phi, s_hat):
    w = cmath.exp(1j * phi)
    a2, a3 = alpha_outer(w, s_hat, 2), alpha_outer(w, s_hat, 3)
    # the third root of the depressed cubic is minus the sum of the other two
    a1 = -(a2 + a3)
    assert outer_residual(w, s_hat, a1) <= 1e-9 * max(1.0, s_hat ** -3)
    for alpha in (a2, a3):
        assert outer_residual(w, s_hat, alpha) <= 1e-11 * max(1.0, s_hat ** -3)


def test_outer_residual_example():
    for branch in (2, 3):
        assert outer_residual(1, 0.5, alpha_outer(1, 0.5, branch)) <= 1e-11 * 8


@pytest.mark.parametrize("s_hat, branch", [(0.0, 2), (-0.1, 3), (1.0, 2), (0.5, 1)])
def test_alpha_outer_domain(s_hat, branch):
    with pytest.raises(DomainError):
        alpha_outer(1, s_hat, branch)


def _junction_gaps(phi, eps=1e-4):
    # linear extrapolation of segment II to the branch point from two interior points
    w = cmath.exp(1j * phi)
    gaps = []
    for sign, branch in ((1, 2), (-1, 3)):
        near = alpha_middle(w, sign * (BRANCH_S - eps))
        far = alpha_middle(w, sign * (BRANCH_S - 2 * eps))
        gaps.append(abs(2 * near - far - alpha_outer(w, S_HAT_MAX, branch)))
    return gaps


@pytest.mark.parametrize("phi", [0.0, 0.5, 7 * math.pi / 12, -math.pi / 3, -1.9])
def test_junction_continuity(phi):
    assert max(_junction_gaps(phi)) <= 1e-6


def test_junction_at_sector_edge():
    # at arg w = 2pi/3 the end of segment III sits on the branch point 3 + 4 t^3 = 0, so
    # the approach is like sqrt(eps); the segment I side stays smooth
    plus, minus = _junction_gaps(2 * math.pi / 3)
    assert minus <= 1e-6
    w = cmath.exp(2j * math.pi / 3)
    gaps = [abs(alpha_middle(w, BRANCH_S - e) - alpha_outer(w, S_HAT_MAX, 2)) for e in (1e-4, 1e-6)]
    assert gaps[1] < gaps[0] / 5


# --- sampled contours ----------------------------------------------------------------------------


def test_real_axis_contour_is_conjugation_symmetric():
    samples = sample_paths(1, 40, 8.0)
    alphas = np.array([p.alpha for p in samples])
    for a in alphas:
        assert np.min(np.abs(alphas - a.conjugate())) <= 1e-12


@pytest.mark.parametrize("phi", PHASES)
def test_samples_are_consistent(phi):
    w = cmath.exp(1j * phi)
    samples = sample_paths(w, 30, 10.0)
    assert len(samples) == 90
    assert [p.segment for p in samples] == ["I"] * 30 + ["II"] * 30 + ["III"] * 30
    target = -(2 / 3) * math.sin(1.5 * phi)
    saddle_real = -(2 / 3) * math.cos(1.5 * phi)
    for p in samples:
        assert abs(p.f_value - complex(p.f_real, p.f_imag)) <= 1e-12 * max(1.0, abs(p.f_value))
        assert p.f_imag == pytest.approx(target, abs=1e-9)
        if p.segment == "II":
            assert abs(p.param) < BRANCH_S
            expected = saddle_real - p.param ** 2
            assert middle_residual(w, p.param, p.alpha) <= 1e-11
        else:
            assert 0 < p.param <= S_HAT_MAX
            expected = saddle_real - p.param ** -3
            assert outer_residual(w, p.param, p.alpha) <= 1e-11
        assert p.f_real == pytest.approx(expected, abs=1e-10 * max(1.0, abs(expected)))


def test_f_real_peaks_at_saddle():
    samples = sample_paths(cmath.exp(0.3j), 41, 10.0)
    middle = [p for p in samples if p.segment == "II"]
    peak = max(middle, key=lambda p: p.f_real)
    assert abs(peak.param) == min(abs(p.param) for p in middle)
    # strictly decreasing in |s| along the whole contour
    s_values = [-(p.param ** -1.5) if p.segment == "I" else p.param if p.segment == "II" else p.param ** -1.5
                for p in samples]
    order = np.argsort(np.abs(s_values))
    f_sorted = np.array([samples[k].f_real for k in order])
    assert np.all(np.diff(f_sorted) <= 1e-12)
    assert np.all(np.diff(s_values) > 0)


def test_sample_paths_sector_error():
    with pytest.raises(SectorError):
        sample_paths(cmath.exp(2.2j), 10, 10.0)


@pytest.mark.parametrize("n, s_max", [(1, 10.0), (10, 1.0)])
def test_sample_paths_domain(n, s_max):
    with pytest.raises(DomainError):
        sample_paths(1, n, s_max)
