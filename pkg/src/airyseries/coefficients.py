"""Expansion coefficients for the three pieces of the steepest-descent contour.

Middle segment: the coefficients of ``alpha + w**(1/2)`` as a power series in
the path parameter ``s`` (Lagrange inversion).

Outer segments: the Taylor coefficients ``a_{3m}`` and ``b_{3m}`` of

    chi(t) = (3 + 2 t^3 + sqrt(3) sqrt(3 + 4 t^3)) ** (1/3)

and of ``1 / chi(t)``, from the closed Bell-polynomial sums.  Every
``a_{3m}`` is a rational multiple of ``6**(1/3)`` and every ``b_{3m}`` a
rational multiple of ``6**(-1/3)``, so exact values are kept as
:class:`Surd` objects.

:func:`oracle_invert` recomputes the same numbers by brute force (undetermined
coefficients and power-series composition) and shares no code with the
closed forms.
"""

from __future__ import annotations

import math
from dataclasses import dataclass, field
from fractions import Fraction
from functools import lru_cache
from math import comb, factorial

import mpmath
import numpy as np

from .errors import DomainError, ResourceError
from .gamma import LogScaled

__all__ = [
    "Surd",
    "falling_factorial",
    "h_poly",
    "chi_derivative",
    "CoefficientTable",
    "build_ab_table",
    "default_table",
    "middle_coeff",
    "middle_coeff_exact",
    "PhasedLogScaled",
    "phi_even_derivative",
    "OracleCoefficients",
    "oracle_invert",
    "EXACT_LIMIT",
    "DIGIT_BUDGET_BITS",
]

EXACT_LIMIT = 200
DIGIT_BUDGET_BITS = 400_000
ORACLE_MAX_ORDER = 60


@dataclass(frozen=True)
class Surd:
    """Exact number ``coeff * 6 ** (power / 3)``."""

    coeff: Fraction
    power: int = 0

    def __float__(self) -> float:
        # 120 bits then round once more to binary64
        with mpmath.workprec(120):
            value = mpmath.mpf(self.coeff.numerator) / self.coeff.denominator
            value *= mpmath.cbrt(6) ** self.power
            return float(value)

    def __mul__(self, k):
        if isinstance(k, Surd):
            return Surd(self.coeff * k.coeff, self.power + k.power)
        return Surd(self.coeff * Fraction(k), self.power)

    __rmul__ = __mul__

    def __truediv__(self, k):
        return Surd(self.coeff / Fraction(k), self.power)

    def __str__(self) -> str:
        if self.power == 0 or self.coeff == 0:
            return str(self.coeff)
        return f"{self.coeff}*6^({self.power}/3)"


def _check_budget(*values: Fraction) -> None:
    for v in values:
        bits = v.numerator.bit_length() + v.denominator.bit_length()
        if bits > DIGIT_BUDGET_BITS:
            raise ResourceError(f"exact coefficient needs {bits} bits, budget is {DIGIT_BUDGET_BITS}")


def falling_factorial(x, p: int):
    """``(x)_p = x (x-1) ... (x-p+1)``, the falling factorial; ``(x)_0 = 1``.

    Works for ints, Fractions and floats alike.
    """
    if p < 0:
        raise DomainError(f"falling factorial order must be >= 0, got {p}")
    out = Fraction(1) if isinstance(x, (int, Fraction)) else 1.0
    for q in range(p):
        out *= x - q
    return out


def h_poly(p: int, x) -> Fraction:
    """``h_p(x) = (4/3)**p * (x)_p``."""
    return Fraction(4, 3) ** p * falling_factorial(Fraction(x), p)


def _closed_form_sum(m: int, base: Fraction) -> Fraction:
    # triple sum shared by chi^(3m)(0) (base 1/3) and the b-coefficients (base -1/3),
    # including the k = 0 term, which is 1 for m = 0 and vanishes otherwise
    n = 3 * m
    total = Fraction(0)
    for k in range(0, m + 1):
        poch = falling_factorial(base, k)
        for i in range(0, k + 1):
            for l in range(0, k - i + 1):
                term = Fraction(factorial(n) * 2 ** i, 2 ** k * 3 ** i * factorial(i)
                                * factorial(m - i) * factorial(l) * factorial(k - i - l))
                total += (-1) ** (k - i - l) * term * poch * h_poly(m - i, Fraction(l, 2))
    return total


def chi_derivative(n: int) -> Surd:
    """``chi^(n)(0)`` exactly, as a rational multiple of ``6**(1/3)``.

    Direct evaluation of the triple Bell-polynomial sum; zero unless ``n`` is a
    multiple of 3.
    """
    if not isinstance(n, (int, np.integer)) or n < 1:
        raise DomainError(f"chi_derivative needs an integer n >= 1, got {n!r}")
    if n % 3:
        return Surd(Fraction(0), 1)
    value = _closed_form_sum(n // 3, Fraction(1, 3))
    _check_budget(value)
    return Surd(value, 1)


def _b_derivative(m: int) -> Surd:
    value = _closed_form_sum(m, Fraction(-1, 3))
    _check_budget(value)
    return Surd(value, -1)


# --- fast evaluation of the same closed forms ---------------------------------
#
# The innermost l-sum is a j-th finite difference of the polynomial h_p(l/2), so
# it equals (4/3)**p * c[p][j] * j! where c[p][j] are the coefficients of
# (x/2)_p in the falling-factorial basis (x)_j.  With C[p][j] = 2**p c[p][j]:
#     C[p+1][k] = C[p][k-1] + (k - 2p) C[p][k].
# Clearing denominators then leaves, for the Taylor coefficient of u**m,
#     [u^m] = sum_p binom(m, p) sum_j 6**(p-j) C[p][j] N[m-p+j] / (9**m m!)
# with N[k] = 3**k (base)_k an integer.


@lru_cache(maxsize=4)
def _connection_table(p_max: int) -> tuple[tuple[int, ...], ...]:
    rows = [(1,)]
    for p in range(p_max):
        prev = rows[-1]
        row = []
        for k in range(p + 2):
            v = prev[k - 1] if k >= 1 else 0
            if k <= p:
                v += (k - 2 * p) * prev[k]
            row.append(v)
        rows.append(tuple(row))
    return tuple(rows)


def _scaled_falling(base_num: int, k_max: int) -> list[int]:
    # N[k] = 3**k (base_num/3)_k = prod_{q<k} (base_num - 3q)
    out = [1]
    for k in range(1, k_max + 1):
        out.append(out[-1] * (base_num - 3 * (k - 1)))
    return out


def _taylor_exact(m_max: int, base_num: int) -> list[Fraction]:
    conn = _connection_table(m_max)
    scaled = np.array(_scaled_falling(base_num, m_max), dtype=object)
    weights = [np.array([6 ** (p - j) * conn[p][j] for j in range(p + 1)], dtype=object)
               for p in range(m_max + 1)]
    out = []
    for m in range(m_max + 1):
        total = 0
        for p in range(m + 1):
            i = m - p
            total += comb(m, p) * int(np.dot(weights[p], scaled[i:i + p + 1]))
        value = Fraction(total, 9 ** m * factorial(m))
        _check_budget(value)
        out.append(value)
    return out


@lru_cache(maxsize=2)
def _scaled_connection(p_max: int) -> np.ndarray:
    # g[p, j] = c[p][j] j! / p!, rounded once from exact integers; all |g| < 1
    conn = _connection_table(p_max)
    g = np.zeros((p_max + 1, p_max + 1))
    p_fact = 1
    for p in range(p_max + 1):
        if p:
            p_fact *= p
        j_fact = 1
        for j in range(p + 1):
            if j:
                j_fact *= j
            g[p, j] = conn[p][j] * j_fact / (p_fact << p)
    g.flags.writeable = False
    return g


def _taylor_float(m_lo: int, m_hi: int, base_num: int) -> np.ndarray:
    """Float evaluation of the closed form for ``m_lo <= m <= m_hi``.

    Rearranged so that no factor overflows:
        [u^m] = sum_p (4/3)**p (2/3)**(m-p) sum_j g[p,j] binom(k, j) 2**-k beta[k]
    with k = m-p+j, g[p,j] = c[p][j] j!/p! and beta[k] = binom(base, k), each
    factor rounded from exact integers.
    """
    size = m_hi + 1
    g = _scaled_connection(m_hi)
    scaled = _scaled_falling(base_num, m_hi)
    # beta_binom[i, j] = binom(i+j, j) 2**-(i+j) beta[i+j]
    beta_binom = np.zeros((size, size))
    k_fact = 1
    for k in range(size):
        if k:
            k_fact *= k
        beta = scaled[k] / (3 ** k * k_fact)
        pow2 = 1 << k
        binom = 1
        for j in range(k + 1):
            beta_binom[k - j, j] = binom / pow2 * beta
            binom = binom * (k - j) // (j + 1)
    out = np.empty(m_hi - m_lo + 1)
    for idx, m in enumerate(range(m_lo, m_hi + 1)):
        p = np.arange(m + 1)
        rows = beta_binom[m - p, : m + 1]
        inner = np.sum(g[: m + 1, : m + 1] * rows, axis=1)
        log_w = p * math.log(4 / 3) + (m - p) * math.log(2 / 3)
        out[idx] = math.fsum(np.exp(log_w) * inner)
    return out


# ------------------------------------------------------------------------------


@dataclass(frozen=True)
class CoefficientTable:
    """Immutable coefficient table for the outer-segment series.

    ``a[m]`` and ``b[m]`` hold the normalized Taylor coefficients
    ``a_{3m}/(3m)!`` and ``b_{3m}/(3m)!`` (the raw derivatives overflow
    binary64 past m ~ 56).  ``a_exact[m]``/``b_exact[m]`` are the same
    numbers as :class:`Surd` values for ``m <= exact_limit``.
    """

    m_max: int
    exact_limit: int
    a: np.ndarray
    b: np.ndarray
    a_exact: tuple[Surd, ...] = field(repr=False)
    b_exact: tuple[Surd, ...] = field(repr=False)

    def a_derivative(self, m: int) -> Surd:
        """Raw ``a_{3m} = chi^(3m)(0)`` (exact, ``m <= exact_limit``)."""
        return self.a_exact[m] * factorial(3 * m)

    def b_derivative(self, m: int) -> Surd:
        return self.b_exact[m] * factorial(3 * m)

    def g(self, n: int, w: complex) -> complex:
        """Middle-segment coefficient generator, see :func:`middle_coeff`."""
        return middle_coeff(n, w)


def build_ab_table(m_max: int, exact_limit: int = EXACT_LIMIT) -> CoefficientTable:
    """Tabulate ``a_{3m}/(3m)!`` and ``b_{3m}/(3m)!`` for ``0 <= m <= m_max``.

    Orders up to ``exact_limit`` are computed in exact rational arithmetic
    and their float views are correctly rounded; higher orders use the float
    rearrangement of the same sums.
    """
    if not isinstance(m_max, (int, np.integer)) or m_max < 0:
        raise DomainError(f"m_max must be a non-negative integer, got {m_max!r}")
    n_exact = min(m_max, exact_limit)
    a_ex = tuple(Surd(v, 1) for v in _taylor_exact(n_exact, 1)) if n_exact >= 0 else ()
    b_ex = tuple(Surd(v, -1) for v in _taylor_exact(n_exact, -1)) if n_exact >= 0 else ()
    a = np.array([float(s) for s in a_ex])
    b = np.array([float(s) for s in b_ex])
    if m_max > n_exact:
        cbrt6 = 6.0 ** (1 / 3)
        a = np.concatenate([a, cbrt6 * _taylor_float(n_exact + 1, m_max, 1)])
        b = np.concatenate([b, _taylor_float(n_exact + 1, m_max, -1) / cbrt6])
    a.flags.writeable = False
    b.flags.writeable = False
    return CoefficientTable(m_max, n_exact, a, b, a_ex, b_ex)


@lru_cache(maxsize=8)
def default_table(m_max: int = 499) -> CoefficientTable:
    """Process-wide cached table used by the series evaluators."""
    return build_ab_table(m_max)


def _half_gamma_ratio(num2: int, den2: int) -> Fraction:
    """``Gamma(num2/2) / Gamma(den2/2)`` when both arguments are integers or both half-integers."""

    def gamma_half(k2: int) -> Fraction:
        # Gamma(k2/2), dropping the common sqrt(pi) for odd k2
        if k2 % 2 == 0:
            return Fraction(factorial(k2 // 2 - 1))
        k = (k2 - 1) // 2
        return Fraction(factorial(2 * k), 4 ** k * factorial(k))

    if (num2 - den2) % 2:
        raise ValueError("mixed integer/half-integer gamma ratio is not rational")
    return gamma_half(num2) / gamma_half(den2)


@lru_cache(maxsize=None)
def middle_coeff_exact(n: int) -> tuple[int, Fraction]:
    """``(k, r)`` with the w = 1 coefficient of ``s**n`` equal to ``i**k * r``."""
    if n < 1:
        raise DomainError(f"middle coefficient index must be >= 1, got {n}")
    # Gamma(3n/2 - 1) / Gamma(n/2); 3n - 2 and n share parity
    ratio = _half_gamma_ratio(3 * n - 2, n)
    return n % 4, ratio / (factorial(n) * 3 ** (n - 1))


_I_POWERS = (1, 1j, -1, -1j)


def middle_coeff(n: int, w: complex) -> complex:
    """Coefficient of ``s**n`` in ``alpha + w**(1/2)`` along the middle segment.

    ``(i**n / n!) Gamma(3n/2 - 1)/Gamma(n/2) w**(-3n/4 + 1/2) / 3**(n-1)``
    with the principal branch of the power of ``w``.
    """
    if abs(abs(w) - 1.0) > 1e-12:
        raise DomainError(f"w must be a unit complex number, |w| = {abs(w)}")
    k, ratio = middle_coeff_exact(n)
    phase = np.angle(w)
    return _I_POWERS[k] * float(ratio) * complex(np.exp(1j * phase * (0.5 - 0.75 * n)))


@dataclass(frozen=True)
class PhasedLogScaled:
    """Complex number ``magnitude * phase`` with a log-scaled real part."""

    magnitude: LogScaled
    phase: complex

    def to_complex(self) -> complex:
        return self.magnitude.to_float() * self.phase


def phi_even_derivative(n: int) -> PhasedLogScaled:
    """``Phi^(2n)(0) = i**(2n+1) Gamma(3n+1/2) / Gamma(n+1/2) / 9**n``, overflow-free."""
    if n < 0:
        raise DomainError(f"derivative order must be >= 0, got {n}")
    log_mag = math.lgamma(3 * n + 0.5) - math.lgamma(n + 0.5) - 2 * n * math.log(3)
    sign = -1 if n % 2 else 1
    return PhasedLogScaled(LogScaled.from_log(log_mag, sign), 1j)


# --- brute-force oracle ---------------------------------------------------------


@dataclass(frozen=True)
class OracleCoefficients:
    """Ground-truth coefficient lists from direct series manipulation.

    ``inversion[n]`` is the real rational ``r_n`` with the w = 1 middle
    coefficient equal to ``i**n * r_n`` (index 0 unused).  ``chi[m]`` and
    ``inv_chi[m]`` are the coefficients of ``u**m`` (``u = t**3``) in
    ``chi / 6**(1/3)`` and ``6**(1/3) / chi``.
    """

    inversion: tuple[Fraction, ...]
    chi: tuple[Fraction, ...]
    inv_chi: tuple[Fraction, ...]

    def alpha_laurent(self, branch: int, m: int) -> tuple[complex, complex]:
        """Coefficients of ``s_hat**(3m-1)`` and ``w * s_hat**(3m+1)`` in alpha_2 or alpha_3 at w = 1."""
        root3 = math.sqrt(3.0)
        pa, pb = (1 - 1j * root3, 1 + 1j * root3) if branch == 2 else (1 + 1j * root3, 1 - 1j * root3)
        c6 = 6.0 ** (1 / 3)
        return (-pa / 2 ** (4 / 3) * c6 * float(self.chi[m]),
                -pb / 2 ** (2 / 3) / c6 * float(self.inv_chi[m]))


def _series_mul(x: list[Fraction], y: list[Fraction], order: int) -> list[Fraction]:
    out = [Fraction(0)] * (order + 1)
    for i, xi in enumerate(x[: order + 1]):
        if xi:
            for j, yj in enumerate(y[: order + 1 - i]):
                if yj:
                    out[i + j] += xi * yj
    return out


def _binomial_compose(power: Fraction, inner: list[Fraction], order: int) -> list[Fraction]:
    """``(1 + inner)**power`` with ``inner[0] == 0``, by summing the binomial series."""
    out = [Fraction(0)] * (order + 1)
    out[0] = Fraction(1)
    inner_pow = [Fraction(1)] + [Fraction(0)] * order
    coeff = Fraction(1)
    for k in range(1, order + 1):
        inner_pow = _series_mul(inner_pow, inner, order)
        coeff = coeff * (power - k + 1) / k
        for i in range(order + 1):
            out[i] += coeff * inner_pow[i]
    return out


def _invert_cubic(order: int) -> list[Fraction]:
    # R(v)^2 - R(v)^3 / 3 = v^2, R = v + r_2 v^2 + ...; alpha + 1 = R(i s)
    r = [Fraction(0), Fraction(1)]
    for n in range(2, order + 1):
        trial = r + [Fraction(0)]
        sq = _series_mul(trial, trial, n + 1)
        cube = _series_mul(sq, trial, n + 1)
        # the v^(n+1) coefficient is linear in r_n with slope 2 r_1 = 2
        residual = sq[n + 1] - cube[n + 1] / 3
        r.append(-residual / 2)
    return r


def oracle_invert(n_max: int) -> OracleCoefficients:
    """Exact brute-force coefficients up to order ``n_max`` (at most 60).

    Middle segment: undetermined coefficients for the cubic at w = 1.
    Outer segments: ``chi`` and ``1/chi`` expanded by composing binomial series.
    """
    if n_max < 1:
        raise DomainError(f"n_max must be >= 1, got {n_max}")
    if n_max > ORACLE_MAX_ORDER:
        raise ResourceError(f"oracle is limited to order {ORACLE_MAX_ORDER}, asked for {n_max}")
    inversion = _invert_cubic(n_max)
    # sqrt(3 + 4u) = sqrt(3) (1 + 4u/3)^(1/2);  chi^3 = 6 (1 + v)
    root = _binomial_compose(Fraction(1, 2), [Fraction(0), Fraction(4, 3)], n_max)
    v = [Fraction(0)] * (n_max + 1)
    for i in range(1, n_max + 1):
        v[i] = Fraction(root[i], 2)
    v[1] += Fraction(1, 3)
    chi = _binomial_compose(Fraction(1, 3), v, n_max)
    inv_chi = _binomial_compose(Fraction(-1, 3), v, n_max)
    _check_budget(*chi, *inv_chi, *inversion)
    return OracleCoefficients(tuple(inversion), tuple(chi), tuple(inv_chi))
