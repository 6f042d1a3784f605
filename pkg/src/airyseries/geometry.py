"""Steepest-descent contour through the saddle ``-w**(1/2)`` of ``f(w, alpha) = w alpha - alpha**3 / 3``.

The contour is parameterized by real ``s`` with ``f = -(2/3) w**(3/2) - s**2``.
It splits into three pieces at the branch points ``s = +-2/sqrt(3)``:

* segment II, ``|s| < 2/sqrt(3)``: power series in ``s``;
* segments I (``s < 0``) and III (``s > 0``): closed-form cubic roots in
  ``s_hat = |s|**(-2/3)``, ``0 < s_hat <= (3/4)**(1/3)``.
"""

from __future__ import annotations

import cmath
import math
from dataclasses import dataclass
from functools import lru_cache

import numpy as np

from .coefficients import middle_coeff_exact
from .errors import DomainError, SectorError

__all__ = [
    "PathSample",
    "BRANCH_S",
    "S_HAT_MAX",
    "saddle_points",
    "alpha_middle",
    "alpha_outer",
    "exponent_field",
    "sample_paths",
    "middle_residual",
    "outer_residual",
]

BRANCH_S = 2 / math.sqrt(3)
S_HAT_MAX = 0.75 ** (1 / 3)
SERIES_FRACTION = 0.9
_SERIES_TERMS = 400
_SECTOR_EDGE = 2 * math.pi / 3


@dataclass(frozen=True)
class PathSample:
    segment: str
    param: float
    alpha: complex
    f_value: complex
    f_real: float
    f_imag: float


def _check_unit(w: complex) -> complex:
    w = complex(w)
    if not abs(abs(w) - 1.0) <= 1e-12:
        raise DomainError(f"w must lie on the unit circle, |w| = {abs(w)}")
    return w


def saddle_points(w: complex) -> tuple[complex, complex]:
    """``(-w**(1/2), w**(1/2))`` with the principal square root."""
    root = cmath.sqrt(_check_unit(w))
    return -root, root


def exponent_field(w: complex, alpha: complex) -> tuple[float, float]:
    """Real and imaginary parts of ``w alpha - alpha**3 / 3`` from the expanded components."""
    u, v = complex(w).real, complex(w).imag
    a, b = complex(alpha).real, complex(alpha).imag
    f_real = u * a - v * b - (a ** 3 - 3 * a * b ** 2) / 3
    f_imag = u * b + v * a - (3 * a ** 2 * b - b ** 3) / 3
    return f_real, f_imag


@lru_cache(maxsize=1)
def _middle_table() -> tuple[np.ndarray, np.ndarray]:
    # w = 1 coefficients split into i**n and a real magnitude
    n = np.arange(1, _SERIES_TERMS + 1)
    units = np.array([(1j) ** (k % 4) for k in n])
    mags = np.array([float(middle_coeff_exact(int(k))[1]) for k in n])
    return units * mags, n


def _w_power(w: complex, p: float) -> complex:
    phi = cmath.phase(w)
    return cmath.exp(1j * p * phi)


def _middle_cubic(w: complex, s: float) -> np.ndarray:
    # -alpha^3/3 + w alpha + (2/3) w^(3/2) + s^2 = 0
    return np.array([-1 / 3, 0, w, (2 / 3) * _w_power(w, 1.5) + s * s], dtype=complex)


def _newton(coeffs: np.ndarray, root: complex, steps: int = 3) -> complex:
    deriv = np.polyder(coeffs)
    for _ in range(steps):
        d = np.polyval(deriv, root)
        if d == 0:
            break
        root -= np.polyval(coeffs, root) / d
    return complex(root)


def _middle_series(w: complex, s: float) -> complex:
    coeffs, n = _middle_table()
    phi = cmath.phase(w)
    terms = coeffs * np.exp(1j * phi * (0.5 - 0.75 * n)) * s ** n
    return complex(np.sum(terms)) - cmath.sqrt(w)


def alpha_middle(w: complex, s: float) -> complex:
    """Point of segment II at parameter ``s``, ``|s| < 2/sqrt(3)``.

    Series inside 90% of the radius of convergence; beyond it the cubic root
    is followed continuously from the series value.
    """
    w = _check_unit(w)
    s = float(s)
    if not abs(s) < BRANCH_S:
        raise DomainError(f"|s| must be below 2/sqrt(3), got {s}")
    limit = SERIES_FRACTION * BRANCH_S
    if abs(s) <= limit:
        return _middle_series(w, s)
    start = math.copysign(limit, s)
    alpha = _middle_series(w, start)
    # root separation shrinks near the branch point, so use fine steps
    for t in np.linspace(start, s, 200)[1:]:
        coeffs = _middle_cubic(w, t)
        roots = np.roots(coeffs)
        alpha = _newton(coeffs, complex(roots[np.argmin(np.abs(roots - alpha))]))
    return alpha


def _chi(t: complex) -> complex:
    eta = cmath.sqrt(3 + 4 * t ** 3)
    return (3 + 2 * t ** 3 + math.sqrt(3) * eta) ** (1 / 3)


def alpha_outer(w: complex, s_hat: float, branch: int) -> complex:
    """Point of segment III (``branch=2``) or segment I (``branch=3``).

    Closed-form root of ``w alpha - alpha**3/3 = -(2/3) w**(3/2) - s_hat**-3``
    with ``t = s_hat w**(1/2)`` and principal roots.  For ``|arg w| <= 2pi/3``
    both ``3 + 4t**3`` and ``3 + 2t**3 + sqrt(3) eta`` keep a non-negative real
    part, so no branch cut is crossed.
    """
    w = _check_unit(w)
    s_hat = float(s_hat)
    if not 0 < s_hat <= S_HAT_MAX * (1 + 1e-15):
        raise DomainError(f"s_hat must lie in (0, (3/4)^(1/3)], got {s_hat}")
    if branch not in (2, 3):
        raise DomainError(f"branch must be 2 or 3, got {branch!r}")
    t = s_hat * cmath.sqrt(w)
    chi = _chi(t)
    root3 = math.sqrt(3)
    first, second = (1 - 1j * root3, 1 + 1j * root3) if branch == 2 else (1 + 1j * root3, 1 - 1j * root3)
    return -first * chi / (2 ** (4 / 3) * s_hat) - second * s_hat * w / (2 ** (2 / 3) * chi)


def middle_residual(w: complex, s: float, alpha: complex) -> float:
    return abs(w * alpha - alpha ** 3 / 3 + (2 / 3) * _w_power(w, 1.5) + s * s)


def outer_residual(w: complex, s_hat: float, alpha: complex) -> float:
    return abs(w * alpha - alpha ** 3 / 3 + (2 / 3) * _w_power(w, 1.5) + s_hat ** -3)


def _sample(segment: str, param: float, w: complex, alpha: complex) -> PathSample:
    f_real, f_imag = exponent_field(w, alpha)
    return PathSample(segment, float(param), complex(alpha), w * alpha - alpha ** 3 / 3, f_real, f_imag)


def sample_paths(w: complex, n_per_segment: int, s_max: float) -> list[PathSample]:
    """Sample the contour for ``|arg w| <= 2pi/3``, ordered by increasing ``s``.

    Segment II uses ``n_per_segment`` midpoints of a uniform partition of
    ``(-2/sqrt(3), 2/sqrt(3))``; segments I and III use ``n_per_segment``
    points of ``s_hat`` in ``(s_max**(-2/3), (3/4)**(1/3)]``.
    """
    w = _check_unit(w)
    if abs(cmath.phase(w)) > _SECTOR_EDGE + 1e-12:
        raise SectorError("the contour splits in two for |arg w| > 2pi/3; sample the rotated problems")
    if n_per_segment < 2:
        raise DomainError(f"n_per_segment must be >= 2, got {n_per_segment}")
    if not s_max > BRANCH_S:
        raise DomainError(f"s_max must exceed 2/sqrt(3), got {s_max}")
    lo = s_max ** (-2 / 3)
    hats = lo + (S_HAT_MAX - lo) * np.arange(1, n_per_segment + 1) / n_per_segment
    hats[-1] = S_HAT_MAX
    middle = -BRANCH_S + 2 * BRANCH_S * (np.arange(n_per_segment) + 0.5) / n_per_segment
    out = [_sample("I", h, w, alpha_outer(w, h, 3)) for h in hats]
    out += [_sample("II", s, w, alpha_middle(w, s)) for s in middle]
    out += [_sample("III", h, w, alpha_outer(w, h, 2)) for h in hats[::-1]]
    return out
