"""Complete and incomplete gamma functions in overflow-safe form.

The convergent Airy expansion needs ``gamma(n + 1/2, x) / Gamma(n + 1/2)``
and ``Gamma(+-1/3 - n, x)`` for ``n`` up to several hundred.  Those values
span thousands of orders of magnitude, so everything here is either returned
as a natural logarithm or as a :class:`LogScaled` pair.

Array-valued helpers (``log_*`` and ``scaled_upper_incomplete``) accept a
numpy array of orders and a single scalar argument, which is the shape the
series evaluators need.
"""

from __future__ import annotations

import math
from dataclasses import dataclass

import numpy as np
from scipy import special

from .errors import ConvergenceError, DomainError

__all__ = [
    "GammaConfig",
    "DEFAULT_CONFIG",
    "LogScaled",
    "ln_gamma",
    "regularized_lower_P",
    "upper_incomplete",
    "lower_incomplete_log",
    "log_regularized_lower",
    "log_upper_incomplete",
    "scaled_upper_incomplete",
]

# fdlibm split of ln 2: k * _LN2_HI is exact for |k| < 2**11.
_LN2_HI = 6.93147180369123816490e-01
_LN2_LO = 1.90821492927058770002e-10
_EPS = np.finfo(float).eps
_TINY = 1e-300


@dataclass(frozen=True)
class GammaConfig:
    """Tolerances for the iterative gamma routines."""

    rel_tol: float = 1e-16
    max_iter: int = 10000
    # a <= 0: use the continued fraction once x reaches this value ...
    cf_min_x: float = 0.5
    # ... or once 1 - a is at least this large (the fraction then converges fast)
    cf_large_order: float = 30.0

    @property
    def stop_tol(self) -> float:
        # relative changes below one ulp cannot be observed
        return max(self.rel_tol, _EPS)


DEFAULT_CONFIG = GammaConfig()


def _two_sum(a: float, b: float) -> tuple[float, float]:
    s = a + b
    bb = s - a
    return s, (a - (s - bb)) + (b - bb)


def _split(a: float) -> tuple[float, float]:
    t = 134217729.0 * a
    hi = t - (t - a)
    return hi, a - hi


def _two_prod(a: float, b: float) -> tuple[float, float]:
    # Dekker product: a * b = p + e exactly (barring overflow)
    p = a * b
    ah, al = _split(a)
    bh, bl = _split(b)
    return p, ((ah * bh - p) + ah * bl + al * bh) + al * bl


@dataclass(frozen=True)
class LogScaled:
    """Real number stored as ``sign * exp(log_mag + log_err)``.

    ``log_err`` is a low-order correction to ``log_mag`` (a double-double
    tail) so that values converted from binary64 come back to within two
    ulp even when ``|log_mag|`` is in the hundreds.  ``sign == 0`` encodes
    an exact zero and the log fields are then ignored.
    """

    sign: int
    log_mag: float = 0.0
    log_err: float = 0.0

    def __post_init__(self):
        if self.sign not in (-1, 0, 1):
            raise DomainError(f"sign must be -1, 0 or 1, got {self.sign!r}")
        if self.sign != 0 and not math.isfinite(self.log_mag):
            raise DomainError("non-zero LogScaled needs a finite log magnitude")

    @classmethod
    def zero(cls) -> LogScaled:
        return cls(0)

    @classmethod
    def from_log(cls, log_mag: float, sign: int = 1) -> LogScaled:
        if log_mag == -math.inf:
            return cls(0)
        return cls(sign, float(log_mag))

    @classmethod
    def from_float(cls, x: float) -> LogScaled:
        x = float(x)
        if x == 0.0:
            return cls(0)
        if not math.isfinite(x):
            raise DomainError(f"cannot log-scale non-finite value {x!r}")
        m, e = math.frexp(abs(x))
        hi, lo = _two_sum(e * _LN2_HI, math.log(m))
        lo += e * _LN2_LO
        hi, lo = _two_sum(hi, lo)
        return cls(1 if x > 0 else -1, hi, lo)

    @property
    def log(self) -> float:
        return self.log_mag + self.log_err

    def to_float(self) -> float:
        if self.sign == 0:
            return 0.0
        k = round(self.log_mag / _LN2_HI)
        r = (self.log_mag - k * _LN2_HI) - k * _LN2_LO + self.log_err
        try:
            return self.sign * math.ldexp(math.exp(r), k)
        except OverflowError:
            return self.sign * math.inf

    __float__ = to_float

    def __neg__(self) -> LogScaled:
        return LogScaled(-self.sign, self.log_mag, self.log_err)

    def __mul__(self, other: LogScaled) -> LogScaled:
        if not isinstance(other, LogScaled):
            other = LogScaled.from_float(other)
        if self.sign == 0 or other.sign == 0:
            return LogScaled(0)
        hi, lo = _two_sum(self.log_mag, other.log_mag)
        hi, lo = _two_sum(hi, lo + self.log_err + other.log_err)
        return LogScaled(self.sign * other.sign, hi, lo)

    def __truediv__(self, other: LogScaled) -> LogScaled:
        if not isinstance(other, LogScaled):
            other = LogScaled.from_float(other)
        if other.sign == 0:
            raise ZeroDivisionError("division by a zero LogScaled")
        return self * LogScaled(other.sign, -other.log_mag, -other.log_err)


def _check_finite(name: str, value: float) -> float:
    value = float(value)
    if not math.isfinite(value):
        raise DomainError(f"{name} must be finite, got {value!r}")
    return value


def ln_gamma(x: float) -> float:
    """Natural log of the complete gamma function for ``x > 0``."""
    x = _check_finite("x", x)
    if x <= 0:
        raise DomainError(f"ln_gamma needs x > 0, got {x!r}")
    return math.lgamma(x)


def _lower_series_sum(a: np.ndarray, x: float, cfg: GammaConfig) -> np.ndarray:
    # sum_k x^k / (a (a+1) ... (a+k));  gamma(a, x) = x^a e^-x * sum
    term = 1.0 / a
    total = term.copy()
    for k in range(1, cfg.max_iter + 1):
        term = term * (x / (a + k))
        total = total + term
        if np.all(np.abs(term) <= np.abs(total) * cfg.stop_tol):
            return total
    raise ConvergenceError(f"lower incomplete gamma series did not converge at x={x}")


def _upper_continued_fraction(a: np.ndarray, x: float, cfg: GammaConfig) -> np.ndarray:
    """Modified Lentz evaluation of ``Gamma(a, x) * e^x * x^-a``."""
    b = x + 1.0 - a
    c = np.full(a.shape, 1.0 / _TINY)
    d = 1.0 / np.where(np.abs(b) < _TINY, _TINY, b)
    h = d.copy()
    active = np.ones(a.shape, dtype=bool)
    for i in range(1, cfg.max_iter + 1):
        an = -i * (i - a)
        b = b + 2.0
        d = an * d + b
        d = np.where(np.abs(d) < _TINY, _TINY, d)
        c = b + an / c
        c = np.where(np.abs(c) < _TINY, _TINY, c)
        d = 1.0 / d
        delta = c * d
        h = np.where(active, h * delta, h)
        active &= np.abs(delta - 1.0) > cfg.stop_tol
        if not active.any():
            return h
    raise ConvergenceError(
        f"upper incomplete gamma continued fraction hit {cfg.max_iter} iterations at x={x}"
    )


def _as_orders(a) -> np.ndarray:
    a = np.atleast_1d(np.asarray(a, dtype=float))
    if not np.all(np.isfinite(a)):
        raise DomainError("gamma orders must be finite")
    return a


def _stirling_correction(a: np.ndarray) -> np.ndarray:
    """``ln Gamma(a) - [(a - 1/2) ln a - a + ln(2 pi) / 2]`` without cancellation."""
    out = np.empty_like(a)
    big = a >= 20.0
    if big.any():
        inv = 1.0 / a[big]
        inv2 = inv * inv
        out[big] = inv * (
            1 / 12 - inv2 * (1 / 360 - inv2 * (1 / 1260 - inv2 * (1 / 1680 - inv2 / 1188)))
        )
    small = ~big
    if small.any():
        v = a[small]
        lg = np.array([math.lgamma(t) for t in v])
        out[small] = lg - ((v - 0.5) * np.log(v) - v + 0.5 * math.log(2 * math.pi))
    return out


def _t_minus_1_minus_log(t: np.ndarray) -> np.ndarray:
    """``t - 1 - ln t``, with a series near ``t = 1`` where direct evaluation cancels."""
    # t = 0 only when x / a underflows; the -inf then yields the correct P = 0
    with np.errstate(divide="ignore"):
        out = (t - 1.0) - np.log(t)
    near = np.abs(t - 1.0) < 0.25
    if near.any():
        v = t[near] - 1.0
        acc = np.zeros_like(v)
        power = v * v
        for k in range(2, 60):
            acc += (1 if k % 2 == 0 else -1) * power / k
            power = power * v
        out[near] = acc
    return out


def _log_regularized_prefix(a: np.ndarray, x: float) -> np.ndarray:
    # ln(x^a e^-x / Gamma(a)) = -a*(t - 1 - ln t) - mu(a) + ln(a / 2pi)/2,  t = x/a
    t = x / a
    return -a * _t_minus_1_minus_log(t) - _stirling_correction(a) + 0.5 * np.log(a / (2 * math.pi))


def log_regularized_lower(a, x: float, cfg: GammaConfig = DEFAULT_CONFIG) -> np.ndarray:
    """``ln P(a, x)`` for an array of orders ``a > 0``; ``-inf`` at ``x = 0``."""
    a = _as_orders(a)
    x = _check_finite("x", x)
    if np.any(a <= 0):
        raise DomainError("regularized lower gamma needs a > 0")
    if x < 0:
        raise DomainError(f"regularized lower gamma needs x >= 0, got {x!r}")
    out = np.empty_like(a)
    if x == 0.0:
        out.fill(-np.inf)
        return out
    prefix = _log_regularized_prefix(a, x)
    series = x < a + 1.0
    if series.any():
        out[series] = prefix[series] + np.log(_lower_series_sum(a[series], x, cfg))
    cf = ~series
    if cf.any():
        q = np.exp(prefix[cf] + np.log(_upper_continued_fraction(a[cf], x, cfg)))
        out[cf] = np.log1p(-q)
    return out


def _cf_mask(a: np.ndarray, x: float, cfg: GammaConfig) -> np.ndarray:
    # small positive orders join the negative ones: their complement 1 - P cancels badly
    positive = (a > 0) & (x >= a + 1.0)
    small_order = (a <= _BASE_ORDER_MAX) & ((x >= cfg.cf_min_x) | (1.0 - a >= cfg.cf_large_order))
    return positive | small_order


def _is_nonpositive_integer(a: np.ndarray) -> np.ndarray:
    return (a <= 0) & (a == np.round(a))


_BASE_ORDER_MAX = 0.5
# zeta(k) for k = 2.. 80, for the Taylor series of ln Gamma(1 + a), |a| <= 1/2
_ZETA = special.zeta(np.arange(2, 81), 1)
_EULER_GAMMA = 0.57721566490153286061


def _ln_gamma_1p(a: np.ndarray) -> np.ndarray:
    """``ln Gamma(1 + a)`` for ``|a| <= 1/2`` without forming ``1 + a``."""
    k = np.arange(2, 81)
    powers = (-a[:, None]) ** k
    return -_EULER_GAMMA * a + np.sum(powers * (_ZETA / k), axis=1)


def _scaled_upper_small_x(a: np.ndarray, x: float, cfg: GammaConfig) -> np.ndarray:
    """``Gamma(a, x) e^x x^-a`` for non-integer ``a <= 1/2`` and ``0 < x < 1``.

    Start at the base order ``a0 = a + n`` in ``[-1/2, 1/2)`` from
    ``Gamma(a0, x) = [Gamma(1 + a0) - x^a0] / a0 - x^a0 sum_k>=1 (-x)^k / (k! (a0 + k))``
    with both brackets formed by ``expm1``, then step down with
    ``h(a - 1) = (x h(a) - 1) / (a - 1)``, which damps errors for ``x < 1``.
    """
    n = np.maximum(0, np.ceil(-a - 0.5)).astype(int)
    a0 = a + n
    lx = math.log(x)
    # sum_k>=1 (-x)^k / (k! (a0 + k))
    term = np.ones_like(a0)
    tail = np.zeros_like(a0)
    for k in range(1, cfg.max_iter + 1):
        term = term * (-x / k)
        inc = term / (a0 + k)
        tail = tail + inc
        if np.all(np.abs(inc) <= np.abs(tail) * cfg.stop_tol):
            break
    else:
        raise ConvergenceError(f"small-x upper gamma series did not converge at x={x}")
    head = (np.expm1(_ln_gamma_1p(a0)) - np.expm1(a0 * lx)) / a0
    h = math.exp(x) * (head * np.exp(-a0 * lx) - tail)
    order = a0
    for step in range(int(n.max(initial=0))):
        active = step < n
        h = np.where(active, (x * h - 1.0) / (order - 1.0), h)
        order = np.where(active, order - 1.0, order)
    return h


def _scaled_upper(a: np.ndarray, x: float, cfg: GammaConfig) -> np.ndarray:
    # h(a, x) = Gamma(a, x) e^x x^-a by route: continued fraction, complement, small-x, integer order
    out = np.empty_like(a)
    cf = _cf_mask(a, x, cfg)
    if cf.any():
        out[cf] = _upper_continued_fraction(a[cf], x, cfg)
    pos = ~cf & (a > _BASE_ORDER_MAX)
    if pos.any():
        ap = a[pos]
        log_p = _log_regularized_prefix(ap, x) + np.log(_lower_series_sum(ap, x, cfg))
        log_gamma = np.array([math.lgamma(v) for v in ap])
        out[pos] = np.exp(log_gamma + np.log(-np.expm1(log_p)) + x - ap * math.log(x))
    integer = ~cf & _is_nonpositive_integer(a)
    if integer.any():
        # Gamma(-n, x) = x^-n E_{n+1}(x)
        orders = (1.0 - a[integer]).astype(int)
        out[integer] = special.expn(orders, x) * math.exp(x)
    small = ~cf & ~pos & ~integer
    if small.any():
        out[small] = _scaled_upper_small_x(a[small], x, cfg)
    return out


def log_upper_incomplete(a, x: float, cfg: GammaConfig = DEFAULT_CONFIG) -> np.ndarray:
    """``ln Gamma(a, x)`` for an array of real orders and scalar ``x > 0``."""
    a = _as_orders(a)
    x = _check_x_positive(x)
    return np.log(_scaled_upper(a, x, cfg)) + a * math.log(x) - x


def scaled_upper_incomplete(a, x: float, cfg: GammaConfig = DEFAULT_CONFIG) -> np.ndarray:
    """``Gamma(a, x) * e^x * x^-a``, the bare continued-fraction value.

    Unlike ``Gamma(a, x)`` itself this stays of order ``1 / (x + 1 - a)``,
    so it can be multiplied into series terms without log bookkeeping.
    """
    return _scaled_upper(_as_orders(a), _check_x_positive(x), cfg)


def _check_x_positive(x: float) -> float:
    x = _check_finite("x", x)
    if x <= 0:
        raise DomainError(f"upper incomplete gamma needs x > 0, got {x!r}")
    return x


def _gamma_logscaled(a: float) -> LogScaled:
    # math.gamma is correctly rounded to a few ulp; exp(lgamma) would lose eps * |ln Gamma|
    if 0 < a < 171:
        return LogScaled.from_float(math.gamma(a))
    return LogScaled.from_log(math.lgamma(a))


def _power_logscaled(x: float, a: float) -> LogScaled:
    # x**a with the log carried in double-double
    base = LogScaled.from_float(x)
    hi, lo = _two_prod(base.log_mag, a)
    hi, lo = _two_sum(hi, lo + base.log_err * a)
    return LogScaled(1, hi, lo)


def regularized_lower_P(a: float, x: float, cfg: GammaConfig = DEFAULT_CONFIG) -> float:
    """``P(a, x) = gamma(a, x) / Gamma(a)``.

    Series representation below ``x = a + 1``, complement of the upper
    continued fraction above it.
    """
    a = _check_finite("a", a)
    x = _check_finite("x", x)
    if a <= 0 or x < 0:
        raise DomainError(f"regularized_lower_P needs a > 0 and x >= 0, got a={a}, x={x}")
    if x == 0.0:
        return 0.0
    return float(np.exp(log_regularized_lower(a, x, cfg)[0]))


def upper_incomplete(a: float, x: float, cfg: GammaConfig = DEFAULT_CONFIG) -> LogScaled:
    """``Gamma(a, x)`` for real ``a`` (negative non-integers included) and ``x > 0``."""
    a = _check_finite("a", a)
    x = _check_x_positive(x)
    orders = np.array([a])
    if a > _BASE_ORDER_MAX and not _cf_mask(orders, x, cfg)[0]:
        log_p = float(log_regularized_lower(orders, x, cfg)[0])
        return _gamma_logscaled(a) * LogScaled.from_float(-math.expm1(log_p))
    h = float(_scaled_upper(orders, x, cfg)[0])
    return LogScaled.from_float(h) * _power_logscaled(x, a) * LogScaled(1, -x)


def lower_incomplete_log(a: float, x: float, cfg: GammaConfig = DEFAULT_CONFIG) -> LogScaled:
    """``gamma(a, x) = P(a, x) * Gamma(a)`` composed in log space."""
    a = _check_finite("a", a)
    x = _check_finite("x", x)
    if a <= 0 or x < 0:
        raise DomainError(f"lower incomplete gamma needs a > 0 and x >= 0, got a={a}, x={x}")
    if x == 0.0:
        return LogScaled.zero()
    log_p = float(log_regularized_lower(a, x, cfg)[0])
    return LogScaled.from_log(log_p) * _gamma_logscaled(a)
