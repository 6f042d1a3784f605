"""Three ways of summing Ai(z): Maclaurin, classical asymptotic, and the
convergent incomplete-gamma expansion valid for |arg z| <= 2pi/3.

All fractional powers use the principal branch, arg z in (-pi, pi].
"""

from __future__ import annotations

import math
from dataclasses import dataclass, field

import numpy as np

from .coefficients import CoefficientTable, default_table
from .errors import DomainError, SectorError
from .gamma import log_regularized_lower, scaled_upper_incomplete

__all__ = [
    "PhaseDecomposition",
    "SeriesEvaluation",
    "SECTOR_EDGE",
    "PHASE_TOL",
    "maclaurin_ai",
    "maclaurin_bi",
    "asymptotic_ai",
    "asymptotic_ai_neg_axis",
    "asymptotic_bi",
    "asymptotic_term_logs",
    "optimal_truncation_index",
    "convergent_ai_sector",
    "convergent_partial_sums",
    "oscillation_error_bound",
]

SECTOR_EDGE = 2 * math.pi / 3
PHASE_TOL = 1e-12

_SQRT3 = math.sqrt(3.0)
_AI0 = 3 ** (-2 / 3) / math.gamma(2 / 3)
_LOG_SQRT_PI = 0.5 * math.log(math.pi)


@dataclass(frozen=True)
class PhaseDecomposition:
    """``z = r * w`` with ``w = exp(i phi)`` and ``phi`` in (-pi, pi]."""

    r: float
    phi: float
    w: complex
    z: complex

    @classmethod
    def from_complex(cls, z: complex) -> PhaseDecomposition:
        z = complex(z)
        if not (math.isfinite(z.real) and math.isfinite(z.imag)):
            raise DomainError(f"non-finite argument {z}")
        r = abs(z)
        phi = math.atan2(z.imag, z.real) if r > 0 else 0.0
        if phi == -math.pi:
            phi = math.pi
        return cls(r, phi, complex(math.cos(phi), math.sin(phi)), z)

    def power(self, p: float) -> complex:
        """Principal ``z**p``."""
        if self.r == 0:
            return complex(0.0) if p > 0 else complex(1.0) if p == 0 else complex(math.inf)
        angle = p * self.phi
        return self.r ** p * complex(math.cos(angle), math.sin(angle))

    @property
    def on_sector_edge(self) -> bool:
        return abs(abs(self.phi) - SECTOR_EDGE) <= PHASE_TOL

    @property
    def in_sector(self) -> bool:
        return abs(self.phi) <= SECTOR_EDGE + PHASE_TOL


@dataclass(frozen=True)
class SeriesEvaluation:
    value: complex
    terms_used: int
    last_term_mag: float
    error_bound: float | None
    method: str
    notes: tuple[str, ...] = field(default=())

    def __post_init__(self):
        if self.terms_used < 1:
            raise ValueError("terms_used must be >= 1")
        if self.last_term_mag < 0 or (self.error_bound is not None and self.error_bound < 0):
            raise ValueError("magnitudes must be non-negative")


def _check_terms(N: int) -> int:
    if isinstance(N, bool) or not isinstance(N, (int, np.integer)) or N < 1:
        raise DomainError(f"number of terms must be an integer >= 1, got {N!r}")
    return int(N)


# --- Maclaurin ------------------------------------------------------------------


def _maclaurin_chains(z: complex, N: int) -> tuple[np.ndarray, np.ndarray]:
    """Terms ``Gamma((n+1)/3) (3**(1/3) z)**n / n!`` for n = 0 mod 3 and n = 1 mod 3.

    Each chain obeys ``t[n+3] = t[n] * z**3 / ((n+2)(n+3))``.
    """
    z3 = z ** 3
    chains = []
    for start, first in ((0, complex(math.gamma(1 / 3))),
                         (1, complex(math.gamma(2 / 3) * 3 ** (1 / 3)) * z)):
        ns = np.arange(start, N, 3)
        if ns.size == 0:
            chains.append(np.zeros(0, dtype=complex))
            continue
        ratios = np.empty(ns.size, dtype=complex)
        ratios[0] = first
        ratios[1:] = z3 / ((ns[:-1] + 2.0) * (ns[:-1] + 3.0))
        chains.append(np.cumprod(ratios))
    return chains[0], chains[1]


def _maclaurin(z: complex, N: int, weights: tuple[float, float], scale: float, tag: str) -> SeriesEvaluation:
    N = _check_terms(N)
    zero_chain, one_chain = _maclaurin_chains(complex(z), N)
    # n = 2 mod 3 carries a vanishing trigonometric factor
    value = scale * (weights[0] * zero_chain.sum() + weights[1] * one_chain.sum())
    last_n = N - 1 if (N - 1) % 3 != 2 else N - 2
    if last_n < 0:
        last = 0.0
    elif last_n % 3 == 0:
        last = abs(scale * weights[0] * zero_chain[-1])
    else:
        last = abs(scale * weights[1] * one_chain[-1])
    return SeriesEvaluation(complex(value), N, float(last), None, tag)


def maclaurin_ai(z: complex, N: int) -> SeriesEvaluation:
    """Maclaurin series of Ai summed through ``n = N - 1``.

    The factor ``sin(2(n+1)pi/3)`` is taken from ``n mod 3``: ``sqrt(3)/2, -sqrt(3)/2, 0``.
    """
    return _maclaurin(z, N, (_SQRT3 / 2, -_SQRT3 / 2), 3 ** (-2 / 3) / math.pi, "maclaurin")


def maclaurin_bi(z: complex, N: int) -> SeriesEvaluation:
    """Maclaurin series of Bi; the squared sine factor is ``3/4, 3/4, 0`` by ``n mod 3``."""
    return _maclaurin(z, N, (0.75, 0.75), 2 * 3 ** (-2 / 3) / math.pi, "maclaurin")


# --- asymptotic -----------------------------------------------------------------


def asymptotic_term_logs(r: float, n_terms: int) -> np.ndarray:
    """``log(Gamma(3n+1/2) / (9**n (2n)!) * r**(-3n/2))`` for ``n < n_terms``.

    Shared with the first convergent series, whose terms differ only by the
    factor ``P(n+1/2, 4/3 r**(3/2))``.
    """
    n = np.arange(n_terms - 1, dtype=float)
    step = (np.log((3 * n + 0.5) * (3 * n + 1.5) * (3 * n + 2.5))
            - np.log(9 * (2 * n + 1) * (2 * n + 2)) - 1.5 * math.log(r))
    out = np.empty(n_terms)
    out[0] = _LOG_SQRT_PI
    np.cumsum(step, out=out[1:])
    out[1:] += _LOG_SQRT_PI
    return out


def _first_rise(logs: np.ndarray) -> int | None:
    rising = np.nonzero(np.diff(logs) >= 0)[0]
    return int(rising[0]) if rising.size else None


def optimal_truncation_index(z: complex, series: str = "F") -> int:
    """Index of the smallest term of an asymptotic series (first-rise rule).

    ``series`` is one of ``F``, ``G`` (same magnitudes), ``P`` (even terms on
    the negative axis) or ``Q`` (odd terms).  The returned index counts terms
    of the named series; summation stops just before it.
    """
    pd = PhaseDecomposition.from_complex(z)
    if pd.r == 0:
        raise DomainError("asymptotic series are undefined at z = 0")
    series = series.upper()
    if series not in ("F", "G", "P", "Q"):
        raise DomainError(f"unknown series tag {series!r}")
    # the smallest term sits near n = 4/3 r**(3/2); scan well past it
    n_scan = int(3 * pd.r ** 1.5) + 20
    logs = asymptotic_term_logs(pd.r, 2 * n_scan + 2)
    if series == "P":
        logs = logs[0::2]
    elif series == "Q":
        logs = logs[1::2]
    else:
        logs = logs[:n_scan]
    idx = _first_rise(logs)
    return idx if idx is not None else logs.size - 1


def _asymptotic_sums(pd: PhaseDecomposition) -> tuple[complex, complex, float, int]:
    # F and G without their exponential prefactors, truncated before the smallest term
    # (the leading term is always kept)
    n_opt = max(optimal_truncation_index(pd.z, "F"), 1)
    logs = asymptotic_term_logs(pd.r, n_opt + 1)
    n = np.arange(n_opt + 1)
    terms = np.exp(logs) * np.exp(-1.5j * n * pd.phi)
    signs = np.where(n % 2 == 0, 1.0, -1.0)
    f_sum = complex(np.sum(signs[:n_opt] * terms[:n_opt]))
    g_sum = complex(np.sum(terms[:n_opt]))
    return f_sum, g_sum, float(np.exp(logs[n_opt])), n_opt


def _asymptotic_pieces(pd: PhaseDecomposition):
    zeta = (2 / 3) * pd.power(1.5)
    base = 1 / (2 * math.pi * pd.power(0.25))
    f_sum, g_sum, first_neglected, n_opt = _asymptotic_sums(pd)
    f_pre = base * np.exp(-zeta)
    g_pre = base * np.exp(zeta)
    return (complex(f_pre * f_sum), complex(g_pre * g_sum),
            abs(f_pre) * first_neglected, abs(g_pre) * first_neglected, n_opt)


def asymptotic_ai(z: complex) -> SeriesEvaluation:
    """Classical asymptotic expansion of Ai at optimal truncation.

    Dominant series F everywhere; the subdominant G enters with multiplier
    ``i sign(arg z)`` past the Stokes lines ``|arg z| = 2pi/3`` (half of it
    on the lines).  On the negative real axis the oscillatory form is used.
    """
    pd = PhaseDecomposition.from_complex(z)
    if pd.r == 0:
        raise DomainError("asymptotic_ai is undefined at z = 0")
    if pd.phi == math.pi:
        return asymptotic_ai_neg_axis(pd.r)
    f_val, g_val, f_err, g_err, n_opt = _asymptotic_pieces(pd)
    sign = 1.0 if pd.phi > 0 else -1.0
    notes = []
    if pd.on_sector_edge:
        mult = 0.5
        notes.append("Stokes line: subdominant series with half multiplier")
    elif abs(pd.phi) > SECTOR_EDGE:
        mult = 1.0
        notes.append("subdominant series included")
    else:
        mult = 0.0
    value = f_val + mult * sign * 1j * g_val
    bound = f_err + (mult * g_err if mult else 0.0)
    return SeriesEvaluation(value, max(n_opt, 1), f_err, bound, "asymptotic", tuple(notes))


def _neg_axis_pieces(x: float):
    if not (x > 0 and math.isfinite(x)):
        raise DomainError(f"negative-axis form needs x > 0, got {x}")
    k_p = max(optimal_truncation_index(x, "P"), 1)
    k_q = max(optimal_truncation_index(x, "Q"), 1)
    logs = asymptotic_term_logs(x, 2 * max(k_p, k_q) + 2)
    even = np.exp(logs[0::2])
    odd = np.exp(logs[1::2])
    alt_p = np.where(np.arange(even.size) % 2 == 0, 1.0, -1.0)
    alt_q = np.where(np.arange(odd.size) % 2 == 0, 1.0, -1.0)
    p_sum = float(np.sum(alt_p[:k_p] * even[:k_p]))
    q_sum = float(np.sum(alt_q[:k_q] * odd[:k_q]))
    pre = 1 / (math.pi * x ** 0.25)
    bound = pre * (even[k_p] + odd[k_q])
    angle = (2 / 3) * x ** 1.5 + math.pi / 4
    return pre, p_sum, q_sum, angle, bound, max(k_p + k_q, 1)


def asymptotic_ai_neg_axis(x: float) -> SeriesEvaluation:
    """``Ai(-x)`` for ``x > 0`` from ``P sin(xi + pi/4) - Q cos(xi + pi/4)``."""
    pre, p_sum, q_sum, angle, bound, used = _neg_axis_pieces(float(x))
    value = pre * (p_sum * math.sin(angle) - q_sum * math.cos(angle))
    return SeriesEvaluation(complex(value), used, bound, bound, "asymptotic", ("negative real axis form",))


def asymptotic_bi(z: complex) -> SeriesEvaluation:
    """Classical asymptotic expansion of Bi at optimal truncation.

    ``2G`` on the positive axis, ``2G + i sign(arg z) F`` inside the sector,
    ``G + i sign(arg z) F`` beyond the Stokes lines (``3G/2`` on them) and the
    oscillatory form on the negative axis.
    """
    pd = PhaseDecomposition.from_complex(z)
    if pd.r == 0:
        raise DomainError("asymptotic_bi is undefined at z = 0")
    if pd.phi == math.pi:
        pre, p_sum, q_sum, angle, bound, used = _neg_axis_pieces(pd.r)
        value = pre * (p_sum * math.cos(angle) + q_sum * math.sin(angle))
        return SeriesEvaluation(complex(value), used, bound, bound, "asymptotic", ("negative real axis form",))
    f_val, g_val, f_err, g_err, n_opt = _asymptotic_pieces(pd)
    if pd.phi == 0:
        return SeriesEvaluation(2 * g_val, max(n_opt, 1), 2 * g_err, 2 * g_err, "asymptotic")
    sign = 1.0 if pd.phi > 0 else -1.0
    if pd.on_sector_edge:
        g_mult = 1.5
    elif abs(pd.phi) > SECTOR_EDGE:
        g_mult = 1.0
    else:
        g_mult = 2.0
    value = g_mult * g_val + sign * 1j * f_val
    bound = g_mult * g_err + f_err
    return SeriesEvaluation(value, max(n_opt, 1), g_mult * g_err, bound, "asymptotic")


# --- convergent expansion -------------------------------------------------------


def _table_for(N: int) -> CoefficientTable:
    return default_table() if N <= 500 else default_table(N - 1)


def convergent_partial_sums(z: complex, N: int, table: CoefficientTable | None = None):
    """Per-term contributions of the three convergent series, prefactors included.

    Returns ``(s1, s2, s3)``, each a complex array of length ``N`` whose sum is
    that series' contribution to Ai(z).  ``z`` must be nonzero and inside the
    sector.
    """
    pd = PhaseDecomposition.from_complex(z)
    N = _check_terms(N)
    if pd.r == 0:
        raise DomainError("term arrays are not defined at z = 0")
    table = table or _table_for(N)
    if table.m_max < N - 1:
        raise DomainError(f"coefficient table holds {table.m_max + 1} orders, {N} requested")
    x = (4 / 3) * pd.r ** 1.5
    n = np.arange(N)
    zeta = (2 / 3) * pd.power(1.5)

    # first series, assembled in log space
    logs = asymptotic_term_logs(pd.r, N) + log_regularized_lower(n + 0.5, x)
    phases = np.exp(1j * (math.pi - 1.5 * pd.phi) * n)
    pre1 = np.exp(-zeta) / (2 * math.pi * pd.power(0.25))
    s1 = pre1 * np.exp(logs) * phases

    # second and third: Gamma(a, X) = exp(-X) X**a h with z**(3m/2) X**(-m) = (3/4)**m w**(3m/2)
    rot = np.exp(1.5j * pd.phi * n)
    geo = np.exp(n * math.log(0.75))
    common = -_SQRT3 * np.exp(-zeta - x) / (2 ** (2 / 3) * math.pi)
    h2 = scaled_upper_incomplete(1 / 3 - n, x)
    h3 = scaled_upper_incomplete(-1 / 3 - n, x)
    a = table.a[:N]
    b = table.b[:N]
    s2 = common * x ** (1 / 3) * 2 ** (-2 / 3) * (a * (n - 1 / 3) * h2 * geo) * rot
    s3 = -common * x ** (-1 / 3) * pd.z * (b * (n + 1 / 3) * h3 * geo) * rot
    return s1, s2, s3


def convergent_ai_sector(z: complex, N: int = 500, table: CoefficientTable | None = None) -> SeriesEvaluation:
    """Ai(z) from the convergent incomplete-gamma expansion, ``|arg z| <= 2pi/3``.

    Each of the three series is summed through index ``N - 1``.  At ``z = 0``
    only the leading term of the second series survives and gives Ai(0).
    """
    N = _check_terms(N)
    pd = PhaseDecomposition.from_complex(z)
    if not pd.in_sector:
        raise SectorError(f"|arg z| = {abs(pd.phi):.15g} exceeds 2pi/3; reduce the argument first")
    if pd.r == 0:
        return SeriesEvaluation(complex(_AI0), 1, _AI0, math.ulp(_AI0), "convergent", ("exact value at z = 0",))
    series = convergent_partial_sums(z, N, table)
    value = complex(sum(np.sum(s) for s in series))
    last = max(abs(s[-1]) for s in series)
    notes = []
    bound = oscillation_error_bound(z, N, _series=series) if N >= 8 else None
    if bound is None:
        notes.append(f"no oscillation bound on this ray; last term magnitude {last:.3e}")
    return SeriesEvaluation(value, N, float(last), bound, "convergent", tuple(notes))


def _term_phase_step(phi: float) -> float:
    # per-term phase advance shared by all three series, wrapped to (-pi, pi]
    theta = math.remainder(1.5 * phi + math.pi, 2 * math.pi)
    return abs(theta)


def oscillation_error_bound(z: complex, N: int, *, _series=None) -> float | None:
    """Error estimate from the spread of the last oscillation of the partial sums.

    The partial sums of each series rotate by ``3 phi/2 + pi`` per term, so
    consecutive extrema are ``2 pi / |3 phi/2 + pi|`` terms apart (2 on the
    positive axis).  Over the last such window before ``N`` the spread of
    real and imaginary parts is measured.  The three tails point the same way
    in practice, so their spreads are added rather than maximized.  A
    rounding floor ``eps (1 + |zeta| + X) sum |terms|`` is added, since the
    exponential prefactors carry relative error proportional to their
    arguments.  ``None`` on the rays ``arg z = +-2pi/3``, where the
    terms do not oscillate.
    """
    pd = PhaseDecomposition.from_complex(z)
    if N < 8:
        raise DomainError(f"error bound needs N >= 8, got {N}")
    if pd.on_sector_edge:
        return None
    if not pd.in_sector:
        raise SectorError("bound is defined inside the sector; bound each reduced argument instead")
    if pd.r == 0:
        return math.ulp(_AI0)
    step = _term_phase_step(pd.phi)
    series = _series if _series is not None else convergent_partial_sums(z, N)
    window = min(math.ceil(2 * math.pi / step) + 1, N - 1)
    spreads = []
    for terms in series:
        tail = np.cumsum(terms)[-window:]
        spreads.append(math.hypot(np.ptp(tail.real), np.ptp(tail.imag)))
    magnitude = sum(float(np.sum(np.abs(terms))) for terms in series)
    rounding = np.finfo(float).eps * (1 + 2 * pd.r ** 1.5) * magnitude
    return float(sum(spreads) + rounding)
