"""Public entry points: Ai(z) and Bi(z) for any finite complex z."""

from __future__ import annotations

import cmath
import math
from dataclasses import dataclass, field

from .errors import DomainError, SectorError
from .series import (
    PhaseDecomposition,
    SeriesEvaluation,
    asymptotic_ai,
    convergent_ai_sector,
    maclaurin_ai,
)

__all__ = ["EvaluationRequest", "EvaluationResult", "ai", "bi", "sector_reduce", "METHODS", "AUTO_THRESHOLD"]

METHODS = ("auto", "maclaurin", "asymptotic", "convergent")
AUTO_THRESHOLD = 4.0

_ROT = cmath.exp(2j * math.pi / 3)
_EPS = 2.0 ** -52


@dataclass(frozen=True)
class EvaluationRequest:
    z: complex
    method: str = "auto"
    N: int = 500
    auto_threshold: float = AUTO_THRESHOLD

    def __post_init__(self):
        if self.method not in METHODS:
            raise DomainError(f"unknown method {self.method!r}; choose from {METHODS}")
        if isinstance(self.N, bool) or not isinstance(self.N, int) or self.N < 1:
            raise DomainError(f"N must be an integer >= 1, got {self.N!r}")


@dataclass(frozen=True)
class EvaluationResult:
    """Value plus the rotation terms and per-piece diagnostics behind it.

    ``sector_terms`` lists ``(factor, argument)`` pairs whose weighted Ai
    values were added; a direct evaluation has the single pair ``(1, z)``.
    """

    value: complex
    method_used: str
    sector_terms: tuple[tuple[complex, complex], ...]
    diagnostics: tuple[SeriesEvaluation, ...] = field(default=())
    error_bound: float | None = None

    @property
    def terms_used(self) -> int:
        return max(d.terms_used for d in self.diagnostics)


def _combined_bound(weights, bounds) -> float | None:
    bounds = list(bounds)
    if any(b is None for b in bounds):
        return None
    return float(sum(abs(w) * b for w, b in zip(weights, bounds)))


def _rotated(pd: PhaseDecomposition, shift: float) -> complex:
    # rotate through the phase so rotated arguments carry clean angles
    phi = math.remainder(pd.phi + shift, 2 * math.pi)
    return pd.r * complex(math.cos(phi), math.sin(phi))


def sector_reduce(z: complex) -> list[tuple[complex, complex]]:
    """Split Ai(z), ``|arg z| > 2pi/3``, into two Ai values inside the sector.

    ``Ai(z) = -e^{i2pi/3} Ai(e^{i2pi/3} z) - e^{-i2pi/3} Ai(e^{-i2pi/3} z)``
    """
    pd = PhaseDecomposition.from_complex(z)
    if pd.in_sector:
        raise SectorError(f"arg z = {pd.phi:.15g} is already inside the sector")
    return [(-_ROT, _rotated(pd, 2 * math.pi / 3)), (-_ROT.conjugate(), _rotated(pd, -2 * math.pi / 3))]


def _real_axis_cleanup(z: complex, value: complex) -> complex:
    return complex(value.real, 0.0) if complex(z).imag == 0 else value


def _single(z: complex, method: str, N: int) -> SeriesEvaluation:
    if method == "maclaurin":
        return maclaurin_ai(z, N)
    if method == "asymptotic":
        return asymptotic_ai(z)
    return convergent_ai_sector(z, N)


def ai(req: EvaluationRequest | complex) -> EvaluationResult:
    """Ai(z) by the requested method.

    ``auto`` uses the Maclaurin series below ``|z| = 4`` and the convergent
    expansion elsewhere.  The convergent expansion is applied directly inside
    ``|arg z| <= 2pi/3`` and through the rotation identity outside it.
    """
    if not isinstance(req, EvaluationRequest):
        req = EvaluationRequest(complex(req))
    pd = PhaseDecomposition.from_complex(req.z)
    method = req.method
    if method == "auto":
        method = "maclaurin" if pd.r < req.auto_threshold else "convergent"
    if method != "convergent" or pd.in_sector:
        ev = _single(pd.z, method, req.N)
        return EvaluationResult(_real_axis_cleanup(pd.z, ev.value), method, ((1.0 + 0j, pd.z),), (ev,),
                                ev.error_bound)
    terms = sector_reduce(pd.z)
    evs = tuple(convergent_ai_sector(arg, req.N) for _, arg in terms)
    value = sum(f * ev.value for (f, _), ev in zip(terms, evs))
    bound = _combined_bound([f for f, _ in terms], [ev.error_bound for ev in evs])
    if bound is not None:
        # rotated arguments carry a few ulp of phase error, moving Ai by ~ eps r^(3/2) |Ai|
        bound += _EPS * (2 + 4 * pd.r ** 1.5) * sum(abs(ev.value) for ev in evs)
    return EvaluationResult(_real_axis_cleanup(pd.z, value), method, tuple(terms), evs, bound)


def bi(req: EvaluationRequest | complex) -> EvaluationResult:
    """Bi(z) = e^{i pi/6} Ai(z e^{i2pi/3}) + e^{-i pi/6} Ai(z e^{-i2pi/3}), each Ai via :func:`ai`."""
    if not isinstance(req, EvaluationRequest):
        req = EvaluationRequest(complex(req))
    pd = PhaseDecomposition.from_complex(req.z)
    terms = [(cmath.exp(1j * math.pi / 6), _rotated(pd, 2 * math.pi / 3)),
             (cmath.exp(-1j * math.pi / 6), _rotated(pd, -2 * math.pi / 3))]
    parts = [ai(EvaluationRequest(arg, req.method, req.N, req.auto_threshold)) for _, arg in terms]
    value = sum(f * p.value for (f, _), p in zip(terms, parts))
    diagnostics = tuple(d for p in parts for d in p.diagnostics)
    bound = _combined_bound([f for f, _ in terms], [p.error_bound for p in parts])
    methods = sorted({p.method_used for p in parts})
    return EvaluationResult(_real_axis_cleanup(pd.z, value), "+".join(methods), tuple(terms), diagnostics, bound)
