"""Airy functions of complex argument from a convergent incomplete-gamma expansion.

    >>> from airyseries import ai, bi
    >>> round(ai(1.0).value.real, 10)
    0.1352924163
"""

from .api import EvaluationRequest, EvaluationResult, ai, bi, sector_reduce
from .errors import AiryError, ConvergenceError, DomainError, ResourceError, SectorError
from .series import (
    SeriesEvaluation,
    asymptotic_ai,
    asymptotic_bi,
    convergent_ai_sector,
    maclaurin_ai,
    maclaurin_bi,
    oscillation_error_bound,
)

__all__ = [
    "EvaluationRequest",
    "EvaluationResult",
    "ai",
    "bi",
    "sector_reduce",
    "SeriesEvaluation",
    "maclaurin_ai",
    "maclaurin_bi",
    "asymptotic_ai",
    "asymptotic_bi",
    "convergent_ai_sector",
    "oscillation_error_bound",
    "AiryError",
    "DomainError",
    "SectorError",
    "ConvergenceError",
    "ResourceError",
]
