"""Exception hierarchy shared by every module.

The CLI maps these onto exit codes: domain-type errors exit with 3,
convergence failures with 4.
"""


class AiryError(Exception):
    """Base class for all package errors."""


class DomainError(AiryError, ValueError):
    """An argument lies outside the domain of the requested operation."""


class SectorError(DomainError):
    """A phase lies outside the sector an evaluator is valid for."""


class ConvergenceError(AiryError, ArithmeticError):
    """An iterative procedure hit its iteration cap before converging."""


class ResourceError(AiryError):
    """Exact arithmetic exceeded its configured digit budget."""
