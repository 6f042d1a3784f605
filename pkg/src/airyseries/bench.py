"""Extended-precision reference values and the accuracy studies built on them.

The reference is the Maclaurin series summed in mpmath at (by default) 256
bits with 600 terms, which is far below binary64 rounding for |z| <= 15.
"""

from __future__ import annotations

import csv
import io
import math
from concurrent.futures import ProcessPoolExecutor
from dataclasses import dataclass
from functools import lru_cache, partial
from typing import Iterable, Sequence

import mpmath
import numpy as np

from .api import EvaluationRequest, ai
from .errors import AiryError, DomainError, ResourceError

__all__ = [
    "OracleConfig",
    "DEFAULT_ORACLE",
    "AccuracyRecord",
    "oracle_ai",
    "oracle_bi",
    "oracle_ai_mp",
    "measure",
    "grid_rows",
    "grid_points",
    "accuracy_grid",
    "convergence_profile",
    "error_bound_map",
    "write_csv",
    "GRID_HEADER",
    "PROFILE_HEADER",
    "BOUND_HEADER",
]


@dataclass(frozen=True)
class OracleConfig:
    precision_bits: int = 256
    terms: int = 600
    max_modulus: float = 15.0

    def __post_init__(self):
        if self.precision_bits < 128:
            raise DomainError(f"precision_bits must be >= 128, got {self.precision_bits}")
        if self.terms < 100:
            raise DomainError(f"terms must be >= 100, got {self.terms}")


DEFAULT_ORACLE = OracleConfig()


def _chains_mp(zz, terms: int):
    # the two nonvanishing Maclaurin chains (n = 0 and 1 mod 3) and their last terms
    z3 = zz ** 3
    sums, tails = [], []
    for start, term in ((0, mpmath.gamma(mpmath.mpf(1) / 3)),
                        (1, mpmath.gamma(mpmath.mpf(2) / 3) * mpmath.cbrt(3) * zz)):
        total = mpmath.mpc(0)
        last = term
        for n in range(start, terms, 3):
            total += term
            last = term
            term = term * z3 / ((n + 2) * (n + 3))
        sums.append(total)
        tails.append(abs(last))
    return sums, tails


def _check_domain(z: complex, cfg: OracleConfig) -> complex:
    z = complex(z)
    if not (math.isfinite(z.real) and math.isfinite(z.imag)) or abs(z) > cfg.max_modulus:
        raise DomainError(f"oracle domain is |z| <= {cfg.max_modulus}, got {z}")
    return z


@lru_cache(maxsize=65536)
def _oracle_pair(z: complex, cfg: OracleConfig) -> tuple[complex, complex]:
    z = _check_domain(z, cfg)
    with mpmath.workprec(cfg.precision_bits):
        sums, tails = _chains_mp(mpmath.mpc(z.real, z.imag), cfg.terms)
        # the omitted terms must sit below the working precision
        scale = max(abs(sums[0]), abs(sums[1]), mpmath.mpf(1))
        if max(tails) > scale * mpmath.mpf(2) ** (-cfg.precision_bits + 8):
            raise ResourceError(f"{cfg.terms} terms do not reach {cfg.precision_bits}-bit accuracy at z = {z}")
        c = mpmath.cbrt(3) ** -2 / mpmath.pi
        ai_val = c * (mpmath.sqrt(3) / 2) * (sums[0] - sums[1])
        bi_val = c * mpmath.mpf(3) / 2 * (sums[0] + sums[1])
        return complex(ai_val), complex(bi_val)


def oracle_ai(z: complex, cfg: OracleConfig = DEFAULT_ORACLE) -> complex:
    """Ai(z) to full binary64 accuracy from the extended-precision Maclaurin sum."""
    return _oracle_pair(complex(z), cfg)[0]


def oracle_bi(z: complex, cfg: OracleConfig = DEFAULT_ORACLE) -> complex:
    return _oracle_pair(complex(z), cfg)[1]


def oracle_ai_mp(z: complex, cfg: OracleConfig = DEFAULT_ORACLE) -> mpmath.mpc:
    """Same sum as :func:`oracle_ai`, returned at full working precision."""
    z = _check_domain(z, cfg)
    with mpmath.workprec(cfg.precision_bits):
        sums, _ = _chains_mp(mpmath.mpc(z.real, z.imag), cfg.terms)
        return mpmath.cbrt(3) ** -2 / mpmath.pi * (mpmath.sqrt(3) / 2) * (sums[0] - sums[1])


@dataclass(frozen=True)
class AccuracyRecord:
    """One accuracy measurement ``|method - oracle| / |oracle|``.

    ``near_zero`` marks points where |Ai| is far below its local envelope
    (next to a zero on the negative axis); ``abs_error`` is given for all rows.
    """

    z: complex
    method: str
    N: int
    accuracy: float
    log10_accuracy: float
    value: complex
    oracle: complex
    abs_error: float
    near_zero: bool


def _envelope(z: complex) -> float:
    # size of the dominant exponential of Ai; on the negative axis the oscillation amplitude
    if z == 0:
        return 1.0
    zeta = (2 / 3) * complex(z) ** 1.5
    return abs(math.exp(-zeta.real)) / (2 * math.sqrt(math.pi) * abs(z) ** 0.25)


def _record(z: complex, method: str, N: int, value: complex, reference: complex) -> AccuracyRecord:
    err = abs(value - reference)
    acc = err / abs(reference) if reference != 0 else math.inf
    if math.isnan(acc):
        acc = math.inf
    log_acc = math.log10(acc) if acc > 0 else -math.inf
    near = abs(reference) < 1e-3 * _envelope(z)
    return AccuracyRecord(z, method, N, acc, log_acc, value, reference, err, near)


def measure(z: complex, method: str, N: int, cfg: OracleConfig = DEFAULT_ORACLE) -> AccuracyRecord:
    """Accuracy of one evaluation; evaluation failures count as infinitely inaccurate."""
    reference = oracle_ai(z, cfg)
    try:
        value = ai(EvaluationRequest(complex(z), method, N)).value
    except AiryError:
        value = complex(math.nan, math.nan)
    return _record(complex(z), method, N, value, reference)


def grid_points(x_range: Sequence[float], y_range: Sequence[float], step: float) -> list[complex]:
    """Grid nodes ``x0 + i*step``, ``y0 + j*step`` in (y, x) order, endpoints included."""
    if not step > 0:
        raise DomainError(f"step must be positive, got {step}")
    nx = int(math.floor((x_range[1] - x_range[0]) / step + 1e-9)) + 1
    ny = int(math.floor((y_range[1] - y_range[0]) / step + 1e-9)) + 1
    xs = [x_range[0] + i * step for i in range(nx)]
    ys = [y_range[0] + j * step for j in range(ny)]
    return [complex(x, y) for y in ys for x in xs]


def _parallel_map(func, items: list, workers: int) -> list:
    # results keep input order, so output never depends on scheduling
    if workers <= 1 or len(items) < 2:
        return [func(item) for item in items]
    with ProcessPoolExecutor(max_workers=workers) as pool:
        return list(pool.map(func, items, chunksize=max(1, len(items) // (8 * workers))))


def accuracy_grid(x_range=(-10.0, 10.0), y_range=(-10.0, 10.0), step: float = 0.25, method: str = "convergent",
                  N: int = 500, *, cfg: OracleConfig = DEFAULT_ORACLE, points: Iterable[complex] | None = None,
                  workers: int = 1) -> list[AccuracyRecord]:
    """Accuracy of ``method`` against the oracle over a rectangular grid, rows sorted by (y, x)."""
    pts = list(points) if points is not None else grid_points(x_range, y_range, step)
    pts.sort(key=lambda z: (z.imag, z.real))
    return _parallel_map(partial(measure, method=method, N=N, cfg=cfg), pts, workers)


def convergence_profile(z_list: Sequence[complex], N_list: Sequence[int], method: str = "convergent",
                        cfg: OracleConfig = DEFAULT_ORACLE) -> list[dict]:
    """Accuracy for every pair (z, N); rows carry ``r, phi, N, accuracy``."""
    if not z_list or not N_list:
        raise DomainError("z_list and N_list must be non-empty")
    rows = []
    for z in z_list:
        z = complex(z)
        for n in N_list:
            rec = measure(z, method, int(n), cfg)
            rows.append({"r": abs(z), "phi": math.atan2(z.imag, z.real), "N": int(n), "accuracy": rec.accuracy})
    return rows


def _bound_row(z: complex, N: int, cfg: OracleConfig) -> dict:
    res = ai(EvaluationRequest(z, "convergent", N))
    err = abs(res.value - oracle_ai(z, cfg))
    return {"x": z.real, "y": z.imag, "bound": res.error_bound, "actual_error": err,
            "has_bound": res.error_bound is not None}


def error_bound_map(x_range=(-10.0, 10.0), y_range=(-10.0, 10.0), step: float = 0.25, N: int = 500,
                    cfg: OracleConfig = DEFAULT_ORACLE, *, workers: int = 1) -> list[dict]:
    """Oscillation bound of the convergent expansion next to its actual error.

    ``bound`` is ``None`` where no bound exists (the rays arg z = +-2pi/3).
    """
    return _parallel_map(partial(_bound_row, N=N, cfg=cfg), grid_points(x_range, y_range, step), workers)


GRID_HEADER = ["x", "y", "method_re", "method_im", "oracle_re", "oracle_im", "accuracy", "log10_accuracy",
               "near_zero", "abs_error"]
PROFILE_HEADER = ["r", "phi", "N", "accuracy"]
BOUND_HEADER = ["x", "y", "bound", "actual_error", "has_bound"]


def _fmt(v) -> str:
    if v is None:
        return ""
    if isinstance(v, bool):
        return str(int(v))
    if isinstance(v, (float, np.floating)):
        return repr(float(v))
    return str(v)


def grid_rows(records: Iterable[AccuracyRecord]) -> list[list]:
    return [[r.z.real, r.z.imag, r.value.real, r.value.imag, r.oracle.real, r.oracle.imag, r.accuracy,
             r.log10_accuracy, r.near_zero, r.abs_error] for r in records]


def write_csv(header: Sequence[str], rows: Iterable[Sequence], out: io.TextIOBase | None = None) -> str:
    """Write rows as CSV (``\\n`` line endings, shortest round-trip floats) and return the text."""
    buf = io.StringIO()
    writer = csv.writer(buf, lineterminator="\n")
    writer.writerow(header)
    for row in rows:
        writer.writerow([_fmt(v) for v in row])
    text = buf.getvalue()
    if out is not None:
        out.write(text)
    return text
