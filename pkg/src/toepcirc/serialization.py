"""CSV/JSON text formats for rows, dense matrices, eigenvalues and reports.

Numbers are always written with 17 significant digits so that every float64
survives a print/parse round trip.
"""

import csv
import io
import json
import math
from typing import Iterable, Optional

import numpy as np

from .approximation import ApproximationMethod, ResidualReport
from .errors import DomainError

REPORT_COLUMNS = (
    "method",
    "rho",
    "M",
    "scaled_norm_sq_direct",
    "scaled_norm_sq_closed",
    "leading_term",
)


def fmt(x: float) -> str:
    x = float(x)
    if not math.isfinite(x):
        raise DomainError(f"cannot serialise non-finite value {x!r}")
    return format(x, ".17g")


def _fmt_optional(x: Optional[float]) -> str:
    return "" if x is None else fmt(x)


def _to_json(obj) -> str:
    # json.dumps uses repr() for floats; the 17-digit contract needs fmt()
    if obj is None:
        return "null"
    if isinstance(obj, bool):
        return "true" if obj else "false"
    if isinstance(obj, (int, np.integer)):
        return str(int(obj))
    if isinstance(obj, (float, np.floating)):
        return fmt(obj)
    if isinstance(obj, str):
        return json.dumps(obj)
    if isinstance(obj, dict):
        return "{" + ", ".join(f"{json.dumps(k)}: {_to_json(v)}" for k, v in obj.items()) + "}"
    if isinstance(obj, (list, tuple, np.ndarray)):
        return "[" + ", ".join(_to_json(v) for v in obj) + "]"
    raise TypeError(f"cannot serialise {type(obj).__name__}")


def dumps(obj) -> str:
    return _to_json(obj)


def format_row_csv(row: Iterable[float]) -> str:
    return ",".join(fmt(v) for v in row)


def format_dense_csv(a: np.ndarray) -> str:
    return "\n".join(format_row_csv(r) for r in np.asarray(a))


def parse_row(text: str) -> np.ndarray:
    """Parse a row given either as a JSON array or as CSV (one or more lines)."""
    stripped = text.strip()
    if not stripped:
        raise DomainError("empty row")
    try:
        if stripped.startswith("["):
            values = json.loads(stripped)
            if not isinstance(values, list) or any(
                isinstance(v, bool) or not isinstance(v, (int, float)) for v in values
            ):
                raise DomainError("JSON row must be an array of numbers")
            return np.array(values, dtype=np.float64)
        fields = [f.strip() for rec in csv.reader(io.StringIO(stripped)) for f in rec]
        return np.array([float(f) for f in fields if f], dtype=np.float64)
    except (ValueError, json.JSONDecodeError) as exc:
        if isinstance(exc, DomainError):
            raise
        raise DomainError(f"malformed row: {exc}") from None


def eigenvalues_csv(values: np.ndarray) -> str:
    """Real values on one CSV line; complex values as ``re,im`` lines indexed by k."""
    if np.iscomplexobj(values):
        return "\n".join(f"{fmt(v.real)},{fmt(v.imag)}" for v in values)
    return format_row_csv(values)


def eigenvalues_json(values: np.ndarray) -> str:
    if np.iscomplexobj(values):
        return dumps([{"re": float(v.real), "im": float(v.imag)} for v in values])
    return dumps([float(v) for v in values])


def report_fields(r: ResidualReport) -> list[str]:
    return [
        r.method.value,
        _fmt_optional(r.rho),
        str(r.order),
        fmt(r.scaled_norm_sq_direct),
        _fmt_optional(r.scaled_norm_sq_closed),
        _fmt_optional(r.leading_term),
    ]


def report_csv_header() -> str:
    return ",".join(REPORT_COLUMNS)


def report_csv_line(r: ResidualReport) -> str:
    return ",".join(report_fields(r))


def report_json(r: ResidualReport) -> str:
    return dumps(
        {
            "method": r.method.value,
            "rho": r.rho,
            "M": r.order,
            "scaled_norm_sq_direct": r.scaled_norm_sq_direct,
            "scaled_norm_sq_closed": r.scaled_norm_sq_closed,
            "leading_term": r.leading_term,
        }
    )


def parse_report_csv(text: str) -> list[ResidualReport]:
    """Read reports back from CSV produced by :func:`report_csv_line`."""
    reader = csv.DictReader(io.StringIO(text))
    if tuple(reader.fieldnames or ()) != REPORT_COLUMNS:
        raise DomainError(f"unexpected header {reader.fieldnames}")

    def opt(s: str) -> Optional[float]:
        return None if s == "" else float(s)

    return [
        ResidualReport(
            method=ApproximationMethod(rec["method"]),
            rho=opt(rec["rho"]),
            order=int(rec["M"]),
            scaled_norm_sq_direct=float(rec["scaled_norm_sq_direct"]),
            scaled_norm_sq_closed=opt(rec["scaled_norm_sq_closed"]),
            leading_term=opt(rec["leading_term"]),
        )
        for rec in reader
    ]
