"""Input validation helpers shared across the package."""

from __future__ import annotations

import math
import re

from .errors import NonFiniteError, PeriodError, UnitIntervalError

_YEAR_RE = re.compile(r"^\d{4}$")
_QUARTER_RE = re.compile(r"^\d{4}-Q[1-4]$")


def check_finite(value: float, name: str = "value") -> float:
    value = float(value)
    if not math.isfinite(value):
        raise NonFiniteError(f"{name} must be finite, got {value!r}")
    return value


def check_unit(value: float, name: str = "value") -> float:
    """Validate a dimensionless value in [0, 1]; NaN and infinities rejected."""
    value = check_finite(value, name)
    if not 0.0 <= value <= 1.0:
        raise UnitIntervalError(f"{name} must lie in [0, 1], got {value!r}")
    return value


def check_period(period: str) -> str:
    """Accept calendar years (``2025``) or quarters (``2025-Q3``)."""
    if not isinstance(period, str) or not (_YEAR_RE.match(period) or _QUARTER_RE.match(period)):
        raise PeriodError(f"malformed period {period!r}; expected YYYY or YYYY-Qn")
    return period


def period_key(period: str) -> tuple[int, int]:
    """Sort key for a period; years order before their own quarters is irrelevant
    because mixed granularity within one component is rejected upstream."""
    check_period(period)
    if "-Q" in period:
        year, q = period.split("-Q")
        return int(year), int(q)
    return int(period), 0


def period_predecessor(period: str) -> str:
    """Immediate calendar predecessor: previous year, or previous quarter."""
    check_period(period)
    if "-Q" in period:
        year, q = period.split("-Q")
        y, q = int(year), int(q)
        if q == 1:
            return f"{y - 1:04d}-Q4"
        return f"{y:04d}-Q{q - 1}"
    return f"{int(period) - 1:04d}"


def is_quarterly(period: str) -> bool:
    return "-Q" in period
