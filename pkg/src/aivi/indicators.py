"""Indicator calculators: concentration, shares, levels, growth, deceleration.

Each calculator is a pure function from observations to a raw component
value; normalization against bounds happens later in the pipeline.
"""

from __future__ import annotations

import math
from dataclasses import dataclass, field
from enum import Enum
from fractions import Fraction
from typing import Mapping, Sequence

from .errors import (
    EmptySharesError,
    InsufficientHistoryError,
    MissingPredecessorError,
    NonPositiveBaseError,
    NonPositivePriorGrowthError,
    PeriodError,
    ResidualTooLargeError,
    ShapeMismatchError,
    ShareRangeError,
    ZeroTotalVolumeError,
)
from .validation import check_finite, is_quarterly, period_key, period_predecessor

SHARE_SUM_SLACK = 1e-9


class ResidualPolicy(str, Enum):
    IGNORE = "ignore"
    ERROR = "error"


@dataclass(frozen=True)
class ShareVector:
    """Market shares as fractions in [0, 1], summing to at most 1.

    The unlisted residual market (``1 - sum``) contributes nothing under
    ``residual_policy=ignore``; under ``error`` a coverage below
    ``residual_floor`` is rejected.
    """

    entries: tuple[tuple[str, float], ...]
    residual_policy: ResidualPolicy = ResidualPolicy.IGNORE
    residual_floor: float = 0.9

    def __post_init__(self) -> None:
        if not self.entries:
            raise EmptySharesError("share vector must contain at least one entry")
        for entity, share in self.entries:
            check_finite(share, f"share {entity!r}")
            if not 0.0 <= share <= 1.0:
                raise ShareRangeError(f"share {entity!r} = {share!r} outside [0, 1]")
        total = math.fsum(s for _, s in self.entries)
        if total > 1.0 + SHARE_SUM_SLACK:
            raise ShareRangeError(f"shares sum to {total!r}, above 1")
        if self.residual_policy == ResidualPolicy.ERROR and total < self.residual_floor:
            raise ResidualTooLargeError(
                f"shares cover only {total!r} of the market, below floor {self.residual_floor!r}"
            )

    @property
    def shares(self) -> tuple[float, ...]:
        return tuple(s for _, s in self.entries)


def hhi(shares: ShareVector) -> float:
    """Herfindahl-Hirschman index: sum of squared fractional shares.

    Accumulated in exact rational arithmetic with a single final rounding, so
    the equal-share law ``hhi(n shares of 1/n) == 1/n`` holds exactly and
    merging entries never decreases the result, even at the float level.
    """
    total = sum((Fraction(s) * Fraction(s) for s in shares.shares), Fraction(0))
    return float(total)


def max_share(shares: ShareVector) -> float:
    """Largest single share: the one-region concentration measure."""
    return max(shares.shares)


def top_k_share(volumes: Sequence[tuple[str, float]], k: int) -> float:
    """Share of total volume held by the ``k`` largest entities.

    Returns 1 when ``k`` meets or exceeds the entity count.
    """
    if not volumes:
        raise EmptySharesError("volume list must contain at least one entry")
    if k < 1:
        raise ShapeMismatchError(f"k must be a positive integer, got {k!r}")
    vals = []
    for entity, v in volumes:
        check_finite(v, f"volume {entity!r}")
        if v < 0:
            raise ShareRangeError(f"volume {entity!r} = {v!r} is negative")
        vals.append(v)
    total = math.fsum(vals)
    if total <= 0.0:
        raise ZeroTotalVolumeError("total volume is zero")
    if k >= len(vals):
        return 1.0
    top = math.fsum(sorted(vals, reverse=True)[:k])
    return min(1.0, top / total)


@dataclass(frozen=True)
class Series:
    """A time series with strictly increasing, uniformly spaced period labels."""

    points: tuple[tuple[str, float], ...] = field(default=())

    def __post_init__(self) -> None:
        seen = set()
        quarterly = None
        last = None
        for period, value in self.points:
            check_finite(value, f"value at {period!r}")
            if period in seen:
                raise PeriodError(f"duplicate period {period!r} in series")
            seen.add(period)
            q = is_quarterly(period)
            if quarterly is None:
                quarterly = q
            elif quarterly != q:
                raise PeriodError(
                    "mixed annual and quarterly periods in one series"
                )
            key = period_key(period)
            if last is not None and key <= last:
                raise PeriodError(f"series periods must be strictly increasing at {period!r}")
            last = key

    def value_at(self, period: str) -> float | None:
        for p, v in self.points:
            if p == period:
                return v
        return None


def growth_rate(series: Series, period: str) -> float:
    """Period-over-period relative change ``(v_t - v_{t-1}) / v_{t-1}``."""
    current = series.value_at(period)
    previous = series.value_at(period_predecessor(period))
    if current is None or previous is None:
        raise MissingPredecessorError(
            f"growth rate at {period!r} needs the period and its immediate predecessor"
        )
    if previous <= 0.0:
        raise NonPositiveBaseError(
            f"growth rate base at {period_predecessor(period)!r} is {previous!r}; must be positive"
        )
    return (current - previous) / previous


def deceleration(series: Series, period: str) -> float:
    """Deceleration proxy ``clamp(1 - g_t / g_{t-1}, 0, 1)``.

    0 means steady or accelerating growth; 1 means growth has stopped or
    reversed. Needs the period plus two predecessors, and a positive prior
    growth rate.
    """
    previous = period_predecessor(period)
    try:
        g_now = growth_rate(series, period)
        g_prior = growth_rate(series, previous)
    except (MissingPredecessorError, NonPositiveBaseError) as exc:
        raise InsufficientHistoryError(
            f"deceleration at {period!r} needs two consecutive growth rates: {exc.message}"
        ) from exc
    if g_prior <= 0.0:
        raise NonPositivePriorGrowthError(
            f"prior growth rate at {previous!r} is {g_prior!r}; deceleration undefined"
        )
    return min(1.0, max(0.0, 1.0 - g_now / g_prior))


class IndicatorKind(str, Enum):
    HHI = "hhi"
    MAX_SHARE = "max_share"
    TOP_K_SHARE = "top_k_share"
    LEVEL = "level"
    GROWTH_RATE = "growth_rate"
    DECELERATION = "deceleration"


#: kinds whose observations carry one row per entity
ENTITY_KINDS = frozenset({IndicatorKind.HHI, IndicatorKind.MAX_SHARE, IndicatorKind.TOP_K_SHARE})
#: kinds that need history before the target period
SERIES_KINDS = frozenset({IndicatorKind.GROWTH_RATE, IndicatorKind.DECELERATION})


def component_raw_value(
    kind: IndicatorKind,
    payload: ShareVector | Series | Sequence[tuple[str, float]] | float,
    period: str | None = None,
    params: Mapping[str, object] | None = None,
) -> float:
    """Dispatch a payload to the calculator for ``kind``.

    Shapes: ``hhi``/``max_share`` take a :class:`ShareVector`;
    ``top_k_share`` takes (entity, volume) pairs plus ``params['k']``;
    ``growth_rate``/``deceleration`` take a :class:`Series` and a period;
    ``level`` passes a single number through unchanged.
    """
    params = params or {}
    if kind in (IndicatorKind.HHI, IndicatorKind.MAX_SHARE):
        if not isinstance(payload, ShareVector):
            raise ShapeMismatchError(f"{kind.value} expects a ShareVector, got {type(payload).__name__}")
        return hhi(payload) if kind == IndicatorKind.HHI else max_share(payload)
    if kind == IndicatorKind.TOP_K_SHARE:
        if isinstance(payload, (ShareVector, Series)) or not isinstance(payload, Sequence):
            raise ShapeMismatchError(f"top_k_share expects (entity, volume) pairs, got {type(payload).__name__}")
        k = params.get("k", 3)
        if not isinstance(k, int) or isinstance(k, bool):
            raise ShapeMismatchError(f"top_k_share parameter k must be an integer, got {k!r}")
        return top_k_share(payload, k)
    if kind in SERIES_KINDS:
        if not isinstance(payload, Series):
            raise ShapeMismatchError(f"{kind.value} expects a Series, got {type(payload).__name__}")
        if period is None:
            raise ShapeMismatchError(f"{kind.value} requires a target period")
        if kind == IndicatorKind.GROWTH_RATE:
            return growth_rate(payload, period)
        return deceleration(payload, period)
    if kind == IndicatorKind.LEVEL:
        if not isinstance(payload, (int, float)) or isinstance(payload, bool):
            raise ShapeMismatchError(f"level expects a single number, got {type(payload).__name__}")
        return check_finite(float(payload), "level")
    raise ShapeMismatchError(f"unknown indicator kind {kind!r}")
