"""Observation CSV parsing and dataset indexing.

The observation format is a strict CSV with the exact header
``indicator_id,entity,period,value,unit,source,retrieved_at`` (UTF-8,
decimal point). Entities are required for share/volume indicators and
optional for series and level indicators.
"""

from __future__ import annotations

import csv
import io
import math
from dataclasses import dataclass
from pathlib import Path

from .errors import DuplicateObservationError, HeaderMismatchError, RowParseError, ShapeMismatchError
from .indicators import Series
from .validation import check_period, period_key

CSV_HEADER = ("indicator_id", "entity", "period", "value", "unit", "source", "retrieved_at")


@dataclass(frozen=True)
class Observation:
    """One raw data point as landed from a source dataset."""

    indicator_id: str
    entity: str
    period: str
    value: float
    unit: str = ""
    source: str = ""
    retrieved_at: str = ""


def parse_observations(text: str) -> list[Observation]:
    """Parse a strict observation CSV.

    Either every row parses, or a :class:`RowParseError` is raised whose
    ``failures`` attribute lists every offending row with its line number.
    An empty body under a valid header is fine.
    """
    reader = csv.reader(io.StringIO(text))
    try:
        header = next(reader)
    except StopIteration:
        raise HeaderMismatchError("empty file: missing header row") from None
    if tuple(header) != CSV_HEADER:
        raise HeaderMismatchError(
            f"header {','.join(header)!r} does not match required {','.join(CSV_HEADER)!r}"
        )

    rows: list[Observation] = []
    failures: list[RowParseError] = []
    for line_no, row in enumerate(reader, start=2):
        if not row:
            continue
        if len(row) != len(CSV_HEADER):
            failures.append(
                RowParseError(f"expected {len(CSV_HEADER)} fields, got {len(row)}", line=line_no)
            )
            continue
        indicator_id, entity, period, value_text, unit, source, retrieved_at = row
        if not indicator_id:
            failures.append(RowParseError("indicator_id must not be empty", line=line_no, column="indicator_id"))
            continue
        try:
            check_period(period)
        except Exception as exc:
            failures.append(RowParseError(str(exc), line=line_no, column="period"))
            continue
        try:
            value = float(value_text)
        except ValueError:
            failures.append(
                RowParseError(f"value {value_text!r} is not a decimal number", line=line_no, column="value")
            )
            continue
        if not math.isfinite(value):
            failures.append(RowParseError(f"value {value!r} is not finite", line=line_no, column="value"))
            continue
        rows.append(
            Observation(
                indicator_id=indicator_id,
                entity=entity,
                period=period,
                value=value,
                unit=unit,
                source=source,
                retrieved_at=retrieved_at,
            )
        )
    if failures:
        first = failures[0]
        err = RowParseError(
            "; ".join(f"line {f.line}: {f.message}" for f in failures),
            line=first.line,
            column=first.column,
        )
        err.failures = failures  # type: ignore[attr-defined]
        raise err
    return rows


def load_observations(*paths: str | Path) -> list[Observation]:
    """Read and concatenate one or more observation CSV files."""
    rows: list[Observation] = []
    for path in paths:
        rows.extend(parse_observations(Path(path).read_text(encoding="utf-8")))
    return rows


def as_observations(X) -> list[Observation]:
    """Coerce estimator input into observations.

    Accepts a list of :class:`Observation`, a path (or list of paths) to
    observation CSVs, a list of row dicts, or anything DataFrame-like with a
    ``to_dict('records')`` method and the CSV's columns.
    """
    if isinstance(X, (str, Path)):
        return load_observations(X)
    if hasattr(X, "to_dict"):
        X = X.to_dict("records")
    rows = list(X)
    if not rows:
        return []
    if all(isinstance(r, Observation) for r in rows):
        return rows
    if all(isinstance(r, (str, Path)) for r in rows):
        return load_observations(*rows)
    out = []
    for r in rows:
        out.append(
            Observation(
                indicator_id=str(r["indicator_id"]),
                entity=str(r.get("entity", "") or ""),
                period=check_period(str(r["period"])),
                value=float(r["value"]),
                unit=str(r.get("unit", "") or ""),
                source=str(r.get("source", "") or ""),
                retrieved_at=str(r.get("retrieved_at", "") or ""),
            )
        )
    return out


class Dataset:
    """Observations indexed by indicator, with shape accessors per kind."""

    def __init__(self, observations: list[Observation]):
        self._index: dict[str, dict[str, dict[str, float]]] = {}
        seen: set[tuple[str, str, str]] = set()
        for obs in observations:
            key = (obs.indicator_id, obs.entity, obs.period)
            if key in seen:
                raise DuplicateObservationError(
                    f"duplicate observation for indicator {obs.indicator_id!r}, "
                    f"entity {obs.entity!r}, period {obs.period!r}"
                )
            seen.add(key)
            self._index.setdefault(obs.indicator_id, {}).setdefault(obs.period, {})[obs.entity] = obs.value

    @property
    def indicator_ids(self) -> tuple[str, ...]:
        return tuple(sorted(self._index))

    def periods(self) -> tuple[str, ...]:
        all_periods = {p for by_period in self._index.values() for p in by_period}
        return tuple(sorted(all_periods, key=period_key))

    def has(self, indicator_id: str, period: str) -> bool:
        return period in self._index.get(indicator_id, {})

    def entity_values(self, indicator_id: str, period: str) -> list[tuple[str, float]]:
        """(entity, value) pairs for share/volume indicators; every row must name an entity."""
        by_entity = self._index.get(indicator_id, {}).get(period)
        if not by_entity:
            return []
        if "" in by_entity:
            raise ShapeMismatchError(
                f"indicator {indicator_id!r} has a row without an entity in period {period!r}; "
                "share and volume indicators need one row per entity"
            )
        return sorted(by_entity.items())

    def series(self, indicator_id: str) -> Series:
        """The single time series for a series indicator, sorted by period."""
        by_period = self._index.get(indicator_id, {})
        entities = {e for by_entity in by_period.values() for e in by_entity}
        if len(entities) > 1:
            raise ShapeMismatchError(
                f"indicator {indicator_id!r} has rows for several entities {sorted(entities)!r}; "
                "series indicators need a single series"
            )
        points = sorted(
            ((p, next(iter(by_entity.values()))) for p, by_entity in by_period.items()),
            key=lambda pv: period_key(pv[0]),
        )
        return Series(points=tuple(points))

    def level(self, indicator_id: str, period: str) -> float | None:
        by_entity = self._index.get(indicator_id, {}).get(period)
        if by_entity is None:
            return None
        if len(by_entity) > 1:
            raise ShapeMismatchError(
                f"indicator {indicator_id!r} has {len(by_entity)} rows in period {period!r}; "
                "level indicators need exactly one"
            )
        return next(iter(by_entity.values()))
