"""Resolution pipeline: observations + model -> per-period component values.

This is the data-dependent half of the computation: raw indicator values are
computed for every period, empirical normalization bounds are taken from the
observed range, and each raw value is normalized under the model's clamp
policy. Coverage reporting shares this machinery so that the coverage matrix
flags exactly the component/period cells the index computation would reject.
"""

from __future__ import annotations

import dataclasses
from dataclasses import dataclass, field
from typing import Sequence

from .core import (
    BoundsKind,
    ClampPolicy,
    ComponentValue,
    ComputeResult,
    IndexWarning,
    MissingPolicy,
    NormalizationBounds,
    compute_index,
    normalize,
)
from .errors import (
    AiviError,
    DegenerateBoundsError,
    InsufficientDataError,
    InsufficientHistoryError,
    MissingComponentError,
    MissingPredecessorError,
    NonPositiveBaseError,
    NonPositivePriorGrowthError,
)
from .indicators import (
    ENTITY_KINDS,
    SERIES_KINDS,
    IndicatorKind,
    ShareVector,
    component_raw_value,
)
from .model import ComponentSpec, IndexModel
from .observations import Dataset, Observation
from .validation import period_key

PRESENT = "present"
MISSING = "missing"
INSUFFICIENT_HISTORY = "insufficient-history"


@dataclass(frozen=True)
class CoverageCell:
    status: str
    reason: str | None = None

    def to_dict(self) -> dict:
        out: dict = {"status": self.status}
        if self.reason is not None:
            out["reason"] = self.reason
        return out


@dataclass(frozen=True)
class CoverageReport:
    """Per component x period availability matrix, plus dataset-level notes."""

    periods: tuple[str, ...]
    cells: dict[str, dict[str, CoverageCell]]
    unknown_indicators: tuple[str, ...] = ()

    def missing_for(self, period: str) -> list[str]:
        return [cid for cid, row in self.cells.items() if row[period].status != PRESENT]

    def computable_periods(self) -> tuple[str, ...]:
        return tuple(p for p in self.periods if not self.missing_for(p))

    def latest_computable_period(self) -> str | None:
        computable = self.computable_periods()
        return computable[-1] if computable else None

    def to_dict(self) -> dict:
        return {
            "periods": list(self.periods),
            "components": {
                cid: {p: cell.to_dict() for p, cell in row.items()}
                for cid, row in self.cells.items()
            },
            "unknown_indicators": list(self.unknown_indicators),
            "summary": {
                p: {"missing": sorted(self.missing_for(p))} for p in self.periods
            },
        }

    def to_text(self) -> str:
        """Human-readable coverage table, one row per component."""
        width = max((len(c) for c in self.cells), default=9)
        marks = {PRESENT: "ok", MISSING: "MISSING", INSUFFICIENT_HISTORY: "history"}
        lines = [" ".join([f"{'component':<{width}}"] + [f"{p:>9}" for p in self.periods])]
        for cid, row in self.cells.items():
            cells = [f"{marks[row[p].status]:>9}" for p in self.periods]
            lines.append(" ".join([f"{cid:<{width}}"] + cells))
        if self.unknown_indicators:
            lines.append(f"unreferenced indicators: {', '.join(self.unknown_indicators)}")
        return "\n".join(lines)


def resolve_bounds(spec: ComponentSpec, raw_values: Sequence[float]) -> NormalizationBounds:
    """Resolve the normalization bounds for one component.

    Explicit bounds pass through as theoretical limits. Empirical bounds are
    the min/max of the component's raw values over all periods; fewer than
    two values is insufficient data and an all-equal set is degenerate.
    """
    if spec.bounds is not None:
        return spec.bounds
    values = sorted(set(float(v) for v in raw_values))
    if len(values) < 2:
        raise InsufficientDataError(
            f"component {spec.id!r} needs at least two distinct raw values for empirical "
            f"bounds, got {len(values)}"
        )
    return NormalizationBounds(values[0], values[-1], BoundsKind.EMPIRICAL)


@dataclass
class ResolvedDataset:
    """Everything the aggregation stage needs, precomputed per period."""

    model: IndexModel
    periods: tuple[str, ...]
    values: dict[str, dict[str, ComponentValue]]
    coverage: CoverageReport
    bounds: dict[str, NormalizationBounds] = field(default_factory=dict)
    warnings: tuple[IndexWarning, ...] = ()

    def compute(self, period: str) -> ComputeResult:
        if period not in self.values:
            raise MissingComponentError(
                f"period {period!r} has no resolved components; known periods: {list(self.periods)}",
                missing=[c.id for c in self.model.components],
            )
        return compute_index(self.model, self.values[period], period)

    def scorable_periods(self) -> tuple[str, ...]:
        """Periods ``compute`` would accept under the model's missing policy."""
        if self.model.missing_policy is MissingPolicy.RENORMALIZE_WARN:
            return tuple(p for p in self.periods if self.values.get(p))
        return self.coverage.computable_periods()

    def default_period(self) -> str | None:
        scorable = self.scorable_periods()
        return scorable[-1] if scorable else None


def _raw_value(
    spec: ComponentSpec, dataset: Dataset, period: str
) -> tuple[float | None, CoverageCell]:
    """Compute one raw value, or classify why it is unavailable."""
    try:
        if spec.kind in ENTITY_KINDS:
            pairs = dataset.entity_values(spec.indicator_id, period)
            if not pairs:
                return None, CoverageCell(MISSING, "no observations for period")
            if spec.kind == IndicatorKind.TOP_K_SHARE:
                raw = component_raw_value(spec.kind, pairs, period, spec.params)
            else:
                raw = component_raw_value(spec.kind, ShareVector(entries=tuple(pairs)), period)
        elif spec.kind in SERIES_KINDS:
            series = dataset.series(spec.indicator_id)
            if series.value_at(period) is None:
                return None, CoverageCell(MISSING, "no observations for period")
            raw = component_raw_value(spec.kind, series, period, spec.params)
        else:  # level
            value = dataset.level(spec.indicator_id, period)
            if value is None:
                return None, CoverageCell(MISSING, "no observations for period")
            raw = component_raw_value(spec.kind, value, period)
    except (MissingPredecessorError, InsufficientHistoryError) as exc:
        return None, CoverageCell(INSUFFICIENT_HISTORY, exc.message)
    except (NonPositiveBaseError, NonPositivePriorGrowthError) as exc:
        return None, CoverageCell(MISSING, exc.message)
    return raw, CoverageCell(PRESENT)


def resolve_dataset(model: IndexModel, observations: list[Observation]) -> ResolvedDataset:
    """Resolve raw values, bounds, and normalized values for every period.

    Unresolvable cells degrade to coverage entries rather than hard errors,
    so the same pass serves both computation and dataset validation. Hard
    errors remain for malformed data (bad shapes, duplicates).
    """
    dataset = Dataset(observations)
    periods = dataset.periods()
    known_indicators = {c.indicator_id for c in model.components}
    unknown = tuple(i for i in dataset.indicator_ids if i not in known_indicators)

    raws: dict[str, dict[str, float]] = {}
    cells: dict[str, dict[str, CoverageCell]] = {}
    for spec in model.components:
        raws[spec.id] = {}
        cells[spec.id] = {}
        for period in periods:
            raw, cell = _raw_value(spec, dataset, period)
            cells[spec.id][period] = cell
            if raw is not None:
                raws[spec.id][period] = raw

    warnings: list[IndexWarning] = []
    if unknown:
        warnings.append(
            IndexWarning(
                code="unknown_indicator",
                message=f"dataset contains indicators not referenced by the model: {list(unknown)}",
            )
        )

    bounds: dict[str, NormalizationBounds] = {}
    values: dict[str, dict[str, ComponentValue]] = {p: {} for p in periods}
    for spec in model.components:
        component_raws = raws[spec.id]
        try:
            resolved = resolve_bounds(spec, list(component_raws.values()))
        except (InsufficientDataError, DegenerateBoundsError) as exc:
            if component_raws:
                warnings.append(
                    IndexWarning(
                        code="bounds_unresolved",
                        message=f"empirical bounds for {spec.id!r} unresolvable: {exc.message}",
                        component_id=spec.id,
                    )
                )
            for period in component_raws:
                cells[spec.id][period] = CoverageCell(MISSING, f"bounds unresolvable: {exc.message}")
            continue
        bounds[spec.id] = resolved
        sub_id = model.sub_index_of(spec.id).id
        for period, raw in component_raws.items():
            normalized, warning = normalize(raw, resolved, model.clamp_policy)
            comp_warnings = ()
            if warning is not None:
                comp_warnings = (
                    dataclasses.replace(warning, component_id=spec.id, sub_index_id=sub_id, period=period),
                )
            values[period][spec.id] = ComponentValue(
                component_id=spec.id,
                period=period,
                raw=raw,
                bounds=resolved,
                normalized=normalized,
                warnings=comp_warnings,
            )

    coverage = CoverageReport(periods=periods, cells=cells, unknown_indicators=unknown)
    return ResolvedDataset(
        model=model,
        periods=periods,
        values=values,
        coverage=coverage,
        bounds=bounds,
        warnings=tuple(warnings),
    )


def validate_dataset(model: IndexModel, observations: list[Observation]) -> CoverageReport:
    """Coverage matrix for a dataset against a model; never raises for gaps."""
    return resolve_dataset(model, observations).coverage


def sorted_periods(periods: Sequence[str]) -> list[str]:
    return sorted(periods, key=period_key)
