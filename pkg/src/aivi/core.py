"""Aggregation mathematics for the AI Vulnerability Index.

Everything here is pure and deterministic: min-max normalization, weight
validation, weighted-average sub-index potentials, the geometric top-level
aggregate, and its additive log-scale decomposition.

The geometric aggregate ``1 - prod(pot_i ** w_i)`` is evaluated in log space,
``1 - exp(sum(w_i * log(pot_i)))``, which is robust for small potentials and
lets a zero potential short-circuit to an index of exactly 1. A zero weight
makes its factor a no-op (``pot ** 0 == 1``) regardless of the potential.
"""

from __future__ import annotations

import math
from dataclasses import dataclass, field
from enum import Enum
from typing import TYPE_CHECKING, Iterable, Mapping, Sequence

from .errors import (
    DegenerateBoundsError,
    EmptyWeightsError,
    IdMismatchError,
    MissingComponentError,
    NegativeWeightError,
    OutOfRangeError,
    WeightSumError,
)
from .validation import check_finite, check_unit

if TYPE_CHECKING:  # pragma: no cover
    from .model import IndexModel

WEIGHT_SUM_TOLERANCE = 1e-9


class ClampPolicy(str, Enum):
    CLAMP_WARN = "clamp_warn"
    ERROR = "error"


class MissingPolicy(str, Enum):
    ERROR = "error"
    RENORMALIZE_WARN = "renormalize_warn"


class BoundsKind(str, Enum):
    THEORETICAL = "theoretical"
    EMPIRICAL = "empirical"


@dataclass(frozen=True)
class IndexWarning:
    """Structured, serializable warning attached to results."""

    code: str
    message: str
    component_id: str | None = None
    sub_index_id: str | None = None
    period: str | None = None
    detail: Mapping[str, float] | None = None

    def to_dict(self) -> dict:
        out: dict = {"code": self.code, "message": self.message}
        if self.component_id is not None:
            out["component_id"] = self.component_id
        if self.sub_index_id is not None:
            out["sub_index_id"] = self.sub_index_id
        if self.period is not None:
            out["period"] = self.period
        if self.detail is not None:
            out["detail"] = dict(self.detail)
        return out


@dataclass(frozen=True)
class NormalizationBounds:
    """Finite min/max with strictly min < max; ``kind`` records provenance."""

    min: float
    max: float
    kind: BoundsKind = BoundsKind.THEORETICAL

    def __post_init__(self) -> None:
        check_finite(self.min, "bounds.min")
        check_finite(self.max, "bounds.max")
        if not self.min < self.max:
            raise DegenerateBoundsError(
                f"degenerate bounds: min={self.min!r} must be strictly below max={self.max!r}"
            )

    def to_dict(self) -> dict:
        return {"kind": self.kind.value, "min": self.min, "max": self.max}


UNIT_BOUNDS = NormalizationBounds(0.0, 1.0, BoundsKind.THEORETICAL)


def normalize(
    x: float,
    bounds: NormalizationBounds,
    policy: ClampPolicy = ClampPolicy.CLAMP_WARN,
) -> tuple[float, IndexWarning | None]:
    """Min-max normalize ``x`` onto [0, 1].

    Values outside the bounds are clamped to the nearest endpoint with a
    warning, or rejected, depending on ``policy``. Endpoints map exactly:
    ``normalize(min) == 0.0`` and ``normalize(max) == 1.0``.
    """
    x = check_finite(x, "x")
    if x < bounds.min or x > bounds.max:
        if policy == ClampPolicy.ERROR:
            raise OutOfRangeError(
                f"value {x!r} outside bounds [{bounds.min!r}, {bounds.max!r}]"
            )
        clamped = 0.0 if x < bounds.min else 1.0
        warning = IndexWarning(
            code="clamp",
            message=f"raw value {x!r} outside [{bounds.min!r}, {bounds.max!r}]; clamped to {clamped}",
            detail={"raw": x, "clamped_to": clamped, "min": bounds.min, "max": bounds.max},
        )
        return clamped, warning
    if x == bounds.min:
        return 0.0, None
    if x == bounds.max:
        return 1.0, None
    return (x - bounds.min) / (bounds.max - bounds.min), None


@dataclass(frozen=True)
class WeightVector:
    """Ordered (id, weight) pairs: non-negative, summing to 1 within tolerance.

    Construct through :func:`validate_weights`; the constructor assumes
    already-validated entries.
    """

    entries: tuple[tuple[str, float], ...]

    @property
    def ids(self) -> tuple[str, ...]:
        return tuple(i for i, _ in self.entries)

    @property
    def weights(self) -> tuple[float, ...]:
        return tuple(w for _, w in self.entries)

    def __len__(self) -> int:
        return len(self.entries)

    def __getitem__(self, key: str) -> float:
        for i, w in self.entries:
            if i == key:
                return w
        raise KeyError(key)

    def as_dict(self) -> dict[str, float]:
        return dict(self.entries)


def validate_weights(
    weights: Sequence[float] | Sequence[tuple[str, float]] | Mapping[str, float],
    tolerance: float = WEIGHT_SUM_TOLERANCE,
) -> WeightVector:
    """Validate candidate weights into a :class:`WeightVector`.

    Accepts a bare sequence of weights (positional ids are generated), a
    sequence of (id, weight) pairs, or an id -> weight mapping. Never
    renormalizes: a sum off by more than ``tolerance`` is an error.
    """
    if isinstance(weights, Mapping):
        pairs = [(str(k), float(v)) for k, v in weights.items()]
    else:
        items = list(weights)
        if items and isinstance(items[0], tuple):
            pairs = [(str(k), float(v)) for k, v in items]  # type: ignore[misc]
        else:
            pairs = [(f"w{i}", float(v)) for i, v in enumerate(items)]  # type: ignore[arg-type]
    if not pairs:
        raise EmptyWeightsError("weight vector must not be empty")
    for name, value in pairs:
        check_finite(value, f"weight {name!r}")
        if value < 0:
            raise NegativeWeightError(f"weight {name!r} is negative: {value!r}")
    total = math.fsum(value for _, value in pairs)
    if abs(total - 1.0) > tolerance:
        raise WeightSumError(
            f"weights sum to {total!r}, expected 1 within {tolerance:g}"
        )
    return WeightVector(entries=tuple(pairs))


def potential_sub_index(
    normalized: Sequence[float],
    weights: WeightVector | Sequence[float],
) -> float:
    """Potential of one sub-index: ``1 - sum(w_j * n_j)``.

    All ``n_j`` must be normalized values in [0, 1]; the result is again in
    [0, 1] (excursions of a few ulps from weight-sum slack are clipped).
    """
    if not isinstance(weights, WeightVector):
        weights = validate_weights(weights)
    values = [check_unit(n, f"normalized[{i}]") for i, n in enumerate(normalized)]
    if len(values) != len(weights):
        raise IdMismatchError(
            f"{len(values)} normalized values for {len(weights)} weights"
        )
    burden = math.fsum(w * n for w, n in zip(weights.weights, values))
    return min(1.0, max(0.0, 1.0 - burden))


def vulnerability_from_potential(potential: float) -> float:
    return 1.0 - check_unit(potential, "potential")


def _paired(
    potentials: Sequence[tuple[str, float]] | Mapping[str, float],
    weights: WeightVector,
) -> list[tuple[str, float, float]]:
    pots = dict(potentials.items() if isinstance(potentials, Mapping) else potentials)
    if set(pots) != set(weights.ids) or len(pots) != len(weights):
        raise IdMismatchError(
            f"potential ids {sorted(pots)} do not match weight ids {sorted(weights.ids)}"
        )
    return [(i, check_unit(pots[i], f"potential {i!r}"), w) for i, w in weights.entries]


def aggregate_index(
    potentials: Sequence[tuple[str, float]] | Mapping[str, float],
    weights: WeightVector,
) -> float:
    """The index value ``1 - prod(pot_i ** w_i)`` over matching ids.

    Evaluated in log space; a zero potential with positive weight forces the
    product to 0 and the index to exactly 1.
    """
    triples = _paired(potentials, weights)
    log_terms = []
    for _, pot, w in triples:
        if w == 0.0:
            continue  # pot ** 0 == 1 even for pot == 0
        if pot == 0.0:
            return 1.0
        log_terms.append(w * math.log(pot))
    return 1.0 - math.exp(math.fsum(log_terms))


def decompose(
    potentials: Sequence[tuple[str, float]] | Mapping[str, float],
    weights: WeightVector,
) -> list[tuple[str, float]]:
    """Per-input contributions ``c_i = -w_i * log(pot_i)``.

    The contributions sum to ``-log(1 - index)``; a zero potential with
    positive weight contributes ``inf``, a zero weight contributes 0.
    """
    out = []
    for name, pot, w in _paired(potentials, weights):
        if w == 0.0:
            out.append((name, 0.0))
        elif pot == 0.0:
            out.append((name, math.inf))
        else:
            out.append((name, -(w * math.log(pot))))
    return out


@dataclass(frozen=True)
class ComponentValue:
    """A component's raw value, resolved bounds, and normalized value for one period."""

    component_id: str
    period: str
    raw: float
    bounds: NormalizationBounds
    normalized: float
    warnings: tuple[IndexWarning, ...] = ()

    def __post_init__(self) -> None:
        check_finite(self.raw, "raw")
        check_unit(self.normalized, "normalized")


@dataclass(frozen=True)
class SubIndexResult:
    id: str
    potential: float
    vulnerability: float
    weight: float
    components: tuple[ComponentValue, ...]
    component_weights: WeightVector

    def __post_init__(self) -> None:
        check_unit(self.potential, "potential")
        check_unit(self.vulnerability, "vulnerability")


@dataclass(frozen=True)
class ComputeResult:
    """Full index result for one period, with decomposition and warnings."""

    aivi: float
    period: str
    sub_indexes: tuple[SubIndexResult, ...]
    contributions: tuple[tuple[str, float], ...]
    warnings: tuple[IndexWarning, ...] = field(default=())

    def __post_init__(self) -> None:
        check_unit(self.aivi, "aivi")

    def potential_by_id(self) -> dict[str, float]:
        return {s.id: s.potential for s in self.sub_indexes}


def _renormalized(pairs: list[tuple[str, float]]) -> WeightVector:
    total = math.fsum(w for _, w in pairs)
    return validate_weights([(name, w / total) for name, w in pairs])


def compute_index(
    model: "IndexModel",
    values: Mapping[str, ComponentValue],
    period: str,
) -> ComputeResult:
    """Aggregate resolved component values into the index for ``period``.

    ``values`` maps component id to its :class:`ComponentValue` for the
    period. Missing components are an error by default; under
    ``missing_policy=renormalize_warn`` the remaining weights in the affected
    sub-index are renormalized proportionally and a warning is recorded. A
    sub-index with no usable components is dropped the same way.
    """
    missing = [
        comp.id
        for sub in model.sub_indexes
        for comp in sub.components
        if comp.id not in values
    ]
    if missing and model.missing_policy == MissingPolicy.ERROR:
        raise MissingComponentError(
            f"no resolved value for components {missing} in period {period!r}",
            missing=missing,
        )

    warnings: list[IndexWarning] = []
    kept_subs: list[tuple[str, float, WeightVector, list[ComponentValue]]] = []
    for sub in model.sub_indexes:
        present = [comp for comp in sub.components if comp.id in values]
        comp_values = [values[comp.id] for comp in present]
        for cv in comp_values:
            warnings.extend(cv.warnings)
        weight_mass = math.fsum(comp.weight for comp in present)
        if not present or weight_mass == 0.0:
            warnings.append(
                IndexWarning(
                    code="sub_index_dropped",
                    message=f"sub-index {sub.id!r} has no usable components for {period!r}; "
                    "top-level weights renormalized",
                    sub_index_id=sub.id,
                    period=period,
                )
            )
            continue
        if len(present) < len(sub.components):
            weights = _renormalized([(comp.id, comp.weight) for comp in present])
            dropped = [comp.id for comp in sub.components if comp.id not in values]
            warnings.append(
                IndexWarning(
                    code="weights_renormalized",
                    message=f"components {dropped} missing in {period!r}; weights of "
                    f"sub-index {sub.id!r} renormalized over {len(present)} remaining",
                    sub_index_id=sub.id,
                    period=period,
                )
            )
        else:
            weights = validate_weights([(comp.id, comp.weight) for comp in present])
        kept_subs.append((sub.id, model.top_weights[sub.id], weights, comp_values))

    if not kept_subs:
        raise MissingComponentError(
            f"no sub-index has any resolved component for period {period!r}",
            missing=missing,
        )
    if len(kept_subs) < len(model.sub_indexes):
        top_weights = _renormalized([(sid, w) for sid, w, _, _ in kept_subs])
    else:
        top_weights = model.top_weights

    sub_results = []
    for sid, _, weights, comp_values in kept_subs:
        potential = potential_sub_index([cv.normalized for cv in comp_values], weights)
        sub_results.append(
            SubIndexResult(
                id=sid,
                potential=potential,
                vulnerability=vulnerability_from_potential(potential),
                weight=top_weights[sid],
                components=tuple(comp_values),
                component_weights=weights,
            )
        )

    potentials = [(s.id, s.potential) for s in sub_results]
    value = aggregate_index(potentials, top_weights)
    contributions = tuple(decompose(potentials, top_weights))
    return ComputeResult(
        aivi=value,
        period=period,
        sub_indexes=tuple(sub_results),
        contributions=contributions,
        warnings=tuple(warnings),
    )
