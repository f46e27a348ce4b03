"""Weight-sensitivity analysis: simplex sampling, Monte Carlo, tornado sweeps.

The weighting of the index is an open modelling choice, so this module
quantifies how much the index moves when weights move. All randomness flows
through numpy's PCG64 generator seeded by the caller: for a fixed seed and
numpy version, reports are bit-reproducible (draws are normalized
standard-gamma variates, consumed top layer first, then each sub-index in
model order, one weight vector per draw).
"""

from __future__ import annotations

import math
from dataclasses import dataclass
from enum import Enum
from typing import Mapping, Sequence

import numpy as np

from .core import (
    ComponentValue,
    WeightVector,
    aggregate_index,
    compute_index,
    potential_sub_index,
    validate_weights,
)
from .errors import (
    DeltaRangeError,
    InvalidConcentrationError,
    InvalidDimensionError,
    SampleCountError,
)
from .model import IndexModel


class SensitivityLayer(str, Enum):
    TOP = "top"
    COMPONENT = "component"
    BOTH = "both"


def make_rng(seed: int) -> np.random.Generator:
    """The package-wide generator: PCG64 under numpy's Generator API."""
    return np.random.Generator(np.random.PCG64(seed))


def sample_weight_vector(
    dimension: int,
    concentration: float,
    rng: np.random.Generator,
    ids: Sequence[str] | None = None,
) -> WeightVector:
    """One draw from the symmetric Dirichlet on the weight simplex.

    ``concentration=1`` is uniform over the simplex. Implemented as
    ``gamma(alpha)`` draws normalized by their sum, so the draw consumes
    exactly ``dimension`` variates from ``rng``.
    """
    if not isinstance(dimension, int) or isinstance(dimension, bool) or dimension < 1:
        raise InvalidDimensionError(f"dimension must be a positive integer, got {dimension!r}")
    if not (isinstance(concentration, (int, float)) and math.isfinite(concentration) and concentration > 0):
        raise InvalidConcentrationError(f"concentration must be a positive real, got {concentration!r}")
    draws = rng.standard_gamma(concentration, size=dimension)
    while float(draws.sum()) == 0.0:  # vanishing probability, but keeps the draw valid
        draws = rng.standard_gamma(concentration, size=dimension)
    total = float(draws.sum())
    weights = [float(d) / total for d in draws]
    names = list(ids) if ids is not None else [f"w{i}" for i in range(dimension)]
    if len(names) != dimension:
        raise InvalidDimensionError(f"{len(names)} ids for dimension {dimension}")
    return validate_weights(list(zip(names, weights)))


@dataclass(frozen=True)
class SensitivityReport:
    """Distribution summary of the index under resampled weights."""

    sample_count: int
    seed: int
    layer: SensitivityLayer
    concentration: float
    mean: float
    std: float
    quantiles: tuple[tuple[str, float], ...]  # (p05, p25, p50, p75, p95)
    min: float
    max: float

    def quantile(self, name: str) -> float:
        return dict(self.quantiles)[name]

    def to_dict(self) -> dict:
        return {
            "sample_count": self.sample_count,
            "seed": self.seed,
            "layer": self.layer.value,
            "concentration": self.concentration,
            "mean": self.mean,
            "std": self.std,
            "quantiles": dict(self.quantiles),
            "min": self.min,
            "max": self.max,
        }


@dataclass(frozen=True)
class TornadoEntry:
    target_id: str
    level: str  # "top" or "component"
    delta: float
    aivi_low: float
    aivi_high: float

    @property
    def impact(self) -> float:
        return abs(self.aivi_high - self.aivi_low)

    def to_dict(self) -> dict:
        return {
            "target_id": self.target_id,
            "level": self.level,
            "delta": self.delta,
            "aivi_low": self.aivi_low,
            "aivi_high": self.aivi_high,
        }


@dataclass(frozen=True)
class TornadoReport:
    baseline: float
    delta: float
    entries: tuple[TornadoEntry, ...]

    def to_dict(self) -> dict:
        return {
            "baseline": self.baseline,
            "delta": self.delta,
            "entries": [e.to_dict() for e in self.entries],
        }


@dataclass(frozen=True)
class AggregatorComparison:
    """The index under the three candidate aggregation rules, side by side."""

    geometric: float
    additive: float
    min_rule: float

    def to_dict(self) -> dict:
        return {"geometric": self.geometric, "additive": self.additive, "min_rule": self.min_rule}


def compare_aggregators(
    potentials: Sequence[tuple[str, float]] | Mapping[str, float],
    weights: WeightVector,
) -> AggregatorComparison:
    """Vulnerability under geometric, additive, and min-rule aggregation.

    The geometric rule treats inputs as imperfect substitutes, the additive
    rule as perfect substitutes, and the min rule as perfect complements; for
    any valid inputs additive <= geometric <= min_rule.
    """
    pots = dict(potentials.items() if isinstance(potentials, Mapping) else potentials)
    geometric = aggregate_index(pots, weights)
    additive = min(1.0, max(0.0, 1.0 - math.fsum(w * pots[i] for i, w in weights.entries)))
    min_rule = 1.0 - min(pots[i] for i in weights.ids)
    return AggregatorComparison(geometric=geometric, additive=additive, min_rule=min_rule)


@dataclass(frozen=True)
class _Structure:
    """Effective weighting structure of a baseline result (after any
    missing-data renormalization): what the resampling layers operate on."""

    top: WeightVector
    sub_ids: tuple[str, ...]
    component_weights: tuple[WeightVector, ...]
    normalized: tuple[tuple[float, ...], ...]


def _baseline_structure(
    model: IndexModel, values: Mapping[str, ComponentValue], period: str
) -> tuple[float, _Structure]:
    result = compute_index(model, values, period)
    structure = _Structure(
        top=validate_weights([(s.id, s.weight) for s in result.sub_indexes]),
        sub_ids=tuple(s.id for s in result.sub_indexes),
        component_weights=tuple(s.component_weights for s in result.sub_indexes),
        normalized=tuple(tuple(cv.normalized for cv in s.components) for s in result.sub_indexes),
    )
    return result.aivi, structure


def _evaluate(structure: _Structure, top: WeightVector, comp_weights: Sequence[WeightVector]) -> float:
    potentials = [
        (sid, potential_sub_index(norms, w))
        for sid, norms, w in zip(structure.sub_ids, structure.normalized, comp_weights)
    ]
    return aggregate_index(potentials, top)


def _quantile(sorted_draws: Sequence[float], p: float) -> float:
    """Linear interpolation between order statistics at rank ``p * (n - 1)``."""
    n = len(sorted_draws)
    if n == 1:
        return sorted_draws[0]
    h = p * (n - 1)
    lo = int(math.floor(h))
    hi = min(lo + 1, n - 1)
    frac = h - lo
    return sorted_draws[lo] + frac * (sorted_draws[hi] - sorted_draws[lo])


QUANTILE_POINTS = (("p05", 0.05), ("p25", 0.25), ("p50", 0.50), ("p75", 0.75), ("p95", 0.95))


def monte_carlo(
    model: IndexModel,
    values: Mapping[str, ComponentValue],
    period: str,
    layer: SensitivityLayer | str = SensitivityLayer.TOP,
    samples: int = 1000,
    seed: int = 0,
    concentration: float = 1.0,
) -> SensitivityReport:
    """Resample the selected weight layer(s) and summarize the index distribution.

    Deterministic for a fixed seed: draws are consumed in a fixed order (top
    vector first when resampled, then each sub-index's component vector in
    model order, per sample).
    """
    layer = SensitivityLayer(layer)
    if not isinstance(samples, int) or isinstance(samples, bool) or samples < 1:
        raise SampleCountError(f"samples must be a positive integer, got {samples!r}")
    if not (isinstance(concentration, (int, float)) and math.isfinite(concentration) and concentration > 0):
        raise InvalidConcentrationError(f"concentration must be a positive real, got {concentration!r}")

    _, structure = _baseline_structure(model, values, period)
    rng = make_rng(seed)
    resample_top = layer in (SensitivityLayer.TOP, SensitivityLayer.BOTH)
    resample_components = layer in (SensitivityLayer.COMPONENT, SensitivityLayer.BOTH)

    draws: list[float] = []
    for _ in range(samples):
        top = structure.top
        if resample_top:
            top = sample_weight_vector(len(structure.top), concentration, rng, ids=structure.sub_ids)
        comp_weights: Sequence[WeightVector] = structure.component_weights
        if resample_components:
            comp_weights = [
                sample_weight_vector(len(w), concentration, rng, ids=w.ids)
                for w in structure.component_weights
            ]
        draws.append(_evaluate(structure, top, comp_weights))

    ordered = sorted(draws)
    mean = math.fsum(draws) / samples
    std = math.sqrt(math.fsum((d - mean) ** 2 for d in draws) / samples)
    return SensitivityReport(
        sample_count=samples,
        seed=seed,
        layer=layer,
        concentration=float(concentration),
        mean=mean,
        std=std,
        quantiles=tuple((name, _quantile(ordered, p)) for name, p in QUANTILE_POINTS),
        min=ordered[0],
        max=ordered[-1],
    )


def perturb_weights(weights: WeightVector, target: str, delta: float) -> WeightVector:
    """Move one weight by ``delta`` (clipped to [0, 1]) and renormalize the
    others proportionally so the vector stays on the simplex."""
    mapping = weights.as_dict()
    if target not in mapping:
        raise KeyError(target)
    old = mapping[target]
    new = min(1.0, max(0.0, old + delta))
    others = [(name, w) for name, w in weights.entries if name != target]
    if not others:
        return validate_weights([(target, 1.0)])
    others_mass = math.fsum(w for _, w in others)
    if others_mass > 0.0:
        factor = (1.0 - new) / others_mass
        scaled = [(name, w * factor) for name, w in others]
    else:
        share = (1.0 - new) / len(others)
        scaled = [(name, share) for name, _ in others]
    rebuilt = [(name, new if name == target else dict(scaled)[name]) for name in weights.ids]
    return validate_weights(rebuilt)


def tornado(
    model: IndexModel,
    values: Mapping[str, ComponentValue],
    period: str,
    delta: float,
) -> TornadoReport:
    """One-at-a-time weight perturbation: every top-level and component
    weight moved down and up by ``delta``, entries ranked by impact."""
    if not (isinstance(delta, (int, float)) and math.isfinite(delta) and 0.0 < delta < 1.0):
        raise DeltaRangeError(f"delta must lie in (0, 1), got {delta!r}")
    baseline, structure = _baseline_structure(model, values, period)

    entries: list[TornadoEntry] = []
    for sid in structure.sub_ids:
        low = _evaluate(structure, perturb_weights(structure.top, sid, -delta), structure.component_weights)
        high = _evaluate(structure, perturb_weights(structure.top, sid, +delta), structure.component_weights)
        entries.append(TornadoEntry(target_id=sid, level="top", delta=delta, aivi_low=low, aivi_high=high))
    for i, weights in enumerate(structure.component_weights):
        for cid in weights.ids:
            comp_low = list(structure.component_weights)
            comp_low[i] = perturb_weights(weights, cid, -delta)
            comp_high = list(structure.component_weights)
            comp_high[i] = perturb_weights(weights, cid, +delta)
            entries.append(
                TornadoEntry(
                    target_id=cid,
                    level="component",
                    delta=delta,
                    aivi_low=_evaluate(structure, structure.top, comp_low),
                    aivi_high=_evaluate(structure, structure.top, comp_high),
                )
            )
    entries.sort(key=lambda e: (-e.impact, e.level, e.target_id))
    return TornadoReport(baseline=baseline, delta=delta, entries=tuple(entries))
