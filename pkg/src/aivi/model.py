"""Index model file: strict JSON parsing, validation, canonical serialization.

The model file declares the whole index: sub-indexes, components with their
indicator bindings, weights, normalization bounds, and policies. Parsing is
strict (unknown fields rejected) and re-serialization is canonical and
byte-stable, so ``parse -> serialize -> parse`` is the identity.
"""

from __future__ import annotations

import json
from dataclasses import dataclass
from importlib import resources
from pathlib import Path
from typing import Mapping

import jsonschema

from .core import (
    BoundsKind,
    ClampPolicy,
    MissingPolicy,
    NormalizationBounds,
    WeightVector,
    validate_weights,
)
from .errors import ModelSyntaxError, SchemaError
from .indicators import IndicatorKind

SUPPORTED_VERSION = 1


def _schema() -> dict:
    with resources.files("aivi.schemas").joinpath("model.schema.json").open("r") as fh:
        return json.load(fh)


_SCHEMA_CACHE: dict | None = None


@dataclass(frozen=True)
class ComponentSpec:
    """One indicator component: how to compute it, weight it, and normalize it.

    ``bounds is None`` marks empirical bounds, resolved later from the
    observed data range.
    """

    id: str
    indicator_id: str
    kind: IndicatorKind
    weight: float
    bounds: NormalizationBounds | None
    params: Mapping[str, int] = None  # type: ignore[assignment]

    def __post_init__(self) -> None:
        object.__setattr__(self, "params", dict(self.params or {}))

    @property
    def empirical(self) -> bool:
        return self.bounds is None

    def to_dict(self) -> dict:
        out: dict = {
            "id": self.id,
            "indicator_id": self.indicator_id,
            "kind": self.kind.value,
            "weight": self.weight,
            "bounds": "empirical" if self.bounds is None else {"min": self.bounds.min, "max": self.bounds.max},
        }
        if self.params:
            out["params"] = dict(self.params)
        return out


@dataclass(frozen=True)
class SubIndexSpec:
    id: str
    weight: float
    components: tuple[ComponentSpec, ...]

    def component_weights(self) -> WeightVector:
        return validate_weights([(c.id, c.weight) for c in self.components])

    def to_dict(self) -> dict:
        return {
            "id": self.id,
            "weight": self.weight,
            "components": [c.to_dict() for c in self.components],
        }


@dataclass(frozen=True)
class IndexModel:
    """Declarative index definition; shape is model-driven, not hard-coded."""

    version: int
    sub_indexes: tuple[SubIndexSpec, ...]
    clamp_policy: ClampPolicy = ClampPolicy.CLAMP_WARN
    missing_policy: MissingPolicy = MissingPolicy.ERROR

    @property
    def top_weights(self) -> WeightVector:
        return validate_weights([(s.id, s.weight) for s in self.sub_indexes])

    @property
    def components(self) -> tuple[ComponentSpec, ...]:
        return tuple(c for s in self.sub_indexes for c in s.components)

    def component(self, component_id: str) -> ComponentSpec:
        for comp in self.components:
            if comp.id == component_id:
                return comp
        raise KeyError(component_id)

    def sub_index_of(self, component_id: str) -> SubIndexSpec:
        for sub in self.sub_indexes:
            if any(c.id == component_id for c in sub.components):
                return sub
        raise KeyError(component_id)

    def to_dict(self) -> dict:
        return {
            "version": self.version,
            "clamp_policy": self.clamp_policy.value,
            "missing_policy": self.missing_policy.value,
            "sub_indexes": [s.to_dict() for s in self.sub_indexes],
        }


def _component_from_dict(raw: dict, path: str) -> ComponentSpec:
    kind = IndicatorKind(raw["kind"])
    bounds_raw = raw["bounds"]
    if bounds_raw == "empirical":
        bounds = None
    else:
        try:
            bounds = NormalizationBounds(float(bounds_raw["min"]), float(bounds_raw["max"]))
        except Exception as exc:
            raise SchemaError(str(exc), path=f"{path}.bounds") from exc
    params = dict(raw.get("params", {}))
    if params and kind != IndicatorKind.TOP_K_SHARE:
        raise SchemaError(
            f"params are only valid for kind 'top_k_share', not {kind.value!r}",
            path=f"{path}.params",
        )
    return ComponentSpec(
        id=raw["id"],
        indicator_id=raw["indicator_id"],
        kind=kind,
        weight=float(raw["weight"]),
        bounds=bounds,
        params=params,
    )


def parse_model(text: str) -> IndexModel:
    """Parse and fully validate a model document.

    Raises :class:`ModelSyntaxError` for invalid JSON, :class:`SchemaError`
    (with a field path) for structural violations, and weight errors for
    weight sets that do not sum to 1.
    """
    global _SCHEMA_CACHE
    try:
        raw = json.loads(text)
    except json.JSONDecodeError as exc:
        raise ModelSyntaxError(f"model file is not valid JSON: {exc}") from exc
    if _SCHEMA_CACHE is None:
        _SCHEMA_CACHE = _schema()
    validator = jsonschema.Draft202012Validator(_SCHEMA_CACHE)
    for err in sorted(validator.iter_errors(raw), key=lambda e: list(e.absolute_path)):
        path = "$" + "".join(
            f"[{p}]" if isinstance(p, int) else f".{p}" for p in err.absolute_path
        )
        raise SchemaError(err.message, path=path)

    if raw["version"] != SUPPORTED_VERSION:
        raise SchemaError(
            f"unsupported model version {raw['version']}; this build reads version {SUPPORTED_VERSION}",
            path="$.version",
        )

    sub_indexes = []
    seen_subs: set[str] = set()
    seen_components: set[str] = set()
    for i, sub_raw in enumerate(raw["sub_indexes"]):
        if sub_raw["id"] in seen_subs:
            raise SchemaError(f"duplicate sub-index id {sub_raw['id']!r}", path=f"$.sub_indexes[{i}].id")
        seen_subs.add(sub_raw["id"])
        components = []
        for j, comp_raw in enumerate(sub_raw["components"]):
            path = f"$.sub_indexes[{i}].components[{j}]"
            if comp_raw["id"] in seen_components:
                raise SchemaError(f"duplicate component id {comp_raw['id']!r}", path=f"{path}.id")
            seen_components.add(comp_raw["id"])
            components.append(_component_from_dict(comp_raw, path))
        sub = SubIndexSpec(id=sub_raw["id"], weight=float(sub_raw["weight"]), components=tuple(components))
        sub.component_weights()  # raises on bad component weights
        sub_indexes.append(sub)

    model = IndexModel(
        version=raw["version"],
        sub_indexes=tuple(sub_indexes),
        clamp_policy=ClampPolicy(raw.get("clamp_policy", ClampPolicy.CLAMP_WARN.value)),
        missing_policy=MissingPolicy(raw.get("missing_policy", MissingPolicy.ERROR.value)),
    )
    model.top_weights  # raises on bad top weights
    return model


def serialize_model(model: IndexModel) -> str:
    """Canonical form: sorted keys, two-space indent, trailing newline."""
    return json.dumps(model.to_dict(), sort_keys=True, indent=2, allow_nan=False) + "\n"


def load_model(path: str | Path) -> IndexModel:
    return parse_model(Path(path).read_text(encoding="utf-8"))


def default_model() -> IndexModel:
    """The shipped five-input model (compute, data, talent, capital, energy)
    with equal weights at both layers."""
    with resources.files("aivi.data").joinpath("model-equal.json").open("r", encoding="utf-8") as fh:
        return parse_model(fh.read())


def resolved_bounds_kind(spec: ComponentSpec) -> BoundsKind:
    return BoundsKind.EMPIRICAL if spec.empirical else BoundsKind.THEORETICAL
