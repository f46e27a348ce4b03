"""What-if scenarios: weight overrides and component value overrides.

A scenario never mutates the fitted model or dataset; it derives a variant
model and a variant value set, then runs the ordinary computation. Overridden
weights are validated exactly like authored ones (no silent renormalization).
"""

from __future__ import annotations

import dataclasses
import json
from pathlib import Path
from typing import Mapping

from .core import UNIT_BOUNDS, ComponentValue, IndexWarning, normalize
from .errors import IdMismatchError, SchemaError, UnitIntervalError
from .model import IndexModel, SubIndexSpec
from .resolve import ResolvedDataset
from .validation import check_finite, check_unit


def load_weight_overrides(path: str | Path) -> tuple[dict[str, float] | None, dict[str, float] | None]:
    """Read a weight override file: ``{"top": {...}, "components": {...}}``.

    Both sections are optional id -> weight maps. Returns ``(top, components)``
    ready for :func:`apply_weight_overrides`.
    """
    try:
        payload = json.loads(Path(path).read_text(encoding="utf-8"))
    except json.JSONDecodeError as exc:
        raise SchemaError(f"weight override file is not valid JSON: {exc}", path="weights")
    if not isinstance(payload, dict):
        raise SchemaError("weight override file must be a JSON object", path="weights")
    unknown = sorted(set(payload) - {"top", "components"})
    if unknown:
        raise SchemaError(f"unknown weight override keys: {unknown}", path="weights")
    out: list[dict[str, float] | None] = []
    for key in ("top", "components"):
        section = payload.get(key)
        if section is None:
            out.append(None)
            continue
        if not isinstance(section, dict):
            raise SchemaError(f"weight override section {key!r} must be an object", path=f"weights.{key}")
        for name, value in section.items():
            if isinstance(value, bool) or not isinstance(value, (int, float)):
                raise SchemaError(
                    f"weight override for {name!r} must be a number, got {value!r}",
                    path=f"weights.{key}.{name}",
                )
        out.append({name: float(value) for name, value in section.items()})
    return out[0], out[1]


def apply_weight_overrides(
    model: IndexModel,
    top: Mapping[str, float] | None = None,
    components: Mapping[str, float] | None = None,
) -> IndexModel:
    """Substitute selected weights, then re-validate every affected layer.

    Partial maps are allowed: unnamed weights keep their model values, so the
    caller is responsible for keeping each layer on the simplex.
    """
    top = dict(top or {})
    components = dict(components or {})
    known_subs = {s.id for s in model.sub_indexes}
    known_components = {c.id for c in model.components}
    for sid in top:
        if sid not in known_subs:
            raise IdMismatchError(f"unknown sub-index id {sid!r} in weight overrides", path=f"weight_overrides.top.{sid}")
    for cid in components:
        if cid not in known_components:
            raise IdMismatchError(f"unknown component id {cid!r} in weight overrides", path=f"weight_overrides.components.{cid}")

    new_subs = []
    for sub in model.sub_indexes:
        new_components = tuple(
            dataclasses.replace(comp, weight=float(components.get(comp.id, comp.weight)))
            for comp in sub.components
        )
        new_sub = SubIndexSpec(
            id=sub.id,
            weight=float(top.get(sub.id, sub.weight)),
            components=new_components,
        )
        new_sub.component_weights()  # validates the component layer
        new_subs.append(new_sub)
    variant = dataclasses.replace(model, sub_indexes=tuple(new_subs))
    variant.top_weights  # validates the top layer
    return variant


def override_component_values(
    resolved: ResolvedDataset,
    period: str,
    overrides: Mapping[str, Mapping[str, float]],
) -> dict[str, ComponentValue]:
    """Apply per-component value overrides to one period's resolved values.

    Each override is either ``{"raw": x}`` (re-normalized against the
    component's resolved bounds under the model's clamp policy) or
    ``{"normalized": x}`` with ``x`` in [0, 1]. Every override leaves an
    audit warning on the resulting component value.
    """
    model = resolved.model
    values = dict(resolved.values.get(period, {}))
    known = {c.id for c in model.components}
    for cid, spec in overrides.items():
        if cid not in known:
            raise IdMismatchError(f"unknown component id {cid!r} in component overrides", path=f"component_overrides.{cid}")
        keys = set(spec)
        if keys not in ({"raw"}, {"normalized"}):
            raise UnitIntervalError(
                f"component override for {cid!r} must set exactly one of 'raw' or 'normalized'",
                path=f"component_overrides.{cid}",
            )
        sub_id = model.sub_index_of(cid).id
        existing = values.get(cid)
        bounds = resolved.bounds.get(cid) or model.component(cid).bounds
        if "normalized" in spec:
            normalized = check_unit(float(spec["normalized"]), f"component override {cid!r}")
            raw = existing.raw if existing is not None else normalized
            if bounds is None:
                bounds = UNIT_BOUNDS  # value supplied directly on the unit interval
            warnings: tuple[IndexWarning, ...] = ()
        else:
            if bounds is None:
                raise IdMismatchError(
                    f"component {cid!r} has no resolvable bounds; raw override impossible",
                    path=f"component_overrides.{cid}",
                )
            raw = check_finite(float(spec["raw"]), f"component override {cid!r}")
            normalized, clamp_warning = normalize(raw, bounds, model.clamp_policy)
            warnings = (
                (dataclasses.replace(clamp_warning, component_id=cid, sub_index_id=sub_id, period=period),)
                if clamp_warning is not None
                else ()
            )
        audit = IndexWarning(
            code="component_override",
            message=f"component {cid!r} overridden for scenario computation",
            component_id=cid,
            sub_index_id=sub_id,
            period=period,
        )
        values[cid] = ComponentValue(
            component_id=cid,
            period=period,
            raw=raw,
            bounds=bounds,
            normalized=normalized,
            warnings=warnings + (audit,),
        )
    return values
