"""Shared builders for randomized test structures."""

from __future__ import annotations

import random

from aivi import (
    UNIT_BOUNDS,
    ComponentSpec,
    ComponentValue,
    IndexModel,
    IndicatorKind,
    SubIndexSpec,
)


def dyadic_weights(rng: random.Random, count: int, exponent: int = 20) -> list[float]:
    """Random positive weights that are exact binary fractions of 2**exponent.

    Their float sum is exactly 1.0 (every partial sum is a representable
    dyadic rational), so identities that hold on the exact simplex can be
    tested at 1e-12 without the usual weight-sum slack masking them.
    """
    scale = 2**exponent
    cuts = sorted(rng.sample(range(1, scale), count - 1)) if count > 1 else []
    edges = [0, *cuts, scale]
    return [(b - a) / scale for a, b in zip(edges, edges[1:])]


def random_structure(
    rng: random.Random,
    sub_count: int | None = None,
    comp_count: int | None = None,
) -> tuple[IndexModel, dict[str, ComponentValue]]:
    """A random small model plus matching component values for period 2025."""
    n_subs = sub_count if sub_count is not None else rng.randint(2, 5)
    top = dyadic_weights(rng, n_subs)
    subs = []
    values: dict[str, ComponentValue] = {}
    for i in range(n_subs):
        n_comp = comp_count if comp_count is not None else rng.randint(1, 4)
        weights = dyadic_weights(rng, n_comp)
        comps = []
        for j in range(n_comp):
            cid = f"c{i}_{j}"
            comps.append(
                ComponentSpec(
                    id=cid,
                    indicator_id=cid,
                    kind=IndicatorKind.LEVEL,
                    weight=weights[j],
                    bounds=UNIT_BOUNDS,
                )
            )
            values[cid] = component_value(cid, rng.random())
        subs.append(SubIndexSpec(id=f"s{i}", weight=top[i], components=tuple(comps)))
    return IndexModel(version=1, sub_indexes=tuple(subs)), values


def component_value(cid: str, normalized: float, period: str = "2025") -> ComponentValue:
    return ComponentValue(
        component_id=cid,
        period=period,
        raw=normalized,
        bounds=UNIT_BOUNDS,
        normalized=normalized,
        warnings=(),
    )


def set_normalized(
    values: dict[str, ComponentValue], cid: str, normalized: float
) -> dict[str, ComponentValue]:
    out = dict(values)
    out[cid] = component_value(cid, normalized, period=values[cid].period)
    return out
