"""JSON-over-HTTP facade: model summary, scenario compute, sensitivity.

The model and dataset are loaded once at startup and never mutated, so every
request is a pure function of (model, dataset, request body) and identical
requests return identical bytes. Responses reuse the canonical JSON encoding
of the CLI, which makes service bodies byte-comparable with CLI output.

Error contract: ``{"error": {"code", "message", "path"?}}``. Domain errors
map to 400, except scenarios that are well-formed but uncomputable (missing
period or components), which map to 422. Before startup loading completes
every endpoint answers 503 with a retry hint.
"""

from __future__ import annotations

import dataclasses
import os
from contextlib import asynccontextmanager
from dataclasses import dataclass
from typing import Literal, Sequence

from fastapi import FastAPI, Request, Response
from fastapi.exceptions import RequestValidationError
from fastapi.middleware.cors import CORSMiddleware
from pydantic import BaseModel, ConfigDict, Field, field_validator, model_validator

from .core import ComputeResult, MissingPolicy, compute_index
from .errors import AiviError, MissingComponentError, PeriodError, SampleCountError
from .model import IndexModel, default_model, load_model
from .observations import Observation, load_observations
from .resolve import ResolvedDataset, resolve_dataset
from .scenario import apply_weight_overrides, load_weight_overrides, override_component_values
from .sensitivity import monte_carlo, tornado
from .serialize import canonical_json_bytes, compute_result_to_dict, sensitivity_to_dict
from .validation import check_period

MAX_SAMPLES = 100_000


class _NotReady(Exception):
    """Raised by endpoints hit before startup loading has finished."""


@dataclass
class Runtime:
    """Immutable per-process state shared by all requests."""

    model: IndexModel
    resolved: ResolvedDataset
    max_samples: int = MAX_SAMPLES


class WeightOverrides(BaseModel):
    model_config = ConfigDict(extra="forbid")

    top: dict[str, float] | None = None
    components: dict[str, float] | None = None


class ComponentOverride(BaseModel):
    model_config = ConfigDict(extra="forbid")

    raw: float | None = None
    normalized: float | None = None

    @model_validator(mode="after")
    def _exactly_one(self):
        if (self.raw is None) == (self.normalized is None):
            raise ValueError("set exactly one of 'raw' or 'normalized'")
        return self

    def as_mapping(self) -> dict[str, float]:
        if self.raw is not None:
            return {"raw": self.raw}
        return {"normalized": self.normalized}


class ScenarioRequest(BaseModel):
    model_config = ConfigDict(extra="forbid")

    period: str | None = None
    weight_overrides: WeightOverrides | None = None
    component_overrides: dict[str, ComponentOverride] | None = None

    @field_validator("period")
    @classmethod
    def _valid_period(cls, value):
        if value is None:
            return None
        try:
            return check_period(value)
        except PeriodError as exc:
            raise ValueError(exc.message) from None


class SensitivityRequest(BaseModel):
    model_config = ConfigDict(extra="forbid")

    scenario: ScenarioRequest = Field(default_factory=ScenarioRequest)
    layer: Literal["top", "component", "both"] = "top"
    samples: int = 10_000
    seed: int = 42
    concentration: float = 1.0
    delta: float | None = None


def _json_response(payload: dict | list, status_code: int = 200, headers: dict | None = None) -> Response:
    return Response(
        content=canonical_json_bytes(payload),
        status_code=status_code,
        media_type="application/json",
        headers=headers,
    )


def _error_response(code: str, message: str, status_code: int, path: str | None = None,
                    headers: dict | None = None) -> Response:
    body: dict = {"code": code, "message": message}
    if path is not None:
        body["path"] = path
    return _json_response({"error": body}, status_code, headers)


def _scenario_state(runtime: Runtime, scenario: ScenarioRequest) -> tuple[ResolvedDataset, str, dict]:
    """Resolve a scenario to (variant dataset, target period, component values)."""
    resolved = runtime.resolved
    if scenario.weight_overrides is not None:
        model = apply_weight_overrides(
            runtime.model,
            top=scenario.weight_overrides.top,
            components=scenario.weight_overrides.components,
        )
        resolved = dataclasses.replace(resolved, model=model)
    period = scenario.period or resolved.default_period()
    if period is None:
        raise MissingComponentError(
            "no period is fully covered by the dataset",
            missing=[c.id for c in resolved.model.components],
        )
    if scenario.component_overrides:
        overrides = {cid: o.as_mapping() for cid, o in scenario.component_overrides.items()}
        values = override_component_values(resolved, period, overrides)
    else:
        values = resolved.values.get(period, {})
    return resolved, period, values


def _scenario_result(runtime: Runtime, scenario: ScenarioRequest) -> ComputeResult:
    resolved, period, values = _scenario_state(runtime, scenario)
    return compute_index(resolved.model, values, period)


def _bounds_summary(resolved: ResolvedDataset, component_id: str, empirical: bool) -> dict:
    out: dict = {"kind": "empirical" if empirical else "theoretical"}
    bounds = resolved.bounds.get(component_id)
    if bounds is not None:
        out["min"] = bounds.min
        out["max"] = bounds.max
    return out


def _model_summary(runtime: Runtime) -> dict:
    resolved = runtime.resolved
    model = resolved.model
    return {
        "version": model.version,
        "clamp_policy": model.clamp_policy.value,
        "missing_policy": model.missing_policy.value,
        "sub_indexes": [
            {
                "id": sub.id,
                "weight": sub.weight,
                "components": [
                    {
                        "id": comp.id,
                        "indicator_id": comp.indicator_id,
                        "kind": comp.kind.value,
                        "weight": comp.weight,
                        "bounds": _bounds_summary(resolved, comp.id, comp.empirical),
                        "params": dict(comp.params),
                    }
                    for comp in sub.components
                ],
            }
            for sub in model.sub_indexes
        ],
        "periods": list(resolved.periods),
        "computable_periods": list(resolved.scorable_periods()),
        "coverage": resolved.coverage.to_dict(),
    }


def _load_runtime(
    model_path: str | None,
    data_paths: Sequence[str],
    model: IndexModel | None,
    observations: list[Observation] | None,
    weights_path: str | None,
    allow_missing: bool,
    max_samples: int,
) -> Runtime:
    if model is None:
        model = load_model(model_path) if model_path is not None else default_model()
    if allow_missing:
        model = dataclasses.replace(model, missing_policy=MissingPolicy.RENORMALIZE_WARN)
    if weights_path is not None:
        top, components = load_weight_overrides(weights_path)
        model = apply_weight_overrides(model, top=top, components=components)
    if observations is None:
        observations = load_observations(*data_paths)
    resolved = resolve_dataset(model, observations)
    return Runtime(model=model, resolved=resolved, max_samples=max_samples)


def create_app(
    model_path: str | None = None,
    data_paths: Sequence[str] = (),
    *,
    model: IndexModel | None = None,
    observations: list[Observation] | None = None,
    weights_path: str | None = None,
    allow_missing: bool = False,
    max_samples: int = MAX_SAMPLES,
    cors_origins: Sequence[str] | None = None,
) -> FastAPI:
    """Build the application; model and data load inside the lifespan hook."""

    @asynccontextmanager
    async def lifespan(app: FastAPI):
        app.state.runtime = _load_runtime(
            model_path, data_paths, model, observations,
            weights_path, allow_missing, max_samples,
        )
        yield

    app = FastAPI(title="aivi", lifespan=lifespan, docs_url=None, redoc_url=None, openapi_url=None)

    if cors_origins is None:
        raw = os.environ.get("AIVI_CORS_ORIGINS", "*")
        cors_origins = [o.strip() for o in raw.split(",") if o.strip()]
    app.add_middleware(
        CORSMiddleware,
        allow_origins=list(cors_origins),
        allow_methods=["*"],
        allow_headers=["*"],
    )

    def runtime_or_raise() -> Runtime:
        runtime = getattr(app.state, "runtime", None)
        if runtime is None:
            raise _NotReady
        return runtime

    @app.exception_handler(_NotReady)
    async def _not_ready_handler(request: Request, exc: _NotReady):
        return _error_response(
            "not_ready", "model and data are still loading; retry shortly",
            503, headers={"Retry-After": "1"},
        )

    @app.exception_handler(AiviError)
    async def _domain_error_handler(request: Request, exc: AiviError):
        status = 422 if isinstance(exc, MissingComponentError) else 400
        return _json_response({"error": exc.to_dict()}, status)

    @app.exception_handler(RequestValidationError)
    async def _request_error_handler(request: Request, exc: RequestValidationError):
        errors = exc.errors()
        first = errors[0] if errors else {}
        loc = [str(part) for part in first.get("loc", ()) if part != "body"]
        return _error_response(
            "invalid_request", str(first.get("msg", "invalid request body")),
            400, path=".".join(loc) or None,
        )

    @app.api_route("/api/v1/health", methods=["GET", "HEAD"])
    async def health(request: Request):
        runtime_or_raise()
        if request.method == "HEAD":
            return Response(media_type="application/json")
        return _json_response({"status": "ok"})

    @app.api_route("/api/v1/model", methods=["GET", "HEAD"])
    async def model_summary(request: Request):
        runtime = runtime_or_raise()
        if request.method == "HEAD":
            return Response(media_type="application/json")
        return _json_response(_model_summary(runtime))

    @app.post("/api/v1/compute")
    async def compute_endpoint(scenario: ScenarioRequest | None = None):
        runtime = runtime_or_raise()
        result = _scenario_result(runtime, scenario or ScenarioRequest())
        return _json_response(compute_result_to_dict(result))

    @app.post("/api/v1/sensitivity")
    async def sensitivity_endpoint(body: SensitivityRequest | None = None):
        runtime = runtime_or_raise()
        body = body or SensitivityRequest()
        if body.samples > runtime.max_samples:
            raise SampleCountError(
                f"samples {body.samples} exceeds the configured cap {runtime.max_samples}",
                path="samples",
            )
        resolved, period, values = _scenario_state(runtime, body.scenario)
        report = monte_carlo(
            resolved.model, values, period,
            layer=body.layer, samples=body.samples,
            seed=body.seed, concentration=body.concentration,
        )
        torn = tornado(resolved.model, values, period, body.delta) if body.delta is not None else None
        return _json_response(sensitivity_to_dict(report, torn))

    return app
