"""Command line interface: validate, compute, analyze, export, serve.

Exit codes: 0 on success, 1 for data or model failures (a structured JSON
error object goes to stderr), 2 for usage errors. stdout carries only the
requested artifact so output can be piped without filtering.
"""

from __future__ import annotations

import dataclasses
import json
import os
import sys
from pathlib import Path
from typing import NoReturn, Sequence

import click

from .core import MissingPolicy
from .errors import AiviError, MissingComponentError, PeriodError
from .model import load_model
from .observations import load_observations
from .resolve import ResolvedDataset, resolve_dataset
from .scenario import apply_weight_overrides, load_weight_overrides
from .sensitivity import SensitivityLayer, monte_carlo, tornado
from .serialize import (
    canonical_json_bytes,
    compute_result_csv,
    compute_result_to_dict,
    coverage_csv,
    sensitivity_csv,
    sensitivity_to_dict,
    series_csv,
    series_json,
)
from .validation import check_period


def _fail(err: AiviError) -> NoReturn:
    sys.stderr.write(json.dumps({"error": err.to_dict()}, sort_keys=True) + "\n")
    sys.exit(1)


def _emit(payload: bytes, out: str | None) -> None:
    if out is None:
        sys.stdout.buffer.write(payload)
        sys.stdout.buffer.flush()
    else:
        Path(out).write_bytes(payload)


def _prepare(
    model_path: str,
    data_paths: Sequence[str],
    weights_path: str | None = None,
    allow_missing: bool = False,
) -> ResolvedDataset:
    model = load_model(model_path)
    if allow_missing:
        model = dataclasses.replace(model, missing_policy=MissingPolicy.RENORMALIZE_WARN)
    if weights_path is not None:
        top, components = load_weight_overrides(weights_path)
        model = apply_weight_overrides(model, top=top, components=components)
    observations = load_observations(*data_paths)
    return resolve_dataset(model, observations)


def _target_period(resolved: ResolvedDataset, period: str | None) -> str:
    if period is not None:
        return period
    target = resolved.default_period()
    if target is None:
        raise MissingComponentError(
            "no period is fully covered by the dataset",
            missing=[c.id for c in resolved.model.components],
        )
    return target


def _check_period_flag(ctx, param, value):
    if value is None:
        return None
    try:
        return check_period(value)
    except PeriodError as exc:
        raise click.BadParameter(exc.message)


_model_option = click.option(
    "--model", "model_path", required=True,
    type=click.Path(exists=True, dir_okay=False),
    help="Index model JSON file.",
)
_data_option = click.option(
    "--data", "data_paths", required=True, multiple=True,
    type=click.Path(exists=True, dir_okay=False),
    help="Observation CSV file; repeat for several files.",
)
_period_option = click.option(
    "--period", default=None, callback=_check_period_flag,
    help="Target period, YYYY or YYYY-Qn (default: latest computable).",
)
_weights_option = click.option(
    "--weights", "weights_path", default=None,
    type=click.Path(exists=True, dir_okay=False),
    help='JSON weight overrides: {"top": {...}, "components": {...}}.',
)
_allow_missing_option = click.option(
    "--allow-missing", is_flag=True,
    help="Renormalize around missing components instead of failing.",
)
_out_option = click.option(
    "--out", default=None, type=click.Path(dir_okay=False, writable=True),
    help="Write the artifact to a file instead of stdout.",
)


def _format_option(default: str):
    return click.option(
        "--format", "fmt", type=click.Choice(["json", "csv"]), default=default,
        show_default=True, help="Artifact format.",
    )


@click.group()
@click.version_option(package_name="aivi")
def main() -> None:
    """Composite AI vulnerability index toolkit."""


@main.command()
@_model_option
@_data_option
@_period_option
@_format_option("json")
@_weights_option
@_allow_missing_option
@_out_option
def compute(model_path, data_paths, period, fmt, weights_path, allow_missing, out):
    """Compute the index for one period."""
    try:
        resolved = _prepare(model_path, data_paths, weights_path, allow_missing)
        result = resolved.compute(_target_period(resolved, period))
    except AiviError as err:
        _fail(err)
    if fmt == "json":
        payload = canonical_json_bytes(compute_result_to_dict(result))
    else:
        payload = compute_result_csv(result).encode("utf-8")
    _emit(payload, out)


@main.command()
@_model_option
@_data_option
@_period_option
@_format_option("json")
@_allow_missing_option
@_out_option
def validate(model_path, data_paths, period, fmt, allow_missing, out):
    """Report dataset coverage; exit 1 when the target period is incomplete."""
    try:
        resolved = _prepare(model_path, data_paths, None, allow_missing)
    except AiviError as err:
        _fail(err)
    coverage = resolved.coverage
    target = period or resolved.default_period()
    if target is None and resolved.periods:
        target = resolved.periods[-1]
    if target is None or target not in resolved.periods:
        missing = sorted(c.id for c in resolved.model.components)
    else:
        missing = sorted(coverage.missing_for(target))
    computable = False
    if target is not None:
        try:
            resolved.compute(target)
            computable = True
        except AiviError:
            computable = False
    if fmt == "json":
        report = coverage.to_dict()
        report["target_period"] = target
        report["missing"] = missing
        report["computable"] = computable
        payload = canonical_json_bytes(report)
    else:
        payload = coverage_csv(coverage).encode("utf-8")
    _emit(payload, out)
    if not computable:
        sys.exit(1)


@main.command()
@_model_option
@_data_option
@_period_option
@_format_option("json")
@_weights_option
@_allow_missing_option
@click.option("--samples", type=int, default=10000, show_default=True,
              help="Monte Carlo draw count.")
@click.option("--seed", type=int, default=42, show_default=True,
              help="Random generator seed.")
@click.option("--layer", type=click.Choice([l.value for l in SensitivityLayer]),
              default=SensitivityLayer.TOP.value, show_default=True,
              help="Which weight layer to resample.")
@click.option("--concentration", type=float, default=1.0, show_default=True,
              help="Symmetric Dirichlet concentration parameter.")
@click.option("--delta", type=float, default=None,
              help="Also run a one-at-a-time tornado with this weight shift.")
@_out_option
def sensitivity(model_path, data_paths, period, fmt, weights_path, allow_missing,
                samples, seed, layer, concentration, delta, out):
    """Resample weights and summarize the index distribution."""
    try:
        resolved = _prepare(model_path, data_paths, weights_path, allow_missing)
        target = _target_period(resolved, period)
        values = resolved.values.get(target, {})
        report = monte_carlo(
            resolved.model, values, target,
            layer=layer, samples=samples, seed=seed, concentration=concentration,
        )
        torn = tornado(resolved.model, values, target, delta) if delta is not None else None
    except AiviError as err:
        _fail(err)
    if fmt == "json":
        payload = canonical_json_bytes(sensitivity_to_dict(report, torn))
    else:
        payload = sensitivity_csv(report, torn).encode("utf-8")
    _emit(payload, out)


@main.command()
@_model_option
@_data_option
@_format_option("csv")
@_weights_option
@_allow_missing_option
@_out_option
def export(model_path, data_paths, fmt, weights_path, allow_missing, out):
    """Write the per-period index series in plot-ready form."""
    try:
        resolved = _prepare(model_path, data_paths, weights_path, allow_missing)
        results = [resolved.compute(p) for p in resolved.scorable_periods()]
    except AiviError as err:
        _fail(err)
    if fmt == "json":
        payload = canonical_json_bytes(series_json(results))
    else:
        payload = series_csv(results).encode("utf-8")
    _emit(payload, out)


@main.command()
@_model_option
@_data_option
@_weights_option
@_allow_missing_option
@click.option("--port", type=int, default=None,
              help="Listen port (default: AIVI_PORT or 8000).")
@click.option("--host", default="127.0.0.1", show_default=True,
              help="Bind address.")
def serve(model_path, data_paths, weights_path, allow_missing, port, host):
    """Run the HTTP service over the given model and data."""
    import uvicorn

    from .service import create_app

    if port is None:
        port = int(os.environ.get("AIVI_PORT", "8000"))
    app = create_app(
        model_path=model_path,
        data_paths=tuple(data_paths),
        weights_path=weights_path,
        allow_missing=allow_missing,
    )
    uvicorn.run(app, host=host, port=port)


if __name__ == "__main__":
    main()
