"""Canonical serialization shared by the CLI and the HTTP service.

Canonical JSON means: sorted keys, compact separators, shortest round-trip
float formatting (Python's repr), UTF-8, one trailing newline. The CLI and
the service both emit exactly these bytes so outputs can be compared
byte-for-byte.
"""

from __future__ import annotations

import csv
import io
import json
import math

from .core import ComputeResult, SubIndexResult
from .resolve import CoverageReport
from .sensitivity import SensitivityReport, TornadoReport


def canonical_json(payload: dict | list) -> str:
    return json.dumps(payload, sort_keys=True, separators=(",", ":"), allow_nan=False) + "\n"


def canonical_json_bytes(payload: dict | list) -> bytes:
    return canonical_json(payload).encode("utf-8")


def _sub_index_to_dict(sub: SubIndexResult) -> dict:
    return {
        "id": sub.id,
        "potential": sub.potential,
        "vulnerability": sub.vulnerability,
        "weight": sub.weight,
        "components": [
            {
                "id": cv.component_id,
                "raw": cv.raw,
                "normalized": cv.normalized,
                "weight": sub.component_weights[cv.component_id],
                "bounds": cv.bounds.to_dict(),
            }
            for cv in sub.components
        ],
    }


def compute_result_to_dict(result: ComputeResult) -> dict:
    """JSON form of a full result; infinite contributions are flagged rather
    than encoded as non-finite numbers."""
    return {
        "aivi": result.aivi,
        "period": result.period,
        "sub_indexes": [_sub_index_to_dict(s) for s in result.sub_indexes],
        "contributions": [
            {
                "id": name,
                "value": None if math.isinf(value) else value,
                "infinite": math.isinf(value),
            }
            for name, value in result.contributions
        ],
        "warnings": [w.to_dict() for w in result.warnings],
    }


def compute_result_csv(result: ComputeResult) -> str:
    """One-row summary CSV: the index plus each sub-index potential."""
    buf = io.StringIO()
    writer = csv.writer(buf, lineterminator="\n")
    header = ["period", "aivi"] + [f"potential_{s.id}" for s in result.sub_indexes]
    writer.writerow(header)
    writer.writerow([result.period, repr(result.aivi)] + [repr(s.potential) for s in result.sub_indexes])
    return buf.getvalue()


def coverage_csv(report: CoverageReport) -> str:
    buf = io.StringIO()
    writer = csv.writer(buf, lineterminator="\n")
    writer.writerow(["component_id"] + list(report.periods))
    for cid, row in report.cells.items():
        writer.writerow([cid] + [row[p].status for p in report.periods])
    return buf.getvalue()


def sensitivity_to_dict(report: SensitivityReport, tornado: TornadoReport | None = None) -> dict:
    payload: dict = {"report": report.to_dict()}
    if tornado is not None:
        payload["tornado"] = tornado.to_dict()
    return payload


def sensitivity_csv(report: SensitivityReport, tornado: TornadoReport | None = None) -> str:
    buf = io.StringIO()
    writer = csv.writer(buf, lineterminator="\n")
    fields = ["sample_count", "seed", "layer", "concentration", "mean", "std"]
    quantile_names = [name for name, _ in report.quantiles]
    writer.writerow(fields + quantile_names + ["min", "max"])
    writer.writerow(
        [report.sample_count, report.seed, report.layer.value, repr(report.concentration),
         repr(report.mean), repr(report.std)]
        + [repr(v) for _, v in report.quantiles]
        + [repr(report.min), repr(report.max)]
    )
    if tornado is not None:
        writer.writerow([])
        writer.writerow(["target_id", "level", "delta", "aivi_low", "aivi_high"])
        for entry in tornado.entries:
            writer.writerow(
                [entry.target_id, entry.level, repr(entry.delta), repr(entry.aivi_low), repr(entry.aivi_high)]
            )
    return buf.getvalue()


def series_to_rows(results: list[ComputeResult]) -> tuple[list[str], list[list[str]]]:
    """Tabular per-period series: period, index value, one potential column
    per sub-index (columns from the first result's sub-index order)."""
    if not results:
        return ["period", "aivi"], []
    header = ["period", "aivi"] + [f"potential_{s.id}" for s in results[0].sub_indexes]
    rows = []
    for result in results:
        pots = result.potential_by_id()
        rows.append(
            [result.period, repr(result.aivi)]
            + [repr(pots[s.id]) for s in results[0].sub_indexes]
        )
    return header, rows


def series_csv(results: list[ComputeResult]) -> str:
    header, rows = series_to_rows(results)
    buf = io.StringIO()
    writer = csv.writer(buf, lineterminator="\n")
    writer.writerow(header)
    writer.writerows(rows)
    return buf.getvalue()


def series_json(results: list[ComputeResult]) -> dict:
    return {
        "series": [
            {
                "period": r.period,
                "aivi": r.aivi,
                "potentials": {s.id: s.potential for s in r.sub_indexes},
            }
            for r in results
        ]
    }
