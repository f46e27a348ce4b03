/** HTML builders for the result views; pure string output, no DOM needed.
 *
 * Values are rendered verbatim from server payloads (formatting only), and
 * list orderings follow the payload exactly.
 */

import { formatAivi, formatQuantile, formatWeight } from "./format.js";
import type {
  ComputeResult,
  SensitivityReport,
  TornadoReport,
} from "./types.js";

function escapeHtml(text: string): string {
  return text
    .replace(/&/g, "&amp;")
    .replace(/</g, "&lt;")
    .replace(/>/g, "&gt;")
    .replace(/"/g, "&quot;");
}

export function gaugeHtml(result: ComputeResult): string {
  const pct = Math.round(result.aivi * 100);
  return [
    `<div class="gauge" role="meter" aria-valuemin="0" aria-valuemax="1" aria-valuenow="${result.aivi}">`,
    `<div class="gauge-fill" style="width:${pct}%"></div>`,
    `<div class="gauge-value">${formatAivi(result.aivi)}</div>`,
    `<div class="gauge-period">${escapeHtml(result.period)}</div>`,
    `</div>`,
  ].join("");
}

export function subIndexBarsHtml(result: ComputeResult): string {
  const rows = result.sub_indexes.map((sub) => {
    const pct = Math.round(sub.vulnerability * 100);
    return [
      `<div class="bar-row" data-sub="${escapeHtml(sub.id)}">`,
      `<span class="bar-label">${escapeHtml(sub.id)} (${formatWeight(sub.weight)})</span>`,
      `<span class="bar-track"><span class="bar-fill" style="width:${pct}%"></span></span>`,
      `<span class="bar-value">${formatAivi(sub.vulnerability)}</span>`,
      `</div>`,
    ].join("");
  });
  return `<div class="bars">${rows.join("")}</div>`;
}

export function contributionsHtml(result: ComputeResult): string {
  const rows = result.contributions.map((entry) => {
    const value = entry.infinite ? "&infin;" : formatAivi(entry.value ?? 0);
    return `<tr><td>${escapeHtml(entry.id)}</td><td>${value}</td></tr>`;
  });
  return `<table class="contributions"><thead><tr><th>sub-index</th><th>contribution</th></tr></thead><tbody>${rows.join("")}</tbody></table>`;
}

export function warningsHtml(result: ComputeResult): string {
  if (result.warnings.length === 0) {
    return `<p class="warnings-empty">no warnings</p>`;
  }
  const rows = result.warnings.map(
    (w) => `<li class="warning warning-${escapeHtml(w.code)}">${escapeHtml(w.message)}</li>`,
  );
  return `<ul class="warnings">${rows.join("")}</ul>`;
}

/** p05-p95 band; a span under 1e-9 is visually flagged as degenerate. */
export function quantileBandHtml(report: SensitivityReport): string {
  const p05 = report.quantiles["p05"] ?? report.min;
  const p95 = report.quantiles["p95"] ?? report.max;
  const median = report.quantiles["p50"] ?? report.mean;
  const flat = Math.abs(p95 - p05) < 1e-9;
  return [
    `<div class="band${flat ? " band-flat" : ""}">`,
    `<span class="band-low">${formatQuantile(p05)}</span>`,
    `<span class="band-mid">${formatQuantile(median)}</span>`,
    `<span class="band-high">${formatQuantile(p95)}</span>`,
    `</div>`,
  ].join("");
}

/** Tornado bars, strictly in the server's ranking order. */
export function tornadoHtml(report: TornadoReport): string {
  const rows = report.entries.map((entry) => {
    const impact = Math.abs(entry.aivi_high - entry.aivi_low);
    return [
      `<div class="tornado-row" data-target="${escapeHtml(entry.target_id)}" data-level="${entry.level}">`,
      `<span class="tornado-label">${escapeHtml(entry.target_id)}</span>`,
      `<span class="tornado-range">${formatQuantile(entry.aivi_low)} &ndash; ${formatQuantile(entry.aivi_high)}</span>`,
      `<span class="tornado-impact">${impact.toFixed(4)}</span>`,
      `</div>`,
    ].join("");
  });
  return `<div class="tornado" data-baseline="${formatQuantile(report.baseline)}">${rows.join("")}</div>`;
}
