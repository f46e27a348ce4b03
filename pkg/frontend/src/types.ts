/** Payload shapes of the aivi HTTP service (canonical JSON bodies). */

export interface BoundsSummary {
  kind: "theoretical" | "empirical";
  min?: number;
  max?: number;
}

export interface ComponentSummary {
  id: string;
  indicator_id: string;
  kind: string;
  weight: number;
  bounds: BoundsSummary;
  params: Record<string, number>;
}

export interface SubIndexSummary {
  id: string;
  weight: number;
  components: ComponentSummary[];
}

export interface CoverageSummary {
  periods: string[];
  components: Record<string, Record<string, { status: string; reason?: string }>>;
  unknown_indicators: string[];
  summary: Record<string, { missing: string[] }>;
}

export interface ModelSummary {
  version: number;
  clamp_policy: string;
  missing_policy: string;
  sub_indexes: SubIndexSummary[];
  periods: string[];
  computable_periods: string[];
  coverage: CoverageSummary;
}

export interface ComponentResult {
  id: string;
  raw: number;
  normalized: number;
  weight: number;
  bounds: { kind: string; min: number; max: number };
}

export interface SubIndexResult {
  id: string;
  potential: number;
  vulnerability: number;
  weight: number;
  components: ComponentResult[];
}

export interface ContributionEntry {
  id: string;
  value: number | null;
  infinite: boolean;
}

export interface IndexWarning {
  code: string;
  message: string;
  component_id?: string;
  sub_index_id?: string;
  period?: string;
  detail?: Record<string, unknown>;
}

export interface ComputeResult {
  aivi: number;
  period: string;
  sub_indexes: SubIndexResult[];
  contributions: ContributionEntry[];
  warnings: IndexWarning[];
}

export interface WeightOverrides {
  top?: Record<string, number>;
  components?: Record<string, number>;
}

export type ComponentOverride = { raw: number } | { normalized: number };

export interface ScenarioRequest {
  period?: string;
  weight_overrides?: WeightOverrides;
  component_overrides?: Record<string, ComponentOverride>;
}

export interface SensitivityRequest {
  scenario?: ScenarioRequest;
  layer?: "top" | "component" | "both";
  samples?: number;
  seed?: number;
  concentration?: number;
  delta?: number;
}

export interface SensitivityReport {
  sample_count: number;
  seed: number;
  layer: string;
  concentration: number;
  mean: number;
  std: number;
  quantiles: Record<string, number>;
  min: number;
  max: number;
}

export interface TornadoEntry {
  target_id: string;
  level: "top" | "component";
  delta: number;
  aivi_low: number;
  aivi_high: number;
}

export interface TornadoReport {
  baseline: number;
  delta: number;
  entries: TornadoEntry[];
}

export interface SensitivityPayload {
  report: SensitivityReport;
  tornado?: TornadoReport;
}

export interface ServiceError {
  code: string;
  message: string;
  path?: string;
  missing?: string[];
}
