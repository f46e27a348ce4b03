/** Scenario state: slider positions, overrides, and response sequencing.
 *
 * Every request carries a monotonically increasing sequence number; a
 * response is rendered only if no later response has been rendered already,
 * so a slow early reply can never overwrite a newer one. The displayed
 * result is always a verbatim server response.
 */

import { renormalize, type WeightMap } from "./renormalize.js";
import type {
  ComponentOverride,
  ComputeResult,
  ModelSummary,
  ScenarioRequest,
} from "./types.js";

export class ScenarioStore {
  readonly model: ModelSummary;
  topWeights: WeightMap;
  componentWeights: Record<string, WeightMap>;
  overrides: Record<string, ComponentOverride>;
  period: string | null;
  lastResult: ComputeResult | null = null;

  private nextSeq = 0;
  private renderedSeq = 0;

  constructor(model: ModelSummary) {
    this.model = model;
    this.topWeights = {};
    this.componentWeights = {};
    this.overrides = {};
    for (const sub of model.sub_indexes) {
      this.topWeights[sub.id] = sub.weight;
      const group: WeightMap = {};
      for (const comp of sub.components) {
        group[comp.id] = comp.weight;
      }
      this.componentWeights[sub.id] = group;
    }
    const periods = model.computable_periods;
    this.period = periods.length > 0 ? (periods[periods.length - 1] ?? null) : null;
  }

  moveTopWeight(id: string, value: number): void {
    this.topWeights = renormalize(this.topWeights, id, value);
  }

  moveComponentWeight(subId: string, id: string, value: number): void {
    const group = this.componentWeights[subId];
    if (group === undefined) {
      throw new Error(`unknown sub-index ${subId}`);
    }
    this.componentWeights[subId] = renormalize(group, id, value);
  }

  setOverride(componentId: string, override: ComponentOverride | null): void {
    if (override === null) {
      delete this.overrides[componentId];
    } else {
      this.overrides[componentId] = override;
    }
  }

  setPeriod(period: string | null): void {
    this.period = period;
  }

  /** The full scenario body; weight groups are always sent complete. */
  buildRequest(): ScenarioRequest {
    const components: WeightMap = {};
    for (const group of Object.values(this.componentWeights)) {
      Object.assign(components, group);
    }
    const request: ScenarioRequest = {
      weight_overrides: { top: { ...this.topWeights }, components },
    };
    if (this.period !== null) {
      request.period = this.period;
    }
    if (Object.keys(this.overrides).length > 0) {
      request.component_overrides = { ...this.overrides };
    }
    return request;
  }

  /** Stamp an outgoing request. */
  nextSequence(): number {
    this.nextSeq += 1;
    return this.nextSeq;
  }

  /** Render a response unless something newer already rendered. */
  accept(sequence: number, result: ComputeResult): boolean {
    if (sequence <= this.renderedSeq) {
      return false;
    }
    this.renderedSeq = sequence;
    this.lastResult = result;
    return true;
  }

  /** A request is in flight that has not produced a rendered response. */
  get pending(): boolean {
    return this.nextSeq > this.renderedSeq;
  }
}
