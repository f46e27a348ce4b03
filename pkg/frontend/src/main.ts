/** DOM wiring: model-driven controls, debounced recompute, live panels. */

import { ApiError, ExplorerApi } from "./api.js";
import {
  contributionsHtml,
  gaugeHtml,
  quantileBandHtml,
  subIndexBarsHtml,
  tornadoHtml,
  warningsHtml,
} from "./charts.js";
import { DEBOUNCE_MS, debounce } from "./debounce.js";
import { formatWeight } from "./format.js";
import { ScenarioStore } from "./scenario.js";
import type { ModelSummary } from "./types.js";

const api = new ExplorerApi("");

function el<T extends HTMLElement>(id: string): T {
  const found = document.getElementById(id);
  if (found === null) throw new Error(`missing element #${id}`);
  return found as T;
}

function showBanner(message: string, onRetry: () => void): void {
  const banner = el<HTMLDivElement>("banner");
  banner.innerHTML = "";
  banner.classList.remove("hidden");
  const text = document.createElement("span");
  text.textContent = message;
  const retry = document.createElement("button");
  retry.textContent = "retry";
  retry.addEventListener("click", onRetry);
  banner.append(text, retry);
}

function hideBanner(): void {
  const banner = el<HTMLDivElement>("banner");
  banner.classList.add("hidden");
  banner.innerHTML = "";
}

interface SliderRefs {
  input: HTMLInputElement;
  label: HTMLSpanElement;
}

class Explorer {
  private store!: ScenarioStore;
  private readonly sliders = new Map<string, SliderRefs>();
  private readonly recompute = debounce(() => void this.compute(), DEBOUNCE_MS);

  async start(): Promise<void> {
    let model: ModelSummary;
    try {
      model = await api.getModel();
    } catch (err) {
      showBanner(
        `service unreachable: ${err instanceof Error ? err.message : String(err)}`,
        () => void this.start(),
      );
      return;
    }
    hideBanner();
    this.store = new ScenarioStore(model);
    this.buildControls(model);
    this.bindSensitivityPanel();
    await this.compute();
  }

  private buildControls(model: ModelSummary): void {
    const periodSelect = el<HTMLSelectElement>("period");
    periodSelect.innerHTML = "";
    for (const period of model.computable_periods) {
      const option = document.createElement("option");
      option.value = period;
      option.textContent = period;
      periodSelect.append(option);
    }
    if (this.store.period !== null) periodSelect.value = this.store.period;
    periodSelect.addEventListener("change", () => {
      this.store.setPeriod(periodSelect.value || null);
      this.recompute();
    });

    const host = el<HTMLDivElement>("sliders");
    host.innerHTML = "";
    this.sliders.clear();

    const topGroup = this.sliderGroup("index weights");
    for (const sub of model.sub_indexes) {
      topGroup.append(
        this.slider(`top:${sub.id}`, sub.id, sub.weight, (value) => {
          this.store.moveTopWeight(sub.id, value);
          this.refreshGroup("top:", this.store.topWeights);
          this.recompute();
        }),
      );
    }
    host.append(topGroup);

    for (const sub of model.sub_indexes) {
      const group = this.sliderGroup(`${sub.id} components`);
      for (const comp of sub.components) {
        group.append(
          this.slider(`comp:${comp.id}`, comp.id, comp.weight, (value) => {
            this.store.moveComponentWeight(sub.id, comp.id, value);
            this.refreshGroup(
              "comp:",
              this.store.componentWeights[sub.id] ?? {},
            );
            this.recompute();
          }),
        );
        group.append(this.overrideInput(comp.id));
      }
      host.append(group);
    }
  }

  private sliderGroup(title: string): HTMLFieldSetElement {
    const group = document.createElement("fieldset");
    group.className = "slider-group";
    const legend = document.createElement("legend");
    legend.textContent = title;
    group.append(legend);
    return group;
  }

  private slider(
    key: string,
    label: string,
    initial: number,
    onMove: (value: number) => void,
  ): HTMLLabelElement {
    const wrap = document.createElement("label");
    wrap.className = "slider";
    const caption = document.createElement("span");
    caption.textContent = label;
    const value = document.createElement("span");
    value.className = "slider-value";
    value.textContent = formatWeight(initial);
    const input = document.createElement("input");
    input.type = "range";
    input.min = "0";
    input.max = "1";
    input.step = "0.001";
    input.value = String(initial);
    input.addEventListener("input", () => onMove(Number(input.value)));
    wrap.append(caption, input, value);
    this.sliders.set(key, { input, label: value });
    return wrap;
  }

  private overrideInput(componentId: string): HTMLLabelElement {
    const wrap = document.createElement("label");
    wrap.className = "override";
    const caption = document.createElement("span");
    caption.textContent = "override";
    const input = document.createElement("input");
    input.type = "number";
    input.min = "0";
    input.max = "1";
    input.step = "0.01";
    input.placeholder = "normalized";
    input.dataset["component"] = componentId;
    input.addEventListener("change", () => {
      const raw = input.value.trim();
      if (raw === "") {
        this.store.setOverride(componentId, null);
      } else {
        this.store.setOverride(componentId, { normalized: Number(raw) });
      }
      this.recompute();
    });
    wrap.append(caption, input);
    return wrap;
  }

  private refreshGroup(prefix: string, weights: Record<string, number>): void {
    for (const [id, weight] of Object.entries(weights)) {
      const refs = this.sliders.get(`${prefix}${id}`);
      if (refs === undefined) continue;
      refs.input.value = String(weight);
      refs.label.textContent = formatWeight(weight);
    }
  }

  private async compute(): Promise<void> {
    const seq = this.store.nextSequence();
    const request = this.store.buildRequest();
    try {
      const result = await api.compute(request);
      if (!this.store.accept(seq, result)) return; // stale: a newer response won
      el<HTMLDivElement>("gauge-host").innerHTML = gaugeHtml(result);
      el<HTMLDivElement>("bars-host").innerHTML = subIndexBarsHtml(result);
      el<HTMLDivElement>("contributions-host").innerHTML = contributionsHtml(result);
      el<HTMLDivElement>("warnings-host").innerHTML = warningsHtml(result);
      el<HTMLDivElement>("compute-error").textContent = "";
      document
        .querySelectorAll(".field-error")
        .forEach((node) => node.classList.remove("field-error"));
    } catch (err) {
      // previous result stays on screen; flag the offending field if known
      const message = err instanceof Error ? err.message : String(err);
      el<HTMLDivElement>("compute-error").textContent = message;
      if (err instanceof ApiError && err.path !== undefined) {
        const input = document.querySelector(`[data-component="${err.path.split(".").pop()}"]`);
        input?.classList.add("field-error");
      }
    }
  }

  private bindSensitivityPanel(): void {
    const run = el<HTMLButtonElement>("run-sensitivity");
    const message = el<HTMLDivElement>("sensitivity-error");
    run.addEventListener("click", () => {
      const samples = Number(el<HTMLInputElement>("samples").value);
      const seed = Number(el<HTMLInputElement>("seed").value);
      const delta = el<HTMLInputElement>("delta").value.trim();
      if (!Number.isInteger(samples) || samples < 1) {
        message.textContent = "samples must be a positive integer";
        return;
      }
      message.textContent = "";
      void this.runSensitivity(samples, seed, delta === "" ? undefined : Number(delta));
    });
  }

  private async runSensitivity(samples: number, seed: number, delta?: number): Promise<void> {
    const message = el<HTMLDivElement>("sensitivity-error");
    try {
      const payload = await api.sensitivity({
        scenario: this.store.buildRequest(),
        samples,
        seed,
        ...(delta !== undefined ? { delta } : {}),
      });
      el<HTMLDivElement>("band-host").innerHTML = quantileBandHtml(payload.report);
      el<HTMLDivElement>("tornado-host").innerHTML =
        payload.tornado !== undefined ? tornadoHtml(payload.tornado) : "";
      message.textContent = "";
    } catch (err) {
      message.textContent = err instanceof Error ? err.message : String(err);
    }
  }
}

new Explorer().start();
