import { afterEach, beforeEach, describe, expect, it, vi } from "vitest";

import { DEBOUNCE_MS, debounce } from "../src/debounce.js";

describe("debounce", () => {
  beforeEach(() => {
    vi.useFakeTimers();
  });
  afterEach(() => {
    vi.useRealTimers();
  });

  it("fires once on the trailing edge with the last arguments", () => {
    const calls: number[] = [];
    const run = debounce((n: number) => calls.push(n), DEBOUNCE_MS);
    run(1);
    vi.advanceTimersByTime(100);
    run(2);
    vi.advanceTimersByTime(100);
    run(3);
    expect(calls).toEqual([]);
    vi.advanceTimersByTime(DEBOUNCE_MS);
    expect(calls).toEqual([3]);
  });

  it("does not fire before the full quiet window has passed", () => {
    const calls: number[] = [];
    const run = debounce((n: number) => calls.push(n), DEBOUNCE_MS);
    run(1);
    vi.advanceTimersByTime(DEBOUNCE_MS - 1);
    expect(calls).toEqual([]);
    vi.advanceTimersByTime(1);
    expect(calls).toEqual([1]);
  });

  it("cancel drops the pending call", () => {
    const calls: number[] = [];
    const run = debounce((n: number) => calls.push(n));
    run(1);
    run.cancel();
    vi.advanceTimersByTime(DEBOUNCE_MS * 2);
    expect(calls).toEqual([]);
  });

  it("flush fires immediately and only once", () => {
    const calls: number[] = [];
    const run = debounce((n: number) => calls.push(n));
    run(7);
    run.flush();
    expect(calls).toEqual([7]);
    run.flush();
    vi.advanceTimersByTime(DEBOUNCE_MS * 2);
    expect(calls).toEqual([7]);
  });
});
