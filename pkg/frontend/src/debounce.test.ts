import { afterEach, beforeEach, describe, expect, it, vi } from "vitest";

import { Debouncer } from "./debounce.js";

describe("Debouncer", () => {
  beforeEach(() => vi.useFakeTimers());
  afterEach(() => vi.useRealTimers());

  it("coalesces a burst into the latest value", async () => {
    const sent: number[] = [];
    const d = new Debouncer<number>(150, async (v) => {
      sent.push(v);
    });
    d.push(1);
    d.push(2);
    d.push(3);
    await vi.advanceTimersByTimeAsync(149);
    expect(sent).toEqual([]);
    await vi.advanceTimersByTimeAsync(2);
    expect(sent).toEqual([3]);
  });

  it("keeps one request in flight and replays the latest afterwards", async () => {
    const sent: number[] = [];
    let release: (() => void) | null = null;
    const d = new Debouncer<number>(10, (v) => {
      sent.push(v);
      return new Promise<void>((resolve) => {
        release = resolve;
      });
    });
    d.push(1);
    await vi.advanceTimersByTimeAsync(11);
    expect(sent).toEqual([1]);
    d.push(2);
    d.push(3);
    await vi.advanceTimersByTimeAsync(50);
    expect(sent).toEqual([1]); // still blocked on the in-flight request
    release!();
    await vi.advanceTimersByTimeAsync(0);
    expect(sent).toEqual([1, 3]); // latest wins
    release!();
  });

  it("flush sends the pending value immediately", async () => {
    const sent: number[] = [];
    const d = new Debouncer<number>(1000, async (v) => {
      sent.push(v);
    });
    d.push(7);
    await d.flush();
    expect(sent).toEqual([7]);
    expect(d.hasPending).toBe(false);
  });
});
