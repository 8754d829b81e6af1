/** Latest-wins debouncer: continuous dragging coalesces into one request
 * per quiet period, and at most one request is in flight at a time. */

export class Debouncer<T> {
  private timer: ReturnType<typeof setTimeout> | null = null;
  private pending: T | null = null;
  private inFlight = false;

  constructor(
    private readonly delayMs: number,
    private readonly send: (value: T) => Promise<void>,
  ) {}

  push(value: T): void {
    this.pending = value;
    if (this.timer !== null) clearTimeout(this.timer);
    this.timer = setTimeout(() => void this.flush(), this.delayMs);
  }

  async flush(): Promise<void> {
    if (this.timer !== null) {
      clearTimeout(this.timer);
      this.timer = null;
    }
    if (this.inFlight || this.pending === null) return;
    const value = this.pending;
    this.pending = null;
    this.inFlight = true;
    try {
      await this.send(value);
    } finally {
      this.inFlight = false;
      if (this.pending !== null) await this.flush();
    }
  }

  get hasPending(): boolean {
    return this.pending !== null || this.inFlight;
  }
}
