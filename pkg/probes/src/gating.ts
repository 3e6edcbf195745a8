/*
  User-space model of the in-kernel threshold gate.

  The openat probe keeps one cumulative creation counter per PID and only
  emits an open record once the counter reaches the configured threshold
  (and for every creation after that). Counting creations in the kernel
  bounds ring-buffer traffic during an encryption burst: the consumer
  never sees the pre-threshold noise.

  This class is the reference for that map logic. It is what the loader's
  trace-simulation mode runs, and what the equivalence suite checks
  against the full replay pipeline.
*/

import { EventRecord, O_CREAT, RecordKind } from "./wire.js";

export interface GateConfig {
  threshold: number;
  /** Forward every record unmodified (debug / equivalence testing). */
  rawEmit?: boolean;
}

export class ThresholdGate {
  readonly threshold: number;
  readonly rawEmit: boolean;
  // pid -> cumulative creat-open count; entries created lazily on the
  // first creation and reaped on process exit, like the kernel map.
  private counters = new Map<number, number>();

  constructor(config: GateConfig) {
    if (!Number.isInteger(config.threshold) || config.threshold < 1) {
      throw new RangeError(`threshold must be >= 1, got ${config.threshold}`);
    }
    this.threshold = config.threshold;
    this.rawEmit = config.rawEmit ?? false;
  }

  /** Feed one record; returns the record to forward, or null to suppress. */
  observe(record: EventRecord): EventRecord | null {
    if (this.rawEmit) {
      if (record.kind === RecordKind.Exit) {
        this.counters.delete(record.pid);
      } else if (record.kind === RecordKind.Open && (record.flags & O_CREAT) !== 0) {
        this.bump(record.pid);
      }
      return record;
    }

    switch (record.kind) {
      case RecordKind.Exec:
        // Phase 1 is not gated: every exec reaches the consumer.
        return record;
      case RecordKind.Exit:
        this.counters.delete(record.pid);
        // Forwarded so the consumer can reap its own per-PID state.
        return record;
      case RecordKind.Open: {
        if ((record.flags & O_CREAT) === 0) {
          return null;
        }
        const count = this.bump(record.pid);
        return count >= this.threshold ? record : null;
      }
    }
  }

  private bump(pid: number): number {
    const count = (this.counters.get(pid) ?? 0) + 1;
    this.counters.set(pid, count);
    return count;
  }

  countFor(pid: number): number {
    return this.counters.get(pid) ?? 0;
  }

  /** Number of live PID entries; bounded by processes that created files. */
  get size(): number {
    return this.counters.size;
  }
}
