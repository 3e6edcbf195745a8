/*
  Reader for recorded syscall traces (one JSON object per line) as written
  by the replay tooling. Used by the loader's simulation mode to feed a
  recorded scenario through the gate as if it came from the kernel.
*/

import { EventRecord, RecordKind } from "./wire.js";

export class TraceParseError extends Error {
  constructor(message: string, lineNo?: number) {
    super(lineNo === undefined ? message : `line ${lineNo}: ${message}`);
  }
}

const KIND_BY_NAME: Record<string, RecordKind> = {
  exec: RecordKind.Exec,
  open: RecordKind.Open,
  exit: RecordKind.Exit,
};

// Trace timestamps are nanosecond epoch values, far beyond 2^53, so
// JSON.parse would silently round them. The writer always puts ts_ns
// first on the line; pull the digits out of the raw text instead.
const TS_PATTERN = /^\s*\{"ts_ns":\s*(\d+)/;

function requireField(obj: Record<string, unknown>, name: string, lineNo?: number): unknown {
  if (!(name in obj)) {
    throw new TraceParseError(`missing field ${name}`, lineNo);
  }
  return obj[name];
}

function asInt(value: unknown, name: string, lineNo?: number): number {
  if (typeof value !== "number" || !Number.isInteger(value)) {
    throw new TraceParseError(`field ${name}: expected integer`, lineNo);
  }
  return value;
}

function asStr(value: unknown, name: string, lineNo?: number): string {
  if (typeof value !== "string") {
    throw new TraceParseError(`field ${name}: expected string`, lineNo);
  }
  return value;
}

export function parseTraceLine(line: string, lineNo?: number): EventRecord {
  let obj: unknown;
  try {
    obj = JSON.parse(line);
  } catch (err) {
    throw new TraceParseError(`not a valid record: ${(err as Error).message}`, lineNo);
  }
  if (typeof obj !== "object" || obj === null || Array.isArray(obj)) {
    throw new TraceParseError("record is not a key-value object", lineNo);
  }
  const record = obj as Record<string, unknown>;

  const kindName = asStr(requireField(record, "kind", lineNo), "kind", lineNo);
  const kind = KIND_BY_NAME[kindName];
  if (kind === undefined) {
    throw new TraceParseError(`field kind: unknown value '${kindName}'`, lineNo);
  }

  requireField(record, "ts_ns", lineNo);
  const tsMatch = TS_PATTERN.exec(line);
  if (!tsMatch || typeof record["ts_ns"] !== "number" || !Number.isInteger(record["ts_ns"])) {
    throw new TraceParseError("field ts_ns: expected integer", lineNo);
  }

  let path = "";
  let flags = 0;
  if (kind === RecordKind.Exec) {
    path = asStr(requireField(record, "exe_path", lineNo), "exe_path", lineNo);
  } else if (kind === RecordKind.Open) {
    path = asStr(requireField(record, "path", lineNo), "path", lineNo);
    flags = asInt(requireField(record, "flags", lineNo), "flags", lineNo);
  }

  return {
    pid: asInt(requireField(record, "pid", lineNo), "pid", lineNo),
    uid: asInt(requireField(record, "uid", lineNo), "uid", lineNo),
    comm: asStr(requireField(record, "comm", lineNo), "comm", lineNo),
    kind,
    flags,
    path,
    timestampNs: BigInt(tsMatch[1]),
  };
}

/** Parse a whole trace; blank lines skipped, timestamps must not decrease. */
export function readTrace(text: string): EventRecord[] {
  const records: EventRecord[] = [];
  let lastTs = -1n;
  const lines = text.split("\n");
  for (let i = 0; i < lines.length; i++) {
    const line = lines[i].trim();
    if (!line) {
      continue;
    }
    const record = parseTraceLine(line, i + 1);
    if (record.timestampNs < lastTs) {
      throw new TraceParseError(
        `timestamp ${record.timestampNs} decreases (previous ${lastTs})`,
        i + 1,
      );
    }
    lastTs = record.timestampNs;
    records.push(record);
  }
  return records;
}
