import { describe, expect, it } from "vitest";

import { parseTraceLine, readTrace, TraceParseError } from "../src/trace.js";
import { RecordKind } from "../src/wire.js";

const OPEN_LINE =
  '{"ts_ns":1700000000000000001,"pid":4242,"uid":1000,"comm":"payload","kind":"open","path":"/home/user/d/f.txt","flags":577}';
const EXEC_LINE =
  '{"ts_ns":1700000000000000002,"pid":7,"uid":0,"comm":"cc","kind":"exec","exe_path":"/usr/bin/cc"}';
const EXIT_LINE = '{"ts_ns":1700000000000000003,"pid":4242,"uid":1000,"comm":"payload","kind":"exit"}';

describe("trace lines", () => {
  it("parses an open line", () => {
    expect(parseTraceLine(OPEN_LINE)).toEqual({
      pid: 4242,
      uid: 1000,
      comm: "payload",
      kind: RecordKind.Open,
      flags: 577,
      path: "/home/user/d/f.txt",
      timestampNs: 1700000000000000001n,
    });
  });

  it("keeps nanosecond timestamps exact beyond 2^53", () => {
    // These two differ in the last digit; Number would collapse them.
    const a = parseTraceLine(OPEN_LINE).timestampNs;
    const b = parseTraceLine(OPEN_LINE.replace("0001,", "0002,")).timestampNs;
    expect(b - a).toBe(1n);
  });

  it("maps exec's exe_path onto the record path with zero flags", () => {
    const record = parseTraceLine(EXEC_LINE);
    expect(record.kind).toBe(RecordKind.Exec);
    expect(record.path).toBe("/usr/bin/cc");
    expect(record.flags).toBe(0);
  });

  it("parses exit lines with no path", () => {
    const record = parseTraceLine(EXIT_LINE);
    expect(record.kind).toBe(RecordKind.Exit);
    expect(record.path).toBe("");
  });

  it.each([
    ["not json at all", "not a valid record"],
    ["[1,2,3]", "record is not a key-value object"],
    ['{"ts_ns":1,"pid":1,"uid":0,"comm":"x","kind":"fork"}', "unknown value 'fork'"],
    ['{"ts_ns":1,"pid":1,"uid":0,"comm":"x","kind":"open","flags":0}', "missing field path"],
    ['{"pid":1,"uid":0,"comm":"x","kind":"exit"}', "missing field ts_ns"],
    ['{"ts_ns":1.5,"pid":1,"uid":0,"comm":"x","kind":"exit"}', "field ts_ns: expected integer"],
    ['{"ts_ns":1,"pid":true,"uid":0,"comm":"x","kind":"exit"}', "field pid: expected integer"],
    ['{"ts_ns":1,"pid":1,"uid":0,"comm":7,"kind":"exit"}', "field comm: expected string"],
  ])("rejects %s", (line, message) => {
    expect(() => parseTraceLine(line, 3)).toThrow(TraceParseError);
    expect(() => parseTraceLine(line, 3)).toThrow(message);
    expect(() => parseTraceLine(line, 3)).toThrow(/line 3:/);
  });
});

describe("whole traces", () => {
  it("reads ordered lines and skips blanks", () => {
    const records = readTrace(`${OPEN_LINE}\n\n${EXEC_LINE}\n${EXIT_LINE}\n`);
    expect(records.map((r) => r.kind)).toEqual([RecordKind.Open, RecordKind.Exec, RecordKind.Exit]);
  });

  it("rejects a timestamp that goes backwards", () => {
    const text = `${EXEC_LINE}\n${OPEN_LINE}\n`;
    expect(() => readTrace(text)).toThrow(/line 2: timestamp .* decreases/);
  });
});
