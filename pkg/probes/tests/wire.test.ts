import { readFileSync } from "node:fs";
import { dirname, resolve } from "node:path";
import { fileURLToPath } from "node:url";

import { describe, expect, it } from "vitest";

import {
  COMM_MAX_BYTES,
  EventRecord,
  PATH_MAX_BYTES,
  RECORD_SIZE,
  RecordKind,
  WireCodecError,
  decodeRecord,
  decodeRecords,
  encodeRecord,
  encodeRecords,
} from "../src/wire.js";

const HERE = dirname(fileURLToPath(import.meta.url));

// Golden vectors shared with the consumer's decoder tests; timestamps are
// strings there because they exceed 2^53.
interface GoldenRecord {
  hex: string;
  pid: number;
  uid: number;
  comm: string;
  kind: "exec" | "open" | "exit";
  flags: number;
  path: string;
  timestamp_ns: string;
}

const GOLDEN: GoldenRecord[] = JSON.parse(
  readFileSync(resolve(HERE, "..", "..", "tests", "data", "wire_golden.json"), "utf8"),
).records;

const KIND_BY_NAME = { exec: RecordKind.Exec, open: RecordKind.Open, exit: RecordKind.Exit };

function fromGolden(g: GoldenRecord): EventRecord {
  return {
    pid: g.pid,
    uid: g.uid,
    comm: g.comm,
    kind: KIND_BY_NAME[g.kind],
    flags: g.flags,
    path: g.path,
    timestampNs: BigInt(g.timestamp_ns),
  };
}

describe("record layout", () => {
  it("is 165 bytes with kind tags 1/2/3", () => {
    expect(RECORD_SIZE).toBe(165);
    expect(RecordKind.Exec).toBe(1);
    expect(RecordKind.Open).toBe(2);
    expect(RecordKind.Exit).toBe(3);
  });

  it("loads all three golden kinds", () => {
    expect(GOLDEN.map((g) => g.kind).sort()).toEqual(["exec", "exit", "open"]);
  });
});

describe("golden vectors", () => {
  it.each(GOLDEN.map((g) => [g.kind, g] as const))("encodes the %s record bit-exactly", (_k, g) => {
    expect(encodeRecord(fromGolden(g)).toString("hex")).toBe(g.hex);
  });

  it.each(GOLDEN.map((g) => [g.kind, g] as const))("decodes the %s record", (_k, g) => {
    const record = decodeRecord(Buffer.from(g.hex, "hex"));
    expect(record).toEqual(fromGolden(g));
    expect(record.timestampNs).toBe(BigInt(g.timestamp_ns));
  });
});

describe("encode", () => {
  const base: EventRecord = {
    pid: 7,
    uid: 0,
    comm: "probe",
    kind: RecordKind.Open,
    flags: 0o101,
    path: "/tmp/x",
    timestampNs: 1n,
  };

  it("round-trips u32 and u64 extremes", () => {
    const record: EventRecord = {
      ...base,
      pid: 0xffff_ffff,
      uid: 0xffff_ffff,
      flags: 0xffff_ffff,
      timestampNs: (1n << 64n) - 1n,
    };
    expect(decodeRecord(encodeRecord(record))).toEqual(record);
  });

  it("cuts comm at 16 bytes and path at 128", () => {
    const record = decodeRecord(
      encodeRecord({ ...base, comm: "x".repeat(40), path: "/" + "y".repeat(300) }),
    );
    expect(record.comm).toBe("x".repeat(COMM_MAX_BYTES));
    expect(record.path).toBe(("/" + "y".repeat(300)).slice(0, PATH_MAX_BYTES));
  });

  it("zeroes flags for exec and both flags and path for exit", () => {
    const exec = encodeRecord({ ...base, kind: RecordKind.Exec, flags: 999, path: "/bin/sh" });
    expect(exec.readUInt32LE(25)).toBe(0);
    expect(decodeRecord(exec).path).toBe("/bin/sh");

    const exit = encodeRecord({ ...base, kind: RecordKind.Exit, flags: 999, path: "/junk" });
    expect(exit.readUInt32LE(25)).toBe(0);
    expect(exit.subarray(29, 157).every((b) => b === 0)).toBe(true);
  });

  it("rejects out-of-range fields", () => {
    expect(() => encodeRecord({ ...base, pid: -1 })).toThrow(WireCodecError);
    expect(() => encodeRecord({ ...base, pid: 2 ** 32 })).toThrow(/out of u32 range/);
    expect(() => encodeRecord({ ...base, flags: 1.5 })).toThrow(WireCodecError);
    expect(() => encodeRecord({ ...base, timestampNs: -1n })).toThrow(/u64/);
    expect(() => encodeRecord({ ...base, timestampNs: 1n << 64n })).toThrow(/u64/);
    expect(() => encodeRecord({ ...base, kind: 9 as RecordKind })).toThrow(
      "unknown record kind 9",
    );
  });
});

describe("decode", () => {
  it("rejects wrong-size buffers", () => {
    expect(() => decodeRecord(Buffer.alloc(164))).toThrow("record must be 165 bytes, got 164");
    expect(() => decodeRecord(Buffer.alloc(166))).toThrow(WireCodecError);
  });

  it("rejects unknown kind tags", () => {
    const raw = Buffer.from(GOLDEN[0].hex, "hex");
    raw[24] = 9;
    expect(() => decodeRecord(raw)).toThrow("unknown record kind 9");
  });

  it("stops comm and path at the first NUL", () => {
    const raw = Buffer.from(GOLDEN[0].hex, "hex");
    raw.write("ab\0zz", 8, "utf8"); // trailing bytes after NUL are padding noise
    expect(decodeRecord(raw).comm).toBe("ab");
  });
});

describe("record streams", () => {
  it("concatenates and splits back", () => {
    const records = GOLDEN.map(fromGolden);
    const buf = encodeRecords(records);
    expect(buf.length).toBe(RECORD_SIZE * records.length);
    expect(buf.toString("hex")).toBe(GOLDEN.map((g) => g.hex).join(""));
    expect(decodeRecords(buf)).toEqual(records);
  });

  it("reports a truncated tail with its record index", () => {
    const buf = encodeRecords(GOLDEN.map(fromGolden)).subarray(0, RECORD_SIZE * 2 + 3);
    expect(() => decodeRecords(buf)).toThrow("truncated record 2: 3 of 165 bytes");
  });

  it("decodes the empty stream to no records", () => {
    expect(decodeRecords(Buffer.alloc(0))).toEqual([]);
  });
});
