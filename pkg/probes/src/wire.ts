/*
  Binary wire format for kernel-emitted event records.

  One record is exactly 165 bytes, little-endian, no padding:

      offset  size  field
      0       4     pid   (u32)
      4       4     uid   (u32)
      8       16    comm  (NUL-padded bytes)
      24      1     kind  (1=exec, 2=open, 3=exit)
      25      4     flags (u32; open flags, 0 otherwise)
      29      128   path  (NUL-padded bytes; exe path for exec)
      157     8     timestamp_ns (u64)

  The layout mirrors struct event_record in bpf/records.h and the
  user-space consumer's decoder; all three must agree byte for byte.
  Golden vectors live in ../tests/data/wire_golden.json at the repo root.
*/

export const RECORD_SIZE = 165;
export const COMM_MAX_BYTES = 16;
export const PATH_MAX_BYTES = 128;

// Octal 0100 from the fcntl open(2) interface.
export const O_CREAT = 0o100;

export enum RecordKind {
  Exec = 1,
  Open = 2,
  Exit = 3,
}

export interface EventRecord {
  pid: number;
  uid: number;
  comm: string;
  kind: RecordKind;
  flags: number; // open flags; meaningful only for Open records
  path: string; // exe path for Exec, created/opened path for Open, "" for Exit
  timestampNs: bigint; // u64; exceeds Number.MAX_SAFE_INTEGER in real traces
}

export class WireCodecError extends Error {}

const U32_MAX = 0xffff_ffff;
const U64_MAX = (1n << 64n) - 1n;

function checkU32(value: number, field: string): void {
  if (!Number.isInteger(value) || value < 0 || value > U32_MAX) {
    throw new WireCodecError(`field ${field} out of u32 range: ${value}`);
  }
}

// Hard byte cut, kernel style: a multibyte character split by the limit
// loses its tail bytes rather than the whole character.
function packString(text: string, limit: number): Buffer {
  return Buffer.from(text, "utf8").subarray(0, limit);
}

function unpackString(raw: Buffer): string {
  const nul = raw.indexOf(0);
  return (nul === -1 ? raw : raw.subarray(0, nul)).toString("utf8");
}

export function encodeRecord(record: EventRecord): Buffer {
  checkU32(record.pid, "pid");
  checkU32(record.uid, "uid");
  if (record.timestampNs < 0n || record.timestampNs > U64_MAX) {
    throw new WireCodecError(`field timestamp_ns out of u64 range: ${record.timestampNs}`);
  }

  // flags and path are properties of the kind, not free fields: exec
  // carries its exe path with zero flags, exit carries neither.
  let flags: number;
  let path: string;
  switch (record.kind) {
    case RecordKind.Exec:
      flags = 0;
      path = record.path;
      break;
    case RecordKind.Open:
      checkU32(record.flags, "flags");
      flags = record.flags;
      path = record.path;
      break;
    case RecordKind.Exit:
      flags = 0;
      path = "";
      break;
    default:
      throw new WireCodecError(`unknown record kind ${record.kind}`);
  }

  const buf = Buffer.alloc(RECORD_SIZE); // zero-filled: NUL padding for free
  buf.writeUInt32LE(record.pid, 0);
  buf.writeUInt32LE(record.uid, 4);
  packString(record.comm, COMM_MAX_BYTES).copy(buf, 8);
  buf.writeUInt8(record.kind, 24);
  buf.writeUInt32LE(flags, 25);
  packString(path, PATH_MAX_BYTES).copy(buf, 29);
  buf.writeBigUInt64LE(record.timestampNs, 157);
  return buf;
}

export function decodeRecord(data: Buffer): EventRecord {
  if (data.length !== RECORD_SIZE) {
    throw new WireCodecError(`record must be ${RECORD_SIZE} bytes, got ${data.length}`);
  }
  const kind = data.readUInt8(24);
  if (kind !== RecordKind.Exec && kind !== RecordKind.Open && kind !== RecordKind.Exit) {
    throw new WireCodecError(`unknown record kind ${kind}`);
  }
  return {
    pid: data.readUInt32LE(0),
    uid: data.readUInt32LE(4),
    comm: unpackString(data.subarray(8, 24)),
    kind,
    flags: data.readUInt32LE(25),
    path: unpackString(data.subarray(29, 157)),
    timestampNs: data.readBigUInt64LE(157),
  };
}

export function encodeRecords(records: Iterable<EventRecord>): Buffer {
  const parts: Buffer[] = [];
  for (const record of records) {
    parts.push(encodeRecord(record));
  }
  return Buffer.concat(parts);
}

/** Decode a buffer of fixed-size records; a partial tail is an error. */
export function decodeRecords(data: Buffer): EventRecord[] {
  const records: EventRecord[] = [];
  let offset = 0;
  while (offset < data.length) {
    const remaining = data.length - offset;
    if (remaining < RECORD_SIZE) {
      throw new WireCodecError(
        `truncated record ${records.length}: ${remaining} of ${RECORD_SIZE} bytes`,
      );
    }
    records.push(decodeRecord(data.subarray(offset, offset + RECORD_SIZE)));
    offset += RECORD_SIZE;
  }
  return records;
}
