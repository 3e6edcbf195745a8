"""Binary wire format for kernel-emitted event records.

One record is exactly 165 bytes, little-endian, no padding:

    offset  size  field
    0       4     pid   (u32)
    4       4     uid   (u32)
    8       16    comm  (NUL-padded bytes)
    24      1     kind  (1=exec, 2=open, 3=exit)
    25      4     flags (u32; open flags, 0 otherwise)
    29      128   path  (NUL-padded bytes; exe path for exec)
    157     8     timestamp_ns (u64)

The layout is shared with the kernel-side emitter; both ends must agree
byte for byte, so any change requires bumping the kind tag space and the
consumers together.
"""

from __future__ import annotations

import struct
from typing import BinaryIO, Iterator

from .events import (
    COMM_MAX_BYTES,
    PATH_MAX_BYTES,
    Exec,
    Exit,
    FileOpen,
    SyscallEvent,
    exec_event,
    exit_event,
    open_event,
)

_RECORD = struct.Struct("<II16sBI128sQ")
RECORD_SIZE = _RECORD.size  # 165

KIND_EXEC = 1
KIND_OPEN = 2
KIND_EXIT = 3


class WireDecodeError(ValueError):
    """Raised for truncated or structurally invalid wire records."""


def _pack_str(text: str, limit: int) -> bytes:
    # Events already truncate comm/path on construction; the slice is a
    # safety net for hand-built values. surrogateescape keeps cut multibyte
    # sequences byte-exact in both directions, kernel style.
    return text.encode("utf-8", errors="surrogateescape")[:limit]


def _unpack_str(raw: bytes) -> str:
    return raw.split(b"\x00", 1)[0].decode("utf-8", errors="surrogateescape")


def encode_record(event: SyscallEvent) -> bytes:
    if isinstance(event.kind, Exec):
        kind, flags, path = KIND_EXEC, 0, event.kind.exe_path
    elif isinstance(event.kind, FileOpen):
        kind, flags, path = KIND_OPEN, event.kind.flags.raw, event.kind.path
    elif isinstance(event.kind, Exit):
        kind, flags, path = KIND_EXIT, 0, ""
    else:
        raise ValueError(f"unencodable event kind {type(event.kind).__name__}")
    return _RECORD.pack(
        event.pid,
        event.uid,
        _pack_str(event.comm, COMM_MAX_BYTES),
        kind,
        flags,
        _pack_str(path, PATH_MAX_BYTES),
        event.timestamp_ns,
    )


def decode_record(data: bytes) -> SyscallEvent:
    if len(data) != RECORD_SIZE:
        raise WireDecodeError(f"record must be {RECORD_SIZE} bytes, got {len(data)}")
    pid, uid, comm_raw, kind, flags, path_raw, ts = _RECORD.unpack(data)
    comm = _unpack_str(comm_raw)
    path = _unpack_str(path_raw)
    if kind == KIND_EXEC:
        return exec_event(pid=pid, uid=uid, comm=comm, timestamp_ns=ts, exe_path=path)
    if kind == KIND_OPEN:
        return open_event(pid=pid, uid=uid, comm=comm, timestamp_ns=ts, path=path, flags=flags)
    if kind == KIND_EXIT:
        return exit_event(pid=pid, uid=uid, comm=comm, timestamp_ns=ts)
    raise WireDecodeError(f"unknown record kind {kind}")


def read_records(stream: BinaryIO) -> Iterator[SyscallEvent]:
    """Decode a stream of fixed-size records; a partial tail is an error."""
    index = 0
    while True:
        chunk = stream.read(RECORD_SIZE)
        if not chunk:
            return
        if len(chunk) < RECORD_SIZE:
            raise WireDecodeError(
                f"truncated record {index}: {len(chunk)} of {RECORD_SIZE} bytes"
            )
        yield decode_record(chunk)
        index += 1


def write_records(stream: BinaryIO, events) -> int:
    count = 0
    for event in events:
        stream.write(encode_record(event))
        count += 1
    return count
