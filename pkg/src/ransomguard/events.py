"""Syscall event model and the line-oriented trace codec.

Every event source (live kernel probes, trace replay) produces the same
immutable event values, and every trace file round-trips bit-exactly:
``decode_trace_line(encode_trace_line(e)) == e``.
"""

from __future__ import annotations

import json
from dataclasses import dataclass
from typing import Iterable, Iterator, Optional, TextIO, Union

# Octal constants from the fcntl open(2) interface.
O_ACCMODE = 0o3
O_RDONLY = 0o0
O_WRONLY = 0o1
O_RDWR = 0o2
O_CREAT = 0o100
O_TRUNC = 0o1000
O_APPEND = 0o2000

COMM_MAX_BYTES = 16
PATH_MAX_BYTES = 128


class TraceDecodeError(ValueError):
    """Raised for a malformed trace line; carries the line number when known."""

    def __init__(self, message: str, line_no: Optional[int] = None):
        if line_no is not None:
            message = f"line {line_no}: {message}"
        super().__init__(message)
        self.line_no = line_no


def truncate_utf8(text: str, limit: int) -> str:
    """Cut ``text`` to at most ``limit`` UTF-8 bytes, kernel style.

    A multi-byte character split by the cut survives as lone surrogates so
    the byte length is exact and the original bytes are preserved.
    """
    raw = text.encode("utf-8", "surrogateescape")
    if len(raw) <= limit:
        return text
    return raw[:limit].decode("utf-8", "surrogateescape")


def utf8_len(text: str) -> int:
    return len(text.encode("utf-8", "surrogateescape"))


@dataclass(frozen=True)
class OpenFlags:
    """Raw open(2) flag bitmask with the derived access-mode booleans."""

    raw: int

    @property
    def creat(self) -> bool:
        return (self.raw & O_CREAT) != 0

    @property
    def rdonly(self) -> bool:
        return (self.raw & O_ACCMODE) == 0

    @property
    def wronly(self) -> bool:
        return (self.raw & O_ACCMODE) == O_WRONLY

    @property
    def trunc(self) -> bool:
        return (self.raw & O_TRUNC) != 0

    @property
    def append(self) -> bool:
        return (self.raw & O_APPEND) != 0


def parse_open_flags(raw: int) -> OpenFlags:
    """Decode a raw flags integer; any non-negative integer decodes."""
    if raw < 0:
        raise ValueError(f"open flags must be non-negative, got {raw}")
    return OpenFlags(raw)


@dataclass(frozen=True)
class Exec:
    exe_path: str


@dataclass(frozen=True)
class FileOpen:
    path: str
    flags: OpenFlags

    def __post_init__(self):
        object.__setattr__(self, "path", truncate_utf8(self.path, PATH_MAX_BYTES))


@dataclass(frozen=True)
class Exit:
    pass


EventKind = Union[Exec, FileOpen, Exit]


@dataclass(frozen=True)
class SyscallEvent:
    """One observed kernel event: process exec, file open, or process exit."""

    pid: int
    uid: int
    comm: str
    timestamp_ns: int
    kind: EventKind

    def __post_init__(self):
        if self.pid <= 0:
            raise ValueError(f"invariant violation: pid > 0 (got {self.pid})")
        if self.uid < 0:
            raise ValueError(f"invariant violation: uid >= 0 (got {self.uid})")
        if not self.comm:
            raise ValueError("invariant violation: comm is non-empty")
        if self.timestamp_ns < 0:
            raise ValueError("invariant violation: timestamp_ns >= 0")
        object.__setattr__(self, "comm", truncate_utf8(self.comm, COMM_MAX_BYTES))

    @property
    def kind_name(self) -> str:
        if isinstance(self.kind, Exec):
            return "exec"
        if isinstance(self.kind, FileOpen):
            return "open"
        return "exit"


def exec_event(pid: int, uid: int, comm: str, timestamp_ns: int, exe_path: str) -> SyscallEvent:
    return SyscallEvent(pid, uid, comm, timestamp_ns, Exec(exe_path))


def open_event(pid: int, uid: int, comm: str, timestamp_ns: int, path: str, flags: int) -> SyscallEvent:
    return SyscallEvent(pid, uid, comm, timestamp_ns, FileOpen(path, parse_open_flags(flags)))


def exit_event(pid: int, uid: int, comm: str, timestamp_ns: int) -> SyscallEvent:
    return SyscallEvent(pid, uid, comm, timestamp_ns, Exit())


# Trace format: one JSON object per line, fields in this fixed order.
_COMMON_FIELDS = ("ts_ns", "pid", "uid", "comm", "kind")
_KIND_FIELDS = {"exec": ("exe_path",), "open": ("path", "flags"), "exit": ()}
_INT_FIELDS = {"ts_ns", "pid", "uid", "flags"}
_STR_FIELDS = {"comm", "kind", "exe_path", "path"}


def encode_trace_line(event: SyscallEvent) -> str:
    """Encode one event as a newline-free trace line."""
    record = {
        "ts_ns": event.timestamp_ns,
        "pid": event.pid,
        "uid": event.uid,
        "comm": event.comm,
        "kind": event.kind_name,
    }
    if isinstance(event.kind, Exec):
        record["exe_path"] = event.kind.exe_path
    elif isinstance(event.kind, FileOpen):
        record["path"] = event.kind.path
        record["flags"] = event.kind.flags.raw
    return json.dumps(record, ensure_ascii=True, separators=(",", ":"))


def decode_trace_line(line: str, line_no: Optional[int] = None) -> SyscallEvent:
    """Decode one trace line; inverse of :func:`encode_trace_line`."""
    try:
        record = json.loads(line)
    except json.JSONDecodeError as exc:
        raise TraceDecodeError(f"not a valid record: {exc.msg}", line_no) from exc
    if not isinstance(record, dict):
        raise TraceDecodeError("record is not a key-value object", line_no)

    kind = record.get("kind")
    if "kind" not in record:
        raise TraceDecodeError("missing field kind", line_no)
    if kind not in _KIND_FIELDS:
        raise TraceDecodeError(f"field kind: unknown value {kind!r}", line_no)

    expected = _COMMON_FIELDS + _KIND_FIELDS[kind]
    for name in expected:
        if name not in record:
            raise TraceDecodeError(f"missing field {name}", line_no)
    for name in record:
        if name not in expected:
            raise TraceDecodeError(f"unknown field {name}", line_no)
    for name, value in record.items():
        if name in _INT_FIELDS and not (isinstance(value, int) and not isinstance(value, bool)):
            raise TraceDecodeError(f"field {name}: expected integer", line_no)
        if name in _STR_FIELDS and not isinstance(value, str):
            raise TraceDecodeError(f"field {name}: expected string", line_no)

    try:
        if kind == "exec":
            ev_kind: EventKind = Exec(record["exe_path"])
        elif kind == "open":
            ev_kind = FileOpen(record["path"], parse_open_flags(record["flags"]))
        else:
            ev_kind = Exit()
        return SyscallEvent(record["pid"], record["uid"], record["comm"], record["ts_ns"], ev_kind)
    except ValueError as exc:
        raise TraceDecodeError(str(exc), line_no) from exc


def write_trace(events: Iterable[SyscallEvent], stream: TextIO) -> int:
    """Write events to a trace stream, enforcing non-decreasing timestamps."""
    count = 0
    last_ts = -1
    for event in events:
        if event.timestamp_ns < last_ts:
            raise ValueError(
                f"trace not in timestamp order: {event.timestamp_ns} after {last_ts}"
            )
        last_ts = event.timestamp_ns
        stream.write(encode_trace_line(event))
        stream.write("\n")
        count += 1
    return count


def read_trace(stream: TextIO) -> Iterator[SyscallEvent]:
    """Yield events from a trace stream, enforcing non-decreasing timestamps."""
    last_ts = -1
    for line_no, line in enumerate(stream, start=1):
        line = line.strip()
        if not line:
            continue
        event = decode_trace_line(line, line_no)
        if event.timestamp_ns < last_ts:
            raise TraceDecodeError(
                f"timestamp {event.timestamp_ns} decreases (previous {last_ts})", line_no
            )
        last_ts = event.timestamp_ns
        yield event
