"""Phase 1: SHA-256 blocklisting of newly executed binaries.

The blocklist is held as a single sorted byte array (32 bytes per digest)
so that feeds in the high-hundreds-of-thousands of entries stay well under
the memory budget while keeping exact membership queries.
"""

from __future__ import annotations

import hashlib
from dataclasses import dataclass
from pathlib import Path
from typing import Union

import numpy as np

from .events import Exec, SyscallEvent
from .verdicts import Verdict

DIGEST_BYTES = 32
_HEX_CHARS = frozenset("0123456789abcdef")
_CHUNK = 1 << 20


class TargetDisappeared(OSError):
    """The file to hash vanished between the event and the hash attempt."""


def hash_file(path: Union[str, Path]) -> str:
    """SHA-256 of the file's full content, streamed; returns lowercase hex."""
    digest = hashlib.sha256()
    try:
        with open(path, "rb") as handle:
            while True:
                chunk = handle.read(_CHUNK)
                if not chunk:
                    break
                digest.update(chunk)
    except FileNotFoundError as exc:
        raise TargetDisappeared(f"target disappeared: {path}") from exc
    return digest.hexdigest()


def _valid_digest_line(line: str) -> str | None:
    line = line.strip().lower()
    if len(line) != 2 * DIGEST_BYTES or not set(line) <= _HEX_CHARS:
        return None
    return line


@dataclass(frozen=True)
class HashBlocklist:
    """Immutable set of known-malware SHA-256 digests."""

    digests: np.ndarray  # sorted, dtype S32
    source_path: str
    entry_count: int
    skipped_count: int

    def __contains__(self, digest: Union[str, bytes]) -> bool:
        if isinstance(digest, str):
            digest = bytes.fromhex(digest)
        if len(digest) != DIGEST_BYTES:
            raise ValueError(f"digest must be {DIGEST_BYTES} bytes")
        if self.entry_count == 0:
            return False
        idx = np.searchsorted(self.digests, np.bytes_(digest))
        return idx < self.entry_count and self.digests[idx] == digest

    @property
    def memory_bytes(self) -> int:
        return int(self.digests.nbytes)

    @staticmethod
    def empty() -> "HashBlocklist":
        return HashBlocklist(np.empty(0, dtype="S32"), "<empty>", 0, 0)


def load_blocklist(path: Union[str, Path]) -> HashBlocklist:
    """Load newline-delimited hex digests; `#` comments allowed.

    Lines that are not 64 hex characters after trimming are skipped and
    counted, never fatal: the agent must come up on a partially corrupt feed.
    """
    raw = bytearray()
    skipped = 0
    with open(path, "r", encoding="utf-8", errors="replace") as handle:
        for line in handle:
            stripped = line.strip()
            if not stripped or stripped.startswith("#"):
                continue
            digest = _valid_digest_line(stripped)
            if digest is None:
                skipped += 1
                continue
            raw += bytes.fromhex(digest)
    if raw:
        arr = np.frombuffer(bytes(raw), dtype="S32")
        arr = np.unique(arr)  # sorts and collapses duplicates
    else:
        arr = np.empty(0, dtype="S32")
    return HashBlocklist(arr, str(path), int(arr.shape[0]), skipped)


def check_exec(event: SyscallEvent, blocklist: HashBlocklist, path_resolver=None) -> Verdict:
    """Hash the executed binary and compare against the blocklist.

    Never classifies without hashing; hash failures surface as an
    indeterminate verdict so the daemon can log and move on.
    ``path_resolver`` maps the event's path into a replay content root.
    """
    if not isinstance(event.kind, Exec):
        raise ValueError("check_exec requires an exec event")
    target = event.kind.exe_path
    if path_resolver is not None:
        target = path_resolver(target)
    try:
        digest = hash_file(target)
    except TargetDisappeared:
        return Verdict.indeterminate("target disappeared")
    except OSError as exc:
        return Verdict.indeterminate(f"unreadable: {exc.strerror or exc}")
    if digest in blocklist:
        return Verdict.known_malware(digest)
    return Verdict.benign()
