"""Mitigation actions: terminate or suspend an offending process.

Kill is SIGKILL (unblockable), Suspend is SIGSTOP. DryRun and LogOnly
never touch process state; DryRun is the default everywhere so that no
test or replay can signal a real process by accident. Before signaling,
the target's /proc identity (comm + start time) is compared against the
identity captured at detection time, so a recycled PID is never hit.
"""

from __future__ import annotations

import enum
import json
import os
import signal
import time
from dataclasses import dataclass
from pathlib import Path
from typing import Optional

from .verdicts import Verdict


class ResponseMode(enum.Enum):
    DRY_RUN = "dry-run"
    LOG_ONLY = "log"
    KILL = "kill"
    SUSPEND = "suspend"


class ActionOutcome(enum.Enum):
    APPLIED = "applied"
    TARGET_ALREADY_GONE = "target_already_gone"
    PERMISSION_DENIED = "permission_denied"
    SKIPPED = "skipped"


class SelfProtectionError(ValueError):
    """Raised when an action targets the agent itself or an allowlisted PID."""


@dataclass(frozen=True)
class ProcessIdentity:
    """Snapshot that distinguishes a PID from its later reincarnation."""

    comm: str
    start_ticks: int


@dataclass(frozen=True)
class ResponseAction:
    mode: ResponseMode
    target_pid: int
    reason: Verdict
    issued_at_ns: int
    comm: str = ""
    expected_identity: Optional[ProcessIdentity] = None


@dataclass(frozen=True)
class ActionResult:
    outcome: ActionOutcome
    latency_ns: int
    detail: str = ""


def read_process_identity(pid: int) -> Optional[ProcessIdentity]:
    """Parse /proc/<pid>/stat; None if the process is gone."""
    try:
        raw = Path(f"/proc/{pid}/stat").read_text()
    except (FileNotFoundError, ProcessLookupError):
        return None
    except OSError:
        return None
    # comm is parenthesized and may contain spaces; split around the last ')'.
    close = raw.rfind(")")
    open_ = raw.find("(")
    if close < 0 or open_ < 0:
        return None
    comm = raw[open_ + 1 : close]
    rest = raw[close + 2 :].split()
    # rest[0] is field 3 (state); starttime is field 22 overall -> rest[19].
    if len(rest) < 20:
        return None
    return ProcessIdentity(comm=comm, start_ticks=int(rest[19]))


def act(
    action: ResponseAction,
    allow_pids: frozenset = frozenset(),
    agent_pid: Optional[int] = None,
) -> ActionResult:
    """Execute one response action and report what actually happened."""
    if action.target_pid <= 0:
        raise ValueError("invariant violation: target_pid > 0 required")
    own = agent_pid if agent_pid is not None else os.getpid()
    if action.target_pid == own:
        raise SelfProtectionError(f"refusing to target own pid {own}")
    if action.target_pid in allow_pids:
        raise SelfProtectionError(f"refusing to target allowlisted pid {action.target_pid}")

    started = time.monotonic_ns()

    def done(outcome: ActionOutcome, detail: str = "") -> ActionResult:
        now = time.monotonic_ns()
        base = action.issued_at_ns if 0 < action.issued_at_ns <= now else started
        return ActionResult(outcome=outcome, latency_ns=now - base, detail=detail)

    if action.mode in (ResponseMode.DRY_RUN, ResponseMode.LOG_ONLY):
        return done(ActionOutcome.SKIPPED, f"{action.mode.value}: no signal sent")

    if action.expected_identity is not None:
        current = read_process_identity(action.target_pid)
        if current is None:
            return done(ActionOutcome.TARGET_ALREADY_GONE, "exited before action")
        if current != action.expected_identity:
            return done(ActionOutcome.TARGET_ALREADY_GONE, "pid identity changed, aborting")

    sig = signal.SIGKILL if action.mode is ResponseMode.KILL else signal.SIGSTOP
    try:
        os.kill(action.target_pid, sig)
    except ProcessLookupError:
        return done(ActionOutcome.TARGET_ALREADY_GONE, "no such process")
    except PermissionError:
        return done(ActionOutcome.PERMISSION_DENIED, "insufficient privilege")
    return done(ActionOutcome.APPLIED, f"sent {sig.name}")


class AuditLog:
    """Append-only JSONL record of every response action."""

    def __init__(self, path: Optional[Path]):
        self.path = Path(path) if path is not None else None
        if self.path is not None:
            self.path.parent.mkdir(parents=True, exist_ok=True)

    def record(self, action: ResponseAction, result: ActionResult) -> None:
        if self.path is None:
            return
        entry = {
            "ts_ns": time.time_ns(),
            "pid": action.target_pid,
            "comm": action.comm,
            "verdict": action.reason.kind.value,
            "mode": action.mode.value,
            "outcome": result.outcome.value,
            "latency_ns": result.latency_ns,
            "detail": result.detail,
        }
        with open(self.path, "a", encoding="utf-8") as fh:
            fh.write(json.dumps(entry, separators=(",", ":")) + "\n")
