"""Phase-2 trigger: per-PID file-creation counting with a threshold gate.

Counters are cumulative for the life of a process, not rate-windowed, so
slow-burn encryption that trickles files over hours still crosses the
threshold eventually. Crossing the threshold does not end the stream of
candidates: the ransom note may be the N-th file created, not the T-th.
"""

from __future__ import annotations

from dataclasses import dataclass
from typing import Dict, Optional

from .events import Exit, FileOpen, SyscallEvent

DEFAULT_THRESHOLD = 10


@dataclass
class MonitorConfig:
    threshold_t: int = DEFAULT_THRESHOLD
    emit_every_candidate_after_threshold: bool = True

    def __post_init__(self):
        if self.threshold_t < 1:
            raise ValueError(f"threshold_t must be >= 1, got {self.threshold_t}")


@dataclass
class ProcessState:
    pid: int
    file_creation_count: int = 0
    first_seen_ns: int = 0
    last_event_ns: int = 0


@dataclass(frozen=True)
class CandidateFile:
    """A created file whose owning process has crossed the creation threshold."""

    pid: int
    comm: str
    path: str
    creation_count_at_emit: int
    timestamp_ns: int


class FileCreationMonitor:
    """Counter table over creat-flagged opens; single-consumer, not thread-safe."""

    def __init__(self, config: Optional[MonitorConfig] = None):
        self.config = config or MonitorConfig()
        self._table: Dict[int, ProcessState] = {}

    def __len__(self) -> int:
        return len(self._table)

    def count_for(self, pid: int) -> int:
        state = self._table.get(pid)
        return state.file_creation_count if state else 0

    def observe(self, event: SyscallEvent) -> Optional[CandidateFile]:
        """Feed one event; returns a candidate when the threshold gate opens.

        Only creat-flagged opens move the counter. Exit events drop the
        PID's state so the table stays bounded by live processes.
        """
        if isinstance(event.kind, Exit):
            self.reset(event.pid)
            return None
        if not isinstance(event.kind, FileOpen) or not event.kind.flags.creat:
            return None

        state = self._table.get(event.pid)
        if state is None:
            state = ProcessState(pid=event.pid, first_seen_ns=event.timestamp_ns)
            self._table[event.pid] = state
        state.file_creation_count += 1
        state.last_event_ns = event.timestamp_ns

        count = state.file_creation_count
        threshold = self.config.threshold_t
        at_gate = count == threshold or (
            count > threshold and self.config.emit_every_candidate_after_threshold
        )
        if not at_gate:
            return None
        return CandidateFile(
            pid=event.pid,
            comm=event.comm,
            path=event.kind.path,
            creation_count_at_emit=count,
            timestamp_ns=event.timestamp_ns,
        )

    def reset(self, pid: int) -> None:
        """Drop a PID's state; unknown PIDs are a no-op."""
        self._table.pop(pid, None)
