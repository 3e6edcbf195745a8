"""Two-phase detection loop over a pluggable event source.

Phase 1 hashes every executed binary against the blocklist; Phase 2
counts creat-opens per PID and classifies candidate files once the
threshold gate opens. The two phases never gate each other: an empty
blocklist changes nothing about note detection and vice versa. Replays
never suppress events after a detection, so a replayed report describes
the whole trace under observe-only semantics (what a kill would have cut
short is visible in each detection's affected-files count).

RunReport splits into a deterministic core (same trace + config always
produces the same bytes) and a timing section with wall-clock figures;
only the core participates in report comparisons.
"""

from __future__ import annotations

import json
import time
from dataclasses import dataclass, field as dc_field
from pathlib import Path
from typing import Callable, Iterable, Iterator, List, Optional, Tuple

from .events import Exec, FileOpen, SyscallEvent, read_trace
from .hashset import HashBlocklist, check_exec, load_blocklist
from .model_store import load_bundle
from .monitor import FileCreationMonitor, MonitorConfig
from .pipeline import DEFAULT_MAX_SCAN_BYTES, ModelBundle, classify_file
from .response import (
    ActionOutcome,
    AuditLog,
    ResponseAction,
    ResponseMode,
    SelfProtectionError,
    act,
)
from .verdicts import Verdict, VerdictKind
from .wire import read_records

TRIGGER_EXEC_HASH = "exec-hash"
TRIGGER_RANSOM_NOTE = "ransom-note"

FLAG_SCANNED_NONE_POSITIVE = "candidates scanned > 0, none positive"


@dataclass(frozen=True)
class DaemonConfig:
    model_path: Optional[Path] = None
    blocklist_path: Optional[Path] = None
    monitor: MonitorConfig = dc_field(default_factory=MonitorConfig)
    response_mode: ResponseMode = ResponseMode.DRY_RUN
    max_scan_bytes: int = DEFAULT_MAX_SCAN_BYTES
    watch_prefixes: Tuple[str, ...] = ()
    allow_pids: frozenset = frozenset()
    audit_log_path: Optional[Path] = None

    def in_scope(self, path: str) -> bool:
        if not self.watch_prefixes:
            return True
        return any(path.startswith(prefix) for prefix in self.watch_prefixes)


@dataclass(frozen=True)
class Detection:
    verdict: Verdict
    pid: int
    comm: str
    trigger: str                  # TRIGGER_EXEC_HASH | TRIGGER_RANSOM_NOTE
    path: str
    event_timestamp_ns: int
    decision_timestamp_ns: int
    affected_files_before: int
    action_outcome: str

    def __post_init__(self):
        if self.decision_timestamp_ns < self.event_timestamp_ns:
            raise ValueError("invariant violation: decision precedes its event")

    def to_dict(self) -> dict:
        entry = {
            "verdict": self.verdict.kind.value,
            "pid": self.pid,
            "comm": self.comm,
            "trigger": self.trigger,
            "path": self.path,
            "event_timestamp_ns": self.event_timestamp_ns,
            "decision_timestamp_ns": self.decision_timestamp_ns,
            "affected_files_before": self.affected_files_before,
            "action_outcome": self.action_outcome,
        }
        if self.verdict.digest is not None:
            entry["digest"] = self.verdict.digest
        if self.verdict.log_margin is not None:
            entry["log_margin"] = round(self.verdict.log_margin, 9)
        return entry


@dataclass
class Timing:
    wall_seconds: float = 0.0
    events_per_second: float = 0.0
    hash_ns_total: int = 0
    scan_ns_total: int = 0
    action_latencies_ns: List[int] = dc_field(default_factory=list)


@dataclass
class RunReport:
    config: dict
    events_total: int = 0
    exec_events: int = 0
    open_events: int = 0
    exit_events: int = 0
    creat_opens: int = 0
    candidates_emitted: int = 0
    candidates_scanned: int = 0
    scan_indeterminate: int = 0
    scan_benign: int = 0
    detections: List[Detection] = dc_field(default_factory=list)
    action_outcomes: List[str] = dc_field(default_factory=list)
    flags: List[str] = dc_field(default_factory=list)
    source_drops: int = 0
    partial: bool = False
    partial_reason: str = ""
    timing: Timing = dc_field(default_factory=Timing)

    @property
    def detection_count(self) -> int:
        return len(self.detections)

    def finalize(self) -> None:
        if self.candidates_scanned > 0 and not any(
            d.trigger == TRIGGER_RANSOM_NOTE for d in self.detections
        ):
            if FLAG_SCANNED_NONE_POSITIVE not in self.flags:
                self.flags.append(FLAG_SCANNED_NONE_POSITIVE)

    def to_dict(self, include_timing: bool = True) -> dict:
        report = {
            "config": self.config,
            "events": {
                "total": self.events_total,
                "exec": self.exec_events,
                "open": self.open_events,
                "exit": self.exit_events,
                "creat_opens": self.creat_opens,
            },
            "candidates": {
                "emitted": self.candidates_emitted,
                "scanned": self.candidates_scanned,
                "indeterminate": self.scan_indeterminate,
                "benign": self.scan_benign,
            },
            "detections": [d.to_dict() for d in self.detections],
            "action_outcomes": list(self.action_outcomes),
            "flags": list(self.flags),
            "source_drops": self.source_drops,
            "partial": self.partial,
            "partial_reason": self.partial_reason,
        }
        if include_timing:
            report["timing"] = {
                "wall_seconds": self.timing.wall_seconds,
                "events_per_second": self.timing.events_per_second,
                "hash_ns_total": self.timing.hash_ns_total,
                "scan_ns_total": self.timing.scan_ns_total,
                "action_latencies_ns": list(self.timing.action_latencies_ns),
            }
        return report

    def canonical_json(self) -> str:
        """Deterministic serialization: timing excluded, keys sorted."""
        return json.dumps(self.to_dict(include_timing=False), sort_keys=True, separators=(",", ":")) + "\n"

    def render_text(self) -> str:
        lines = [
            f"events          {self.events_total} "
            f"(exec {self.exec_events}, open {self.open_events}, exit {self.exit_events}, "
            f"creat {self.creat_opens})",
            f"candidates      emitted {self.candidates_emitted}, scanned {self.candidates_scanned}, "
            f"indeterminate {self.scan_indeterminate}, benign {self.scan_benign}",
            f"detections      {self.detection_count}",
        ]
        for d in self.detections:
            lines.append(
                f"  [{d.trigger}] pid={d.pid} comm={d.comm} path={d.path} "
                f"affected_before={d.affected_files_before} action={d.action_outcome} :: {d.verdict.describe()}"
            )
        for flag in self.flags:
            lines.append(f"flag            {flag}")
        if self.partial:
            lines.append(f"partial report  {self.partial_reason}")
        lines.append(
            f"timing          {self.timing.wall_seconds:.3f}s wall, "
            f"{self.timing.events_per_second:.0f} events/s"
        )
        return "\n".join(lines) + "\n"


class ReplaySource:
    """Event source backed by a JSONL trace file."""

    def __init__(self, trace_path: Path):
        self.trace_path = Path(trace_path)

    def __iter__(self) -> Iterator[SyscallEvent]:
        with open(self.trace_path, "r", encoding="utf-8") as fh:
            yield from read_trace(fh)


class RecordStreamSource:
    """Event source decoding fixed-size kernel wire records from a stream."""

    def __init__(self, stream):
        self.stream = stream

    def __iter__(self) -> Iterator[SyscallEvent]:
        yield from read_records(self.stream)


class Daemon:
    """Loads artifacts once (fail-fast), then drives the two-phase loop."""

    def __init__(self, config: DaemonConfig, bundle: Optional[ModelBundle] = None):
        self.config = config
        if bundle is not None:
            self.bundle = bundle
        elif config.model_path is not None:
            self.bundle = load_bundle(config.model_path)
        else:
            raise ValueError("daemon needs a model: set model_path or pass a bundle")
        if config.blocklist_path is not None:
            self.blocklist = load_blocklist(config.blocklist_path)
        else:
            self.blocklist = HashBlocklist.empty()
        self.audit = AuditLog(config.audit_log_path)

    def _config_echo(self) -> dict:
        return {
            "threshold_t": self.config.monitor.threshold_t,
            "emit_every_candidate_after_threshold": self.config.monitor.emit_every_candidate_after_threshold,
            "response_mode": self.config.response_mode.value,
            "blocklist_entries": self.blocklist.entry_count,
            "model_tag": self.bundle.preprocessing_tag,
            "model_fingerprint": self.bundle.training_fingerprint,
            "max_scan_bytes": self.config.max_scan_bytes,
            "watch_prefixes": list(self.config.watch_prefixes),
        }

    def _respond(self, verdict: Verdict, event: SyscallEvent, report: RunReport) -> str:
        action = ResponseAction(
            mode=self.config.response_mode,
            target_pid=event.pid,
            reason=verdict,
            issued_at_ns=time.monotonic_ns(),
            comm=event.comm,
        )
        try:
            result = act(action, allow_pids=self.config.allow_pids)
        except SelfProtectionError as exc:
            outcome = f"refused: {exc}"
            report.action_outcomes.append(outcome)
            return outcome
        self.audit.record(action, result)
        report.action_outcomes.append(result.outcome.value)
        report.timing.action_latencies_ns.append(result.latency_ns)
        return result.outcome.value

    def run(
        self,
        source: Iterable[SyscallEvent],
        path_resolver: Optional[Callable[[str], Path]] = None,
        deterministic_clock: bool = False,
        on_detection: Optional[Callable[[Detection], None]] = None,
        tolerate_source_error: bool = False,
    ) -> RunReport:
        """Drain the source through both phases; returns the final report."""
        report = RunReport(config=self._config_echo())
        monitor = FileCreationMonitor(self.config.monitor)
        started = time.monotonic()

        def decision_ts(event: SyscallEvent) -> int:
            return event.timestamp_ns if deterministic_clock else max(time.time_ns(), event.timestamp_ns)

        def detect(
            verdict: Verdict, event: SyscallEvent, trigger: str, path: str, affected: int
        ) -> None:
            outcome = self._respond(verdict, event, report)
            detection = Detection(
                verdict=verdict,
                pid=event.pid,
                comm=event.comm,
                trigger=trigger,
                path=path,
                event_timestamp_ns=event.timestamp_ns,
                decision_timestamp_ns=decision_ts(event),
                affected_files_before=affected,
                action_outcome=outcome,
            )
            report.detections.append(detection)
            if on_detection is not None:
                on_detection(detection)

        iterator = iter(source)
        while True:
            try:
                event = next(iterator)
            except StopIteration:
                break
            except Exception as exc:
                if not tolerate_source_error:
                    raise
                report.partial = True
                report.partial_reason = f"event source failed: {exc}"
                break

            report.events_total += 1
            if isinstance(event.kind, Exec):
                report.exec_events += 1
                t0 = time.perf_counter_ns()
                verdict = check_exec(event, self.blocklist, path_resolver)
                report.timing.hash_ns_total += time.perf_counter_ns() - t0
                if verdict.kind is VerdictKind.KNOWN_MALWARE:
                    detect(
                        verdict, event, TRIGGER_EXEC_HASH, event.kind.exe_path,
                        affected=monitor.count_for(event.pid),
                    )
                continue

            if isinstance(event.kind, FileOpen):
                report.open_events += 1
                if event.kind.flags.creat:
                    report.creat_opens += 1
            else:
                report.exit_events += 1

            candidate = monitor.observe(event)
            if candidate is None or not self.config.in_scope(candidate.path):
                continue
            report.candidates_emitted += 1
            target = path_resolver(candidate.path) if path_resolver else Path(candidate.path)
            t0 = time.perf_counter_ns()
            verdict = classify_file(self.bundle, target, self.config.max_scan_bytes)
            report.timing.scan_ns_total += time.perf_counter_ns() - t0
            report.candidates_scanned += 1
            if verdict.kind is VerdictKind.RANSOM_NOTE:
                # The triggering creat-open itself is not an affected file.
                detect(
                    verdict, event, TRIGGER_RANSOM_NOTE, candidate.path,
                    affected=monitor.count_for(event.pid) - 1,
                )
            elif verdict.kind is VerdictKind.INDETERMINATE:
                report.scan_indeterminate += 1
            else:
                report.scan_benign += 1

        drops = getattr(source, "drops", None)
        if drops is not None:
            report.source_drops = int(drops() if callable(drops) else drops)
        wall = time.monotonic() - started
        report.timing.wall_seconds = wall
        report.timing.events_per_second = report.events_total / wall if wall > 0 else 0.0
        report.finalize()
        return report


def resolve_scenario_paths(trace_path) -> Tuple[Path, Path]:
    """Accept a scenario directory or its events.trace; return (trace, fs root)."""
    p = Path(trace_path)
    if p.is_dir():
        return p / "events.trace", p / "fs"
    return p, p.parent / "fs"


def replay(
    trace_path,
    config: DaemonConfig,
    bundle: Optional[ModelBundle] = None,
    on_detection: Optional[Callable[[Detection], None]] = None,
) -> RunReport:
    """Hermetic replay: event timestamps are the clock, fs/ is the disk."""
    trace_file, fs_root = resolve_scenario_paths(trace_path)
    daemon = Daemon(config, bundle=bundle)

    def resolver(path: str) -> Path:
        return fs_root / path.lstrip("/")

    return daemon.run(
        ReplaySource(trace_file),
        path_resolver=resolver,
        deterministic_clock=True,
        on_detection=on_detection,
    )
