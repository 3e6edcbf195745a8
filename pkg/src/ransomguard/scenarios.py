"""Synthetic attack and benign workload generator for replay testing.

Every scenario is a hermetic directory:

    <out>/events.trace   JSONL syscall trace
    <out>/fs/...         file contents the trace references (paths are
                         resolved under fs/ during replay)
    <out>/scenario.json  manifest: kind, seed, params, attacker pid,
                         note paths, recommended monitor threshold

All randomness flows from the seed, so identical parameters reproduce the
scenario byte for byte. No real malware is involved anywhere: "encrypted"
payloads are seeded random bytes and the attacker binary is a stub.
"""

from __future__ import annotations

import json
import random
from dataclasses import dataclass, field
from pathlib import Path
from typing import Dict, List, Optional, Tuple

from .events import (
    O_CREAT,
    O_RDONLY,
    O_TRUNC,
    O_WRONLY,
    SyscallEvent,
    exec_event,
    exit_event,
    open_event,
    write_trace,
)

KIND_NOTE_FIRST = "note-first"
KIND_NOTE_PER_DIRECTORY = "note-per-directory"
KIND_BENIGN_BUILD = "benign-build"
KIND_STEALTH_SLOW = "stealth-slow"
SCENARIO_KINDS = (
    KIND_NOTE_FIRST,
    KIND_NOTE_PER_DIRECTORY,
    KIND_BENIGN_BUILD,
    KIND_STEALTH_SLOW,
)

ATTACKER_PID = 4242
ATTACKER_UID = 1000
_BASE_TS = 1_700_000_000_000_000_000
_CREAT_WR = O_CREAT | O_WRONLY | O_TRUNC

_NOTE_OPENINGS = (
    "ATTENTION! All your files have been encrypted with a military grade algorithm.",
    "YOUR FILES ARE ENCRYPTED! Documents, photos, databases are no longer accessible.",
    "What happened to my computer? Your important files are encrypted.",
    "All of your files have been locked due to a security problem with your PC.",
)
_NOTE_BODIES = (
    "To decrypt your files you must buy our special decryption software. "
    "The price is {amount} bitcoin. Payment must be sent to the wallet below.",
    "Nobody can recover your files without our decryption service. "
    "Send {amount} BTC to the address below and email us your personal ID.",
    "You have 72 hours to submit the payment of {amount} bitcoin. "
    "After that the price will be doubled and your files destroyed.",
)
_NOTE_CLOSINGS = (
    "Do not try to rename or restore files yourself, this will cause permanent data loss.",
    "Do not remove this file. Any attempt to use third party recovery tools will destroy your data.",
    "Contact us: {email} . Your personal identifier is {victim_id}.",
)
_BTC_WALLETS = (
    "1BoatSLRHtKNngkdXEeobR76b53LETtpyT",
    "1Mz7153HMuxXTuR2R1t78mGSdzaAtNbBWX",
    "3J98t1WpEZ73CNmQviecrnyiWrnqRhWNLy",
)
_CONTACT_EMAILS = (
    "unlockhelp@securemail.example",
    "restore-files@protonmail.example",
    "decryptor2026@tutanota.example",
)

# Deliberately out-of-distribution note: obfuscated tokens that share no
# vocabulary with the training corpus and carry no address-shaped strings.
# This reproduces a known miss: a note the classifier has no features for.
_OOD_NOTE = """\
y0 h4v3 b33n pwn3d by ku1p3rz cr3w
a11 ur stuffz iz l0ck3d w1th qz9 c1ph3r
g3t da k3y fr0m uz 0r l0se everythin
dr0p m0n3r0z t0 da addr ul8er
n0 c0ps n0 trickz 0r byez byez d4t4
"""

_DOC_STEMS = (
    "report", "invoice", "budget", "thesis", "notes", "photo", "backup",
    "ledger", "contract", "summary", "minutes", "draft", "records", "slides",
)
_DOC_EXTS = (".docx", ".xlsx", ".pdf", ".jpg", ".txt", ".pptx", ".csv")
_SRC_NAMES = (
    "main", "util", "parser", "config", "events", "server", "client",
    "codec", "buffer", "table", "index", "worker",
)


@dataclass
class Scenario:
    """In-memory form of a generated scenario before it is written out."""

    kind: str
    seed: int
    params: Dict[str, int]
    events: List[SyscallEvent]
    files: Dict[str, bytes]          # trace path -> sidecar content
    note_paths: List[str]
    attacker_pid: Optional[int]
    recommended_threshold: int
    attacker_exe: Optional[str] = None
    manifest_extra: Dict[str, str] = field(default_factory=dict)


def render_note(rng: random.Random) -> str:
    amount = f"0.{rng.randrange(2, 9)}"
    parts = [
        rng.choice(_NOTE_OPENINGS),
        "",
        _NOTE_BODIES[rng.randrange(len(_NOTE_BODIES))].format(amount=amount),
        "",
        f"Bitcoin wallet: {rng.choice(_BTC_WALLETS)}",
        f"Backup contact: {rng.choice(_CONTACT_EMAILS)}",
        "",
        _NOTE_CLOSINGS[rng.randrange(len(_NOTE_CLOSINGS))].format(
            email=rng.choice(_CONTACT_EMAILS),
            victim_id=f"{rng.randrange(16**8):08x}",
        ),
    ]
    return "\n".join(parts) + "\n"


def ood_note() -> str:
    return _OOD_NOTE


def _victim_tree(rng: random.Random, dirs: int, files_per_dir: int) -> List[Tuple[str, List[str]]]:
    roots = ("/home/user/Documents", "/home/user/Pictures", "/home/user/Desktop",
             "/srv/share/finance", "/srv/share/archive", "/home/user/Projects")
    tree = []
    for d in range(dirs):
        base = roots[d % len(roots)] + (f"/set{d // len(roots)}" if d >= len(roots) else "")
        names = []
        for _ in range(files_per_dir):
            stem = rng.choice(_DOC_STEMS)
            names.append(f"{base}/{stem}_{rng.randrange(10000):04d}{rng.choice(_DOC_EXTS)}")
        tree.append((base, names))
    return tree


def _attacker_exe_bytes(rng: random.Random) -> bytes:
    # A stub "binary": ELF magic plus seeded filler, enough to hash.
    return b"\x7fELF" + bytes(rng.randrange(256) for _ in range(252))


def _enc_bytes(rng: random.Random) -> bytes:
    return bytes(rng.randrange(256) for _ in range(96))


class _Builder:
    def __init__(self) -> None:
        self.ts = _BASE_TS
        self.events: List[SyscallEvent] = []

    def tick(self, step_ns: int = 1_000_000) -> int:
        self.ts += step_ns
        return self.ts

    def exec(self, pid: int, comm: str, path: str, uid: int = ATTACKER_UID) -> None:
        self.events.append(exec_event(pid, uid, comm, self.tick(), path))

    def creat(self, pid: int, comm: str, path: str, uid: int = ATTACKER_UID) -> None:
        self.events.append(open_event(pid, uid, comm, self.tick(), path, _CREAT_WR))

    def read(self, pid: int, comm: str, path: str, uid: int = ATTACKER_UID) -> None:
        self.events.append(open_event(pid, uid, comm, self.tick(), path, O_RDONLY))

    def exit(self, pid: int, comm: str, uid: int = ATTACKER_UID) -> None:
        self.events.append(exit_event(pid, uid, comm, self.tick()))


def _note_first(rng: random.Random, files: int, note_style: str) -> Scenario:
    b = _Builder()
    exe = "/tmp/.cache/updater.bin"
    comm = "updater.bin"
    tree = _victim_tree(rng, dirs=1, files_per_dir=files)
    _, victims = tree[0]
    note_path = f"{tree[0][0]}/READ_ME_RESTORE.txt"
    contents: Dict[str, bytes] = {exe: _attacker_exe_bytes(rng)}

    b.exec(ATTACKER_PID, comm, exe)
    # The note lands before any victim file is touched.
    b.creat(ATTACKER_PID, comm, note_path)
    note_text = ood_note() if note_style == "ood" else render_note(rng)
    contents[note_path] = note_text.encode()
    for victim in victims:
        b.read(ATTACKER_PID, comm, victim)
        lock = victim + ".lck"
        b.creat(ATTACKER_PID, comm, lock)
        contents[lock] = _enc_bytes(rng)
        enc = victim + ".enc"
        b.creat(ATTACKER_PID, comm, enc)
        contents[enc] = _enc_bytes(rng)
    b.exit(ATTACKER_PID, comm)
    return Scenario(
        kind=KIND_NOTE_FIRST,
        seed=0,
        params={"files": files},
        events=b.events,
        files=contents,
        note_paths=[note_path],
        attacker_pid=ATTACKER_PID,
        recommended_threshold=1,
        attacker_exe=exe,
        manifest_extra={"note_style": note_style},
    )


def _note_per_directory(rng: random.Random, dirs: int, files_per_dir: int) -> Scenario:
    b = _Builder()
    exe = "/tmp/.hidden/payload"
    comm = "payload"
    tree = _victim_tree(rng, dirs, files_per_dir)
    contents: Dict[str, bytes] = {exe: _attacker_exe_bytes(rng)}
    note_paths: List[str] = []

    b.exec(ATTACKER_PID, comm, exe)
    for base, victims in tree:
        for victim in victims:
            b.read(ATTACKER_PID, comm, victim)
            enc = victim + ".enc"
            b.creat(ATTACKER_PID, comm, enc)
            contents[enc] = _enc_bytes(rng)
        note_path = f"{base}/HOW_TO_DECRYPT.txt"
        b.creat(ATTACKER_PID, comm, note_path)
        contents[note_path] = render_note(rng).encode()
        note_paths.append(note_path)
    b.exit(ATTACKER_PID, comm)
    return Scenario(
        kind=KIND_NOTE_PER_DIRECTORY,
        seed=0,
        params={"dirs": dirs, "files_per_dir": files_per_dir},
        events=b.events,
        files=contents,
        note_paths=note_paths,
        attacker_pid=ATTACKER_PID,
        recommended_threshold=10,
        attacker_exe=exe,
    )


def _benign_build(rng: random.Random, files: int) -> Scenario:
    b = _Builder()
    make_pid, cc_pid = 901, 902
    contents: Dict[str, bytes] = {
        "/usr/bin/make": b"#!ELFmake" + bytes(rng.randrange(256) for _ in range(64)),
        "/usr/bin/cc1": b"#!ELFcc1" + bytes(rng.randrange(256) for _ in range(64)),
    }
    b.exec(make_pid, "make", "/usr/bin/make", uid=1000)
    b.exec(cc_pid, "cc1", "/usr/bin/cc1", uid=1000)
    build_dir = "/home/user/Projects/app/build"
    log_path = f"{build_dir}/build.log"
    b.creat(make_pid, "make", log_path)
    contents[log_path] = b"gcc -O2 -c main.c\ngcc -O2 -c util.c\nlinking app\n"
    for i in range(files):
        src = rng.choice(_SRC_NAMES)
        b.read(cc_pid, "cc1", f"/home/user/Projects/app/src/{src}.c")
        obj = f"{build_dir}/{src}_{i:03d}.o"
        b.creat(cc_pid, "cc1", obj)
        contents[obj] = b"\x7fELF" + bytes(rng.randrange(256) for _ in range(48))
        dep = f"{build_dir}/{src}_{i:03d}.d"
        b.creat(cc_pid, "cc1", dep)
        contents[dep] = f"{src}_{i:03d}.o: src/{src}.c include/{src}.h\n".encode()
    b.exit(cc_pid, "cc1", uid=1000)
    b.exit(make_pid, "make", uid=1000)
    return Scenario(
        kind=KIND_BENIGN_BUILD,
        seed=0,
        params={"files": files},
        events=b.events,
        files=contents,
        note_paths=[],
        attacker_pid=None,
        recommended_threshold=10,
    )


def _stealth_slow(rng: random.Random, files: int) -> Scenario:
    b = _Builder()
    exe = "/var/tmp/.sysupd"
    comm = "sysupd"
    editor_pid = 1300
    tree = _victim_tree(rng, dirs=1, files_per_dir=files)
    base, victims = tree[0]
    contents: Dict[str, bytes] = {exe: _attacker_exe_bytes(rng)}

    b.exec(ATTACKER_PID, comm, exe)
    b.exec(editor_pid, "vim", "/usr/bin/vim", uid=1000)
    contents["/usr/bin/vim"] = b"\x7fELFvim" + bytes(rng.randrange(256) for _ in range(64))
    for i, victim in enumerate(victims):
        # Long idle gaps between small encryption bursts, with unrelated
        # user activity interleaved.
        b.tick(step_ns=3_600_000_000_000)  # one idle hour
        if i % 3 == 0:
            swap = f"{base}/.{i:02d}.swp"
            b.creat(editor_pid, "vim", swap, uid=1000)
            contents[swap] = b"vim swap data\n"
        b.read(ATTACKER_PID, comm, victim)
        lock = victim + ".lck"
        b.creat(ATTACKER_PID, comm, lock)
        contents[lock] = _enc_bytes(rng)
        enc = victim + ".enc"
        b.creat(ATTACKER_PID, comm, enc)
        contents[enc] = _enc_bytes(rng)
    note_path = f"{base}/RECOVER_YOUR_FILES.txt"
    b.creat(ATTACKER_PID, comm, note_path)
    contents[note_path] = render_note(rng).encode()
    b.exit(ATTACKER_PID, comm)
    return Scenario(
        kind=KIND_STEALTH_SLOW,
        seed=0,
        params={"files": files},
        events=b.events,
        files=contents,
        note_paths=[note_path],
        attacker_pid=ATTACKER_PID,
        recommended_threshold=10,
        attacker_exe=exe,
    )


def build_scenario(
    kind: str,
    seed: int = 1,
    files: int = 100,
    dirs: int = 5,
    files_per_dir: int = 20,
    note_style: str = "templated",
) -> Scenario:
    """Construct a scenario in memory; see gen_scenario for the on-disk form."""
    if note_style not in ("templated", "ood"):
        raise ValueError(f"unknown note_style {note_style!r}")
    rng = random.Random(seed)
    if kind == KIND_NOTE_FIRST:
        scenario = _note_first(rng, files, note_style)
    elif kind == KIND_NOTE_PER_DIRECTORY:
        scenario = _note_per_directory(rng, dirs, files_per_dir)
    elif kind == KIND_BENIGN_BUILD:
        scenario = _benign_build(rng, files)
    elif kind == KIND_STEALTH_SLOW:
        scenario = _stealth_slow(rng, files)
    else:
        raise ValueError(f"unknown scenario kind {kind!r}; expected one of {SCENARIO_KINDS}")
    scenario.seed = seed
    return scenario


def sidecar_path(root: Path, trace_path: str) -> Path:
    """Map an absolute trace path into the scenario's fs/ content root."""
    return Path(root) / trace_path.lstrip("/")


def gen_scenario(kind: str, out_dir, **kwargs) -> Path:
    """Write a scenario directory and return its path."""
    scenario = build_scenario(kind, **kwargs)
    out = Path(out_dir)
    out.mkdir(parents=True, exist_ok=True)
    fs_root = out / "fs"
    with open(out / "events.trace", "w", encoding="utf-8", newline="\n") as fh:
        write_trace(scenario.events, fh)
    for trace_path, content in scenario.files.items():
        target = sidecar_path(fs_root, trace_path)
        target.parent.mkdir(parents=True, exist_ok=True)
        target.write_bytes(content)
    manifest = {
        "kind": scenario.kind,
        "seed": scenario.seed,
        "params": scenario.params,
        "attacker_pid": scenario.attacker_pid,
        "attacker_exe": scenario.attacker_exe,
        "note_paths": scenario.note_paths,
        "recommended_threshold": scenario.recommended_threshold,
        "event_count": len(scenario.events),
    }
    manifest.update(scenario.manifest_extra)
    with open(out / "scenario.json", "w", encoding="utf-8", newline="\n") as fh:
        json.dump(manifest, fh, indent=2, sort_keys=True)
        fh.write("\n")
    return out
