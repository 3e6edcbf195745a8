import hashlib

import pytest

from ransomguard.events import exec_event, open_event
from ransomguard.hashset import (
    HashBlocklist,
    TargetDisappeared,
    check_exec,
    hash_file,
    load_blocklist,
)
from ransomguard.verdicts import VerdictKind

EMPTY_SHA256 = "e3b0c44298fc1c149afbf4c8996fb92427ae41e4649b934ca495991b7852b855"


def test_hash_empty_file(tmp_path):
    path = tmp_path / "empty"
    path.write_bytes(b"")
    assert hash_file(path) == EMPTY_SHA256


def test_hash_known_content(tmp_path):
    path = tmp_path / "blob"
    path.write_bytes(b"abc")
    assert hash_file(path) == hashlib.sha256(b"abc").hexdigest()


def test_hash_streams_large_file(tmp_path):
    data = b"\x5a" * (3 * (1 << 20) + 17)
    path = tmp_path / "big"
    path.write_bytes(data)
    assert hash_file(path) == hashlib.sha256(data).hexdigest()


def test_hash_missing_file_raises_disappeared(tmp_path):
    with pytest.raises(TargetDisappeared):
        hash_file(tmp_path / "gone")


def test_load_blocklist_skips_garbage(tmp_path):
    feed = tmp_path / "feed.txt"
    feed.write_text(
        "# known bad binaries\n"
        f"{EMPTY_SHA256}\n"
        "\n"
        "not-a-digest\n"
        f"{EMPTY_SHA256.upper()}\n"  # duplicate after case folding
        "deadbeef\n"  # too short
        f"{'0' * 63}g\n"  # bad char
        f"{'1' * 64}\n"
    )
    bl = load_blocklist(feed)
    assert bl.entry_count == 2
    assert bl.skipped_count == 3
    assert EMPTY_SHA256 in bl
    assert "1" * 64 in bl
    assert "2" * 64 not in bl


def test_blocklist_memory_is_32_bytes_per_entry(tmp_path):
    feed = tmp_path / "feed.txt"
    feed.write_text("".join(f"{i:064x}\n" for i in range(1000)))
    bl = load_blocklist(feed)
    assert bl.entry_count == 1000
    assert bl.memory_bytes == 32 * 1000


def test_empty_blocklist():
    bl = HashBlocklist.empty()
    assert bl.entry_count == 0
    assert EMPTY_SHA256 not in bl


def test_contains_rejects_wrong_width():
    bl = HashBlocklist.empty()
    with pytest.raises(ValueError, match="32 bytes"):
        "abcd" in bl


def test_check_exec_hit(tmp_path):
    binary = tmp_path / "mal.bin"
    binary.write_bytes(b"\x7fELF evil")
    digest = hash_file(binary)
    feed = tmp_path / "feed.txt"
    feed.write_text(digest + "\n")
    bl = load_blocklist(feed)

    verdict = check_exec(exec_event(9, 0, "mal.bin", 1, str(binary)), bl)
    assert verdict.kind is VerdictKind.KNOWN_MALWARE
    assert verdict.digest == digest


def test_check_exec_clean(tmp_path):
    binary = tmp_path / "ok.bin"
    binary.write_bytes(b"fine")
    verdict = check_exec(exec_event(9, 0, "ok.bin", 1, str(binary)), HashBlocklist.empty())
    assert verdict.kind is VerdictKind.BENIGN


def test_check_exec_vanished_target(tmp_path):
    verdict = check_exec(
        exec_event(9, 0, "x", 1, str(tmp_path / "vanished")), HashBlocklist.empty()
    )
    assert verdict.kind is VerdictKind.INDETERMINATE
    assert verdict.reason == "target disappeared"


def test_check_exec_unreadable_target(tmp_path):
    verdict = check_exec(exec_event(9, 0, "x", 1, str(tmp_path)), HashBlocklist.empty())
    assert verdict.kind is VerdictKind.INDETERMINATE
    assert verdict.reason.startswith("unreadable")


def test_check_exec_uses_path_resolver(tmp_path):
    sidecar = tmp_path / "fs" / "tmp" / "payload"
    sidecar.parent.mkdir(parents=True)
    sidecar.write_bytes(b"payload body")
    digest = hash_file(sidecar)
    feed = tmp_path / "feed.txt"
    feed.write_text(digest + "\n")
    bl = load_blocklist(feed)

    resolver = lambda p: tmp_path / "fs" / p.lstrip("/")
    verdict = check_exec(exec_event(9, 0, "payload", 1, "/tmp/payload"), bl, resolver)
    assert verdict.kind is VerdictKind.KNOWN_MALWARE


def test_check_exec_rejects_non_exec_event():
    ev = open_event(9, 0, "x", 1, "/tmp/f", 0)
    with pytest.raises(ValueError, match="exec event"):
        check_exec(ev, HashBlocklist.empty())
