import json
import subprocess
import sys

import pytest

from ransomguard.cli import EXIT_CLEAN, EXIT_DETECTION, EXIT_ERROR, main
from ransomguard.model_store import bundles_equal, load_bundle, save_bundle

from conftest import CORPUS_DIR, make_separable_corpus

RANSOM_TEXT = (
    "Your files have been encrypted. Pay 0.4 bitcoin to the address below "
    "within 72 hours or the decryption key will be destroyed. Contact "
    "support@recovery.example for payment instructions and a free test file.\n"
)


@pytest.fixture(scope="module")
def model_path(bundle, tmp_path_factory):
    path = tmp_path_factory.mktemp("cli") / "model.rgmodel"
    save_bundle(bundle, path)
    return path


@pytest.fixture(scope="module")
def scenario_dir(tmp_path_factory):
    out = tmp_path_factory.mktemp("cli-sc") / "nf"
    code = main(["gen-scenario", "note-first", "-o", str(out), "--seed", "3", "--files", "25"])
    assert code == EXIT_CLEAN
    return out


def test_train_writes_bundle_and_metrics(tmp_path, capsys):
    out = tmp_path / "trained.rgmodel"
    code = main(["train", str(CORPUS_DIR), "-o", str(out), "--seed", "42"])
    assert code == EXIT_CLEAN
    stdout = capsys.readouterr().out
    assert "trained on 404 documents" in stdout
    metrics = json.loads((tmp_path / "trained.rgmodel.metrics.json").read_text())
    assert metrics["accuracy"] >= 0.95
    assert metrics["seed"] == 42

    from ransomguard.pipeline import load_corpus, train_pipeline

    direct, _ = train_pipeline(load_corpus(CORPUS_DIR), seed=42)
    assert bundles_equal(load_bundle(out), direct)


def test_train_missing_corpus_is_config_error(tmp_path, capsys):
    code = main(["train", str(tmp_path / "nope"), "-o", str(tmp_path / "m.rgmodel")])
    assert code == EXIT_ERROR
    assert "error:" in capsys.readouterr().err


def test_cv_on_separable_corpus(tmp_path, capsys):
    root = tmp_path / "corpus"
    (root / "ransom").mkdir(parents=True)
    (root / "benign").mkdir()
    for doc in make_separable_corpus(per_class=6):
        sub = "ransom" if doc.id.startswith("r") else "benign"
        (root / sub / f"{doc.id}.txt").write_text(doc.text)

    code = main(["cv", str(root), "--folds", "3", "--json"])
    assert code == EXIT_CLEAN
    stdout = capsys.readouterr().out
    assert "fold  1" in stdout
    record = json.loads(stdout.strip().splitlines()[-1])
    assert record["cv_mean"] == 1.0


def test_classify_exit_codes(model_path, tmp_path, capsys):
    note = tmp_path / "note.txt"
    note.write_text(RANSOM_TEXT)
    plain = tmp_path / "plain.txt"
    plain.write_text("The quarterly report covers staffing, budget and facilities planning.\n")

    assert main(["classify", str(plain), "-m", str(model_path)]) == EXIT_CLEAN
    capsys.readouterr()
    assert main(["classify", str(note), str(plain), "-m", str(model_path)]) == EXIT_DETECTION
    out = capsys.readouterr().out
    assert "ransom-note" in out
    assert "benign" in out


def test_replay_detects_and_writes_report(model_path, scenario_dir, tmp_path, capsys):
    report_path = tmp_path / "report.json"
    code = main([
        "replay", str(scenario_dir),
        "-m", str(model_path),
        "--threshold", "1",
        "--report", str(report_path),
    ])
    assert code == EXIT_DETECTION
    out = capsys.readouterr().out
    assert "DETECTION [ransom-note]" in out
    assert "detections      1" in out
    payload = json.loads(report_path.read_text())
    assert len(payload["detections"]) == 1
    assert payload["detections"][0]["affected_files_before"] == 0


def test_replay_clean_trace_exits_zero(model_path, tmp_path, capsys):
    out = tmp_path / "bb"
    assert main(["gen-scenario", "benign-build", "-o", str(out), "--seed", "3"]) == EXIT_CLEAN
    code = main(["replay", str(out), "-m", str(model_path), "--threshold", "10"])
    assert code == EXIT_CLEAN
    assert "none positive" in capsys.readouterr().out


def test_replay_reads_config_file(model_path, scenario_dir, tmp_path):
    config = tmp_path / "daemon.json"
    config.write_text(json.dumps({"model": str(model_path), "threshold": 1}))
    assert main(["replay", str(scenario_dir), "--config", str(config)]) == EXIT_DETECTION


def test_flags_override_config(model_path, scenario_dir, tmp_path):
    # Config says threshold 1; the flag pushes it past the trace's creations.
    config = tmp_path / "daemon.json"
    config.write_text(json.dumps({"model": str(model_path), "threshold": 1}))
    code = main([
        "replay", str(scenario_dir), "--config", str(config), "--threshold", "500",
    ])
    assert code == EXIT_CLEAN


def test_unknown_config_key_rejected(model_path, scenario_dir, tmp_path, capsys):
    config = tmp_path / "daemon.json"
    config.write_text(json.dumps({"model": str(model_path), "thresold": 1}))
    code = main(["replay", str(scenario_dir), "--config", str(config)])
    assert code == EXIT_ERROR
    assert "unknown config key 'thresold'" in capsys.readouterr().err


def test_missing_model_is_config_error(scenario_dir, capsys):
    code = main(["replay", str(scenario_dir)])
    assert code == EXIT_ERROR
    assert "model is required" in capsys.readouterr().err


@pytest.mark.parametrize("mode", ["kill", "suspend"])
def test_destructive_modes_need_enforce(model_path, scenario_dir, mode, capsys):
    code = main([
        "replay", str(scenario_dir), "-m", str(model_path), "--response", mode,
    ])
    assert code == EXIT_ERROR
    assert "--enforce" in capsys.readouterr().err


def test_config_kill_also_needs_enforce(model_path, scenario_dir, tmp_path, capsys):
    config = tmp_path / "daemon.json"
    config.write_text(json.dumps({"model": str(model_path), "response": "kill"}))
    code = main(["replay", str(scenario_dir), "--config", str(config)])
    assert code == EXIT_ERROR
    assert "--enforce" in capsys.readouterr().err


def test_watch_prefix_scopes_replay(model_path, scenario_dir):
    code = main([
        "replay", str(scenario_dir), "-m", str(model_path),
        "--threshold", "1", "--watch", "/var/lib",
    ])
    assert code == EXIT_CLEAN


def test_run_records_stream(model_path, scenario_dir, tmp_path, capsys):
    from ransomguard.daemon import RecordStreamSource  # noqa: F401 (documented path)
    from ransomguard.events import read_trace
    from ransomguard.wire import write_records

    # Wire records carry event paths as recorded; point the scan at the
    # sidecar tree by rewriting paths into it, as the probe loader would
    # when asked to stage content.
    with open(scenario_dir / "events.trace") as fh:
        events = list(read_trace(fh))
    records = tmp_path / "events.bin"
    with open(records, "wb") as fh:
        write_records(fh, events)

    code = main([
        "run", "--records", str(records),
        "-m", str(model_path), "--threshold", "1",
        "--watch", "/nonexistent-prefix",
    ])
    assert code == EXIT_CLEAN  # scoped away: no candidate scanned
    capsys.readouterr()


def test_run_without_stream_points_at_probe_loader(model_path, capsys):
    code = main(["run", "-m", str(model_path)])
    assert code == EXIT_ERROR
    assert "probe loader" in capsys.readouterr().err
    code = main(["run", "--live", "-m", str(model_path)])
    assert code == EXIT_ERROR


def test_gen_scenario_all_kinds(tmp_path):
    for kind in ("note-first", "note-per-directory", "benign-build", "stealth-slow"):
        out = tmp_path / kind
        assert main(["gen-scenario", kind, "-o", str(out)]) == EXIT_CLEAN
        assert (out / "events.trace").is_file()
        assert (out / "scenario.json").is_file()


def test_hashset_check(tmp_path, capsys):
    target = tmp_path / "sample.bin"
    target.write_bytes(b"sample body")
    from ransomguard.hashset import hash_file

    blocklist = tmp_path / "bl.txt"
    blocklist.write_text(hash_file(target) + "\n")

    assert main(["hashset", "check", "-b", str(blocklist), str(target)]) == EXIT_DETECTION
    assert "HIT" in capsys.readouterr().out

    clean = tmp_path / "clean.bin"
    clean.write_bytes(b"other body")
    assert main(["hashset", "check", "-b", str(blocklist), str(clean)]) == EXIT_CLEAN
    assert "clean" in capsys.readouterr().out


def test_no_arguments_is_usage_error():
    with pytest.raises(SystemExit) as exc:
        main([])
    assert exc.value.code == EXIT_ERROR


def test_unknown_subcommand_is_usage_error():
    with pytest.raises(SystemExit) as exc:
        main(["defragment"])
    assert exc.value.code == EXIT_ERROR


def test_console_script_and_module_entry():
    for argv in (["ransomguard", "--help"], [sys.executable, "-m", "ransomguard", "--help"]):
        proc = subprocess.run(argv, capture_output=True, text=True)
        assert proc.returncode == 0
        assert "replay" in proc.stdout
