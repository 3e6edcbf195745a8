"""Command-line front end.

Exit codes: 0 = completed with no detection, 1 = at least one detection
(or a blocklist hit / ransom classification), 2 = usage or config error.
Destructive response modes are gated twice: `--response kill|suspend`
must be accompanied by `--enforce`, otherwise startup is refused.
"""

from __future__ import annotations

import argparse
import json
import sys
from pathlib import Path

from .daemon import Daemon, DaemonConfig, RecordStreamSource, replay
from .hashset import hash_file, load_blocklist
from .model_store import load_bundle, save_bundle
from .monitor import MonitorConfig
from .pipeline import (
    DEFAULT_ALPHA,
    DEFAULT_K,
    DEFAULT_MAX_SCAN_BYTES,
    DEFAULT_SEED,
    DEFAULT_TRAIN_RATIO,
    classify_file,
    cross_validate,
    load_corpus,
    train_pipeline,
)
from .response import ResponseMode
from .scenarios import SCENARIO_KINDS, gen_scenario
from .verdicts import VerdictKind

EXIT_CLEAN = 0
EXIT_DETECTION = 1
EXIT_ERROR = 2


def _metrics_dict(metrics) -> dict:
    record = {
        "accuracy": metrics.accuracy,
        "precision": metrics.precision,
        "recall": metrics.recall,
        "f1": metrics.f1,
        "tp": metrics.tp,
        "fp": metrics.fp,
        "tn": metrics.tn,
        "fn": metrics.fn,
        "seed": metrics.seed,
        "precision_defined": metrics.precision_defined,
        "recall_defined": metrics.recall_defined,
    }
    if metrics.cv_mean is not None:
        record["cv_mean"] = metrics.cv_mean
        record["fold_scores"] = list(metrics.fold_scores)
    return record


def _cmd_train(args) -> int:
    corpus = load_corpus(Path(args.corpus_dir))
    bundle, metrics = train_pipeline(
        corpus, train_ratio=args.ratio, seed=args.seed, k=args.k, alpha=args.alpha
    )
    save_bundle(bundle, args.output)
    metrics_path = Path(str(args.output) + ".metrics.json")
    metrics_path.write_text(json.dumps(_metrics_dict(metrics), indent=2, sort_keys=True) + "\n")
    print(f"trained on {len(corpus)} documents -> {args.output}")
    print(f"vocabulary {bundle.tfidf.vocab_size}, selected {bundle.selector.selected_count} features")
    for line in metrics.summary_lines():
        print(line)
    print(f"metrics record: {metrics_path}")
    return EXIT_CLEAN


def _cmd_cv(args) -> int:
    corpus = load_corpus(Path(args.corpus_dir))
    metrics = cross_validate(corpus, folds=args.folds, seed=args.seed, k=args.k, alpha=args.alpha)
    for i, score in enumerate(metrics.fold_scores or ()):
        print(f"fold {i + 1:2d}  accuracy {score:.4f}")
    for line in metrics.summary_lines():
        print(line)
    if args.json:
        print(json.dumps(_metrics_dict(metrics), sort_keys=True))
    return EXIT_CLEAN


def _cmd_classify(args) -> int:
    bundle = load_bundle(args.model)
    exit_code = EXIT_CLEAN
    for path in args.files:
        verdict = classify_file(bundle, path, max_scan_bytes=args.max_scan_bytes)
        print(f"{path}: {verdict.describe()}")
        if verdict.kind is VerdictKind.RANSOM_NOTE:
            exit_code = EXIT_DETECTION
    return exit_code


def _response_mode(args) -> ResponseMode:
    mode = ResponseMode(args.response)
    if mode in (ResponseMode.KILL, ResponseMode.SUSPEND) and not args.enforce:
        raise SystemExit(
            f"error: --response {mode.value} modifies processes; pass --enforce to confirm"
        )
    return mode


def _daemon_config(args) -> DaemonConfig:
    defaults = {}
    if getattr(args, "config", None):
        defaults = json.loads(Path(args.config).read_text())
        unknown = set(defaults) - {
            "model", "blocklist", "threshold", "emit_every_candidate_after_threshold",
            "response", "max_scan_bytes", "watch_prefixes", "allow_pids", "audit_log",
        }
        if unknown:
            raise SystemExit(f"error: unknown config key {sorted(unknown)[0]!r}")

    def pick(flag_value, key, fallback):
        if flag_value is not None:
            return flag_value
        return defaults.get(key, fallback)

    model = pick(args.model, "model", None)
    if model is None:
        raise SystemExit("error: a model is required (-m/--model or config 'model')")
    args.response = pick(args.response, "response", "dry-run")
    return DaemonConfig(
        model_path=Path(model),
        blocklist_path=Path(p) if (p := pick(args.blocklist, "blocklist", None)) else None,
        monitor=MonitorConfig(
            threshold_t=int(pick(args.threshold, "threshold", 10)),
            emit_every_candidate_after_threshold=bool(
                defaults.get("emit_every_candidate_after_threshold", True)
            ),
        ),
        response_mode=_response_mode(args),
        max_scan_bytes=int(pick(args.max_scan_bytes_opt, "max_scan_bytes", DEFAULT_MAX_SCAN_BYTES)),
        watch_prefixes=tuple(args.watch or defaults.get("watch_prefixes", ())),
        allow_pids=frozenset(int(p) for p in (args.allow_pid or defaults.get("allow_pids", ()))),
        audit_log_path=Path(p) if (p := pick(args.audit_log, "audit_log", None)) else None,
    )


def _emit_report(report, args) -> None:
    print(report.render_text(), end="")
    if getattr(args, "report", None):
        Path(args.report).write_text(report.canonical_json())
        print(f"report written: {args.report}")


def _cmd_replay(args) -> int:
    config = _daemon_config(args)
    report = replay(
        args.trace,
        config,
        on_detection=lambda d: print(
            f"DETECTION [{d.trigger}] pid={d.pid} comm={d.comm} path={d.path} :: {d.verdict.describe()}"
        ),
    )
    _emit_report(report, args)
    return EXIT_DETECTION if report.detection_count else EXIT_CLEAN


def _cmd_run(args) -> int:
    config = _daemon_config(args)
    daemon = Daemon(config)
    if args.records:
        stream = sys.stdin.buffer if args.records == "-" else open(args.records, "rb")
        try:
            report = daemon.run(
                RecordStreamSource(stream),
                tolerate_source_error=True,
                on_detection=lambda d: print(
                    f"DETECTION [{d.trigger}] pid={d.pid} comm={d.comm} path={d.path} :: {d.verdict.describe()}"
                ),
            )
        finally:
            if stream is not sys.stdin.buffer:
                stream.close()
        _emit_report(report, args)
        return EXIT_DETECTION if report.detection_count else EXIT_CLEAN
    raise SystemExit(
        "error: live kernel tracing is provided by the separate probe loader; "
        "pipe its output here via --records - (or a record file)"
    )


def _cmd_gen_scenario(args) -> int:
    out = gen_scenario(
        args.kind,
        args.output,
        seed=args.seed,
        files=args.files,
        dirs=args.dirs,
        files_per_dir=args.files_per_dir,
        note_style=args.note_style,
    )
    manifest = json.loads((out / "scenario.json").read_text())
    print(f"scenario {args.kind} written to {out} ({manifest['event_count']} events)")
    return EXIT_CLEAN


def _cmd_hashset(args) -> int:
    blocklist = load_blocklist(args.blocklist)
    print(
        f"blocklist {args.blocklist}: {blocklist.entry_count} entries "
        f"({blocklist.skipped_count} skipped), {blocklist.memory_bytes / 1024:.0f} KiB resident"
    )
    exit_code = EXIT_CLEAN
    for path in args.files:
        digest = hash_file(path)
        hit = digest in blocklist
        print(f"{path}: sha256={digest} {'HIT' if hit else 'clean'}")
        if hit:
            exit_code = EXIT_DETECTION
    return exit_code


def _add_daemon_flags(p: argparse.ArgumentParser) -> None:
    p.add_argument("-m", "--model", help="trained .rgmodel bundle")
    p.add_argument("-b", "--blocklist", help="newline-delimited sha256 blocklist")
    p.add_argument("--config", help="JSON config file mirroring the daemon settings")
    p.add_argument("--threshold", type=int, default=None, help="creat-opens before scanning (default 10)")
    p.add_argument("--response", choices=[m.value for m in ResponseMode], default=None,
                   help="action on detection (default dry-run)")
    p.add_argument("--enforce", action="store_true", help="allow kill/suspend response modes")
    p.add_argument("--allow-pid", action="append", type=int, help="never target this pid (repeatable)")
    p.add_argument("--watch", action="append", help="restrict candidate scanning to this path prefix (repeatable)")
    p.add_argument("--max-scan-bytes", dest="max_scan_bytes_opt", type=int, default=None)
    p.add_argument("--audit-log", help="append action records to this JSONL file")
    p.add_argument("--report", help="write the canonical report JSON here")


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(
        prog="ransomguard",
        description="Two-phase ransomware detection: exec-hash blocklisting plus "
        "file-creation monitoring with ransom-note classification.",
    )
    sub = parser.add_subparsers(dest="command", required=True)

    p = sub.add_parser("train", help="train the note classifier from a corpus directory")
    p.add_argument("corpus_dir")
    p.add_argument("-o", "--output", required=True, help="output .rgmodel path")
    p.add_argument("--seed", type=int, default=DEFAULT_SEED)
    p.add_argument("--ratio", type=float, default=DEFAULT_TRAIN_RATIO)
    p.add_argument("-k", type=int, default=DEFAULT_K)
    p.add_argument("--alpha", type=float, default=DEFAULT_ALPHA)
    p.set_defaults(func=_cmd_train)

    p = sub.add_parser("cv", help="stratified cross-validation over a corpus")
    p.add_argument("corpus_dir")
    p.add_argument("--folds", type=int, default=10)
    p.add_argument("--seed", type=int, default=DEFAULT_SEED)
    p.add_argument("-k", type=int, default=DEFAULT_K)
    p.add_argument("--alpha", type=float, default=DEFAULT_ALPHA)
    p.add_argument("--json", action="store_true", help="also print a JSON metrics record")
    p.set_defaults(func=_cmd_cv)

    p = sub.add_parser("classify", help="classify files with a trained bundle")
    p.add_argument("files", nargs="+")
    p.add_argument("-m", "--model", required=True)
    p.add_argument("--max-scan-bytes", type=int, default=DEFAULT_MAX_SCAN_BYTES)
    p.set_defaults(func=_cmd_classify)

    p = sub.add_parser("replay", help="replay a recorded trace through the full pipeline")
    p.add_argument("trace", help="scenario directory or events.trace file")
    _add_daemon_flags(p)
    p.set_defaults(func=_cmd_replay)

    p = sub.add_parser("run", help="run against a live record stream")
    p.add_argument("--live", action="store_true", help="attach kernel probes (needs the probe loader)")
    p.add_argument("--records", help="binary kernel-record stream; '-' for stdin")
    _add_daemon_flags(p)
    p.set_defaults(func=_cmd_run)

    p = sub.add_parser("gen-scenario", help="generate a synthetic replay scenario")
    p.add_argument("kind", choices=SCENARIO_KINDS)
    p.add_argument("-o", "--output", required=True)
    p.add_argument("--seed", type=int, default=1)
    p.add_argument("--files", type=int, default=100)
    p.add_argument("--dirs", type=int, default=5)
    p.add_argument("--files-per-dir", type=int, default=20)
    p.add_argument("--note-style", choices=["templated", "ood"], default="templated")
    p.set_defaults(func=_cmd_gen_scenario)

    p = sub.add_parser("hashset", help="blocklist utilities")
    hs = p.add_subparsers(dest="hashset_command", required=True)
    c = hs.add_parser("check", help="hash files and look them up in a blocklist")
    c.add_argument("-b", "--blocklist", required=True)
    c.add_argument("files", nargs="+")
    c.set_defaults(func=_cmd_hashset)

    return parser


def main(argv=None) -> int:
    parser = build_parser()
    args = parser.parse_args(argv)
    try:
        return args.func(args)
    except SystemExit as exc:
        if isinstance(exc.code, str):
            print(exc.code, file=sys.stderr)
            return EXIT_ERROR
        raise
    except (OSError, ValueError, json.JSONDecodeError) as exc:
        print(f"error: {exc}", file=sys.stderr)
        return EXIT_ERROR


if __name__ == "__main__":
    sys.exit(main(argv=None))
