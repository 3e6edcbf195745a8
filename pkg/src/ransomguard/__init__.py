"""Two-phase ransomware detection agent.

Phase 1 blocklists known binaries by SHA-256 at exec time; Phase 2 counts
per-process file creations and, past a threshold, classifies newly created
files as ransom notes with a TF-IDF / chi-squared / Multinomial Naive
Bayes pipeline, then responds (dry-run by default).
"""

from .bayes import CLASS_BENIGN, CLASS_LABELS, CLASS_RANSOM, NbModel, fit_mnb, predict
from .daemon import Daemon, DaemonConfig, Detection, ReplaySource, RunReport, replay
from .events import O_CREAT, SyscallEvent, exec_event, exit_event, open_event, read_trace, write_trace
from .features import Chi2Selector, SparseVector, TfIdfModel, chi2_select, fit_tfidf
from .hashset import HashBlocklist, check_exec, hash_file, load_blocklist
from .model_store import ModelFormatError, load_bundle, save_bundle
from .monitor import CandidateFile, FileCreationMonitor, MonitorConfig
from .pipeline import (
    Document,
    Metrics,
    ModelBundle,
    classify_file,
    classify_text,
    cross_validate,
    load_corpus,
    train_pipeline,
)
from .response import ActionOutcome, ActionResult, ResponseAction, ResponseMode, act
from .scenarios import SCENARIO_KINDS, build_scenario, gen_scenario
from .textprep import PREPROCESS_TAG, preprocess, stem
from .verdicts import Verdict, VerdictKind

__version__ = "1.0.0"

__all__ = [
    "CLASS_BENIGN", "CLASS_LABELS", "CLASS_RANSOM", "NbModel", "fit_mnb", "predict",
    "Daemon", "DaemonConfig", "Detection", "ReplaySource", "RunReport", "replay",
    "O_CREAT", "SyscallEvent", "exec_event", "exit_event", "open_event", "read_trace", "write_trace",
    "Chi2Selector", "SparseVector", "TfIdfModel", "chi2_select", "fit_tfidf",
    "HashBlocklist", "check_exec", "hash_file", "load_blocklist",
    "ModelFormatError", "load_bundle", "save_bundle",
    "CandidateFile", "FileCreationMonitor", "MonitorConfig",
    "Document", "Metrics", "ModelBundle", "classify_file", "classify_text",
    "cross_validate", "load_corpus", "train_pipeline",
    "ActionOutcome", "ActionResult", "ResponseAction", "ResponseMode", "act",
    "SCENARIO_KINDS", "build_scenario", "gen_scenario",
    "PREPROCESS_TAG", "preprocess", "stem",
    "Verdict", "VerdictKind",
    "__version__",
]
