"""Persistence for trained bundles: the `.rgmodel` format.

A bundle file is a single JSON document with a fixed top-level key order,
arrays for every table, and floats serialized as shortest round-trip
decimals. Saving the same bundle twice yields byte-identical files (no
timestamps, no environment leakage), and a file written on one machine
loads with bit-identical predictions on another. Every structural
invariant is re-checked on load so a corrupted or hand-edited file fails
with a named field, not a downstream crash.
"""

from __future__ import annotations

import json
from pathlib import Path
from typing import List

import numpy as np

from .bayes import NbModel
from .features import Chi2Selector, TfIdfModel
from .pipeline import FORMAT_VERSION, ModelBundle

MODEL_SUFFIX = ".rgmodel"

_FIELD_ORDER = (
    "format_version",
    "preprocessing_tag",
    "vocabulary",
    "idf",
    "doc_count",
    "selected_features",
    "chi2_scores",
    "class_labels",
    "class_log_prior",
    "feature_log_prob",
    "alpha",
    "training_fingerprint",
)


class ModelFormatError(ValueError):
    """Raised for malformed, unsupported, or invariant-violating bundle files."""


def _validate(bundle: ModelBundle) -> None:
    vocab_size = bundle.tfidf.vocab_size
    selected = bundle.selector.selected
    if selected.size and int(selected.max()) >= vocab_size:
        raise ModelFormatError(
            f"invariant violation in selected_features: index {int(selected.max())} >= vocabulary size {vocab_size}"
        )
    if np.any(np.diff(selected) <= 0):
        raise ModelFormatError("invariant violation in selected_features: not strictly increasing")
    if bundle.nb.feature_count != selected.size:
        raise ModelFormatError(
            f"invariant violation in feature_log_prob: {bundle.nb.feature_count} features, selector has {selected.size}"
        )
    if bundle.selector.scores.size != vocab_size:
        raise ModelFormatError("invariant violation in chi2_scores: length != vocabulary size")
    if bundle.tfidf.idf.size != vocab_size or bundle.tfidf.doc_freq.size != vocab_size:
        raise ModelFormatError("invariant violation in idf: length != vocabulary size")
    if abs(float(np.exp(bundle.nb.class_log_prior).sum()) - 1.0) > 1e-9:
        raise ModelFormatError("invariant violation in class_log_prior: priors do not sum to 1")
    likelihood_sums = np.exp(bundle.nb.feature_log_prob).sum(axis=1)
    if np.any(np.abs(likelihood_sums - 1.0) > 1e-9):
        raise ModelFormatError("invariant violation in feature_log_prob: likelihoods do not sum to 1")
    n = bundle.tfidf.doc_count
    df = bundle.tfidf.doc_freq.astype(np.float64)
    if np.any(df < 1) or np.any(df > n):
        raise ModelFormatError("invariant violation in idf: implied document frequency out of range")
    expected_idf = np.log((1.0 + n) / (1.0 + df)) + 1.0
    if np.any(np.abs(expected_idf - bundle.tfidf.idf) > 1e-9):
        raise ModelFormatError("invariant violation in idf: weights inconsistent with doc_count")
    if bundle.nb.alpha <= 0.0:
        raise ModelFormatError("invariant violation in alpha: must be > 0")


def save_bundle(bundle: ModelBundle, path) -> None:
    """Write a bundle; refuses bundles whose invariants do not hold."""
    _validate(bundle)
    payload = {
        "format_version": bundle.format_version,
        "preprocessing_tag": bundle.preprocessing_tag,
        "vocabulary": list(bundle.tfidf.tokens),
        "idf": [float(v) for v in bundle.tfidf.idf],
        "doc_count": bundle.tfidf.doc_count,
        "selected_features": [int(i) for i in bundle.selector.selected],
        "chi2_scores": [float(s) for s in bundle.selector.scores],
        "class_labels": list(bundle.class_labels),
        "class_log_prior": [float(v) for v in bundle.nb.class_log_prior],
        "feature_log_prob": [[float(v) for v in row] for row in bundle.nb.feature_log_prob],
        "alpha": float(bundle.nb.alpha),
        "training_fingerprint": bundle.training_fingerprint,
    }
    text = json.dumps(payload, ensure_ascii=True, separators=(",", ":")) + "\n"
    Path(path).write_bytes(text.encode("ascii"))


def _require(payload: dict, key: str, kind) -> object:
    if key not in payload:
        raise ModelFormatError(f"missing field {key}")
    value = payload[key]
    if not isinstance(value, kind):
        raise ModelFormatError(f"field {key} has wrong type {type(value).__name__}")
    return value


def load_bundle(path) -> ModelBundle:
    """Parse and validate a bundle file; errors name the offending field."""
    raw = Path(path).read_bytes()
    try:
        payload = json.loads(raw)
    except json.JSONDecodeError as exc:
        raise ModelFormatError(f"not a valid bundle file: {exc}") from None
    if not isinstance(payload, dict):
        raise ModelFormatError("not a valid bundle file: top level is not an object")
    version = _require(payload, "format_version", int)
    if version != FORMAT_VERSION:
        raise ModelFormatError(f"unsupported version {version}")
    unknown = set(payload) - set(_FIELD_ORDER)
    if unknown:
        raise ModelFormatError(f"unknown field {sorted(unknown)[0]}")

    tag = _require(payload, "preprocessing_tag", str)
    vocabulary: List[str] = _require(payload, "vocabulary", list)
    idf = np.array(_require(payload, "idf", list), dtype=np.float64)
    doc_count = _require(payload, "doc_count", int)
    selected = np.array(_require(payload, "selected_features", list), dtype=np.int64)
    scores = np.array(_require(payload, "chi2_scores", list), dtype=np.float64)
    class_labels = _require(payload, "class_labels", list)
    class_log_prior = np.array(_require(payload, "class_log_prior", list), dtype=np.float64)
    feature_log_prob = np.array(_require(payload, "feature_log_prob", list), dtype=np.float64)
    alpha = float(_require(payload, "alpha", (int, float)))
    fingerprint = _require(payload, "training_fingerprint", str)

    if len(class_labels) != 2 or class_log_prior.shape != (2,):
        raise ModelFormatError("invariant violation in class_labels: exactly two classes required")
    if feature_log_prob.ndim != 2 or feature_log_prob.shape[0] != 2:
        raise ModelFormatError("invariant violation in feature_log_prob: expected 2 rows")
    if doc_count < 1:
        raise ModelFormatError("invariant violation in doc_count: must be >= 1")

    # doc_freq is fully determined by (idf, doc_count); recover the integers.
    doc_freq = np.rint((1.0 + doc_count) / np.exp(idf - 1.0) - 1.0).astype(np.int64)

    tfidf = TfIdfModel(
        vocabulary={token: i for i, token in enumerate(vocabulary)},
        tokens=tuple(vocabulary),
        doc_count=doc_count,
        doc_freq=doc_freq,
        idf=idf,
    )
    if len(tfidf.vocabulary) != len(vocabulary):
        raise ModelFormatError("invariant violation in vocabulary: duplicate tokens")
    selector = Chi2Selector(k=int(selected.size), selected=selected, scores=scores)
    nb = NbModel(class_log_prior=class_log_prior, feature_log_prob=feature_log_prob, alpha=alpha)
    bundle = ModelBundle(
        tfidf=tfidf,
        selector=selector,
        nb=nb,
        preprocessing_tag=tag,
        format_version=version,
        class_labels=(class_labels[0], class_labels[1]),
        training_fingerprint=fingerprint,
    )
    _validate(bundle)
    return bundle


def bundles_equal(a: ModelBundle, b: ModelBundle) -> bool:
    """Field-by-field equality with bit-equal float arrays."""
    return (
        a.format_version == b.format_version
        and a.preprocessing_tag == b.preprocessing_tag
        and a.class_labels == b.class_labels
        and a.training_fingerprint == b.training_fingerprint
        and a.tfidf.tokens == b.tfidf.tokens
        and a.tfidf.doc_count == b.tfidf.doc_count
        and np.array_equal(a.tfidf.doc_freq, b.tfidf.doc_freq)
        and np.array_equal(a.tfidf.idf, b.tfidf.idf)
        and np.array_equal(a.selector.selected, b.selector.selected)
        and np.array_equal(a.selector.scores, b.selector.scores)
        and np.array_equal(a.nb.class_log_prior, b.nb.class_log_prior)
        and np.array_equal(a.nb.feature_log_prob, b.nb.feature_log_prob)
        and a.nb.alpha == b.nb.alpha
    )
