import string

import pytest

from ransomguard.bayes import CLASS_BENIGN, CLASS_RANSOM
from ransomguard.model_store import bundles_equal
from ransomguard.pipeline import (
    Document,
    _confusion_metrics,
    cross_validate,
    load_corpus,
    train_pipeline,
    training_fingerprint,
)

from conftest import CORPUS_DIR, make_separable_corpus


def _marker(i: int) -> str:
    letters = string.ascii_lowercase
    return "zz" + letters[i // 26] + letters[i % 26] + "q"


def _marked_corpus(per_class: int):
    """Every document carries a unique marker token, so vocabulary membership
    reveals exactly which documents the tf-idf stage saw."""
    docs = []
    for i in range(per_class):
        docs.append(
            Document(
                id=f"ransom/{i:03d}",
                text=f"pay the bitcoin wallet decrypt deadline {_marker(i)}",
                label=CLASS_RANSOM,
            )
        )
    for i in range(per_class):
        docs.append(
            Document(
                id=f"benign/{i:03d}",
                text=f"compile the build target install notes {_marker(per_class + i)}",
                label=CLASS_BENIGN,
            )
        )
    return docs


def test_split_sizes_seventy_thirty():
    corpus = _marked_corpus(100)
    bundle, metrics = train_pipeline(corpus, train_ratio=0.7, seed=42, k=50)
    # 70 train docs per class leave 30 per class held out.
    assert metrics.tp + metrics.fp + metrics.tn + metrics.fn == 60
    markers_in_vocab = sum(1 for t in bundle.tfidf.vocabulary if t.startswith("zz"))
    assert markers_in_vocab == 140


def test_heldout_documents_never_reach_fitting():
    corpus = _marked_corpus(20)
    bundle, _ = train_pipeline(corpus, train_ratio=0.7, seed=5, k=30)
    # int(20 * 0.7) = 14 train docs per class; any leak would add markers.
    markers = {t for t in bundle.tfidf.vocabulary if t.startswith("zz")}
    assert len(markers) == 28


def test_same_seed_reproduces_bundle_and_metrics(corpus):
    b1, m1 = train_pipeline(corpus, seed=42)
    b2, m2 = train_pipeline(corpus, seed=42)
    assert bundles_equal(b1, b2)
    assert m1 == m2


def test_shuffled_corpus_order_changes_nothing(corpus):
    b1, m1 = train_pipeline(corpus, seed=42)
    b2, m2 = train_pipeline(list(reversed(corpus)), seed=42)
    assert bundles_equal(b1, b2)
    assert m1 == m2


def test_metric_identities(trained):
    _, m = trained
    total = m.tp + m.fp + m.tn + m.fn
    assert m.accuracy == pytest.approx((m.tp + m.tn) / total)
    if m.precision_defined:
        assert m.precision == pytest.approx(m.tp / (m.tp + m.fp))
    if m.recall_defined:
        assert m.recall == pytest.approx(m.tp / (m.tp + m.fn))
    if m.precision + m.recall > 0:
        expected_f1 = 2 * m.precision * m.recall / (m.precision + m.recall)
        assert m.f1 == pytest.approx(expected_f1)


def test_confusion_zero_division_flags():
    m = _confusion_metrics(tp=0, fp=0, tn=5, fn=0, seed=0)
    assert m.precision == 0.0 and not m.precision_defined
    assert m.recall == 0.0 and not m.recall_defined
    assert m.f1 == 0.0
    assert m.accuracy == 1.0


def test_separable_corpus_is_perfect():
    corpus = make_separable_corpus(per_class=10)
    _, metrics = train_pipeline(corpus, train_ratio=0.7, seed=1, k=40)
    assert metrics.accuracy == 1.0
    assert metrics.f1 == 1.0


def test_cross_validate_separable_all_folds_perfect():
    corpus = make_separable_corpus(per_class=10)
    metrics = cross_validate(corpus, folds=5, seed=3, k=40)
    assert metrics.fold_scores == (1.0,) * 5
    assert metrics.cv_mean == 1.0


def test_cross_validate_tests_each_document_once(corpus):
    metrics = cross_validate(corpus, folds=4, seed=42, k=100)
    assert metrics.tp + metrics.fp + metrics.tn + metrics.fn == len(corpus)
    assert len(metrics.fold_scores) == 4
    assert metrics.cv_mean == pytest.approx(sum(metrics.fold_scores) / 4)


def test_cross_validate_rejects_oversized_folds():
    corpus = make_separable_corpus(per_class=4)
    with pytest.raises(ValueError, match="exceeds"):
        cross_validate(corpus, folds=5)


def test_small_class_rejected():
    docs = _marked_corpus(3)
    lone = [d for d in docs if d.label == CLASS_BENIGN][:1]
    ransoms = [d for d in docs if d.label == CLASS_RANSOM]
    with pytest.raises(ValueError, match="needs >= 2"):
        train_pipeline(ransoms + lone)


def test_unlabeled_document_rejected():
    docs = _marked_corpus(3)
    docs.append(Document(id="mystery", text="who knows", label=None))
    with pytest.raises(ValueError, match="no label"):
        train_pipeline(docs)


def test_train_ratio_bounds():
    docs = _marked_corpus(5)
    for bad in (0.0, 1.0, -0.2, 1.5):
        with pytest.raises(ValueError, match="train_ratio"):
            train_pipeline(docs, train_ratio=bad)


def test_fingerprint_tracks_inputs():
    docs = _marked_corpus(4)
    base = training_fingerprint(docs, seed=42, k=400, alpha=1.0, train_ratio=0.7)
    assert base == training_fingerprint(list(reversed(docs)), 42, 400, 1.0, 0.7)
    assert base != training_fingerprint(docs, 43, 400, 1.0, 0.7)
    assert base != training_fingerprint(docs, 42, 300, 1.0, 0.7)
    assert base != training_fingerprint(docs, 42, 400, 0.5, 0.7)
    assert base != training_fingerprint(docs, 42, 400, 1.0, 0.8)
    assert base != training_fingerprint(docs[:-1], 42, 400, 1.0, 0.7)


def test_load_corpus_layout_and_counts():
    docs = load_corpus(CORPUS_DIR)
    ransom = [d for d in docs if d.label == CLASS_RANSOM]
    benign = [d for d in docs if d.label == CLASS_BENIGN]
    assert len(ransom) == 177
    assert len(benign) == 227
    assert all(d.id.startswith("ransom/") for d in ransom)
    assert all(d.id.startswith("benign/") for d in benign)
    assert all(d.text.strip() for d in docs)


def test_load_corpus_missing_dir(tmp_path):
    with pytest.raises(FileNotFoundError, match="corpus directory missing"):
        load_corpus(tmp_path)
