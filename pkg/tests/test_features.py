import math

import numpy as np
import pytest
from hypothesis import given, settings, strategies as st

from ransomguard.features import (
    SparseVector,
    Chi2Selector,
    chi2_scores,
    chi2_select,
    fit_tfidf,
    idf_weight,
)


def dense(vec: SparseVector):
    return vec.to_dense().tolist()


# --------------------------------------------------------------------------
# Independent oracle: the O/E chi-squared formula, straight-line Python on
# plain dicts and floats, no shared code with the implementation under test.

def oracle_chi2(rows, labels):
    """rows: list of dense lists; labels: list of 0/1."""
    n_features = len(rows[0])
    n_docs = len(rows)
    class_share = {c: labels.count(c) / n_docs for c in (0, 1)}
    scores = []
    for f in range(n_features):
        observed = {0: 0.0, 1: 0.0}
        for row, y in zip(rows, labels):
            observed[y] += row[f]
        total = observed[0] + observed[1]
        score = 0.0
        for c in (0, 1):
            expected = class_share[c] * total
            if expected > 0.0:
                score += (observed[c] - expected) ** 2 / expected
        scores.append(score)
    return scores


def oracle_select(scores, k):
    order = sorted(range(len(scores)), key=lambda i: (-scores[i], i))
    return sorted(order[: min(k, len(scores))])


def to_sparse(row, dim):
    return SparseVector.from_pairs([(i, v) for i, v in enumerate(row) if v], dim)


# --------------------------------------------------------------------------
# TF-IDF


def test_idf_token_in_all_docs_is_one():
    assert idf_weight(5, 5) == pytest.approx(1.0)
    assert idf_weight(1, 1) == pytest.approx(1.0)


def test_idf_rare_token():
    assert idf_weight(4, 1) == pytest.approx(math.log(5 / 2) + 1, abs=1e-12)
    assert idf_weight(4, 1) == pytest.approx(1.916290731874155, abs=1e-9)


def test_fit_tfidf_rejects_empty():
    with pytest.raises(ValueError):
        fit_tfidf([])


def test_fit_vocabulary_covers_training_tokens():
    model = fit_tfidf([["pay", "btc"], ["pay", "now"]])
    assert set(model.vocabulary) == {"pay", "btc", "now"}
    assert model.doc_count == 2
    assert model.doc_freq[model.vocabulary["pay"]] == 2


def test_transform_single_token_is_unit():
    model = fit_tfidf([["alpha", "beta"], ["alpha"]])
    vec = model.transform(["beta"])
    assert vec.norm() == pytest.approx(1.0, abs=1e-9)
    assert dense(vec)[model.vocabulary["beta"]] == pytest.approx(1.0)


def test_transform_two_equal_weights():
    # Both tokens in both docs: equal idf, equal tf -> both 1/sqrt(2).
    model = fit_tfidf([["alpha", "beta"], ["beta", "alpha"]])
    vec = model.transform(["alpha", "beta"])
    assert dense(vec) == pytest.approx([1 / math.sqrt(2)] * 2, abs=1e-9)


def test_transform_oov_is_zero_vector():
    model = fit_tfidf([["alpha"]])
    vec = model.transform(["zulu", "yankee"])
    assert vec.nnz == 0 and vec.norm() == 0.0


def test_transform_counts_term_frequency():
    model = fit_tfidf([["alpha", "beta"], ["beta"]])
    vec = model.transform(["alpha", "alpha", "beta"])
    d = dense(vec)
    ia, ib = model.vocabulary["alpha"], model.vocabulary["beta"]
    expected_a = 2 * idf_weight(2, 1)
    expected_b = 1 * idf_weight(2, 2)
    norm = math.hypot(expected_a, expected_b)
    assert d[ia] == pytest.approx(expected_a / norm, abs=1e-9)
    assert d[ib] == pytest.approx(expected_b / norm, abs=1e-9)


@given(
    st.lists(
        st.lists(st.sampled_from("abcdefg"), min_size=0, max_size=8),
        min_size=1,
        max_size=6,
    )
)
def test_transform_norm_invariant(corpus):
    model = fit_tfidf(corpus)
    for doc in corpus:
        vec = model.transform(doc)
        if vec.nnz:
            assert vec.norm() == pytest.approx(1.0, abs=1e-9)


# --------------------------------------------------------------------------
# chi-squared selection


def test_chi2_discriminative_beats_uniform():
    # 4 docs, balanced classes; feature 0 only in class 1, feature 1 uniform.
    rows = [
        [0.0, 0.5],
        [0.0, 0.5],
        [0.9, 0.5],
        [0.9, 0.5],
    ]
    labels = [0, 0, 1, 1]
    X = [to_sparse(r, 2) for r in rows]
    scores = chi2_scores(X, labels)
    assert scores[0] > scores[1]
    assert scores[1] == pytest.approx(0.0, abs=1e-12)
    assert scores.tolist() == pytest.approx(oracle_chi2(rows, labels), abs=1e-12)


def test_chi2_proportional_mass_scores_zero():
    # Equal per-doc mass: class totals land proportional to class sizes
    # (O == E), so the statistic vanishes.
    rows = [[3.0], [3.0], [3.0], [3.0]]
    labels = [0, 0, 0, 1]
    X = [to_sparse(r, 1) for r in rows]
    assert chi2_scores(X, labels)[0] == pytest.approx(0.0, abs=1e-12)


def test_chi2_absent_feature_scores_zero():
    rows = [[1.0, 0.0], [2.0, 0.0]]
    X = [to_sparse(r, 2) for r in rows]
    assert chi2_scores(X, [0, 1])[1] == 0.0


def test_chi2_single_class_error():
    X = [to_sparse([1.0], 1), to_sparse([2.0], 1)]
    with pytest.raises(ValueError, match="one class"):
        chi2_select(X, [1, 1], 1)


def test_chi2_k_cap_and_index_order():
    rows = [[1.0, 0.0, 2.0], [0.0, 3.0, 0.0]]
    X = [to_sparse(r, 3) for r in rows]
    selector = chi2_select(X, [0, 1], 99)
    assert selector.selected.tolist() == [0, 1, 2]


def test_chi2_ties_break_to_lower_index():
    # Two identical discriminative features -> identical scores; with k=1
    # the lower index wins.
    rows = [[1.0, 1.0], [0.0, 0.0]]
    X = [to_sparse(r, 2) for r in rows]
    selector = chi2_select(X, [1, 0], 1)
    assert selector.selected.tolist() == [0]
    assert selector.scores[0] == selector.scores[1]


def test_selector_transform_reindexes():
    selector = Chi2Selector(
        k=2, selected=np.array([1, 3], dtype=np.int64), scores=np.zeros(5)
    )
    vec = to_sparse([0.5, 0.6, 0.7, 0.8, 0.9], 5)
    out = selector.transform(vec)
    assert out.dim == 2
    assert out.indices.tolist() == [0, 1]
    assert out.values.tolist() == [0.6, 0.8]


def test_selector_transform_empty_vector():
    selector = Chi2Selector(k=1, selected=np.array([0], dtype=np.int64), scores=np.zeros(1))
    out = selector.transform(SparseVector.from_pairs([], 1))
    assert out.nnz == 0 and out.dim == 1


@settings(max_examples=300)
@given(st.data())
def test_chi2_oracle_equivalence_random(data):
    n_docs = data.draw(st.integers(2, 6))
    n_features = data.draw(st.integers(1, 10))
    labels = data.draw(
        st.lists(st.integers(0, 1), min_size=n_docs, max_size=n_docs).filter(
            lambda ls: len(set(ls)) == 2
        )
    )
    rows = [
        [data.draw(st.floats(0, 5, allow_nan=False, width=32)) for _ in range(n_features)]
        for _ in range(n_docs)
    ]
    k = data.draw(st.integers(1, n_features))
    X = [to_sparse(r, n_features) for r in rows]
    scores = chi2_scores(X, labels)
    expected = oracle_chi2(rows, labels)
    assert scores.tolist() == pytest.approx(expected, abs=1e-9)
    selector = chi2_select(X, labels, k)
    assert selector.selected.tolist() == oracle_select(expected, k)
