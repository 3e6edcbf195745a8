"""TF-IDF vectorization and chi-squared feature selection.

Both stages are deliberately small, explicit implementations: the scoring
math is the detection surface of this project, so it must be auditable
line by line and reproducible bit for bit across machines. numpy is used
as the array substrate only.
"""

from __future__ import annotations

import math
from collections import Counter
from dataclasses import dataclass
from typing import Dict, List, Sequence, Tuple

import numpy as np


@dataclass(frozen=True)
class SparseVector:
    """Sorted (index, value) pairs over a fixed-dimension space."""

    indices: np.ndarray  # int64, strictly increasing
    values: np.ndarray   # float64, nonnegative
    dim: int

    @property
    def nnz(self) -> int:
        return int(self.indices.size)

    def norm(self) -> float:
        return float(np.sqrt(np.dot(self.values, self.values)))

    def to_dense(self) -> np.ndarray:
        dense = np.zeros(self.dim, dtype=np.float64)
        dense[self.indices] = self.values
        return dense

    @staticmethod
    def from_pairs(pairs: Sequence[Tuple[int, float]], dim: int) -> "SparseVector":
        ordered = sorted(pairs)
        indices = np.array([i for i, _ in ordered], dtype=np.int64)
        values = np.array([v for _, v in ordered], dtype=np.float64)
        return SparseVector(indices=indices, values=values, dim=dim)


def _l2_normalize(vec: SparseVector) -> SparseVector:
    norm = vec.norm()
    if norm == 0.0:
        return vec
    return SparseVector(indices=vec.indices, values=vec.values / norm, dim=vec.dim)


@dataclass(frozen=True)
class TfIdfModel:
    """Vocabulary plus smoothed idf weights learned from a training corpus."""

    vocabulary: Dict[str, int]   # token -> contiguous feature index
    tokens: Tuple[str, ...]      # index -> token
    doc_count: int
    doc_freq: np.ndarray         # int64 per feature
    idf: np.ndarray              # float64 per feature

    @property
    def vocab_size(self) -> int:
        return len(self.tokens)

    def transform(self, doc_tokens: Sequence[str]) -> SparseVector:
        """tf * idf over in-vocabulary tokens, L2-normalized; OOV ignored."""
        counts = Counter(doc_tokens)
        pairs: List[Tuple[int, float]] = []
        for token, tf in counts.items():
            idx = self.vocabulary.get(token)
            if idx is not None:
                pairs.append((idx, tf * float(self.idf[idx])))
        return _l2_normalize(SparseVector.from_pairs(pairs, self.vocab_size))


def idf_weight(doc_count: int, doc_freq: int) -> float:
    """Smoothed inverse document frequency: ln((1+N)/(1+df)) + 1."""
    return math.log((1.0 + doc_count) / (1.0 + doc_freq)) + 1.0


def fit_tfidf(corpus: Sequence[Sequence[str]]) -> TfIdfModel:
    """Build vocabulary and idf weights from tokenized training documents."""
    if not corpus:
        raise ValueError("cannot fit tf-idf on an empty corpus")
    df_counter: Counter = Counter()
    for doc_tokens in corpus:
        df_counter.update(set(doc_tokens))
    tokens = tuple(sorted(df_counter))
    vocabulary = {token: idx for idx, token in enumerate(tokens)}
    doc_count = len(corpus)
    doc_freq = np.array([df_counter[t] for t in tokens], dtype=np.int64)
    idf = np.log((1.0 + doc_count) / (1.0 + doc_freq.astype(np.float64))) + 1.0
    return TfIdfModel(
        vocabulary=vocabulary,
        tokens=tokens,
        doc_count=doc_count,
        doc_freq=doc_freq,
        idf=idf,
    )


@dataclass(frozen=True)
class Chi2Selector:
    """Top-k features by chi-squared dependence between feature mass and class."""

    k: int                    # requested k (may exceed selected size before capping)
    selected: np.ndarray      # int64, ascending original feature indices
    scores: np.ndarray        # float64 chi2 score for every original feature

    @property
    def selected_count(self) -> int:
        return int(self.selected.size)

    def transform(self, vec: SparseVector) -> SparseVector:
        """Project a vector onto the selected features (re-indexed 0..k-1)."""
        if self.selected.size == 0 or vec.indices.size == 0:
            empty = np.array([], dtype=np.int64)
            return SparseVector(indices=empty, values=np.array([], dtype=np.float64), dim=self.selected_count)
        positions = np.searchsorted(self.selected, vec.indices)
        positions = np.clip(positions, 0, self.selected.size - 1)
        keep = self.selected[positions] == vec.indices
        return SparseVector(
            indices=positions[keep].astype(np.int64),
            values=vec.values[keep],
            dim=self.selected_count,
        )


def chi2_scores(X: Sequence[SparseVector], y: Sequence[int], n_classes: int = 2) -> np.ndarray:
    """Chi-squared statistic per feature from per-class tf-idf mass.

    observed[c][f] sums feature f over documents of class c; expected is the
    class document share times the feature total. Terms with zero expected
    mass contribute zero, so features absent everywhere score 0.0.
    """
    if not X:
        raise ValueError("chi2 requires at least one sample")
    dim = X[0].dim
    y_arr = np.asarray(y, dtype=np.int64)
    observed = np.zeros((n_classes, dim), dtype=np.float64)
    class_docs = np.zeros(n_classes, dtype=np.float64)
    for vec, cls in zip(X, y_arr):
        observed[cls, vec.indices] += vec.values
        class_docs[cls] += 1.0
    if np.count_nonzero(class_docs) < 2:
        raise ValueError("chi2 undefined for one class")
    feature_total = observed.sum(axis=0)
    share = class_docs / class_docs.sum()
    expected = share[:, None] * feature_total[None, :]
    with np.errstate(divide="ignore", invalid="ignore"):
        terms = np.where(expected > 0.0, (observed - expected) ** 2 / expected, 0.0)
    return terms.sum(axis=0)


def chi2_select(X: Sequence[SparseVector], y: Sequence[int], k: int) -> Chi2Selector:
    """Select the k highest-scoring features; ties break to the lower index."""
    if k < 1:
        raise ValueError("k must be >= 1")
    if len(X) != len(y):
        raise ValueError("X and y length mismatch")
    if len(X) < 2:
        raise ValueError("chi2 selection needs at least 2 samples")
    scores = chi2_scores(X, y)
    dim = scores.size
    effective_k = min(k, dim)
    # lexsort: primary key last. Sort by score descending, then index ascending.
    order = np.lexsort((np.arange(dim), -scores))
    selected = np.sort(order[:effective_k]).astype(np.int64)
    return Chi2Selector(k=k, selected=selected, scores=scores)
