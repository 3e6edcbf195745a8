"""Multinomial Naive Bayes over selected tf-idf features.

Class 0 is benign, class 1 is ransom throughout (see CLASS_LABELS).
Fractional feature values are accepted: the multinomial likelihood is
evaluated on tf-idf mass, not integer counts.
"""

from __future__ import annotations

from dataclasses import dataclass
from typing import Sequence, Tuple

import numpy as np

from .features import SparseVector

CLASS_BENIGN = 0
CLASS_RANSOM = 1
CLASS_LABELS: Tuple[str, str] = ("benign", "ransom")


@dataclass(frozen=True)
class NbModel:
    class_log_prior: np.ndarray   # float64, shape (2,)
    feature_log_prob: np.ndarray  # float64, shape (2, F)
    alpha: float

    @property
    def feature_count(self) -> int:
        return int(self.feature_log_prob.shape[1])


def fit_mnb(X: Sequence[SparseVector], y: Sequence[int], alpha: float = 1.0) -> NbModel:
    """Laplace-smoothed multinomial fit on per-class feature mass."""
    if alpha <= 0.0:
        raise ValueError("alpha must be > 0")
    if len(X) != len(y):
        raise ValueError("X and y length mismatch")
    if not X:
        raise ValueError("cannot fit on an empty sample set")
    y_arr = np.asarray(y, dtype=np.int64)
    n_classes = len(CLASS_LABELS)
    dim = X[0].dim
    class_docs = np.zeros(n_classes, dtype=np.float64)
    mass = np.zeros((n_classes, dim), dtype=np.float64)
    for vec, cls in zip(X, y_arr):
        mass[cls, vec.indices] += vec.values
        class_docs[cls] += 1.0
    if np.count_nonzero(class_docs) < n_classes:
        raise ValueError("training data must contain both classes")
    class_log_prior = np.log(class_docs / class_docs.sum())
    smoothed = mass + alpha
    feature_log_prob = np.log(smoothed / smoothed.sum(axis=1, keepdims=True))
    return NbModel(class_log_prior=class_log_prior, feature_log_prob=feature_log_prob, alpha=float(alpha))


def log_joint(model: NbModel, x: SparseVector) -> np.ndarray:
    """Unnormalized per-class log posterior: prior + sum of x[f] * log-likelihood."""
    if x.dim != model.feature_count:
        raise ValueError(f"feature dimension mismatch: vector {x.dim}, model {model.feature_count}")
    if x.indices.size == 0:
        return model.class_log_prior.copy()
    return model.class_log_prior + model.feature_log_prob[:, x.indices] @ x.values


def predict(model: NbModel, x: SparseVector) -> Tuple[int, np.ndarray]:
    """Predicted class and per-class log posterior; exact ties go benign."""
    joint = log_joint(model, x)
    label = CLASS_RANSOM if joint[CLASS_RANSOM] > joint[CLASS_BENIGN] else CLASS_BENIGN
    return label, joint
