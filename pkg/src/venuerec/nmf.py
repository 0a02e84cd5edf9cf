"""Non-negative matrix factorization of document-term matrices.

Factorizes a nonnegative matrix into document-topic weights times a
topic-term matrix by damped multiplicative updates, processing documents in
batches. With damping 1 each inner step is the classical multiplicative rule
for the Frobenius objective, which never increases the reconstruction error;
smaller damping blends each update with the previous iterate and trades
per-step progress for stability.
"""

from __future__ import annotations

from dataclasses import dataclass
from typing import Union

import numpy as np
import scipy.sparse as sp

from .text import SparseVector, Vocabulary

__all__ = [
    "NmfConfig",
    "NmfModel",
    "fit_nmf",
    "transform",
    "top_terms",
    "reconstruction_error",
]

Matrix = Union[np.ndarray, sp.spmatrix]

# Added to update denominators so a vanishing topic cannot divide by zero.
_EPS = 1e-12
# Inner iterations stop early once the largest entry change falls below this
# fraction of the largest entry; the caps below remain hard limits.
_INNER_TOL = 1e-6


@dataclass(frozen=True)
class NmfConfig:
    """Hyperparameters of one factorization run.

    Attributes:
        num_topics: number of latent topics.
        kappa: damping of the multiplicative updates, in (0, 1]; 1 recovers
            the undamped rule.
        w_max_iter: cap on inner iterations per document-weight update.
        h_max_iter: cap on inner iterations per topic-matrix update.
        epochs: full passes over the documents.
        batch_size: documents per batch; a batch at least as large as the
            corpus makes training full-batch.
        seed: seed for the random nonnegative initialization.
        tolerance: training stops early once the relative reconstruction
            error improves by less than this between epochs; 0 keeps going
            for all epochs unless the error stops improving entirely.
    """

    num_topics: int = 100
    kappa: float = 1.0
    w_max_iter: int = 300
    h_max_iter: int = 100
    epochs: int = 20
    batch_size: int = 1024
    seed: int = 0
    tolerance: float = 1e-4

    def __post_init__(self) -> None:
        if self.num_topics < 1:
            raise ValueError("num_topics must be at least 1")
        if not 0.0 < self.kappa <= 1.0:
            raise ValueError("kappa must lie in (0, 1]")
        if min(self.w_max_iter, self.h_max_iter, self.epochs, self.batch_size) < 1:
            raise ValueError("iteration caps, epochs, and batch_size must be positive")
        if self.tolerance < 0.0:
            raise ValueError("tolerance cannot be negative")


@dataclass(frozen=True, eq=False)
class NmfModel:
    """Fitted factorization: the topic-term matrix plus its provenance.

    ``error_trace`` holds the relative reconstruction error after each
    training epoch. ``vocabulary`` is optional; it is only needed to name
    topic terms.
    """

    topic_term: np.ndarray
    config: NmfConfig
    error_trace: tuple[float, ...]
    vocabulary: Vocabulary | None = None

    def __post_init__(self) -> None:
        if self.topic_term.ndim != 2:
            raise ValueError("topic_term must be a 2-d array")
        if self.topic_term.shape[0] != self.config.num_topics:
            raise ValueError("topic_term row count disagrees with the config")
        if self.vocabulary is not None and len(self.vocabulary) != self.topic_term.shape[1]:
            raise ValueError("topic_term column count disagrees with the vocabulary")

    @property
    def num_topics(self) -> int:
        return int(self.topic_term.shape[0])

    @property
    def num_terms(self) -> int:
        return int(self.topic_term.shape[1])


def _as_csr(doc_term: Matrix) -> sp.csr_matrix:
    if sp.issparse(doc_term):
        matrix = doc_term.tocsr().astype(np.float64)
    else:
        dense = np.asarray(doc_term, dtype=np.float64)
        if dense.ndim != 2:
            raise ValueError("document-term matrix must be 2-d")
        matrix = sp.csr_matrix(dense)
    if matrix.shape[0] == 0 or matrix.shape[1] == 0:
        raise ValueError("document-term matrix is empty")
    if matrix.nnz and matrix.data.min() < 0.0:
        raise ValueError("document-term matrix contains negative entries")
    return matrix


def _damped_updates(
    factors: np.ndarray,
    numerator: np.ndarray,
    gram: np.ndarray,
    kappa: float,
    max_iter: int,
    gram_on_left: bool,
) -> np.ndarray:
    """Run damped multiplicative iterations on one factor, the other fixed.

    ``numerator`` and ``gram`` are the precomputed data and Gram terms of the
    multiplicative rule; whether ``gram`` multiplies from the left or the
    right depends on which factor is being updated.
    """
    for _ in range(max_iter):
        if gram_on_left:
            denominator = gram @ factors
        else:
            denominator = factors @ gram
        updated = factors * (1.0 - kappa + kappa * numerator / (denominator + _EPS))
        step = float(np.max(np.abs(updated - factors), initial=0.0))
        scale = float(np.max(np.abs(factors), initial=0.0))
        factors = updated
        if step <= _INNER_TOL * max(scale, _EPS):
            break
    return factors


def fit_nmf(
    doc_term: Matrix, config: NmfConfig, vocabulary: Vocabulary | None = None
) -> tuple[NmfModel, np.ndarray]:
    """Factorize a nonnegative document-term matrix.

    Each epoch sweeps the documents in batches: the batch rows of the
    document-topic matrix are refined with the topic-term matrix held fixed,
    then the topic-term matrix is refined against that batch. After every
    epoch the relative Frobenius reconstruction error is recorded; training
    stops once the improvement between epochs falls below
    ``config.tolerance`` or the epoch budget runs out.

    Args:
        doc_term: nonnegative matrix, documents in rows; dense or sparse.
        config: hyperparameters; the run is a deterministic function of the
            matrix and this config.
        vocabulary: optional term catalog to attach for topic naming.

    Returns:
        The fitted model and the document-topic matrix, one row per input
        document. Rows for all-zero documents are all-zero.

    Raises:
        ValueError: for an empty matrix, negative entries, or a matrix with
            no nonzero entries at all.
    """
    matrix = _as_csr(doc_term)
    if vocabulary is not None and len(vocabulary) != matrix.shape[1]:
        raise ValueError("vocabulary size disagrees with the matrix width")
    num_docs, num_terms = matrix.shape
    norm = float(np.sqrt(np.sum(matrix.data * matrix.data)))
    if norm == 0.0:
        raise ValueError("document-term matrix has no nonzero entries")

    rng = np.random.default_rng(config.seed)
    doc_topic = rng.random((num_docs, config.num_topics))
    topic_term = rng.random((config.num_topics, num_terms))
    # An all-zero document has nothing to explain; pin its weights to zero so
    # the multiplicative updates keep them there.
    empty_rows = np.flatnonzero(matrix.getnnz(axis=1) == 0)
    doc_topic[empty_rows] = 0.0

    trace: list[float] = []
    for _ in range(config.epochs):
        for start in range(0, num_docs, config.batch_size):
            stop = min(start + config.batch_size, num_docs)
            block = matrix[start:stop]
            # A batch of only all-zero documents carries no evidence and
            # would collapse the topic matrix under the undamped rule.
            if block.nnz == 0:
                continue
            weights = doc_topic[start:stop]
            weights = _damped_updates(
                weights,
                numerator=block @ topic_term.T,
                gram=topic_term @ topic_term.T,
                kappa=config.kappa,
                max_iter=config.w_max_iter,
                gram_on_left=False,
            )
            doc_topic[start:stop] = weights
            topic_term = _damped_updates(
                topic_term,
                numerator=(block.T @ weights).T,
                gram=weights.T @ weights,
                kappa=config.kappa,
                max_iter=config.h_max_iter,
                gram_on_left=True,
            )
        trace.append(_relative_error(matrix, doc_topic, topic_term, norm))
        if len(trace) >= 2 and trace[-2] - trace[-1] < config.tolerance:
            break

    model = NmfModel(
        topic_term=topic_term,
        config=config,
        error_trace=tuple(trace),
        vocabulary=vocabulary,
    )
    return model, doc_topic


def transform(vector: SparseVector, model: NmfModel) -> np.ndarray:
    """Topic weights of one unseen document under a fitted model.

    Starts from uniform weights and runs the damped document update with the
    topic-term matrix fixed, capped at ``config.w_max_iter`` iterations. The
    zero vector maps to all-zero weights.

    Raises:
        ValueError: if the vector dimension disagrees with the model.
    """
    if vector.dimension != model.num_terms:
        raise ValueError(
            f"vector has dimension {vector.dimension}, model expects {model.num_terms}"
        )
    topics = model.num_topics
    if vector.nnz == 0:
        return np.zeros(topics, dtype=np.float64)
    numerator = model.topic_term[:, vector.indices] @ vector.values
    weights = np.full(topics, 1.0 / topics, dtype=np.float64)
    return _damped_updates(
        weights,
        numerator=numerator,
        gram=model.topic_term @ model.topic_term.T,
        kappa=model.config.kappa,
        max_iter=model.config.w_max_iter,
        gram_on_left=False,
    )


def top_terms(model: NmfModel, topic: int, count: int) -> tuple[str, ...]:
    """The ``count`` heaviest terms of one topic, weight-descending.

    Ties are broken lexicographically so the listing is reproducible.

    Raises:
        IndexError: for a topic index out of range.
        ValueError: for a nonpositive count or a model without a vocabulary.
    """
    if model.vocabulary is None:
        raise ValueError("model carries no vocabulary to name terms")
    if not 0 <= topic < model.num_topics:
        raise IndexError(f"topic {topic} out of range [0, {model.num_topics})")
    if count < 1:
        raise ValueError("count must be positive")
    row = model.topic_term[topic]
    terms = np.asarray(model.vocabulary.terms)
    # lexsort keys: last is primary, so order by weight descending, then term.
    order = np.lexsort((terms, -row))
    return tuple(terms[order[:count]].tolist())


def _relative_error(
    matrix: sp.csr_matrix,
    doc_topic: np.ndarray,
    topic_term: np.ndarray,
    matrix_norm: float,
) -> float:
    """Relative Frobenius error without materializing the reconstruction.

    Expands the squared norm into the matrix norm, a cross term against the
    sparse data, and the product of the two factor Gram matrices.
    """
    cross = float(np.sum((matrix @ topic_term.T) * doc_topic))
    grams = float(np.sum((doc_topic.T @ doc_topic) * (topic_term @ topic_term.T)))
    squared = matrix_norm * matrix_norm - 2.0 * cross + grams
    return float(np.sqrt(max(squared, 0.0))) / matrix_norm


def reconstruction_error(
    doc_term: Matrix, doc_topic: np.ndarray, model: NmfModel
) -> float:
    """Relative Frobenius error of reconstructing ``doc_term``.

    Raises:
        ValueError: for shape mismatches or an all-zero reference matrix.
    """
    matrix = _as_csr(doc_term)
    doc_topic = np.asarray(doc_topic, dtype=np.float64)
    if doc_topic.shape != (matrix.shape[0], model.num_topics):
        raise ValueError("document-topic matrix shape disagrees with the inputs")
    if matrix.shape[1] != model.num_terms:
        raise ValueError("document-term matrix width disagrees with the model")
    norm = float(np.sqrt(np.sum(matrix.data * matrix.data)))
    if norm == 0.0:
        raise ValueError("reference matrix has no nonzero entries")
    return _relative_error(matrix, doc_topic, model.topic_term, norm)
