"""Classifier feature assembly from text and topic representations.

A feature spec fixes which representation the classifier sees: raw term
counts, tf-idf weights, topic weights, or tf-idf concatenated with topic
weights. The same spec is applied identically at training and query time.
"""

from __future__ import annotations

from dataclasses import dataclass
from typing import Sequence

import numpy as np
import scipy.sparse as sp

from .nmf import NmfModel, transform
from .text import SparseVector, TfidfModel, vectorize, vectorize_corpus

__all__ = ["FEATURE_KINDS", "FeatureSpec", "featurize", "featurize_corpus"]

FEATURE_KINDS = ("tf", "tfidf", "nmf", "tfidf_plus_nmf")


@dataclass(frozen=True)
class FeatureSpec:
    """Which document representation feeds the classifier.

    For the concatenated kind, tf-idf weights occupy components
    [0, num_terms) and topic weights [num_terms, num_terms + num_topics).
    """

    kind: str
    tfidf: TfidfModel
    nmf: NmfModel | None = None

    def __post_init__(self) -> None:
        if self.kind not in FEATURE_KINDS:
            raise ValueError(f"unknown feature kind: {self.kind!r}")
        if self.kind in ("nmf", "tfidf_plus_nmf") and self.nmf is None:
            raise ValueError(f"feature kind {self.kind!r} needs a topic model")

    @property
    def dimension(self) -> int:
        terms = len(self.tfidf.vocabulary)
        if self.kind in ("tf", "tfidf"):
            return terms
        assert self.nmf is not None
        if self.kind == "nmf":
            return self.nmf.num_topics
        return terms + self.nmf.num_topics


def featurize(text: str, spec: FeatureSpec) -> SparseVector:
    """Feature vector of one document under ``spec``; pure and deterministic."""
    if spec.kind == "tf":
        return vectorize(text, spec.tfidf, weighting="tf")
    if spec.kind == "tfidf":
        return vectorize(text, spec.tfidf, weighting="tfidf")
    assert spec.nmf is not None
    weighted = vectorize(text, spec.tfidf, weighting="tfidf")
    topics = transform(weighted, spec.nmf)
    if spec.kind == "nmf":
        return SparseVector.from_dense(topics)
    return _concatenate(weighted, topics)


def _concatenate(weighted: SparseVector, topics: np.ndarray) -> SparseVector:
    """Join a tf-idf vector with a dense topic block appended after it."""
    num_terms = weighted.dimension
    topic_idx = np.flatnonzero(topics)
    indices = np.concatenate([weighted.indices, num_terms + topic_idx])
    values = np.concatenate([weighted.values, topics[topic_idx]])
    return SparseVector(
        indices=indices, values=values, dimension=num_terms + topics.size
    )


def featurize_corpus(texts: Sequence[str], spec: FeatureSpec) -> sp.csr_matrix:
    """Feature matrix with one row per document.

    Rows equal what ``featurize`` yields for each text on its own, so models
    trained on this matrix treat later single queries consistently.
    """
    if spec.kind in ("tf", "tfidf"):
        return vectorize_corpus(texts, spec.tfidf, weighting=spec.kind)
    rows = [featurize(text, spec) for text in texts]
    indptr = np.zeros(len(texts) + 1, dtype=np.int64)
    for i, row in enumerate(rows):
        indptr[i + 1] = indptr[i] + row.nnz
    if rows:
        indices = np.concatenate([r.indices for r in rows])
        data = np.concatenate([r.values for r in rows])
    else:
        indices = np.empty(0, dtype=np.int64)
        data = np.empty(0, dtype=np.float64)
    return sp.csr_matrix((data, indices, indptr), shape=(len(texts), spec.dimension))
