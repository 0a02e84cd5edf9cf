"""Tokenization, vocabulary construction, and tf-idf document vectors.

The weighting follows the smoothed convention: idf(t) = ln((1 + N) / (1 + df(t))) + 1
over N fitting documents, with document vectors L2-normalized afterwards. All
vectors are sparse; a document with no in-vocabulary tokens stays the zero
vector.
"""

from __future__ import annotations

import re
from collections import Counter
from dataclasses import dataclass, field
from typing import Sequence

import numpy as np
import scipy.sparse as sp

__all__ = [
    "tokenize",
    "Vocabulary",
    "build_vocabulary",
    "SparseVector",
    "TfidfModel",
    "fit_tfidf",
    "vectorize",
    "vectorize_corpus",
]

# Maximal runs of alphanumeric characters, underscore excluded; everything
# else separates tokens.
_TOKEN_PATTERN = re.compile(r"[^\W_]+", re.UNICODE)


def tokenize(text: str) -> list[str]:
    """Lowercase and split ``text`` into terms.

    Tokens are maximal alphanumeric runs; single characters and purely
    numeric tokens are discarded because they carry no topical signal.
    """
    tokens = _TOKEN_PATTERN.findall(text.lower())
    return [t for t in tokens if len(t) >= 2 and not t.isdigit()]


@dataclass(frozen=True, eq=False)
class Vocabulary:
    """Fixed term universe mapping each term to a column index.

    Indices are assigned in lexicographic term order, so the same surviving
    term set always yields the same layout.
    """

    terms: tuple[str, ...]
    document_frequency: np.ndarray
    total_documents: int
    _positions: dict[str, int] = field(init=False, repr=False)

    def __post_init__(self) -> None:
        if len(self.terms) != len(self.document_frequency):
            raise ValueError("terms and document frequencies differ in length")
        if len(self.terms) == 0:
            raise ValueError("vocabulary is empty")
        df = np.asarray(self.document_frequency)
        if df.min(initial=1) < 1 or df.max(initial=1) > self.total_documents:
            raise ValueError("document frequencies out of range")
        object.__setattr__(
            self, "_positions", {t: i for i, t in enumerate(self.terms)}
        )

    def __len__(self) -> int:
        return len(self.terms)

    def __contains__(self, term: str) -> bool:
        return term in self._positions

    def position(self, term: str) -> int | None:
        """Column index of ``term``, or None if it is out of vocabulary."""
        return self._positions.get(term)


def build_vocabulary(
    texts: Sequence[str],
    min_df: int = 5,
    max_df_ratio: float = 0.5,
    max_features: int | None = None,
) -> Vocabulary:
    """Extract the term universe from fitting documents.

    Terms must appear in at least ``min_df`` documents and in at most
    ``max_df_ratio`` of all documents; near-ubiquitous terms act like stop
    words and rare ones only add noise. When ``max_features`` is set, the
    most frequent terms by total corpus count are kept, ties broken by
    lexicographic term order. Final indices are always lexicographic.

    Raises:
        ValueError: if ``texts`` is empty or no term survives the filters.
    """
    if not texts:
        raise ValueError("cannot build a vocabulary from zero documents")
    if min_df < 0 or not 0.0 < max_df_ratio <= 1.0:
        raise ValueError("invalid document-frequency bounds")
    doc_freq: Counter[str] = Counter()
    corpus_freq: Counter[str] = Counter()
    for text in texts:
        tokens = tokenize(text)
        corpus_freq.update(tokens)
        doc_freq.update(set(tokens))
    total = len(texts)
    max_df = max_df_ratio * total
    kept = [t for t, df in doc_freq.items() if df >= min_df and df <= max_df]
    if max_features is not None and len(kept) > max_features:
        kept.sort(key=lambda t: (-corpus_freq[t], t))
        kept = kept[:max_features]
    if not kept:
        raise ValueError("no term survived the document-frequency filters")
    terms = tuple(sorted(kept))
    df = np.fromiter((doc_freq[t] for t in terms), dtype=np.int64, count=len(terms))
    return Vocabulary(terms=terms, document_frequency=df, total_documents=total)


@dataclass(frozen=True, eq=False)
class SparseVector:
    """Sparse feature vector with strictly increasing indices.

    Stored values are nonzero; the zero vector is represented by empty
    arrays. Instances are immutable and safe to share.
    """

    indices: np.ndarray
    values: np.ndarray
    dimension: int

    def __post_init__(self) -> None:
        indices = np.asarray(self.indices, dtype=np.int64)
        values = np.asarray(self.values, dtype=np.float64)
        if indices.shape != values.shape or indices.ndim != 1:
            raise ValueError("indices and values must be 1-d arrays of equal length")
        if indices.size:
            if indices[0] < 0 or indices[-1] >= self.dimension:
                raise ValueError("index out of range for the stated dimension")
            if (np.diff(indices) <= 0).any():
                raise ValueError("indices must be strictly increasing")
            if (values == 0.0).any():
                raise ValueError("stored values must be nonzero")
        object.__setattr__(self, "indices", indices)
        object.__setattr__(self, "values", values)

    @property
    def nnz(self) -> int:
        return int(self.indices.size)

    @classmethod
    def zeros(cls, dimension: int) -> "SparseVector":
        return cls(
            indices=np.empty(0, dtype=np.int64),
            values=np.empty(0, dtype=np.float64),
            dimension=dimension,
        )

    @classmethod
    def from_dense(cls, dense: np.ndarray) -> "SparseVector":
        dense = np.asarray(dense, dtype=np.float64)
        idx = np.flatnonzero(dense)
        return cls(indices=idx.astype(np.int64), values=dense[idx], dimension=dense.size)

    def to_dense(self) -> np.ndarray:
        out = np.zeros(self.dimension, dtype=np.float64)
        out[self.indices] = self.values
        return out


@dataclass(frozen=True, eq=False)
class TfidfModel:
    """Frozen tf-idf weighting: vocabulary plus per-term idf factors."""

    vocabulary: Vocabulary
    idf: np.ndarray
    fitted_documents: int

    def __post_init__(self) -> None:
        if len(self.idf) != len(self.vocabulary):
            raise ValueError("idf vector does not match the vocabulary size")


def fit_tfidf(texts: Sequence[str], vocabulary: Vocabulary) -> TfidfModel:
    """Compute idf factors for ``vocabulary`` from fitting documents.

    Document frequencies are recounted on ``texts`` restricted to the given
    term set, and the model's vocabulary carries those recounted values, so
    frequencies and idf always describe the same documents. A term absent
    from ``texts`` simply gets df = 0 and the largest idf. Counts and idf
    values are deterministic functions of the inputs.
    """
    if not texts:
        raise ValueError("cannot fit tf-idf on zero documents")
    df = np.zeros(len(vocabulary), dtype=np.int64)
    for text in texts:
        seen = {vocabulary.position(t) for t in set(tokenize(text))}
        seen.discard(None)
        for idx in seen:
            df[idx] += 1
    n = len(texts)
    idf = np.log((1.0 + n) / (1.0 + df)) + 1.0
    fitted = Vocabulary(
        terms=vocabulary.terms, document_frequency=df, total_documents=n
    )
    return TfidfModel(vocabulary=fitted, idf=idf, fitted_documents=n)


def _term_counts(text: str, vocabulary: Vocabulary) -> tuple[np.ndarray, np.ndarray]:
    """In-vocabulary term counts as (sorted indices, counts)."""
    counts: dict[int, int] = {}
    for token in tokenize(text):
        idx = vocabulary.position(token)
        if idx is not None:
            counts[idx] = counts.get(idx, 0) + 1
    if not counts:
        empty = np.empty(0, dtype=np.int64)
        return empty, np.empty(0, dtype=np.float64)
    indices = np.fromiter(sorted(counts), dtype=np.int64, count=len(counts))
    values = np.fromiter(
        (counts[i] for i in indices), dtype=np.float64, count=len(counts)
    )
    return indices, values


def vectorize(text: str, model: TfidfModel, weighting: str = "tfidf") -> SparseVector:
    """Map one document to its weighted, L2-normalized sparse vector.

    Args:
        text: raw document text.
        model: fitted weighting model.
        weighting: ``"tfidf"`` for idf-scaled counts or ``"tf"`` for raw
            counts; both are L2-normalized afterwards.

    Returns:
        A sparse vector over the model vocabulary; documents with no known
        terms map to the zero vector.
    """
    if weighting not in ("tf", "tfidf"):
        raise ValueError(f"unknown weighting: {weighting!r}")
    indices, values = _term_counts(text, model.vocabulary)
    if weighting == "tfidf":
        values = values * model.idf[indices]
    norm = float(np.sqrt(np.sum(values * values)))
    if norm > 0.0:
        values = values / norm
    return SparseVector(indices=indices, values=values, dimension=len(model.vocabulary))


def vectorize_corpus(
    texts: Sequence[str], model: TfidfModel, weighting: str = "tfidf"
) -> sp.csr_matrix:
    """Stack per-document vectors into a CSR matrix, row i for document i.

    Rows are exactly the arrays ``vectorize`` would produce, so batch and
    single-document paths agree bit for bit.
    """
    indptr = np.zeros(len(texts) + 1, dtype=np.int64)
    index_blocks: list[np.ndarray] = []
    value_blocks: list[np.ndarray] = []
    for i, text in enumerate(texts):
        vector = vectorize(text, model, weighting)
        index_blocks.append(vector.indices)
        value_blocks.append(vector.values)
        indptr[i + 1] = indptr[i] + vector.nnz
    if index_blocks:
        indices = np.concatenate(index_blocks)
        data = np.concatenate(value_blocks)
    else:
        indices = np.empty(0, dtype=np.int64)
        data = np.empty(0, dtype=np.float64)
    return sp.csr_matrix(
        (data, indices, indptr), shape=(len(texts), len(model.vocabulary))
    )
