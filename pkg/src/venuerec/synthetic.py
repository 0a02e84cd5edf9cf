"""Synthetic corpora and matrices with planted structure.

These generators exist for tests and demos: corpora whose venues use
disjoint vocabularies have a known best answer, and low-rank nonnegative
matrices have a known reachable reconstruction error. Everything is a
deterministic function of its seed.
"""

from __future__ import annotations

import numpy as np

from .corpus import PaperCorpus, PaperRecord

__all__ = ["planted_corpus", "planted_low_rank", "venue_term_prefix"]


def venue_term_prefix(venue_id: int) -> str:
    """Prefix of every vocabulary term planted for one venue."""
    return f"v{venue_id:02d}w"


def planted_corpus(
    num_venues: int = 8,
    docs_per_venue: int = 200,
    terms_per_venue: int = 30,
    shared_terms: int = 6,
    seed: int = 0,
) -> PaperCorpus:
    """Corpus whose venues draw from disjoint term pools.

    Every document of venue i samples its words from that venue's private
    pool of ``terms_per_venue`` terms, so venue identity is fully decidable
    from text. On top, ``shared_terms`` filler terms appear in every single
    document; with the default document-frequency ceiling of one half they
    are filtered out of the vocabulary.

    Venues are labeled ``venue00`` .. in order; private terms of venue i
    start with ``venue_term_prefix(i)``.
    """
    if num_venues < 2 or docs_per_venue < 2:
        raise ValueError("need at least two venues with two documents each")
    rng = np.random.default_rng(seed)
    pools = [
        [f"{venue_term_prefix(i)}{j:02d}" for j in range(terms_per_venue)]
        for i in range(num_venues)
    ]
    filler = [f"shared{j:02d}" for j in range(shared_terms)]
    records = []
    for venue_id in range(num_venues):
        pool = pools[venue_id]
        label = f"venue{venue_id:02d}"
        for _ in range(docs_per_venue):
            title = " ".join(rng.choice(pool, size=3))
            body_terms = list(rng.choice(pool, size=18)) + filler[:2]
            abstract = " ".join(body_terms)
            keywords = tuple(rng.choice(pool, size=2))
            records.append(
                PaperRecord(
                    title=title, abstract=abstract, keywords=keywords, venue=label
                )
            )
    return PaperCorpus.build(records)


def planted_low_rank(
    num_docs: int = 200,
    num_terms: int = 300,
    num_topics: int = 10,
    seed: int = 0,
) -> np.ndarray:
    """Exactly low-rank nonnegative matrix with block-structured topics.

    Each topic owns a contiguous block of terms with positive weights, and
    each document mixes at most three topics. The product of the planted
    factors therefore has rank ``num_topics`` and a factorization with that
    many topics can reach reconstruction error near zero.
    """
    if num_terms % num_topics != 0:
        raise ValueError("num_terms must be divisible by num_topics")
    rng = np.random.default_rng(seed)
    block = num_terms // num_topics
    topic_term = np.zeros((num_topics, num_terms))
    for t in range(num_topics):
        topic_term[t, t * block : (t + 1) * block] = 0.5 + rng.random(block)
    doc_topic = np.zeros((num_docs, num_topics))
    for d in range(num_docs):
        chosen = rng.choice(num_topics, size=3, replace=False)
        doc_topic[d, chosen] = 0.2 + rng.random(3)
    return doc_topic @ topic_term
