"""Ranked venue recommendations with topic-based explanations.

Every venue gets a topic profile, the mean of the normalized topic weights
of its training papers. A recommendation pairs the classifier's top venues
with the dominant topics of both the query and each venue, so a user can see
why a venue was suggested in terms of named topics.
"""

from __future__ import annotations

from dataclasses import dataclass
from typing import TYPE_CHECKING, Sequence

import numpy as np

from .classify import predict_ranking
from .corpus import LabelIndex, query_text
from .features import featurize
from .nmf import NmfModel, top_terms, transform
from .text import vectorize

if TYPE_CHECKING:
    from .bundle import ModelBundle

__all__ = [
    "VenueProfile",
    "TopicSummary",
    "Explanation",
    "RecommendedVenue",
    "Recommendation",
    "build_venue_profiles",
    "explain",
    "recommend",
]


@dataclass(frozen=True, eq=False)
class VenueProfile:
    """Mean normalized topic weights of one venue's training papers."""

    venue: str
    topic_weights: np.ndarray
    supporting_papers: int


@dataclass(frozen=True)
class TopicSummary:
    """One topic inside an explanation: id, share, and heaviest terms."""

    topic_id: int
    weight: float
    terms: tuple[str, ...]


@dataclass(frozen=True)
class Explanation:
    """Dominant topics of a document or venue, heaviest first.

    Weights are proportions of the total topic mass, so they fall in (0, 1]
    and carry only topics with positive weight. An all-zero weight vector
    yields an empty explanation.
    """

    topics: tuple[TopicSummary, ...]


@dataclass(frozen=True)
class RecommendedVenue:
    venue: str
    score: float
    explanation: Explanation


@dataclass(frozen=True)
class Recommendation:
    """Top venues for a query plus the query's own topic summary."""

    query_topics: Explanation
    venues: tuple[RecommendedVenue, ...]


def build_venue_profiles(
    doc_topic: np.ndarray, labels: Sequence[int] | np.ndarray, venues: LabelIndex
) -> tuple[VenueProfile, ...]:
    """Average each venue's documents into a topic profile.

    Document rows are L1-normalized before averaging so long papers do not
    dominate; all-zero rows are excluded since they say nothing about the
    venue.

    Args:
        doc_topic: topic-weight matrix, one row per training document.
        labels: venue id of every row.
        venues: the venue universe; profiles come back in index order.

    Raises:
        ValueError: if shapes disagree or some venue ends up with no
            contributing document.
    """
    doc_topic = np.asarray(doc_topic, dtype=np.float64)
    labels = np.asarray(labels, dtype=np.int64)
    if doc_topic.ndim != 2 or doc_topic.shape[0] != labels.shape[0]:
        raise ValueError("document-topic rows and labels differ in length")
    totals = doc_topic.sum(axis=1)
    usable = totals > 0.0
    profiles = []
    for venue_id, name in enumerate(venues.labels):
        mask = usable & (labels == venue_id)
        support = int(mask.sum())
        if support == 0:
            raise ValueError(f"venue {name!r} has no document with topic mass")
        normalized = doc_topic[mask] / totals[mask, np.newaxis]
        profiles.append(
            VenueProfile(
                venue=name,
                topic_weights=normalized.mean(axis=0),
                supporting_papers=support,
            )
        )
    return tuple(profiles)


def explain(
    topic_weights: np.ndarray,
    model: NmfModel,
    top_topics: int = 3,
    terms_per_topic: int = 5,
) -> Explanation:
    """Summarize a topic-weight vector by its heaviest topics.

    Weights are reported as proportions of the total mass; ties in weight
    are broken by topic id. Topics with zero weight never appear, so fewer
    than ``top_topics`` entries may come back.

    Raises:
        ValueError: for nonpositive ``top_topics`` or ``terms_per_topic``,
            or a weight vector of the wrong length.
    """
    if top_topics < 1 or terms_per_topic < 1:
        raise ValueError("top_topics and terms_per_topic must be positive")
    weights = np.asarray(topic_weights, dtype=np.float64)
    if weights.shape != (model.num_topics,):
        raise ValueError("topic weights do not match the model's topic count")
    total = float(weights.sum())
    if total <= 0.0:
        return Explanation(topics=())
    proportions = weights / total
    order = sorted(np.flatnonzero(proportions), key=lambda i: (-proportions[i], i))
    summaries = tuple(
        TopicSummary(
            topic_id=int(i),
            weight=float(proportions[i]),
            terms=top_terms(model, int(i), terms_per_topic),
        )
        for i in order[:top_topics]
    )
    return Explanation(topics=summaries)


def recommend(
    title: str,
    abstract: str,
    keywords: Sequence[str],
    k: int,
    bundle: "ModelBundle",
    top_topics: int = 3,
    terms_per_topic: int = 5,
) -> Recommendation:
    """Top ``k`` venues for a query, each with a topic explanation.

    The query text runs through the bundle's feature spec into the
    classifier; the returned venues are the first ``k`` of that ranking, in
    order. Explanations always come from the topic model applied to the
    query's tf-idf vector, regardless of which features the classifier uses.
    An empty query yields the classifier's ranking of the empty vector and
    an empty query summary.

    Raises:
        ValueError: if ``k`` is not in [1, number of venues].
    """
    num_venues = len(bundle.venues)
    if not 1 <= k <= num_venues:
        raise ValueError(f"k must lie in [1, {num_venues}], got {k}")
    text = query_text(title, abstract, tuple(keywords))
    ranking = predict_ranking(bundle.logit, featurize(text, bundle.feature_spec))
    query_topics = transform(vectorize(text, bundle.tfidf, "tfidf"), bundle.nmf)
    profiles = {p.venue: p for p in bundle.profiles}
    chosen = tuple(
        RecommendedVenue(
            venue=venue,
            score=score,
            explanation=explain(
                profiles[venue].topic_weights, bundle.nmf, top_topics, terms_per_topic
            ),
        )
        for venue, score in ranking.entries[:k]
    )
    return Recommendation(
        query_topics=explain(query_topics, bundle.nmf, top_topics, terms_per_topic),
        venues=chosen,
    )
