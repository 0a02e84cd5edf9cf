"""Multinomial logistic regression over venues, trained deterministically.

The loss is the summed cross-entropy plus an L2 penalty on the weights
(biases are never penalized). Optimization is full-batch gradient descent
with a backtracking line search from zero initialization, so identical data
and hyperparameters always reproduce the identical model without any seed.
"""

from __future__ import annotations

from dataclasses import dataclass
from typing import Union

import numpy as np
import scipy.sparse as sp

from .corpus import LabelIndex
from .text import SparseVector

__all__ = [
    "LogitModel",
    "VenueRanking",
    "fit_logit",
    "loss_and_gradient",
    "predict_ranking",
    "uniform_random_ranking",
    "most_frequent_ranking",
]

FeatureMatrix = Union[np.ndarray, sp.spmatrix]

# Armijo sufficient-decrease constant and the smallest step worth trying.
_ARMIJO = 1e-4
_MIN_STEP = 1e-20
_MAX_STEP = 1e6


@dataclass(frozen=True)
class VenueRanking:
    """All venues ordered by score, scores summing to one.

    ``entries`` is a tuple of (venue, score) pairs with non-increasing
    scores. Ranks are 1-based.
    """

    entries: tuple[tuple[str, float], ...]

    def __post_init__(self) -> None:
        scores = [s for _, s in self.entries]
        if any(b > a + 1e-12 for a, b in zip(scores, scores[1:])):
            raise ValueError("ranking scores must be non-increasing")
        if scores and abs(sum(scores) - 1.0) > 1e-6:
            raise ValueError("ranking scores must sum to one")

    def __len__(self) -> int:
        return len(self.entries)

    def venues(self) -> tuple[str, ...]:
        return tuple(v for v, _ in self.entries)

    def rank_of(self, venue: str) -> int:
        """1-based rank of ``venue``; raises KeyError if it is absent."""
        for position, (name, _) in enumerate(self.entries, start=1):
            if name == venue:
                return position
        raise KeyError(f"venue {venue!r} not present in ranking")


@dataclass(frozen=True, eq=False)
class LogitModel:
    """Fitted classifier: per-venue weight rows, biases, and the loss trace."""

    weights: np.ndarray
    biases: np.ndarray
    venues: LabelIndex
    l2_strength: float
    loss_trace: tuple[float, ...]

    def __post_init__(self) -> None:
        if self.weights.shape[0] != len(self.venues) or self.biases.shape != (
            len(self.venues),
        ):
            raise ValueError("parameter shapes disagree with the venue index")

    @property
    def dimension(self) -> int:
        return int(self.weights.shape[1])


def _log_softmax(scores: np.ndarray) -> np.ndarray:
    shifted = scores - scores.max(axis=1, keepdims=True)
    return shifted - np.log(np.exp(shifted).sum(axis=1, keepdims=True))


def loss_and_gradient(
    weights: np.ndarray,
    biases: np.ndarray,
    features: FeatureMatrix,
    labels: np.ndarray,
    l2_strength: float,
) -> tuple[float, np.ndarray, np.ndarray]:
    """Penalized cross-entropy and its exact gradients.

    The objective is the sum over documents of the negative log-probability
    of the true venue, plus ``1 / (2 * l2_strength)`` times the squared
    weight norm. Larger ``l2_strength`` therefore means weaker
    regularization.

    Returns:
        (loss, weight gradient, bias gradient).
    """
    scores = features @ weights.T + biases
    log_prob = _log_softmax(scores)
    rows = np.arange(scores.shape[0])
    loss = -float(log_prob[rows, labels].sum())
    loss += 0.5 / l2_strength * float(np.sum(weights * weights))
    residual = np.exp(log_prob)
    residual[rows, labels] -= 1.0
    if sp.issparse(features):
        weight_grad = np.asarray((features.T @ residual).T)
    else:
        weight_grad = residual.T @ features
    weight_grad += weights / l2_strength
    bias_grad = residual.sum(axis=0)
    return loss, weight_grad, bias_grad


def _loss_only(
    weights: np.ndarray,
    biases: np.ndarray,
    features: FeatureMatrix,
    labels: np.ndarray,
    l2_strength: float,
) -> float:
    scores = features @ weights.T + biases
    log_prob = _log_softmax(scores)
    loss = -float(log_prob[np.arange(scores.shape[0]), labels].sum())
    return loss + 0.5 / l2_strength * float(np.sum(weights * weights))


def fit_logit(
    features: FeatureMatrix,
    labels: np.ndarray,
    venues: LabelIndex,
    l2_strength: float = 1.0,
    max_iter: int = 500,
    tol: float = 1e-5,
) -> LogitModel:
    """Train the classifier by damped full-batch gradient descent.

    Each iteration takes a gradient step whose size is found by backtracking:
    starting from twice the previously accepted step, the step is halved
    until the Armijo sufficient-decrease condition holds. Training stops when
    the gradient norm falls below ``tol``, the iteration budget is spent, or
    no acceptable step remains.

    Args:
        features: document-feature matrix, dense or sparse, finite entries.
        labels: venue id of every row, indices into ``venues``.
        venues: the label universe to score; may contain venues absent from
            ``labels``.
        l2_strength: inverse regularization weight, must be positive.
        max_iter: cap on gradient steps.
        tol: gradient-norm stopping threshold.

    Raises:
        ValueError: for misaligned shapes, non-finite features, nonpositive
            ``l2_strength``, or fewer than two distinct labels.
    """
    labels = np.asarray(labels, dtype=np.int64)
    if sp.issparse(features):
        features = features.tocsr().astype(np.float64)
        finite = np.isfinite(features.data).all()
    else:
        features = np.asarray(features, dtype=np.float64)
        finite = np.isfinite(features).all()
    if not finite:
        raise ValueError("features contain non-finite values")
    if features.shape[0] != labels.shape[0]:
        raise ValueError("feature rows and labels differ in length")
    if l2_strength <= 0.0:
        raise ValueError("l2_strength must be positive")
    if max_iter < 0:
        raise ValueError("max_iter must be nonnegative")
    if labels.size and (labels.min() < 0 or labels.max() >= len(venues)):
        raise ValueError("labels fall outside the venue index")
    if np.unique(labels).size < 2:
        raise ValueError("training needs at least two distinct venues")

    num_venues = len(venues)
    dimension = features.shape[1]
    weights = np.zeros((num_venues, dimension), dtype=np.float64)
    biases = np.zeros(num_venues, dtype=np.float64)

    loss, weight_grad, bias_grad = loss_and_gradient(
        weights, biases, features, labels, l2_strength
    )
    trace = [loss]
    step = 1.0
    for _ in range(max_iter):
        grad_sq = float(np.sum(weight_grad * weight_grad) + np.sum(bias_grad * bias_grad))
        if np.sqrt(grad_sq) < tol:
            break
        # Warm-start the search from twice the last accepted step so the
        # step size can recover after a cautious iteration.
        step = min(step * 2.0, _MAX_STEP)
        while True:
            candidate_w = weights - step * weight_grad
            candidate_b = biases - step * bias_grad
            candidate_loss = _loss_only(
                candidate_w, candidate_b, features, labels, l2_strength
            )
            if candidate_loss <= loss - _ARMIJO * step * grad_sq:
                break
            step *= 0.5
            if step < _MIN_STEP:
                break
        if step < _MIN_STEP:
            break
        weights, biases = candidate_w, candidate_b
        loss, weight_grad, bias_grad = loss_and_gradient(
            weights, biases, features, labels, l2_strength
        )
        trace.append(loss)

    return LogitModel(
        weights=weights,
        biases=biases,
        venues=venues,
        l2_strength=l2_strength,
        loss_trace=tuple(trace),
    )


def predict_ranking(model: LogitModel, features: SparseVector) -> VenueRanking:
    """Rank all venues for one feature vector by softmax probability.

    Ties are broken by venue id so equal-probability venues always appear in
    index order.

    Raises:
        ValueError: if the vector dimension disagrees with the model.
    """
    if features.dimension != model.dimension:
        raise ValueError(
            f"feature dimension {features.dimension} disagrees with model "
            f"dimension {model.dimension}"
        )
    scores = model.weights[:, features.indices] @ features.values + model.biases
    shifted = scores - scores.max()
    exp = np.exp(shifted)
    probabilities = exp / exp.sum()
    order = np.argsort(-probabilities, kind="stable")
    labels = model.venues.labels
    return VenueRanking(
        entries=tuple((labels[i], float(probabilities[i])) for i in order)
    )


def uniform_random_ranking(venues: LabelIndex, seed: int) -> VenueRanking:
    """A uniformly random venue order, every venue scored 1 / |venues|."""
    if len(venues) == 0:
        raise ValueError("cannot rank an empty venue index")
    order = np.random.default_rng(seed).permutation(len(venues))
    score = 1.0 / len(venues)
    return VenueRanking(entries=tuple((venues.labels[i], score) for i in order))


def most_frequent_ranking(venues: LabelIndex) -> VenueRanking:
    """Venues by training frequency, scored by their frequency share.

    Ties are broken by venue id. The index must carry nonzero counts.
    """
    if len(venues) == 0:
        raise ValueError("cannot rank an empty venue index")
    total = sum(venues.counts)
    if total == 0:
        raise ValueError("venue index carries no record counts")
    order = sorted(range(len(venues)), key=lambda i: (-venues.counts[i], i))
    return VenueRanking(
        entries=tuple((venues.labels[i], venues.counts[i] / total) for i in order)
    )
