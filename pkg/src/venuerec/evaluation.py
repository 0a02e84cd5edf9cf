"""Ranking metrics and evaluation reports.

Accuracy@k counts test papers whose true venue appears in the top k;
mean reciprocal rank averages 1 / rank of the true venue. Per-item values
are aggregated with exact rational arithmetic, so results do not depend on
summation order and identical inputs give identical reports.
"""

from __future__ import annotations

import json
import time
from dataclasses import dataclass
from fractions import Fraction
from pathlib import Path
from typing import Callable, Sequence

from .classify import VenueRanking
from .corpus import PaperCorpus, document_text

__all__ = [
    "MetricsReport",
    "accuracy_at_k",
    "mrr",
    "evaluate",
    "mean_report",
    "format_report_table",
    "write_reports_json",
]


@dataclass(frozen=True)
class MetricsReport:
    """Metrics of one method on one test set."""

    method: str
    test_size: int
    accuracy: float
    accuracy_at_k: tuple[tuple[int, float], ...]
    mean_reciprocal_rank: float

    def at_k(self, k: int) -> float:
        for kk, value in self.accuracy_at_k:
            if kk == k:
                return value
        raise KeyError(f"no accuracy@{k} in this report")


def _true_ranks(
    rankings: Sequence[VenueRanking], true_venues: Sequence[str]
) -> list[int]:
    if len(rankings) != len(true_venues):
        raise ValueError("rankings and true venues differ in length")
    if not rankings:
        raise ValueError("cannot compute metrics on an empty test set")
    return [r.rank_of(v) for r, v in zip(rankings, true_venues)]


def accuracy_at_k(
    rankings: Sequence[VenueRanking], true_venues: Sequence[str], k: int
) -> float:
    """Fraction of items whose true venue ranks within the top ``k``.

    ``k`` must lie in [1, number of ranked venues]. The count is exact; the
    single final division is the only rounding.
    """
    ranks = _true_ranks(rankings, true_venues)
    if not 1 <= k <= len(rankings[0]):
        raise ValueError(f"k must lie in [1, {len(rankings[0])}], got {k}")
    hits = sum(1 for rank in ranks if rank <= k)
    return float(Fraction(hits, len(ranks)))


def mrr(rankings: Sequence[VenueRanking], true_venues: Sequence[str]) -> float:
    """Mean reciprocal rank of the true venues, exact until the final float."""
    ranks = _true_ranks(rankings, true_venues)
    total = sum((Fraction(1, rank) for rank in ranks), start=Fraction(0))
    return float(total / len(ranks))


def evaluate(
    pipeline: Callable[[str], VenueRanking],
    test: PaperCorpus,
    ks: Sequence[int],
    method: str = "",
) -> MetricsReport:
    """Run a ranking pipeline over a test corpus and report its metrics.

    Args:
        pipeline: maps one document text to a ranking covering all venues of
            the test corpus.
        test: held-out records with true venue labels.
        ks: cutoffs for accuracy@k, each in [1, number of venues].
        method: label stored in the report.

    Raises:
        ValueError: for an empty test corpus or out-of-range ``ks``.
        RuntimeError: if the pipeline fails on a record, naming its position.
    """
    if len(test) == 0:
        raise ValueError("cannot evaluate on an empty test corpus")
    rankings: list[VenueRanking] = []
    for i, record in enumerate(test.records):
        try:
            rankings.append(pipeline(document_text(record)))
        except Exception as exc:
            raise RuntimeError(f"pipeline failed on test record {i}: {exc}") from exc
    true_venues = [r.venue for r in test.records]
    return MetricsReport(
        method=method,
        test_size=len(test),
        accuracy=accuracy_at_k(rankings, true_venues, 1),
        accuracy_at_k=tuple(
            (int(k), accuracy_at_k(rankings, true_venues, int(k))) for k in ks
        ),
        mean_reciprocal_rank=mrr(rankings, true_venues),
    )


def mean_report(reports: Sequence[MetricsReport], method: str) -> MetricsReport:
    """Average several reports of the same shape, for randomized baselines."""
    if not reports:
        raise ValueError("cannot average zero reports")
    ks = [k for k, _ in reports[0].accuracy_at_k]
    if any([k for k, _ in r.accuracy_at_k] != ks for r in reports):
        raise ValueError("reports disagree on their accuracy cutoffs")
    n = len(reports)
    return MetricsReport(
        method=method,
        test_size=reports[0].test_size,
        accuracy=sum(r.accuracy for r in reports) / n,
        accuracy_at_k=tuple(
            (k, sum(r.at_k(k) for r in reports) / n) for k in ks
        ),
        mean_reciprocal_rank=sum(r.mean_reciprocal_rank for r in reports) / n,
    )


def format_report_table(reports: Sequence[MetricsReport]) -> str:
    """Aligned text table of several reports, one method per row.

    Accuracy@1 is folded into the Acc column; other cutoffs get their own
    columns.
    """
    if not reports:
        raise ValueError("no reports to format")
    ks = sorted({k for r in reports for k, _ in r.accuracy_at_k if k != 1})
    headers = ["Method", "Acc"] + [f"Acc@{k}" for k in ks] + ["MRR"]
    rows = [
        [r.method, f"{r.accuracy:.3f}"]
        + [f"{r.at_k(k):.3f}" for k in ks]
        + [f"{r.mean_reciprocal_rank:.3f}"]
        for r in reports
    ]
    widths = [
        max(len(headers[c]), *(len(row[c]) for row in rows))
        for c in range(len(headers))
    ]
    lines = []
    for cells in [headers] + rows:
        name = cells[0].ljust(widths[0])
        numbers = [cells[c].rjust(widths[c]) for c in range(1, len(cells))]
        lines.append("  ".join([name] + numbers).rstrip())
    return "\n".join(lines)


def write_reports_json(
    path: str | Path,
    reports: Sequence[MetricsReport],
    corpus_fingerprint: str,
    config_hash: str,
) -> None:
    """Write reports plus run identification as a JSON document."""
    ks = sorted({k for r in reports for k, _ in r.accuracy_at_k})
    payload = {
        "corpus_fingerprint": corpus_fingerprint,
        "config_hash": config_hash,
        "ks": ks,
        "written_at": time.strftime("%Y-%m-%dT%H:%M:%S%z"),
        "reports": [
            {
                "method": r.method,
                "test_size": r.test_size,
                "accuracy": r.accuracy,
                "accuracy_at_k": {str(k): v for k, v in r.accuracy_at_k},
                "mrr": r.mean_reciprocal_rank,
            }
            for r in reports
        ],
    }
    Path(path).write_text(json.dumps(payload, indent=2) + "\n", encoding="utf-8")
