"""Labeled paper corpora: loading, validation, indexing, and stratified splits.

A corpus is an immutable sequence of paper records, each carrying a title, an
abstract, an ordered list of keywords, and the venue where the paper appeared.
Corpora are read from JSON-lines files with exactly those fields. Records that
violate the corpus invariants are skipped and reported rather than aborting
the load, since large scraped collections always contain some dirt; structural
problems (an unreadable file, a line that is not valid JSON, a file with no
usable records at all) are hard errors.
"""

from __future__ import annotations

import hashlib
import json
from dataclasses import dataclass, field
from pathlib import Path
from typing import Iterable, Sequence

import numpy as np

__all__ = [
    "PaperRecord",
    "LabelIndex",
    "LoadReport",
    "PaperCorpus",
    "load_corpus",
    "stratified_split",
    "document_text",
    "query_text",
    "venue_ids",
    "corpus_fingerprint",
]

# Rejection details kept per load; counts are always complete.
_MAX_REPORTED_REJECTIONS = 100


@dataclass(frozen=True)
class PaperRecord:
    """One paper: title, abstract, keywords in original order, venue label."""

    title: str
    abstract: str
    keywords: tuple[str, ...]
    venue: str

    def invalid_reason(self) -> str | None:
        """Return why this record is unusable, or None if it is acceptable.

        A record needs text to describe it (title or abstract nonempty) and a
        nonempty venue label to act as its class.
        """
        if not self.title.strip() and not self.abstract.strip():
            return "title and abstract are both empty"
        if not self.venue.strip():
            return "venue label is empty"
        return None


@dataclass(frozen=True)
class LabelIndex:
    """Bidirectional venue-label catalog with per-label record counts.

    Labels keep their assigned positions for the lifetime of the index, so
    integer class ids stay meaningful across splits and model training.
    """

    labels: tuple[str, ...]
    counts: tuple[int, ...]
    _positions: dict[str, int] = field(init=False, repr=False, compare=False)

    def __post_init__(self) -> None:
        if len(self.labels) != len(self.counts):
            raise ValueError("labels and counts have different lengths")
        if len(set(self.labels)) != len(self.labels):
            raise ValueError("duplicate venue label in index")
        if any(c < 0 for c in self.counts):
            raise ValueError("negative label count")
        object.__setattr__(
            self, "_positions", {label: i for i, label in enumerate(self.labels)}
        )

    def __len__(self) -> int:
        return len(self.labels)

    def __contains__(self, label: str) -> bool:
        return label in self._positions

    def position(self, label: str) -> int:
        """Integer id of ``label``; raises KeyError for unknown labels."""
        try:
            return self._positions[label]
        except KeyError:
            raise KeyError(f"unknown venue label: {label!r}") from None

    def count_of(self, label: str) -> int:
        return self.counts[self.position(label)]

    @classmethod
    def from_venues(
        cls, venues: Iterable[str], order: Sequence[str] | None = None
    ) -> "LabelIndex":
        """Build an index from one venue name per record.

        Args:
            venues: venue label of every record, in corpus order.
            order: optional fixed label ordering to reuse (for example the
                parent corpus of a split); labels then keep their parent
                positions and counts are recomputed. Venues outside ``order``
                raise ValueError.
        """
        tallies: dict[str, int] = {}
        for name in venues:
            tallies[name] = tallies.get(name, 0) + 1
        if order is None:
            labels = tuple(tallies)
        else:
            labels = tuple(order)
            unknown = set(tallies) - set(labels)
            if unknown:
                raise ValueError(f"venues not present in label order: {sorted(unknown)}")
        return cls(labels=labels, counts=tuple(tallies.get(l, 0) for l in labels))


@dataclass(frozen=True)
class LoadReport:
    """Outcome of one corpus load: counts plus the first rejection reasons."""

    lines_read: int
    loaded: int
    rejected: int
    rejections: tuple[tuple[int, str], ...]

    def summary(self) -> str:
        return (
            f"{self.loaded} records loaded, {self.rejected} rejected "
            f"out of {self.lines_read} lines"
        )


@dataclass(frozen=True)
class PaperCorpus:
    """Immutable collection of records plus the venue index covering them."""

    records: tuple[PaperRecord, ...]
    venues: LabelIndex
    load_report: LoadReport | None = field(default=None, compare=False)

    def __post_init__(self) -> None:
        if sum(self.venues.counts) != len(self.records):
            raise ValueError("venue counts do not add up to the corpus size")
        for record in self.records:
            if record.venue not in self.venues:
                raise ValueError(f"record venue {record.venue!r} missing from index")

    def __len__(self) -> int:
        return len(self.records)

    @classmethod
    def build(
        cls,
        records: Sequence[PaperRecord],
        label_order: Sequence[str] | None = None,
        load_report: LoadReport | None = None,
    ) -> "PaperCorpus":
        """Create a corpus, deriving the venue index from the records.

        Without ``label_order`` labels are numbered in order of first
        appearance; with it they keep the given positions.
        """
        index = LabelIndex.from_venues((r.venue for r in records), order=label_order)
        return cls(records=tuple(records), venues=index, load_report=load_report)


def _record_from_object(obj: object) -> PaperRecord | str:
    """Parse one decoded JSON value into a record, or return a reason string."""
    if not isinstance(obj, dict):
        return "line is not a JSON object"
    title = obj.get("title", "")
    abstract = obj.get("abstract", "")
    venue = obj.get("venue")
    if not isinstance(title, str):
        return "field 'title' is not a string"
    if not isinstance(abstract, str):
        return "field 'abstract' is not a string"
    if venue is None:
        return "field 'venue' is missing"
    if not isinstance(venue, str):
        return "field 'venue' is not a string"
    raw_keywords = obj.get("keywords", [])
    if not isinstance(raw_keywords, list) or not all(
        isinstance(k, str) for k in raw_keywords
    ):
        return "field 'keywords' is not a list of strings"
    # Duplicate keywords carry no extra signal; keep first occurrences in order.
    keywords = tuple(dict.fromkeys(raw_keywords))
    record = PaperRecord(
        title=title, abstract=abstract, keywords=keywords, venue=venue.strip()
    )
    reason = record.invalid_reason()
    return record if reason is None else reason


def load_corpus(path: str | Path, format: str = "jsonl") -> PaperCorpus:
    """Read a labeled corpus from disk.

    Args:
        path: file to read.
        format: only ``"jsonl"`` is supported; one JSON object per line with
            fields ``title``, ``abstract``, ``keywords`` (optional list of
            strings), and ``venue``.

    Returns:
        The corpus, with venue labels numbered in order of first appearance
        and a ``load_report`` describing skipped records.

    Raises:
        ValueError: for an unsupported format, a line that is not valid JSON
            (reported with its line number), or a file yielding zero valid
            records.
        OSError: if the file cannot be read.
    """
    if format != "jsonl":
        raise ValueError(f"unsupported corpus format: {format!r}")
    path = Path(path)
    records: list[PaperRecord] = []
    rejections: list[tuple[int, str]] = []
    lines_read = 0
    rejected = 0
    with open(path, encoding="utf-8") as handle:
        for lineno, line in enumerate(handle, start=1):
            if not line.strip():
                continue
            lines_read += 1
            try:
                obj = json.loads(line)
            except json.JSONDecodeError as exc:
                raise ValueError(f"{path}:{lineno}: malformed JSON: {exc.msg}") from exc
            parsed = _record_from_object(obj)
            if isinstance(parsed, str):
                rejected += 1
                if len(rejections) < _MAX_REPORTED_REJECTIONS:
                    rejections.append((lineno, parsed))
            else:
                records.append(parsed)
    if not records:
        raise ValueError(f"{path}: no valid records")
    report = LoadReport(
        lines_read=lines_read,
        loaded=len(records),
        rejected=rejected,
        rejections=tuple(rejections),
    )
    return PaperCorpus.build(records, load_report=report)


def stratified_split(
    corpus: PaperCorpus, test_fraction: float, seed: int
) -> tuple[PaperCorpus, PaperCorpus]:
    """Split into train and test parts, stratified by venue.

    Every venue contributes test records in proportion to its size (within
    one record of ``test_fraction`` times its count, by rounding), and both
    parts keep at least one record per venue. Both children share the parent
    label ordering, so class ids remain comparable.

    Args:
        corpus: parent corpus; every venue needs at least two records.
        test_fraction: fraction of each venue reserved for testing, strictly
            between 0 and 1.
        seed: seed for the shuffle; the same inputs always give the same
            split.

    Raises:
        ValueError: for a degenerate fraction or a venue with fewer than two
            records.
    """
    if not 0.0 < test_fraction < 1.0:
        raise ValueError(f"test_fraction must lie strictly in (0, 1), got {test_fraction}")
    positions: dict[str, list[int]] = {label: [] for label in corpus.venues.labels}
    for i, record in enumerate(corpus.records):
        positions[record.venue].append(i)
    rng = np.random.default_rng(seed)
    test_positions: list[int] = []
    for label in corpus.venues.labels:
        members = positions[label]
        if len(members) < 2:
            raise ValueError(
                f"venue {label!r} has {len(members)} record(s); need at least 2 to split"
            )
        shuffled = rng.permutation(len(members))
        n_test = int(len(members) * test_fraction + 0.5)
        n_test = min(max(n_test, 1), len(members) - 1)
        test_positions.extend(members[j] for j in shuffled[:n_test])
    chosen = set(test_positions)
    test_records = [corpus.records[i] for i in sorted(chosen)]
    train_records = [r for i, r in enumerate(corpus.records) if i not in chosen]
    order = corpus.venues.labels
    return (
        PaperCorpus.build(train_records, label_order=order),
        PaperCorpus.build(test_records, label_order=order),
    )


def query_text(title: str, abstract: str, keywords: Sequence[str]) -> str:
    """Join query fields into the single string fed to the text pipeline.

    The order (title, abstract, keywords) is fixed; vectorization depends on
    it only through token counts, but keeping it stable makes runs repeatable.
    """
    return " ".join((title, abstract, *keywords))


def document_text(record: PaperRecord) -> str:
    """Text of one record as seen by tokenization and weighting."""
    return query_text(record.title, record.abstract, record.keywords)


def venue_ids(corpus: PaperCorpus) -> np.ndarray:
    """Integer class ids of every record, aligned with ``corpus.records``."""
    return np.fromiter(
        (corpus.venues.position(r.venue) for r in corpus.records),
        dtype=np.int64,
        count=len(corpus.records),
    )


def corpus_fingerprint(corpus: PaperCorpus) -> str:
    """Content hash of the corpus, independent of how it was loaded."""
    digest = hashlib.sha256()
    for record in corpus.records:
        payload = json.dumps(
            [record.title, record.abstract, list(record.keywords), record.venue],
            ensure_ascii=True,
            separators=(",", ":"),
        )
        digest.update(payload.encode("ascii"))
        digest.update(b"\n")
    return digest.hexdigest()
