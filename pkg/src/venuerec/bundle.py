"""Persistence of trained model bundles in one self-contained file.

A bundle gathers everything recommendation needs: the tf-idf model, the
topic model, the classifier, the feature spec, and venue topic profiles.
The on-disk layout is a fixed binary framing:

    magic (8 bytes) | format version (uint32 LE) | header length (uint64 LE)
    | canonical JSON header | raw little-endian array payloads
    | sha256 of everything before it (32 bytes)

The header carries all scalars, strings, and array descriptors with sorted
keys, and arrays are written in the order the header lists them, so saving
the same bundle twice produces byte-identical files. Loading verifies the
checksum and rejects files written by a different format version, naming
both versions.
"""

from __future__ import annotations

import hashlib
import json
import struct
from dataclasses import asdict, dataclass
from pathlib import Path

import numpy as np

from .classify import LogitModel
from .corpus import LabelIndex
from .features import FeatureSpec
from .nmf import NmfConfig, NmfModel
from .recommend import VenueProfile
from .text import TfidfModel, Vocabulary

__all__ = [
    "FORMAT_VERSION",
    "BundleError",
    "BundleVersionError",
    "BundleChecksumError",
    "ModelBundle",
    "save_bundle",
    "load_bundle",
]

FORMAT_VERSION = 1

_MAGIC = b"VENUEREC"
_CHECKSUM_BYTES = 32
_FRAME = struct.Struct("<8sIQ")


class BundleError(Exception):
    """A bundle file cannot be read."""


class BundleVersionError(BundleError):
    """The file was written by an unsupported format version."""


class BundleChecksumError(BundleError):
    """The file content does not match its recorded checksum."""


@dataclass(frozen=True, eq=False)
class ModelBundle:
    """All trained components of one run, cross-checked for consistency."""

    tfidf: TfidfModel
    nmf: NmfModel
    logit: LogitModel
    feature_kind: str
    profiles: tuple[VenueProfile, ...]
    corpus_fingerprint: str
    format_version: int = FORMAT_VERSION

    def __post_init__(self) -> None:
        if self.nmf.vocabulary is not self.tfidf.vocabulary:
            raise ValueError("topic model and tf-idf model use different vocabularies")
        spec = self.feature_spec
        if self.logit.dimension != spec.dimension:
            raise ValueError(
                f"classifier expects dimension {self.logit.dimension}, features "
                f"provide {spec.dimension}"
            )
        if tuple(p.venue for p in self.profiles) != self.venues.labels:
            raise ValueError("profiles do not match the venue index order")
        for profile in self.profiles:
            if profile.topic_weights.shape != (self.nmf.num_topics,):
                raise ValueError(
                    f"profile for {profile.venue!r} has the wrong topic count"
                )

    @property
    def venues(self) -> LabelIndex:
        return self.logit.venues

    @property
    def feature_spec(self) -> FeatureSpec:
        return FeatureSpec(kind=self.feature_kind, tfidf=self.tfidf, nmf=self.nmf)


def _array_payloads(bundle: ModelBundle) -> list[tuple[str, str, np.ndarray]]:
    """(name, dtype, array) triples in the fixed serialization order."""
    vocab = bundle.tfidf.vocabulary
    profile_weights = np.stack([p.topic_weights for p in bundle.profiles])
    support = np.fromiter(
        (p.supporting_papers for p in bundle.profiles),
        dtype=np.int64,
        count=len(bundle.profiles),
    )
    return [
        ("vocabulary_df", "<i8", np.asarray(vocab.document_frequency)),
        ("idf", "<f8", bundle.tfidf.idf),
        ("topic_term", "<f8", bundle.nmf.topic_term),
        ("nmf_error_trace", "<f8", np.asarray(bundle.nmf.error_trace)),
        ("logit_weights", "<f8", bundle.logit.weights),
        ("logit_biases", "<f8", bundle.logit.biases),
        ("logit_loss_trace", "<f8", np.asarray(bundle.logit.loss_trace)),
        ("profile_weights", "<f8", profile_weights),
        ("profile_support", "<i8", support),
    ]


def save_bundle(bundle: ModelBundle, path: str | Path) -> None:
    """Write ``bundle`` to ``path``.

    The output is a deterministic function of the bundle contents; no
    timestamps or environment details are recorded.
    """
    payloads = _array_payloads(bundle)
    header = {
        "arrays": [
            {"name": name, "dtype": dtype, "shape": list(np.shape(arr))}
            for name, dtype, arr in payloads
        ],
        "corpus_fingerprint": bundle.corpus_fingerprint,
        "feature_kind": bundle.feature_kind,
        "logit": {"l2_strength": bundle.logit.l2_strength},
        "nmf_config": asdict(bundle.nmf.config),
        "tfidf": {"fitted_documents": bundle.tfidf.fitted_documents},
        "venues": {
            "labels": list(bundle.venues.labels),
            "counts": list(bundle.venues.counts),
        },
        "vocabulary": {
            "terms": list(bundle.tfidf.vocabulary.terms),
            "total_documents": bundle.tfidf.vocabulary.total_documents,
        },
    }
    header_bytes = json.dumps(
        header, sort_keys=True, ensure_ascii=True, separators=(",", ":")
    ).encode("ascii")
    digest = hashlib.sha256()
    with open(path, "wb") as out:

        def emit(chunk: bytes) -> None:
            digest.update(chunk)
            out.write(chunk)

        emit(_FRAME.pack(_MAGIC, FORMAT_VERSION, len(header_bytes)))
        emit(header_bytes)
        for _, dtype, arr in payloads:
            emit(np.ascontiguousarray(arr, dtype=dtype).tobytes())
        out.write(digest.digest())


def load_bundle(path: str | Path) -> ModelBundle:
    """Read a bundle back; save then load round-trips every array bitwise.

    Raises:
        BundleError: for missing, truncated, or malformed files.
        BundleVersionError: for files from another format version.
        BundleChecksumError: when the stored checksum does not match.
    """
    data = Path(path).read_bytes()
    if len(data) < _FRAME.size + _CHECKSUM_BYTES:
        raise BundleError(f"{path}: truncated bundle file")
    magic, version, header_len = _FRAME.unpack_from(data)
    if magic != _MAGIC:
        raise BundleError(f"{path}: not a model bundle file")
    if version != FORMAT_VERSION:
        raise BundleVersionError(
            f"{path}: bundle format version {version} is unsupported; this "
            f"build reads version {FORMAT_VERSION}"
        )
    digest = hashlib.sha256(data[:-_CHECKSUM_BYTES]).digest()
    if digest != data[-_CHECKSUM_BYTES:]:
        raise BundleChecksumError(f"{path}: checksum mismatch, file is damaged")
    try:
        return _parse(data, header_len)
    except BundleError:
        raise
    except (KeyError, TypeError, ValueError, json.JSONDecodeError) as exc:
        raise BundleError(f"{path}: malformed bundle content: {exc}") from exc


def _parse(data: bytes, header_len: int) -> ModelBundle:
    header_start = _FRAME.size
    payload_start = header_start + header_len
    if payload_start + _CHECKSUM_BYTES > len(data):
        raise BundleError("truncated bundle header")
    header = json.loads(data[header_start:payload_start])

    arrays: dict[str, np.ndarray] = {}
    cursor = payload_start
    for descriptor in header["arrays"]:
        shape = tuple(int(s) for s in descriptor["shape"])
        dtype = np.dtype(descriptor["dtype"])
        nbytes = int(np.prod(shape, dtype=np.int64)) * dtype.itemsize
        if cursor + nbytes > len(data) - _CHECKSUM_BYTES:
            raise BundleError("bundle payload is shorter than its header claims")
        block = data[cursor : cursor + nbytes]
        arrays[descriptor["name"]] = np.frombuffer(block, dtype=dtype).reshape(shape).copy()
        cursor += nbytes
    if cursor != len(data) - _CHECKSUM_BYTES:
        raise BundleError("bundle payload is longer than its header claims")

    vocabulary = Vocabulary(
        terms=tuple(header["vocabulary"]["terms"]),
        document_frequency=arrays["vocabulary_df"],
        total_documents=int(header["vocabulary"]["total_documents"]),
    )
    tfidf = TfidfModel(
        vocabulary=vocabulary,
        idf=arrays["idf"],
        fitted_documents=int(header["tfidf"]["fitted_documents"]),
    )
    nmf = NmfModel(
        topic_term=arrays["topic_term"],
        config=NmfConfig(**header["nmf_config"]),
        error_trace=tuple(float(e) for e in arrays["nmf_error_trace"]),
        vocabulary=vocabulary,
    )
    venues = LabelIndex(
        labels=tuple(header["venues"]["labels"]),
        counts=tuple(int(c) for c in header["venues"]["counts"]),
    )
    logit = LogitModel(
        weights=arrays["logit_weights"],
        biases=arrays["logit_biases"],
        venues=venues,
        l2_strength=float(header["logit"]["l2_strength"]),
        loss_trace=tuple(float(l) for l in arrays["logit_loss_trace"]),
    )
    profiles = tuple(
        VenueProfile(
            venue=venues.labels[i],
            topic_weights=arrays["profile_weights"][i],
            supporting_papers=int(arrays["profile_support"][i]),
        )
        for i in range(len(venues))
    )
    return ModelBundle(
        tfidf=tfidf,
        nmf=nmf,
        logit=logit,
        feature_kind=header["feature_kind"],
        profiles=profiles,
        corpus_fingerprint=header["corpus_fingerprint"],
    )
