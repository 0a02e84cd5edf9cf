"""End-to-end runs: configuration, training, and method evaluation.

A run config fixes every knob of a training run. Training on the same
config and corpus is fully deterministic, down to the bytes of the saved
bundle, which makes experiments reproducible and lets a config hash
identify what produced a given report.
"""

from __future__ import annotations

import hashlib
import json
import sys
from dataclasses import asdict, dataclass, replace
from pathlib import Path
from typing import Sequence

import numpy as np

from .bundle import ModelBundle
from .classify import (
    fit_logit,
    most_frequent_ranking,
    predict_ranking,
    uniform_random_ranking,
)
from .corpus import (
    PaperCorpus,
    corpus_fingerprint,
    document_text,
    load_corpus,
    stratified_split,
    venue_ids,
)
from .evaluation import MetricsReport, evaluate, mean_report
from .features import FEATURE_KINDS, FeatureSpec, featurize, featurize_corpus
from .nmf import NmfConfig, fit_nmf
from .recommend import build_venue_profiles
from .text import build_vocabulary, fit_tfidf, vectorize_corpus

if sys.version_info >= (3, 11):
    import tomllib
else:
    import tomli as tomllib

__all__ = [
    "RunConfig",
    "config_hash",
    "train_bundle",
    "evaluate_methods",
    "logit_method_for",
    "normalize_method",
]

# Method ids accepted on the command line and in reports; "uniform-random"
# is an alias of "random".
_LOGIT_METHOD_BY_KIND = {
    "tf": "logit-tf",
    "tfidf": "logit-tfidf",
    "nmf": "logit-nmf",
    "tfidf_plus_nmf": "logit-tfidf-nmf",
}
_LOGIT_LABELS = {
    "tf": "Logit (tf)",
    "tfidf": "Logit (tf-idf)",
    "nmf": "Logit (NMF)",
    "tfidf_plus_nmf": "Logit (tf-idf + NMF)",
}


@dataclass(frozen=True)
class RunConfig:
    """Everything a training or evaluation run depends on."""

    corpus_path: str = "corpus.jsonl"
    bundle_path: str = "bundle.bin"
    report_path: str = "report.json"
    test_fraction: float = 0.2
    split_seed: int = 7
    min_df: int = 5
    max_df_ratio: float = 0.5
    max_features: int | None = None
    nmf: NmfConfig = NmfConfig()
    l2_strength: float = 1.0
    logit_max_iter: int = 500
    logit_tol: float = 1e-5
    feature_kind: str = "tfidf_plus_nmf"
    eval_ks: tuple[int, ...] = (1, 5)
    random_runs: int = 20
    random_seed: int = 0

    def __post_init__(self) -> None:
        if self.feature_kind not in FEATURE_KINDS:
            raise ValueError(f"unknown feature kind: {self.feature_kind!r}")
        if self.random_runs < 1:
            raise ValueError("random_runs must be positive")

    def to_dict(self) -> dict:
        """Canonical nested form, mirroring the TOML layout."""
        return {
            "corpus": self.corpus_path,
            "bundle": self.bundle_path,
            "report": self.report_path,
            "split": {"test_fraction": self.test_fraction, "seed": self.split_seed},
            "vocabulary": {
                "min_df": self.min_df,
                "max_df_ratio": self.max_df_ratio,
                "max_features": self.max_features,
            },
            "nmf": asdict(self.nmf),
            "logit": {
                "l2_strength": self.l2_strength,
                "max_iter": self.logit_max_iter,
                "tol": self.logit_tol,
            },
            "features": {"kind": self.feature_kind},
            "evaluation": {
                "ks": list(self.eval_ks),
                "random_runs": self.random_runs,
                "random_seed": self.random_seed,
            },
        }

    @classmethod
    def from_toml(cls, path: str | Path) -> "RunConfig":
        """Read a config file, rejecting unknown sections and keys.

        Every key is optional and falls back to the defaults above; paths in
        the file are taken as written, relative to the working directory.
        """
        with open(path, "rb") as handle:
            try:
                raw = tomllib.load(handle)
            except tomllib.TOMLDecodeError as exc:
                raise ValueError(f"{path}: invalid config: {exc}") from None
        return cls._from_dict(raw, source=str(path))

    @classmethod
    def _from_dict(cls, raw: dict, source: str) -> "RunConfig":
        def section(name: str, known: Sequence[str]) -> dict:
            table = raw.pop(name, {})
            if not isinstance(table, dict):
                raise ValueError(f"{source}: [{name}] must be a table")
            unknown = set(table) - set(known)
            if unknown:
                raise ValueError(
                    f"{source}: unknown key(s) in [{name}]: {sorted(unknown)}"
                )
            return table

        fields: dict = {}
        for key, attr in (("corpus", "corpus_path"), ("bundle", "bundle_path"), ("report", "report_path")):
            if key in raw:
                fields[attr] = str(raw.pop(key))
        split = section("split", ("test_fraction", "seed"))
        if "test_fraction" in split:
            fields["test_fraction"] = float(split["test_fraction"])
        if "seed" in split:
            fields["split_seed"] = int(split["seed"])
        vocab = section("vocabulary", ("min_df", "max_df_ratio", "max_features"))
        if "min_df" in vocab:
            fields["min_df"] = int(vocab["min_df"])
        if "max_df_ratio" in vocab:
            fields["max_df_ratio"] = float(vocab["max_df_ratio"])
        if "max_features" in vocab:
            fields["max_features"] = int(vocab["max_features"])
        nmf_table = section(
            "nmf",
            (
                "num_topics",
                "kappa",
                "w_max_iter",
                "h_max_iter",
                "epochs",
                "batch_size",
                "seed",
                "tolerance",
            ),
        )
        fields["nmf"] = NmfConfig(**nmf_table)
        logit = section("logit", ("l2_strength", "max_iter", "tol"))
        if "l2_strength" in logit:
            fields["l2_strength"] = float(logit["l2_strength"])
        if "max_iter" in logit:
            fields["logit_max_iter"] = int(logit["max_iter"])
        if "tol" in logit:
            fields["logit_tol"] = float(logit["tol"])
        feats = section("features", ("kind",))
        if "kind" in feats:
            fields["feature_kind"] = str(feats["kind"])
        evaluation = section("evaluation", ("ks", "random_runs", "random_seed"))
        if "ks" in evaluation:
            fields["eval_ks"] = tuple(int(k) for k in evaluation["ks"])
        if "random_runs" in evaluation:
            fields["random_runs"] = int(evaluation["random_runs"])
        if "random_seed" in evaluation:
            fields["random_seed"] = int(evaluation["random_seed"])
        if raw:
            raise ValueError(f"{source}: unknown top-level key(s): {sorted(raw)}")
        return cls(**fields)

    def override(self, **changes) -> "RunConfig":
        """Copy with the given fields replaced; None values are ignored."""
        actual = {k: v for k, v in changes.items() if v is not None}
        return replace(self, **actual)


def config_hash(config: RunConfig) -> str:
    """Stable hash identifying a resolved config."""
    canonical = json.dumps(
        config.to_dict(), sort_keys=True, ensure_ascii=True, separators=(",", ":")
    )
    return hashlib.sha256(canonical.encode("ascii")).hexdigest()


def train_bundle(config: RunConfig, corpus: PaperCorpus | None = None) -> ModelBundle:
    """Train every component on the train part of the configured corpus.

    The corpus is split once; the vocabulary, tf-idf weighting, topic model,
    venue profiles, and classifier are all fitted on the train part only.

    Args:
        config: run configuration.
        corpus: already-loaded corpus; when None it is read from
            ``config.corpus_path``.
    """
    if corpus is None:
        corpus = load_corpus(config.corpus_path)
    if len(corpus.venues) < 2:
        raise ValueError("training needs a corpus with at least two venues")
    train, _ = stratified_split(corpus, config.test_fraction, config.split_seed)
    texts = [document_text(r) for r in train.records]
    vocabulary = build_vocabulary(
        texts,
        min_df=config.min_df,
        max_df_ratio=config.max_df_ratio,
        max_features=config.max_features,
    )
    tfidf = fit_tfidf(texts, vocabulary)
    doc_term = vectorize_corpus(texts, tfidf, weighting="tfidf")
    nmf_model, doc_topic = fit_nmf(
        doc_term, config.nmf, vocabulary=tfidf.vocabulary
    )
    labels = venue_ids(train)
    profiles = build_venue_profiles(doc_topic, labels, train.venues)
    spec = FeatureSpec(kind=config.feature_kind, tfidf=tfidf, nmf=nmf_model)
    if config.feature_kind == "tfidf":
        features = doc_term
    else:
        features = featurize_corpus(texts, spec)
    logit = fit_logit(
        features,
        labels,
        train.venues,
        l2_strength=config.l2_strength,
        max_iter=config.logit_max_iter,
        tol=config.logit_tol,
    )
    return ModelBundle(
        tfidf=tfidf,
        nmf=nmf_model,
        logit=logit,
        feature_kind=config.feature_kind,
        profiles=profiles,
        corpus_fingerprint=corpus_fingerprint(corpus),
    )


def logit_method_for(feature_kind: str) -> str:
    """Method id of the classifier trained with ``feature_kind`` features."""
    return _LOGIT_METHOD_BY_KIND[feature_kind]


def normalize_method(method: str) -> str:
    if method == "uniform-random":
        return "random"
    return method


def evaluate_methods(
    bundle: ModelBundle,
    test: PaperCorpus,
    ks: Sequence[int],
    methods: Sequence[str] | None = None,
    random_runs: int = 20,
    random_seed: int = 0,
) -> list[MetricsReport]:
    """Evaluate baselines and the trained classifier on one test corpus.

    Args:
        bundle: trained models; its venue index orders every ranking.
        test: held-out corpus, labels drawn from the bundle's venues.
        ks: accuracy cutoffs.
        methods: method ids among "random" (alias "uniform-random"),
            "most-frequent", "logit", or the explicit logit id matching the
            bundle's feature kind; None evaluates all three.
        random_runs: number of seeded runs averaged for the random baseline.
        random_seed: base seed of those runs.

    Raises:
        ValueError: for an unknown method id, or a logit id requesting a
            feature kind the bundle was not trained with.
    """
    bundle_method = logit_method_for(bundle.feature_kind)
    if methods is None:
        chosen = ["random", "most-frequent", bundle_method]
    else:
        chosen = []
        for method in methods:
            method = normalize_method(method)
            if method == "logit":
                method = bundle_method
            if method in _LOGIT_METHOD_BY_KIND.values() and method != bundle_method:
                raise ValueError(
                    f"bundle was trained with {bundle.feature_kind!r} features; "
                    f"retrain to evaluate {method!r}"
                )
            if method not in ("random", "most-frequent", bundle_method):
                raise ValueError(f"unknown method: {method!r}")
            chosen.append(method)

    reports: list[MetricsReport] = []
    for method in chosen:
        if method == "random":
            per_run = []
            for run in range(random_runs):
                rng = np.random.default_rng(random_seed + run)
                per_run.append(
                    evaluate(
                        lambda text: uniform_random_ranking(
                            bundle.venues, seed=int(rng.integers(2**63))
                        ),
                        test,
                        ks,
                        method="Uniform Random",
                    )
                )
            if random_runs == 1:
                reports.append(per_run[0])
            else:
                reports.append(
                    mean_report(per_run, f"Uniform Random (avg of {random_runs})")
                )
        elif method == "most-frequent":
            constant = most_frequent_ranking(bundle.venues)
            reports.append(
                evaluate(lambda text: constant, test, ks, method="Most Frequent")
            )
        else:
            spec = bundle.feature_spec
            reports.append(
                evaluate(
                    lambda text: predict_ranking(bundle.logit, featurize(text, spec)),
                    test,
                    ks,
                    method=_LOGIT_LABELS[bundle.feature_kind],
                )
            )
    return reports
