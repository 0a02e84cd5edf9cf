"""Shared fixtures: corpus files on disk and one small trained bundle."""

from __future__ import annotations

import json

import pytest

from venuerec.nmf import NmfConfig
from venuerec.pipeline import RunConfig, train_bundle
from venuerec.synthetic import planted_corpus


@pytest.fixture
def write_jsonl(tmp_path):
    """Return a writer putting JSON-lines rows into a temp file."""

    def _write(rows, name="corpus.jsonl"):
        path = tmp_path / name
        with open(path, "w", encoding="utf-8") as out:
            for row in rows:
                out.write(json.dumps(row) + "\n")
        return path

    return _write


def small_run_config(**overrides) -> RunConfig:
    """Config sized for the small planted corpora used across tests."""
    base = dict(
        test_fraction=0.25,
        split_seed=7,
        min_df=3,
        max_df_ratio=0.5,
        nmf=NmfConfig(num_topics=4, epochs=10, batch_size=2048, seed=0, tolerance=0.0),
        feature_kind="tfidf_plus_nmf",
        eval_ks=(1, 2),
        random_runs=3,
    )
    base.update(overrides)
    return RunConfig(**base)


@pytest.fixture(scope="session")
def toy_corpus():
    return planted_corpus(num_venues=4, docs_per_venue=40, terms_per_venue=12, seed=3)


@pytest.fixture(scope="session")
def toy_bundle(toy_corpus):
    return train_bundle(small_run_config(), corpus=toy_corpus)
