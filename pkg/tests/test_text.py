from __future__ import annotations

import math

import numpy as np
import pytest

from venuerec.text import (
    SparseVector,
    Vocabulary,
    build_vocabulary,
    fit_tfidf,
    tokenize,
    vectorize,
    vectorize_corpus,
)


class TestTokenize:
    def test_lowercase_and_split_on_punctuation(self):
        assert tokenize("BERT: Pre-training of Deep") == [
            "bert",
            "pre",
            "training",
            "of",
            "deep",
        ]

    def test_empty_text(self):
        assert tokenize("") == []

    def test_drops_short_tokens_and_pure_digits(self):
        assert tokenize("TF-IDF 2021 a") == ["tf", "idf"]

    def test_underscore_separates(self):
        assert tokenize("ab_cd") == ["ab", "cd"]

    def test_digits_inside_words_kept(self):
        assert tokenize("word2vec gpt3") == ["word2vec", "gpt3"]


class TestBuildVocabulary:
    def test_min_df_filter(self):
        vocab = build_vocabulary(
            ["aa bb", "aa cc", "aa dd"], min_df=2, max_df_ratio=1.0
        )
        assert vocab.terms == ("aa",)
        assert vocab.document_frequency.tolist() == [3]
        assert vocab.total_documents == 3

    def test_no_filtering_keeps_all_terms_sorted(self):
        vocab = build_vocabulary(["aa bb", "aa cc", "aa dd"], min_df=1, max_df_ratio=1.0)
        assert vocab.terms == ("aa", "bb", "cc", "dd")

    def test_max_features_by_frequency_with_lexicographic_ties(self):
        vocab = build_vocabulary(
            ["aa bb", "aa cc", "aa"], min_df=1, max_df_ratio=1.0, max_features=2
        )
        assert vocab.terms == ("aa", "bb")

    def test_max_df_ratio_drops_ubiquitous_terms(self):
        texts = ["aa xx", "aa yy", "aa xx", "aa zz"]
        vocab = build_vocabulary(texts, min_df=1, max_df_ratio=0.5)
        assert "aa" not in vocab.terms
        assert "xx" in vocab.terms

    def test_indices_are_lexicographic(self):
        vocab = build_vocabulary(["zz yy xx ww"] * 2, min_df=1, max_df_ratio=1.0)
        assert vocab.terms == tuple(sorted(vocab.terms))
        assert vocab.position("ww") == 0

    def test_empty_input_rejected(self):
        with pytest.raises(ValueError):
            build_vocabulary([], min_df=1)

    def test_empty_vocabulary_rejected(self):
        with pytest.raises(ValueError, match="survived"):
            build_vocabulary(["aa", "bb"], min_df=5, max_df_ratio=1.0)


class TestFitTfidf:
    def test_idf_formula(self):
        model = fit_tfidf(["aa bb", "aa cc", "bb cc"], _vocab("aa", "bb", "cc"))
        # df = 2 for every term over 3 documents
        assert np.allclose(model.idf, math.log(4 / 3) + 1)
        assert abs(model.idf[0] - 1.2876820724517809) < 1e-12

    def test_term_in_every_document_gets_idf_one(self):
        model = fit_tfidf(["aa bb", "aa cc", "aa dd"], _vocab("aa"))
        assert model.idf[0] == 1.0

    def test_single_document_corpus(self):
        model = fit_tfidf(["aa"], _vocab("aa"))
        assert model.idf[0] == 1.0

    def test_idf_non_increasing_in_document_frequency(self):
        texts = ["aa", "aa bb", "aa bb cc", "aa bb cc dd"]
        model = fit_tfidf(texts, _vocab("aa", "bb", "cc", "dd"))
        by_df = model.idf[np.argsort(model.vocabulary.document_frequency)]
        assert (np.diff(by_df) <= 0).all()


def _vocab(*terms):
    return Vocabulary(
        terms=tuple(sorted(terms)),
        document_frequency=np.ones(len(terms), dtype=np.int64),
        total_documents=1,
    )


class TestVectorize:
    @staticmethod
    def unit_idf_model(*terms):
        # One fitting document containing every term once makes all idf = 1.
        return fit_tfidf([" ".join(terms)], _vocab(*terms))

    def test_out_of_vocabulary_text_is_zero_vector(self):
        model = self.unit_idf_model("aa", "bb")
        vector = vectorize("cc dd", model)
        assert vector.nnz == 0
        assert vector.dimension == 2

    def test_single_repeated_term_normalizes_to_one(self):
        model = self.unit_idf_model("aa", "bb")
        vector = vectorize("aa aa aa aa aa", model)
        assert vector.indices.tolist() == [0]
        assert vector.values.tolist() == [1.0]

    def test_two_one_weighting(self):
        model = self.unit_idf_model("aa", "bb")
        vector = vectorize("aa bb aa", model)
        assert vector.indices.tolist() == [0, 1]
        assert abs(vector.values[0] - 2 / math.sqrt(5)) < 1e-12
        assert abs(vector.values[1] - 1 / math.sqrt(5)) < 1e-12

    def test_norm_is_zero_or_one(self):
        texts = ["aa bb cc", "aa aa", "zz", ""]
        model = fit_tfidf(texts, _vocab("aa", "bb", "cc"))
        for text in texts:
            norm = float(np.linalg.norm(vectorize(text, model).values))
            assert norm == 0.0 or abs(norm - 1.0) < 1e-9

    def test_tf_and_tfidf_share_support(self):
        model = fit_tfidf(["aa bb", "aa"], _vocab("aa", "bb"))
        text = "aa bb bb"
        tf = vectorize(text, model, weighting="tf")
        tfidf = vectorize(text, model, weighting="tfidf")
        assert tf.indices.tolist() == tfidf.indices.tolist()

    def test_unknown_weighting_rejected(self):
        model = self.unit_idf_model("aa")
        with pytest.raises(ValueError, match="weighting"):
            vectorize("aa", model, weighting="idf")

    def test_corpus_matrix_rows_match_single_vectors_bitwise(self):
        texts = ["aa bb bb", "cc", "", "aa cc cc aa"]
        vocab = build_vocabulary(texts, min_df=1, max_df_ratio=1.0)
        model = fit_tfidf(texts, vocab)
        matrix = vectorize_corpus(texts, model)
        assert matrix.shape == (4, len(vocab))
        for i, text in enumerate(texts):
            row = matrix.getrow(i)
            single = vectorize(text, model)
            assert row.indices.tolist() == single.indices.tolist()
            assert row.data.tolist() == single.values.tolist()


class TestSparseVector:
    def test_strictly_increasing_indices_required(self):
        with pytest.raises(ValueError, match="increasing"):
            SparseVector(np.array([2, 1]), np.array([1.0, 1.0]), dimension=5)

    def test_indices_must_fit_dimension(self):
        with pytest.raises(ValueError, match="range"):
            SparseVector(np.array([5]), np.array([1.0]), dimension=5)

    def test_stored_zeros_rejected(self):
        with pytest.raises(ValueError, match="nonzero"):
            SparseVector(np.array([0, 1]), np.array([1.0, 0.0]), dimension=3)

    def test_dense_round_trip(self):
        dense = np.array([0.0, 1.5, 0.0, -2.0])
        vector = SparseVector.from_dense(dense)
        assert vector.indices.tolist() == [1, 3]
        assert np.array_equal(vector.to_dense(), dense)

    def test_zeros_constructor(self):
        zero = SparseVector.zeros(7)
        assert zero.nnz == 0 and zero.dimension == 7
