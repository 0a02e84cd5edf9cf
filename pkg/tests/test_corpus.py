from __future__ import annotations

import pytest

from venuerec.corpus import (
    LabelIndex,
    PaperCorpus,
    PaperRecord,
    corpus_fingerprint,
    document_text,
    load_corpus,
    query_text,
    stratified_split,
    venue_ids,
)


def record(title="T", abstract="A", keywords=(), venue="V"):
    return PaperRecord(title=title, abstract=abstract, keywords=tuple(keywords), venue=venue)


class TestLoadCorpus:
    def test_single_well_formed_record(self, write_jsonl):
        path = write_jsonl(
            [{"title": "A", "abstract": "b", "keywords": ["x"], "venue": "EMNLP"}]
        )
        corpus = load_corpus(path)
        assert len(corpus) == 1
        assert corpus.records[0] == record("A", "b", ("x",), "EMNLP")
        assert corpus.venues.labels == ("EMNLP",)
        assert corpus.venues.position("EMNLP") == 0

    def test_empty_venue_rejected_others_kept(self, write_jsonl):
        path = write_jsonl(
            [
                {"title": "ok", "abstract": "x", "venue": "A"},
                {"title": "bad", "abstract": "x", "venue": ""},
            ]
        )
        corpus = load_corpus(path)
        assert len(corpus) == 1
        assert corpus.load_report.loaded == 1
        assert corpus.load_report.rejected == 1
        lineno, reason = corpus.load_report.rejections[0]
        assert lineno == 2
        assert "venue" in reason

    def test_venue_counts(self, write_jsonl):
        path = write_jsonl(
            [
                {"title": "1", "abstract": "x", "venue": "A"},
                {"title": "2", "abstract": "x", "venue": "A"},
                {"title": "3", "abstract": "x", "venue": "B"},
            ]
        )
        corpus = load_corpus(path)
        assert corpus.venues.labels == ("A", "B")
        assert corpus.venues.counts == (2, 1)

    def test_missing_keywords_default_empty(self, write_jsonl):
        path = write_jsonl([{"title": "t", "abstract": "a", "venue": "V"}])
        assert load_corpus(path).records[0].keywords == ()

    def test_duplicate_keywords_deduplicated_in_order(self, write_jsonl):
        path = write_jsonl(
            [{"title": "t", "abstract": "a", "keywords": ["b", "a", "b"], "venue": "V"}]
        )
        assert load_corpus(path).records[0].keywords == ("b", "a")

    def test_both_text_fields_empty_rejected(self, write_jsonl):
        path = write_jsonl(
            [
                {"title": "", "abstract": "  ", "venue": "A"},
                {"title": "x", "abstract": "", "venue": "A"},
            ]
        )
        corpus = load_corpus(path)
        assert len(corpus) == 1
        assert corpus.load_report.rejected == 1

    def test_non_object_line_rejected(self, write_jsonl):
        path = write_jsonl([[1, 2], {"title": "x", "abstract": "y", "venue": "A"}])
        corpus = load_corpus(path)
        assert len(corpus) == 1

    def test_malformed_json_reports_line_number(self, tmp_path):
        path = tmp_path / "broken.jsonl"
        path.write_text('{"title":"a","abstract":"b","venue":"V"}\n{oops\n')
        with pytest.raises(ValueError, match=":2"):
            load_corpus(path)

    def test_missing_file_raises_oserror(self, tmp_path):
        with pytest.raises(OSError):
            load_corpus(tmp_path / "absent.jsonl")

    def test_zero_valid_records(self, write_jsonl):
        path = write_jsonl([{"title": "", "abstract": "", "venue": "A"}])
        with pytest.raises(ValueError, match="no valid records"):
            load_corpus(path)

    def test_unsupported_format(self, write_jsonl):
        path = write_jsonl([{"title": "t", "abstract": "a", "venue": "V"}])
        with pytest.raises(ValueError, match="format"):
            load_corpus(path, format="csv")

    def test_loading_twice_yields_equal_corpora(self, write_jsonl):
        path = write_jsonl(
            [
                {"title": "1", "abstract": "x", "venue": "A"},
                {"title": "2", "abstract": "y", "venue": "B"},
            ]
        )
        assert load_corpus(path) == load_corpus(path)

    def test_blank_lines_ignored(self, tmp_path):
        path = tmp_path / "gaps.jsonl"
        path.write_text('\n{"title":"a","abstract":"b","venue":"V"}\n\n')
        corpus = load_corpus(path)
        assert len(corpus) == 1
        assert corpus.load_report.lines_read == 1


class TestLabelIndex:
    def test_first_appearance_order(self):
        index = LabelIndex.from_venues(["B", "A", "B", "C"])
        assert index.labels == ("B", "A", "C")
        assert index.counts == (2, 1, 1)
        assert index.position("C") == 2
        assert "A" in index and "Z" not in index

    def test_fixed_order_recounts(self):
        index = LabelIndex.from_venues(["B", "B"], order=("A", "B"))
        assert index.labels == ("A", "B")
        assert index.counts == (0, 2)

    def test_unknown_label_raises(self):
        with pytest.raises(KeyError, match="unknown venue"):
            LabelIndex.from_venues(["A"]).position("B")

    def test_venue_outside_fixed_order(self):
        with pytest.raises(ValueError, match="not present"):
            LabelIndex.from_venues(["A", "X"], order=("A", "B"))

    def test_duplicate_labels_rejected(self):
        with pytest.raises(ValueError, match="duplicate"):
            LabelIndex(labels=("A", "A"), counts=(1, 1))

    def test_counts_must_align(self):
        with pytest.raises(ValueError):
            LabelIndex(labels=("A",), counts=(1, 2))


class TestPaperCorpus:
    def test_counts_must_cover_records(self):
        index = LabelIndex(labels=("A",), counts=(2,))
        with pytest.raises(ValueError, match="counts"):
            PaperCorpus(records=(record(venue="A"),), venues=index)

    def test_record_venue_must_be_indexed(self):
        index = LabelIndex(labels=("A",), counts=(1,))
        with pytest.raises(ValueError, match="missing from index"):
            PaperCorpus(records=(record(venue="B"),), venues=index)

    def test_venue_ids_align_with_records(self):
        corpus = PaperCorpus.build(
            [record(venue="B"), record(venue="A"), record(venue="B")]
        )
        assert venue_ids(corpus).tolist() == [0, 1, 0]


class TestStratifiedSplit:
    @staticmethod
    def balanced_corpus(venues=10, per_venue=10):
        records = [
            record(title=f"p{v}-{i}", venue=f"venue{v}")
            for v in range(venues)
            for i in range(per_venue)
        ]
        return PaperCorpus.build(records)

    def test_balanced_counts_exact(self):
        corpus = self.balanced_corpus()
        train, test = stratified_split(corpus, test_fraction=0.2, seed=7)
        assert len(train) == 80 and len(test) == 20
        assert all(c == 2 for c in test.venues.counts)
        assert all(c == 8 for c in train.venues.counts)

    def test_partition_preserves_records(self):
        corpus = self.balanced_corpus(venues=5, per_venue=6)
        train, test = stratified_split(corpus, test_fraction=0.3, seed=1)
        merged = sorted(train.records + test.records, key=lambda r: r.title)
        assert merged == sorted(corpus.records, key=lambda r: r.title)
        assert set(train.records).isdisjoint(test.records)

    def test_same_seed_same_split(self):
        corpus = self.balanced_corpus()
        assert stratified_split(corpus, 0.2, seed=3) == stratified_split(
            corpus, 0.2, seed=3
        )

    def test_share_within_one_record_of_fraction(self):
        records = [record(title=f"a{i}", venue="A") for i in range(7)]
        records += [record(title=f"b{i}", venue="B") for i in range(23)]
        records += [record(title=f"c{i}", venue="C") for i in range(2)]
        _, test = stratified_split(PaperCorpus.build(records), 0.3, seed=0)
        for label, count in zip(test.venues.labels, test.venues.counts):
            target = 0.3 * dict(A=7, B=23, C=2)[label]
            assert abs(count - target) <= 1

    def test_both_sides_keep_every_venue(self):
        records = [record(title=f"a{i}", venue="A") for i in range(2)]
        records += [record(title=f"b{i}", venue="B") for i in range(50)]
        train, test = stratified_split(PaperCorpus.build(records), 0.2, seed=0)
        assert min(train.venues.counts) >= 1
        assert min(test.venues.counts) >= 1

    def test_children_keep_parent_label_order(self):
        corpus = self.balanced_corpus(venues=4)
        train, test = stratified_split(corpus, 0.2, seed=5)
        assert train.venues.labels == corpus.venues.labels
        assert test.venues.labels == corpus.venues.labels

    def test_single_record_venue_rejected(self):
        records = [record(title="only", venue="A")] + [
            record(title=f"b{i}", venue="B") for i in range(4)
        ]
        with pytest.raises(ValueError, match="'A'"):
            stratified_split(PaperCorpus.build(records), 0.5, seed=0)

    @pytest.mark.parametrize("fraction", [0.0, 1.0, -0.2, 1.5])
    def test_degenerate_fraction_rejected(self, fraction):
        with pytest.raises(ValueError, match="test_fraction"):
            stratified_split(self.balanced_corpus(), fraction, seed=0)


class TestDocumentText:
    def test_title_abstract_keywords_in_order(self):
        assert document_text(record("T", "A", ("k1", "k2"))) == "T A k1 k2"

    def test_no_keywords(self):
        assert document_text(record("T", "A", ())) == "T A"

    def test_query_text_matches_record_text(self):
        rec = record("Deep parsing", "We parse.", ("syntax",))
        assert query_text(rec.title, rec.abstract, rec.keywords) == document_text(rec)


class TestFingerprint:
    def test_stable_for_equal_content(self, write_jsonl):
        rows = [
            {"title": "1", "abstract": "x", "venue": "A"},
            {"title": "2", "abstract": "y", "venue": "B"},
        ]
        a = corpus_fingerprint(load_corpus(write_jsonl(rows, "a.jsonl")))
        b = corpus_fingerprint(load_corpus(write_jsonl(rows, "b.jsonl")))
        assert a == b

    def test_sensitive_to_content_change(self):
        one = PaperCorpus.build([record(title="x", venue="A"), record(venue="B")])
        two = PaperCorpus.build([record(title="y", venue="A"), record(venue="B")])
        assert corpus_fingerprint(one) != corpus_fingerprint(two)
