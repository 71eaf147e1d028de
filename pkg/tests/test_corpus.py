import pytest
from hypothesis import given, strategies as st

from conftest import NON_OUTLIER_IDS, OUTLIER_IDS, PAPERS, tagged_paper
from summkit.corpus import (
    CompositionStrategy,
    PaperDocument,
    Section,
    compose_input,
    compose_scisumm,
    is_outlier,
    load_laysumm_dir,
    load_scisumm_dir,
    normalize_heading,
    parse_laysumm,
    parse_scisumm,
    read_document,
    split_sentences,
)
from summkit.metrics import normalize

ALL_STRATEGIES = list(CompositionStrategy)


def doc_from(text, doc_id="d"):
    return parse_laysumm(text, doc_id)


class TestParse:
    def test_marker_lines_consumed(self):
        doc = doc_from("SECTION\nAbstract\nPARAGRAPH\nSome body text here.")
        assert doc.has_abstract
        for section in doc.sections:
            assert section.name not in ("TITLE", "SECTION", "PARAGRAPH")
            for paragraph in section.paragraphs:
                assert not any(
                    line.strip() in ("TITLE", "SECTION", "PARAGRAPH")
                    for line in paragraph.splitlines()
                )

    def test_no_markers_single_body_section(self):
        doc = doc_from("just some text\n\nand more text")
        assert [s.name for s in doc.sections] == ["body"]
        assert doc.sections[0].paragraphs == ["just some text", "and more text"]
        assert not (doc.has_abstract or doc.has_introduction or doc.has_conclusion)

    def test_three_named_sections_in_order(self):
        text = tagged_paper(
            "A title",
            [
                ("Abstract", ["Alpha beta."]),
                ("Introduction", ["Gamma delta.", "Second paragraph."]),
                ("Conclusion", ["Epsilon zeta."]),
            ],
        )
        doc = doc_from(text)
        assert doc.title == "A title"
        assert [s.name for s in doc.sections] == ["abstract", "introduction", "conclusion"]
        assert doc.has_abstract and doc.has_introduction and doc.has_conclusion
        assert doc.sections[1].paragraphs == ["Gamma delta.", "Second paragraph."]

    def test_empty_document_raises(self):
        with pytest.raises(ValueError, match="empty document"):
            parse_laysumm("   \n  ", "d9")

    def test_section_without_paragraphs_does_not_set_flag(self):
        doc = doc_from("SECTION\nAbstract\nSECTION\nIntroduction\nIntro text.")
        assert not doc.has_abstract
        assert doc.has_introduction

    def test_enumerated_headings_normalized(self):
        assert normalize_heading("1 Introduction") == "introduction"
        assert normalize_heading("2.3. Results") == "results"
        assert normalize_heading("IV. Conclusion") == "conclusion"
        assert normalize_heading("  ABSTRACT: ") == "abstract"

    def test_undecodable_bytes_reports_offset(self, tmp_path):
        path = tmp_path / "bad.txt"
        path.write_bytes(b"good text \xff\xfe more")
        with pytest.raises(ValueError, match="offset 10"):
            read_document(path)


class TestOutliers:
    @pytest.mark.parametrize("has_abs,has_intro", [(True, True), (True, False), (False, True), (False, False)])
    def test_exhaustive_flag_combinations(self, has_abs, has_intro):
        sections = []
        if has_abs:
            sections.append(Section("abstract", ["Text."]))
        if has_intro:
            sections.append(Section("introduction", ["Text."]))
        doc = PaperDocument("d", "", sections, has_abs, has_intro, False)
        assert is_outlier(doc) == (not (has_abs and has_intro))

    def test_abstract_only_is_outlier(self):
        doc = doc_from("SECTION\nAbstract\nOnly an abstract here.")
        assert is_outlier(doc)

    def test_full_doc_is_not_outlier(self):
        text = tagged_paper("t", [("Abstract", ["A."]), ("Introduction", ["B."]), ("Conclusion", ["C."])])
        assert not is_outlier(doc_from(text))

    def test_fixture_corpus_has_exactly_two_outliers(self, corpus_dir):
        docs = load_laysumm_dir(corpus_dir)
        assert len(docs) == 10
        outliers = sorted(doc.id for doc, _ in docs if is_outlier(doc))
        assert outliers == sorted(OUTLIER_IDS)


class TestSplitSentences:
    def test_plain_split(self):
        assert split_sentences("We do X. We do Y.") == ["We do X.", "We do Y."]

    def test_abbreviation_guard(self):
        assert split_sentences("See Fig. 2 for details.") == ["See Fig. 2 for details."]

    def test_empty(self):
        assert split_sentences("") == []
        assert split_sentences("   \n ") == []

    def test_more_guards(self):
        assert split_sentences("Tools, e.g. Linux, help.") == ["Tools, e.g. Linux, help."]
        assert split_sentences("It works vs. Baseline fails.") == ["It works vs. Baseline fails."]

    def test_initials_guard_in_name_context(self):
        # guarded: initial at text start or after a capitalized word
        assert split_sentences("J. Smith et al. proposed this.") == ["J. Smith et al. proposed this."]
        assert split_sentences("Wilhelm K. Roentgen found rays. We agree.") == [
            "Wilhelm K. Roentgen found rays.",
            "We agree.",
        ]
        # not guarded: a symbol reference after a lowercase word still splits
        assert split_sentences("We do X. We do Y.") == ["We do X.", "We do Y."]

    def test_terminators(self):
        assert split_sentences("Really? Yes! Sure.") == ["Really?", "Yes!", "Sure."]

    def test_no_split_before_lowercase(self):
        assert split_sentences("pH 7.4 was stable. next came heat.") == [
            "pH 7.4 was stable. next came heat."
        ]

    @given(st.text())
    def test_join_reproduces_normalized_text(self, paragraph):
        sentences = split_sentences(paragraph)
        assert " ".join(sentences) == " ".join(paragraph.split())


FULL_DOC = tagged_paper(
    "Composed",
    [
        ("Abstract", ["Alpha beta gamma. Delta epsilon."]),
        ("Introduction", ["First intro sentence here. Second intro sentence here.", "Later intro paragraph text."]),
        ("Conclusion", ["Closing words conclude things."]),
    ],
)


class TestCompose:
    def test_abs_origins(self):
        composed = compose_input(doc_from(FULL_DOC), CompositionStrategy.ABS)
        assert composed.sentences
        assert all(s.origin == "abstract" for s in composed.sentences)

    def test_missing_conclusion_matches_abs_intro_first(self):
        text = tagged_paper(
            "t", [("Abstract", ["A b c."]), ("Introduction", ["D e f.", "G h i."])]
        )
        doc = doc_from(text)
        with_con = compose_input(doc, CompositionStrategy.ABS_INTRO_CON)
        without = compose_input(doc, CompositionStrategy.ABS_INTRO_FIRST)
        assert [s.text for s in with_con.sentences] == [s.text for s in without.sentences]

    def test_first_paragraph_only(self):
        doc = doc_from(FULL_DOC)
        first = compose_input(doc, CompositionStrategy.ABS_INTRO_FIRST)
        everything = compose_input(doc, CompositionStrategy.ABS_INTRO_ALL)
        assert "Later intro paragraph text." not in [s.text for s in first.sentences]
        assert "Later intro paragraph text." in [s.text for s in everything.sentences]

    def test_truncation_keeps_whole_sentences(self):
        # 110 sentences x 10 tokens = 1100 tokens against the 1024 budget
        paragraph = " ".join(
            "Alpha%d beta%d gamma%d delta%d epsilon%d zeta%d eta%d theta%d iota%d kappa%d." % ((i,) * 10)
            for i in range(110)
        )
        text = tagged_paper("t", [("Abstract", [paragraph]), ("Introduction", ["Intro."])])
        composed = compose_input(doc_from(text), CompositionStrategy.ABS, token_limit=1024)
        assert composed.truncated
        assert composed.token_count <= 1024
        assert composed.token_count == 1020  # 102 whole sentences
        assert composed.token_count == sum(len(s.tokens) for s in composed.sentences)

    def test_not_truncated_flag(self):
        composed = compose_input(doc_from(FULL_DOC), CompositionStrategy.ABS_INTRO_CON)
        assert not composed.truncated

    def test_outlier_rejected(self):
        doc = doc_from("SECTION\nAbstract\nOnly abstract.")
        with pytest.raises(ValueError, match="outlier document"):
            compose_input(doc, CompositionStrategy.ABS)

    def test_nonpositive_limit_rejected(self):
        with pytest.raises(ValueError, match="token_limit"):
            compose_input(doc_from(FULL_DOC), CompositionStrategy.ABS, token_limit=0)

    def test_deterministic(self):
        doc = doc_from(FULL_DOC)
        a = compose_input(doc, CompositionStrategy.ABS_INTRO_CON)
        b = compose_input(doc, CompositionStrategy.ABS_INTRO_CON)
        assert a == b

    def test_doc_indices_consecutive(self):
        composed = compose_input(doc_from(FULL_DOC), CompositionStrategy.ABS_INTRO_CON)
        assert [s.doc_index for s in composed.sentences] == list(range(len(composed.sentences)))

    def test_strategy_subsets_on_fixture_corpus(self, corpus_dir):
        docs = {doc.id: doc for doc, _ in load_laysumm_dir(corpus_dir)}
        for doc_id in NON_OUTLIER_IDS:
            doc = docs[doc_id]
            texts = {
                strategy: {s.text for s in compose_input(doc, strategy).sentences}
                for strategy in ALL_STRATEGIES
            }
            assert texts[CompositionStrategy.ABS] <= texts[CompositionStrategy.ABS_INTRO_FIRST]
            assert texts[CompositionStrategy.ABS_INTRO_FIRST] <= texts[CompositionStrategy.ABS_INTRO_CON]
            assert texts[CompositionStrategy.ABS_INTRO_FIRST] <= texts[CompositionStrategy.ABS_INTRO_ALL]

    def test_token_count_matches_tokens(self, corpus_dir):
        docs = {doc.id: doc for doc, _ in load_laysumm_dir(corpus_dir)}
        for doc_id in NON_OUTLIER_IDS:
            for strategy in ALL_STRATEGIES:
                composed = compose_input(docs[doc_id], strategy)
                assert composed.token_count == sum(len(s.tokens) for s in composed.sentences)
                assert composed.token_count <= composed.token_limit


class TestScisumm:
    def test_indices_abstract_first(self):
        sample = parse_scisumm(
            "First abstract sentence. Second abstract sentence.",
            ["One citation sentence."],
            "A gold summary.",
            "s1",
        )
        assert len(sample.abstract_sentences) == 2
        assert len(sample.citation_sentences) == 1
        combined = sample.abstract_sentences + sample.citation_sentences
        assert [s.doc_index for s in combined] == [0, 1, 2]
        assert [s.origin for s in combined] == ["abstract", "abstract", "citation"]

    def test_empty_citation_list(self):
        sample = parse_scisumm("Only the abstract.", [], "Gold.", "s2")
        assert sample.citation_sentences == []

    def test_empty_gold_raises(self):
        with pytest.raises(ValueError, match="empty gold summary"):
            parse_scisumm("Abstract.", [], "  ", "s3")

    def test_compose_scisumm_order_and_budget(self):
        sample = parse_scisumm(
            "Alpha beta gamma. Delta epsilon zeta.",
            ["Eta theta iota.", "Kappa lambda mu."],
            "Gold.",
            "s4",
        )
        composed = compose_scisumm(sample, token_limit=9)
        assert composed.truncated
        assert composed.token_count == 9
        assert [s.origin for s in composed.sentences] == ["abstract", "abstract", "citation"]

    def test_fixture_dir_loads_ten(self, scisumm_dir):
        samples = load_scisumm_dir(scisumm_dir)
        assert len(samples) == 10
        assert all(s.abstract_sentences and s.citation_sentences for s in samples)


def test_fixture_corpus_no_marker_leakage(corpus_dir):
    for doc, gold in load_laysumm_dir(corpus_dir):
        strings = [doc.title, gold]
        for section in doc.sections:
            strings.append(section.name)
            strings.extend(section.paragraphs)
        if not is_outlier(doc):
            for strategy in ALL_STRATEGIES:
                strings.extend(s.text for s in compose_input(doc, strategy).sentences)
        for value in strings:
            for line in value.splitlines():
                assert line.strip() not in ("TITLE", "SECTION", "PARAGRAPH")


def test_fixture_paper_count_sanity():
    assert len(PAPERS) == 10
    assert len(OUTLIER_IDS) == 2
