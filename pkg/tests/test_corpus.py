"""Corpus ingestion, phrase matching, terminal values and relevance judgments."""
import pytest

from collectors.corpus import ingest
from collectors.judgments import parse_judgments
from core.errors import CorpusIoError, JudgmentsError, UnsupportedValue
from core.graph import expand
from core.registry import lookup_calculus
from models.document import Document, word_tokens
from models.truth import Interval
from processor.matching import contains_phrase, match_terminal, matched_terminals, terminal_values
from rules.parser import parse_rules

from conftest import SENTINEL


class TestIngest:
    def test_one_document_per_txt_file(self, tmp_path):
        (tmp_path / "b.txt").write_text("second", encoding="utf-8")
        (tmp_path / "a.txt").write_text("first", encoding="utf-8")
        (tmp_path / "notes.md").write_text("ignored", encoding="utf-8")
        corpus = ingest(tmp_path)
        assert corpus.ids == ["a", "b"]
        assert corpus.get("a").text == "first"

    def test_empty_directory(self, tmp_path):
        assert len(ingest(tmp_path)) == 0

    def test_undecodable_file_is_named(self, tmp_path):
        bad = tmp_path / "bad.txt"
        bad.write_bytes(b"\xff\xfe\xfa broken")
        with pytest.raises(CorpusIoError) as err:
            ingest(tmp_path)
        assert "bad.txt" in str(err.value)

    def test_missing_directory(self, tmp_path):
        with pytest.raises(CorpusIoError):
            ingest(tmp_path / "nowhere")

    def test_fixture_corpus(self, corpus):
        assert len(corpus) == 20
        assert corpus.ids[0] == SENTINEL
        assert corpus.get("d99") is None


class TestMatching:
    @pytest.mark.parametrize(
        "text, pattern, expected",
        [
            ("A car bomb exploded.", "car bomb", True),
            ("The car hit a bomb shelter.", "car bomb", False),
            ("a bomb", "BOMB", True),
            ("Talk was bombast.", "bomb", False),
            ("Terrorists hijacked a plane.", "terrorist", False),
            ("car-bomb attack", "car bomb", True),
        ],
    )
    def test_match_terminal(self, text, pattern, expected):
        assert match_terminal(Document.from_text("d", text), pattern) is expected

    def test_empty_phrase_never_matches(self):
        assert not contains_phrase(word_tokens("anything"), ())

    def test_fixture_matches(self, graph, corpus):
        hits = matched_terminals(corpus.get("d18"), graph.terminals)
        assert hits == {"terminal:kidnapped", "terminal:demands", "terminal:car bomb", "terminal:bomb"}
        assert matched_terminals(corpus.get("d10"), graph.terminals) == frozenset()


class TestTerminalValues:
    @pytest.fixture
    def small(self, tmp_path):
        (tmp_path / "doc.txt").write_text("a car bomb", encoding="utf-8")
        graph = expand(parse_rules('r: T <- evidence weight 1 "bomb" or "hostage";'), "T")
        return ingest(tmp_path), graph.terminals

    def test_interval_closed(self, small):
        corpus, terminals = small
        values = terminal_values(corpus, terminals, lookup_calculus("interval.frechet"))
        assert values["doc"] == {"terminal:bomb": Interval(1.0, 1.0), "terminal:hostage": Interval(0.0, 0.0)}

    def test_interval_unknown(self, small):
        corpus, terminals = small
        values = terminal_values(corpus, terminals, lookup_calculus("interval.support"), absent="unknown")
        assert values["doc"]["terminal:hostage"] == Interval(0.0, 1.0)

    def test_scalar_has_no_unknown(self, small):
        corpus, terminals = small
        with pytest.raises(UnsupportedValue):
            terminal_values(corpus, terminals, lookup_calculus("scalar.godel"), absent="unknown")


class TestJudgments:
    def test_fixture_judgments(self, judgments, corpus):
        assert len(judgments.relevance) == len(corpus)
        assert len(judgments.relevant) == 12
        assert SENTINEL in judgments.relevant
        assert "d09" not in judgments.relevant

    @pytest.mark.parametrize(
        "text, fragment",
        [
            ("id,relevant\na,1\n", "header"),
            ("doc_id,relevant\na,2\n", "line 2"),
            ("doc_id,relevant\na,1\na,0\n", "duplicate"),
            ("doc_id,relevant\n,1\n", "empty doc_id"),
        ],
    )
    def test_bad_judgments(self, text, fragment):
        with pytest.raises(JudgmentsError) as err:
            parse_judgments(text)
        assert fragment in str(err.value)
