"""Tests for utils module."""

import threading

import pytest

from smallcut.graph import GraphFormatError
from smallcut.problems import Instance, InvalidInstanceError, Variant
from smallcut.utils import (
    first_hit,
    format_certificate,
    format_instance,
    load_certificate,
    load_graph,
    load_instance,
    parse_certificate,
    parse_instance_text,
    parse_parameters,
    worker_count,
)

STAR_INSTANCE = """\
# variant=vertex-terminal
# k=2
# t=3
# terminal=0
5 4
0 1
0 2
0 3
0 4
"""


class TestWorkerCount:
    """Tests for worker_count function."""

    def test_default_without_env(self, monkeypatch):
        """Test that the default is used when the variable is unset."""
        monkeypatch.delenv("SMALLCUT_THREADS", raising=False)
        assert worker_count() == 1
        assert worker_count(default=3) == 3

    def test_reads_env(self, monkeypatch):
        """Test that SMALLCUT_THREADS is honored."""
        monkeypatch.setenv("SMALLCUT_THREADS", "4")
        assert worker_count() == 4

    def test_clamps_to_one(self, monkeypatch):
        """Test that zero or negative counts become one."""
        monkeypatch.setenv("SMALLCUT_THREADS", "0")
        assert worker_count() == 1

    def test_rejects_garbage(self, monkeypatch):
        """Test that a non-integer value raises ValueError."""
        monkeypatch.setenv("SMALLCUT_THREADS", "many")
        with pytest.raises(ValueError, match="SMALLCUT_THREADS"):
            worker_count()


class TestFirstHit:
    """Tests for first_hit function."""

    def test_sequential_stops_at_first(self):
        """Test that later items are not attempted."""
        tried = []

        def attempt(x):
            tried.append(x)
            return x * 10 if x >= 2 else None

        assert first_hit(range(6), attempt) == (2, 20)
        assert tried == [0, 1, 2]

    def test_no_hit(self):
        """Test that None is returned when every attempt fails."""
        assert first_hit(range(5), lambda x: None) is None

    def test_empty_items(self):
        """Test that an empty iterable gives None."""
        assert first_hit([], lambda x: x, max_workers=3) is None

    def test_parallel_returns_lowest_index(self):
        """Test that the lowest hit wins regardless of completion order."""
        barrier = threading.Event()

        def attempt(x):
            if x == 3:
                barrier.wait(timeout=1)
            if x == 5:
                barrier.set()
            return x if x in (3, 5, 9) else None

        assert first_hit(range(12), attempt, max_workers=4) == (3, 3)

    def test_parallel_later_chunk(self):
        """Test that indices stay global across chunks."""
        assert first_hit(range(30), lambda x: "hit" if x == 21 else None, max_workers=2) == (21, "hit")


class TestParseParameters:
    """Tests for parse_parameters function."""

    def test_reads_block(self):
        """Test that the four keys are collected."""
        params = parse_parameters(STAR_INSTANCE)
        assert params == {"variant": "vertex-terminal", "k": "2", "t": "3", "terminal": "0"}

    def test_ignores_other_comments(self):
        """Test that unrelated comments are skipped."""
        assert parse_parameters("# map 0 terminal\n# seed=3\n1 0\n") == {}

    def test_tolerates_spacing(self):
        """Test whitespace around the key and value."""
        assert parse_parameters("#  k = 5 \n") == {"k": "5"}


class TestParseInstanceText:
    """Tests for parse_instance_text function."""

    def test_parses_star(self):
        """Test the terminal instance on K_{1,4}."""
        instance = parse_instance_text(STAR_INSTANCE)
        assert instance.variant is Variant.VERTEX_TERMINAL
        assert (instance.k, instance.t, instance.terminal) == (2, 3, 0)
        assert instance.graph.n == 5
        assert instance.graph.m == 4

    def test_overrides_win(self):
        """Test that keyword values replace the file block."""
        instance = parse_instance_text(STAR_INSTANCE, variant="edge-terminal", k=1, t=4)
        assert instance.variant is Variant.EDGE_TERMINAL
        assert (instance.k, instance.t, instance.terminal) == (1, 4, 0)

    def test_none_override_keeps_file_value(self):
        """Test that a None override does not drop the file's terminal."""
        with pytest.raises(InvalidInstanceError, match="takes no terminal"):
            parse_instance_text(STAR_INSTANCE, variant="vertex", terminal=None)

    def test_plain_graph_needs_overrides(self):
        """Test that a bare graph file becomes an instance through overrides."""
        instance = parse_instance_text("3 2\n0 1\n1 2\n", variant="vertex", k=1, t=1)
        assert instance.graph.m == 2

    def test_missing_parameter(self):
        """Test that a missing k is reported."""
        with pytest.raises(GraphFormatError, match="'k'"):
            parse_instance_text("# variant=vertex\n# t=1\n1 0\n")

    def test_bad_parameter_value(self):
        """Test that a non-integer t is reported."""
        with pytest.raises(GraphFormatError, match="bad parameter"):
            parse_instance_text("# variant=vertex\n# k=1\n# t=x\n1 0\n")

    def test_invalid_instance(self):
        """Test that k=0 is rejected by the instance check."""
        with pytest.raises(InvalidInstanceError):
            parse_instance_text("# variant=vertex\n# k=0\n# t=1\n1 0\n")

    def test_terminal_out_of_range(self):
        """Test that the terminal must be a vertex."""
        with pytest.raises(InvalidInstanceError, match="terminal"):
            parse_instance_text(STAR_INSTANCE, terminal=9)

    def test_long_variant_alias(self):
        """Test that exact-k-vertex is accepted."""
        instance = parse_instance_text("# variant=exact-k-vertex\n# k=1\n# t=0\n1 0\n")
        assert instance.variant is Variant.EXACT_K


class TestFormatInstance:
    """Tests for format_instance function."""

    def test_round_trip(self):
        """Test that formatting and parsing give back the instance."""
        instance = parse_instance_text(STAR_INSTANCE)
        assert parse_instance_text(format_instance(instance)) == instance

    def test_comments_after_block(self, path4):
        """Test that extra comments follow the parameter lines."""
        text = format_instance(Instance(path4, "vertex", 2, 1), ["reduction=4"])
        assert text.splitlines()[:4] == ["# variant=vertex", "# k=2", "# t=1", "# reduction=4"]
        assert "terminal" not in text


class TestCertificates:
    """Tests for certificate parsing and formatting."""

    def test_parse(self):
        """Test ids, blank lines and comments."""
        assert parse_certificate("3\n\n1  # leaf\n3\n") == [3, 1, 3]

    def test_bad_line(self):
        """Test that a non-integer line is reported with its number."""
        with pytest.raises(GraphFormatError) as exc_info:
            parse_certificate("1\nfoo\n")
        assert exc_info.value.line == 2

    def test_format_sorts(self):
        """Test that certificates are written sorted, one id per line."""
        assert format_certificate({4, 0, 2}) == "0\n2\n4\n"


class TestLoaders:
    """Tests for file loaders."""

    def test_load_instance(self, write_file):
        """Test reading an instance file."""
        path = write_file("star.txt", STAR_INSTANCE)
        assert load_instance(path).terminal == 0

    def test_load_instance_accepts_str(self, write_file):
        """Test that a string path works too."""
        path = write_file("star.txt", STAR_INSTANCE)
        assert load_instance(str(path), k=3).k == 3

    def test_load_graph_ignores_block(self, write_file):
        """Test that every instance file is also a graph file."""
        path = write_file("star.txt", STAR_INSTANCE)
        assert load_graph(path).m == 4

    def test_load_certificate(self, write_file):
        """Test reading a certificate file."""
        path = write_file("cert.txt", "0\n1\n")
        assert load_certificate(path) == [0, 1]

    def test_missing_file(self, tmp_path):
        """Test that a missing file raises FileNotFoundError."""
        with pytest.raises(FileNotFoundError):
            load_instance(tmp_path / "nonexistent.txt")
