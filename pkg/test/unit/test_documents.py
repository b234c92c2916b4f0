"""
Unit tests for JSON document loading and serialization.
"""
import sys
from fractions import Fraction
from pathlib import Path

import pytest

# Add the repository root to path to import the modules
parent_dir = str(Path(__file__).parent.parent.parent)
if parent_dir not in sys.path:
    sys.path.append(parent_dir)

from cochains.errors import DegreeMismatch, SimplexNotInComplex, SpanningViolation
from cochains.simplicial_core import Cochain
from helpers.documents import (
    DocumentError,
    cochain_from_document,
    cochain_to_document,
    complex_from_document,
    complex_to_document,
    dump_document,
    load_cochain,
    load_complex,
    map_from_document,
    parse_simplex_key,
    read_json,
    write_output,
)

TRIANGLE_DOCUMENT = {"vertices": ["a", "b", "c"], "top_simplices": [["a", "b", "c"]]}


@pytest.fixture
def labeled_triangle():
    return complex_from_document(TRIANGLE_DOCUMENT)


class TestComplexDocuments:
    """Test cases for complex documents."""

    def test_labels_become_ids_in_order(self, labeled_triangle):
        """The i-th declared label is vertex i."""
        assert labeled_triangle.labels == ("a", "b", "c")
        assert labeled_triangle.vertex_id("c") == 2
        assert labeled_triangle.complex.f_vector() == (3, 3, 1)
        assert labeled_triangle.key((0, 2)) == "[a,c]"

    def test_isolated_vertices_kept(self):
        """Declared vertices outside every top simplex are 0-simplices."""
        labeled = complex_from_document({"vertices": ["a", "b", "z"], "top_simplices": [["a", "b"]]})
        assert labeled.complex.f_vector() == (3, 1)

    def test_listed_order_is_orientation(self):
        """A top simplex listed out of order keeps that orientation."""
        labeled = complex_from_document({"vertices": ["a", "b", "c"], "top_simplices": [["b", "a", "c"]]})
        assert labeled.complex.chosen_orientation((0, 1, 2)).vertices == (1, 0, 2)
        assert complex_to_document(labeled)["top_simplices"] == [["b", "a", "c"]]

    def test_round_trip(self, labeled_triangle):
        """Serializing writes the maximal simplices back."""
        assert complex_to_document(labeled_triangle) == TRIANGLE_DOCUMENT
        boundary = {"vertices": ["a", "b", "c"], "top_simplices": [["a", "b"], ["a", "c"], ["b", "c"]]}
        assert complex_to_document(complex_from_document(boundary)) == boundary

    @pytest.mark.parametrize("document, message", [
        ([], "JSON object"),
        ({"top_simplices": []}, "vertices"),
        ({"vertices": ["a", "a"]}, "Duplicate vertex labels"),
        ({"vertices": ["a", "b"], "top_simplices": [["a", "x"]]}, "undeclared vertex x"),
        ({"vertices": ["a,b"]}, "invalid characters"),
        ({"vertices": [""]}, "empty vertex label"),
        ({"vertices": ["a"], "top_simplices": [[]]}, "non-empty list"),
    ])
    def test_invalid_documents(self, document, message):
        """Malformed complex documents raise DocumentError."""
        with pytest.raises(DocumentError, match=message):
            complex_from_document(document)

    def test_repeated_vertex_in_simplex(self):
        """A top simplex naming one vertex twice is an invalid document, reported by label."""
        with pytest.raises(DocumentError, match="entry 2 repeats vertex a"):
            complex_from_document({"vertices": ["a", "b", "c"], "top_simplices": [["b", "c"], ["a", "b", "a"]]})


class TestCochainDocuments:
    """Test cases for cochain documents."""

    def test_parity_folded(self, labeled_triangle):
        """Keys may use any ordering; odd orderings negate the value."""
        document = {"degree": 1, "values": {"[b,a]": "3/2", "[a,c]": 4, "[b,c]": "-1"}}
        a = cochain_from_document(document, labeled_triangle)
        assert a.items() == [((0, 1), Fraction(-3, 2)), ((0, 2), 4), ((1, 2), -1)]

    def test_dense_output(self, labeled_triangle):
        """Output lists every simplex of the degree in canonical order."""
        a = Cochain.from_values(labeled_triangle.complex, 1, {(0, 2): Fraction(6, 4)})
        assert cochain_to_document(a, labeled_triangle) == {
            "degree": 1,
            "values": {"[a,b]": "0", "[a,c]": "3/2", "[b,c]": "0"},
        }

    def test_parse_simplex_key(self):
        """Whitespace around labels is ignored."""
        assert parse_simplex_key(" [a, b ,c] ") == ["a", "b", "c"]
        with pytest.raises(DocumentError):
            parse_simplex_key("a,b")
        with pytest.raises(DocumentError):
            parse_simplex_key("[]")

    @pytest.mark.parametrize("document, message", [
        ({"values": {}}, "degree"),
        ({"degree": -1, "values": {}}, "degree"),
        ({"degree": 1, "values": []}, "values"),
        ({"degree": 1, "values": {"[a,b]": 0.5}}, "integer"),
        ({"degree": 1, "values": {"[a,b]": "0.5"}}, "invalid scalar"),
        ({"degree": 1, "values": {"[a,b]": "1/0"}}, "zero denominator"),
        ({"degree": 1, "values": {"[a,q]": "1"}}, "Unknown vertex label"),
        ({"degree": 1, "values": {"[a,b]": "1", "[b,a]": "2"}}, "same simplex"),
        ({"degree": 1, "values": {"[a,a]": "1"}}, "repeats a vertex"),
    ])
    def test_invalid_documents(self, labeled_triangle, document, message):
        """Malformed cochain documents raise DocumentError."""
        with pytest.raises(DocumentError, match=message):
            cochain_from_document(document, labeled_triangle)

    def test_library_errors_propagate(self, labeled_triangle):
        """Degree and membership problems come from the library."""
        with pytest.raises(DegreeMismatch):
            cochain_from_document({"degree": 0, "values": {"[a,b]": "1"}}, labeled_triangle)
        edge = complex_from_document({"vertices": ["a", "b", "c"], "top_simplices": [["a", "b"]]})
        with pytest.raises(SimplexNotInComplex):
            cochain_from_document({"degree": 1, "values": {"[a,c]": "1"}}, edge)


class TestMapDocuments:
    """Test cases for vertex map documents."""

    def test_valid_map(self, labeled_triangle):
        """Labels resolve on the source and target complexes."""
        edge = complex_from_document({"vertices": ["v0", "v1"], "top_simplices": [["v0", "v1"]]})
        f = map_from_document({"vertex_map": {"a": "v0", "b": "v1", "c": "v0"}}, labeled_triangle, edge)
        assert f.vertex_map == {0: 0, 1: 1, 2: 0}

    def test_spanning_violation(self):
        """Maps are validated as they load."""
        circle = complex_from_document({"vertices": ["u0", "u1", "u2"],
                                        "top_simplices": [["u0", "u1"], ["u1", "u2"], ["u0", "u2"]]})
        path = complex_from_document({"vertices": ["v0", "v1", "v2"],
                                      "top_simplices": [["v0", "v1"], ["v1", "v2"]]})
        with pytest.raises(SpanningViolation):
            map_from_document({"vertex_map": {"u0": "v0", "u1": "v1", "u2": "v2"}}, circle, path)

    def test_invalid(self, labeled_triangle):
        """The document needs a vertex_map object with known labels."""
        with pytest.raises(DocumentError):
            map_from_document({}, labeled_triangle, labeled_triangle)
        with pytest.raises(DocumentError, match="Unknown vertex label"):
            map_from_document({"vertex_map": {"a": "zz"}}, labeled_triangle, labeled_triangle)


class TestFiles:
    """Test cases for reading and writing files."""

    def test_load_from_disk(self, write_json):
        """Complexes and cochains load from JSON files."""
        labeled = load_complex(write_json("complex.json", TRIANGLE_DOCUMENT))
        a = load_cochain(write_json("a.json", {"degree": 2, "values": {"[c,b,a]": "1/3"}}), labeled)
        assert a.value_on((0, 1, 2)) == Fraction(-1, 3)

    def test_missing_file(self, tmp_path):
        """A missing file is a DocumentError."""
        with pytest.raises(DocumentError, match="File not found"):
            read_json(str(tmp_path / "nope.json"))

    def test_invalid_json(self, tmp_path):
        """Unparseable JSON is a DocumentError."""
        path = tmp_path / "broken.json"
        path.write_text("{not json", encoding="utf-8")
        with pytest.raises(DocumentError, match="Invalid JSON"):
            read_json(str(path))

    def test_write_output(self, tmp_path, capsys):
        """Output goes to the named file, or to stdout."""
        text = dump_document({"degree": 0, "values": {}})
        assert text.endswith("}\n")
        target = tmp_path / "out.json"
        write_output(text, str(target))
        assert target.read_text(encoding="utf-8") == text
        write_output(text)
        assert capsys.readouterr().out == text
