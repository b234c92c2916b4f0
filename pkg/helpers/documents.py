"""
JSON documents for complexes, cochains and vertex maps.

Complex document:   {"vertices": ["a", "b", "c"], "top_simplices": [["a", "b", "c"]]}
Cochain document:   {"degree": 1, "values": {"[a,b]": "3/2", "[c,b]": "-1"}}
Map document:       {"vertex_map": {"u0": "v0", "u1": "v1"}}

Vertex labels are interned in declaration order: the i-th declared label is
vertex id i, and canonical (ascending) orderings follow that order. The listed
order of a top simplex is its chosen orientation. Cochain keys may use any
ordering; values are folded onto the canonical form with the ordering's parity.
Scalars are strings "p/q" (or integers) so no value ever passes through a float.
"""

import json
from dataclasses import dataclass
from fractions import Fraction
from pathlib import Path
from typing import Any, Dict, List, Optional, Sequence, Tuple

from cochains.errors import DECError
from cochains.maps import SimplicialMap, validate
from cochains.simplicial_core import Cochain, SimplicialComplex, canonicalize, format_scalar, parse_scalar

FORBIDDEN_LABEL_CHARACTERS = ['[', ']', ',', '"']


class DocumentError(DECError):
    """A document could not be read or violates its own format."""


@dataclass(frozen=True)
class LabeledComplex:
    """A complex together with the labels its vertices were declared with."""

    complex: SimplicialComplex
    labels: Tuple[str, ...]

    def vertex_id(self, label: str) -> int:
        try:
            return self.labels.index(label)
        except ValueError:
            raise DocumentError(f"Unknown vertex label: {label}") from None

    def key(self, simplex: Sequence[int]) -> str:
        return "[" + ",".join(self.labels[v] for v in simplex) + "]"


def read_json(path: str) -> Any:
    """Read a UTF-8 JSON file, turning every failure into a DocumentError."""
    try:
        text = Path(path).read_text(encoding="utf-8")
    except FileNotFoundError:
        raise DocumentError(f"File not found: {path}") from None
    except (OSError, UnicodeDecodeError) as e:
        raise DocumentError(f"Cannot read {path}: {e}") from None
    try:
        return json.loads(text)
    except json.JSONDecodeError as e:
        raise DocumentError(f"Invalid JSON in {path}: {e}") from None


def _label(value: Any, where: str) -> str:
    if isinstance(value, bool) or not isinstance(value, (str, int)):
        raise DocumentError(f"{where}: vertex labels must be strings, got {value!r}")
    label = str(value).strip()
    if not label:
        raise DocumentError(f"{where}: empty vertex label")
    if any(c in label for c in FORBIDDEN_LABEL_CHARACTERS):
        raise DocumentError(f"{where}: invalid characters in vertex label {label!r}")
    return label


def complex_from_document(document: Any) -> LabeledComplex:
    if not isinstance(document, dict):
        raise DocumentError("Complex document must be a JSON object")
    vertices = document.get("vertices")
    top_simplices = document.get("top_simplices", [])
    if not isinstance(vertices, list):
        raise DocumentError("Complex document is missing the 'vertices' list")
    if not isinstance(top_simplices, list):
        raise DocumentError("'top_simplices' must be a list of vertex-label lists")

    labels = [_label(v, "vertices") for v in vertices]
    duplicates = sorted({label for label in labels if labels.count(label) > 1})
    if duplicates:
        raise DocumentError(f"Duplicate vertex labels: {', '.join(duplicates)}")
    index = {label: i for i, label in enumerate(labels)}

    orderings: List[Tuple[int, ...]] = []
    for line_num, simplex in enumerate(top_simplices, 1):
        if not isinstance(simplex, list) or not simplex:
            raise DocumentError(f"top_simplices entry {line_num} must be a non-empty list of labels")
        ordering = []
        for value in simplex:
            label = _label(value, f"top_simplices entry {line_num}")
            if label not in index:
                raise DocumentError(f"top_simplices entry {line_num} references undeclared vertex {label}")
            ordering.append(index[label])
        repeated = sorted({labels[i] for i in ordering if ordering.count(i) > 1})
        if repeated:
            raise DocumentError(f"top_simplices entry {line_num} repeats vertex {', '.join(repeated)}")
        orderings.append(tuple(ordering))

    # isolated vertices are 0-simplices of the complex too
    isolated = [(i,) for i in range(len(labels))]
    complex_ = SimplicialComplex.closure(isolated + orderings)
    return LabeledComplex(complex_, tuple(labels))


def load_complex(path: str) -> LabeledComplex:
    return complex_from_document(read_json(path))


def complex_to_document(labeled: LabeledComplex) -> Dict[str, Any]:
    """Serialize a complex as its maximal simplices in chosen orientation."""
    complex_ = labeled.complex
    maximal = []
    for k in range(complex_.dimension, -1, -1):
        for simplex in complex_.simplices_of(k):
            if not any(set(simplex) < set(m) for m in maximal):
                maximal.append(simplex)
    maximal.sort(key=lambda s: (len(s), s))
    return {
        "vertices": list(labeled.labels),
        "top_simplices": [[labeled.labels[v] for v in complex_.chosen_orientation(s).vertices] for s in maximal],
    }


def parse_simplex_key(key: str) -> List[str]:
    """Split a bracketed key such as "[a,b]" into its labels."""
    body = key.strip()
    if not (body.startswith("[") and body.endswith("]")):
        raise DocumentError(f"Cochain key {key!r} must be a bracketed vertex list like [a,b]")
    inner = body[1:-1].strip()
    if not inner:
        raise DocumentError(f"Cochain key {key!r} names no vertices")
    return [part.strip() for part in inner.split(",")]


def _scalar(value: Any, key: str) -> Fraction:
    if isinstance(value, bool) or isinstance(value, float):
        raise DocumentError(f"Value for {key} must be a 'p/q' string or an integer, got {value!r}")
    if isinstance(value, int):
        return Fraction(value)
    if not isinstance(value, str):
        raise DocumentError(f"Value for {key} must be a 'p/q' string, got {value!r}")
    try:
        return parse_scalar(value)
    except ValueError as e:
        raise DocumentError(f"Value for {key}: {e}") from None


def cochain_from_document(document: Any, labeled: LabeledComplex) -> Cochain:
    """Build a cochain, folding orientation parity into canonical keys.

    Degree and membership problems surface as DegreeMismatch or
    SimplexNotInComplex from the library.
    """
    if not isinstance(document, dict):
        raise DocumentError("Cochain document must be a JSON object")
    degree = document.get("degree")
    if isinstance(degree, bool) or not isinstance(degree, int) or degree < 0:
        raise DocumentError("Cochain document needs a non-negative integer 'degree'")
    values = document.get("values", {})
    if not isinstance(values, dict):
        raise DocumentError("'values' must map bracketed vertex lists to scalars")

    terms = []
    seen = {}
    for key, value in values.items():
        ordering = tuple(labeled.vertex_id(label) for label in parse_simplex_key(key))
        if len(set(ordering)) != len(ordering):
            raise DocumentError(f"Key {key} repeats a vertex")
        canonical, _ = canonicalize(ordering)
        if canonical in seen:
            raise DocumentError(f"Keys {seen[canonical]} and {key} name the same simplex")
        seen[canonical] = key
        terms.append((ordering, _scalar(value, key)))
    return Cochain.from_values(labeled.complex, degree, terms)


def load_cochain(path: str, labeled: LabeledComplex) -> Cochain:
    return cochain_from_document(read_json(path), labeled)


def cochain_to_document(cochain: Cochain, labeled: LabeledComplex) -> Dict[str, Any]:
    """Dense document: every simplex of the cochain's degree, in canonical order."""
    return {
        "degree": cochain.degree,
        "values": {
            labeled.key(simplex): format_scalar(cochain.value_on(simplex))
            for simplex in labeled.complex.simplices_of(cochain.degree)
        },
    }


def map_from_document(document: Any, source: LabeledComplex, target: LabeledComplex) -> SimplicialMap:
    if not isinstance(document, dict) or not isinstance(document.get("vertex_map"), dict):
        raise DocumentError("Map document needs a 'vertex_map' object")
    vertex_map = {}
    for source_label, target_label in document["vertex_map"].items():
        vertex_map[source.vertex_id(_label(source_label, "vertex_map"))] = \
            target.vertex_id(_label(target_label, "vertex_map"))
    return validate(source.complex, target.complex, vertex_map)


def load_map(path: str, source: LabeledComplex, target: LabeledComplex) -> SimplicialMap:
    return map_from_document(read_json(path), source, target)


def dump_document(document: Dict[str, Any]) -> str:
    return json.dumps(document, indent=2, ensure_ascii=False) + "\n"


def write_output(text: str, output: Optional[str] = None) -> None:
    """Write to the output file if given, otherwise to stdout."""
    if output:
        try:
            Path(output).write_text(text, encoding="utf-8")
        except OSError as e:
            raise DocumentError(f"Cannot write {output}: {e}") from None
    else:
        print(text, end="")

