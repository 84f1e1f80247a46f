"""JSON polytope files.

Schema: ``{"dim": int, "facets": [{"normal": [int, ...], "offset": int | "p/q",
"label": int}, ...]}``; ``label`` defaults to 1.  Inequalities are inward,
``<alpha, normal> >= offset``.  Normals are normalized to primitive vectors
on load, with offsets divided by the same gcd.
"""
from __future__ import annotations

import json
from fractions import Fraction
from importlib import resources
from pathlib import Path

from .lattice import format_fraction
from .polytope import HalfSpace, PolytopeError
from .weighted import WeightedPolytope


class FileFormatError(ValueError):
    pass


def _offset(raw, i: int) -> Fraction:
    if isinstance(raw, bool) or not isinstance(raw, (int, str)):
        raise FileFormatError(f"facet {i}: offset must be an integer or a 'p/q' string, got {raw!r}")
    try:
        return Fraction(raw.strip() if isinstance(raw, str) else raw)
    except (ValueError, ZeroDivisionError):
        raise FileFormatError(f"facet {i}: cannot parse offset {raw!r}") from None


def load_facets(data) -> tuple[int, list[HalfSpace], list[int]]:
    """Schema-check a decoded document; returns ``(dim, facets, labels)`` without validating geometry."""
    if not isinstance(data, dict):
        raise FileFormatError("top level must be a JSON object")
    extra = set(data) - {"dim", "facets"}
    if extra:
        raise FileFormatError(f"unknown keys {sorted(extra)}")
    dim = data.get("dim")
    if isinstance(dim, bool) or not isinstance(dim, int) or dim < 1:
        raise FileFormatError("'dim' must be a positive integer")
    raw = data.get("facets")
    if not isinstance(raw, list) or not raw:
        raise FileFormatError("'facets' must be a nonempty array")
    facets, labels = [], []
    for i, f in enumerate(raw):
        if not isinstance(f, dict):
            raise FileFormatError(f"facet {i}: must be an object")
        extra = set(f) - {"normal", "offset", "label"}
        if extra:
            raise FileFormatError(f"facet {i}: unknown keys {sorted(extra)}")
        y = f.get("normal")
        if (not isinstance(y, list) or len(y) != dim
                or any(isinstance(a, bool) or not isinstance(a, int) for a in y)):
            raise FileFormatError(f"facet {i}: 'normal' must be an array of {dim} integers")
        if not any(y):
            raise FileFormatError(f"facet {i}: zero normal")
        if "offset" not in f:
            raise FileFormatError(f"facet {i}: missing 'offset'")
        m = f.get("label", 1)
        if isinstance(m, bool) or not isinstance(m, int) or m < 1:
            raise FileFormatError(f"facet {i}: label must be a positive integer, got {m!r}")
        facets.append(HalfSpace.make(y, _offset(f["offset"], i)))
        labels.append(m)
    return dim, facets, labels


def parse_polytope(text: str) -> WeightedPolytope:
    """Parse and validate; raises :class:`FileFormatError` or ``PolytopeError``."""
    try:
        data = json.loads(text)
    except json.JSONDecodeError as e:
        raise FileFormatError(f"invalid JSON: {e}") from None
    dim, facets, labels = load_facets(data)
    return WeightedPolytope.build(facets, labels, dim)


def read_polytope(path) -> WeightedPolytope:
    return parse_polytope(Path(path).read_text(encoding="utf-8"))


def to_document(W: WeightedPolytope) -> dict:
    return {
        "dim": W.dim,
        "facets": [
            {"label": m, "normal": list(h.normal), "offset": format_fraction(h.offset)}
            for h, m in zip(W.facets, W.labels)
        ],
    }


def serialize(W: WeightedPolytope) -> str:
    """Canonical text: sorted keys, facets in input order, offsets as strings."""
    return json.dumps(to_document(W), sort_keys=True, indent=2) + "\n"


def corpus_names() -> list[str]:
    root = resources.files("toricorb") / "corpus"
    return sorted(p.name[:-5] for p in root.iterdir() if p.name.endswith(".json"))


def corpus_path(name: str) -> Path:
    return Path(str(resources.files("toricorb") / "corpus" / f"{name}.json"))


def load_corpus() -> dict[str, WeightedPolytope]:
    return {name: read_polytope(corpus_path(name)) for name in corpus_names()}


__all__ = [
    "FileFormatError",
    "PolytopeError",
    "corpus_names",
    "corpus_path",
    "load_corpus",
    "parse_polytope",
    "read_polytope",
    "serialize",
    "to_document",
]
