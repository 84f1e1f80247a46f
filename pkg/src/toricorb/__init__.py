"""Labeled rational simple polytopes as models of symplectic toric orbifolds."""
from .delzant import DelzantData, build, recompute_image, sample_moment_image, vertex_preimage
from .fileio import load_corpus, parse_polytope, read_polytope, serialize
from .invariants import (
    FiniteAbelianGroup,
    local_cone,
    orbi_weights,
    singular_locus_report,
    structure_group,
)
from .morse import betti_numbers, generic_direction, vertex_index
from .polytope import HalfSpace, Polytope, PolytopeError, edges_at_vertex, face_lattice, is_simple
from .weighted import WeightedPolytope, canonical_key, isomorphic, validate

__all__ = [
    "DelzantData", "FiniteAbelianGroup", "HalfSpace", "Polytope", "PolytopeError", "WeightedPolytope",
    "betti_numbers", "build", "canonical_key", "edges_at_vertex", "face_lattice", "generic_direction",
    "is_simple", "isomorphic", "load_corpus", "local_cone", "orbi_weights", "parse_polytope",
    "read_polytope", "recompute_image", "sample_moment_image", "serialize", "singular_locus_report",
    "structure_group", "validate", "vertex_index", "vertex_preimage",
]
