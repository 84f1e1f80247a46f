"""Orbifold structure groups, orbi-weights and local cones of a labeled polytope.

For a face with active facet set ``S`` the structure group of points over its
relative interior is the finite quotient

    (Z^n intersected with span{y_i : i in S}) / Z-span{m_i y_i : i in S},

read off from a Smith normal form.  Vertices and facets are special cases.
"""
from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction
from math import prod

from .lattice import (
    IntMatrix,
    IntVector,
    RatVector,
    dot,
    inverse_rational,
    lattice_coordinates,
    saturate,
    smith_normal_form,
)
from .polytope import Face, edges_at_vertex, face_lattice, find_face
from .weighted import WeightedPolytope


@dataclass(frozen=True)
class FiniteAbelianGroup:
    invariant_factors: tuple[int, ...] = ()

    def __post_init__(self):
        d = self.invariant_factors
        if any(x < 2 for x in d):
            raise ValueError("invariant factors must be >= 2")
        if any(b % a for a, b in zip(d, d[1:])):
            raise ValueError(f"{list(d)} is not a divisibility chain")

    @classmethod
    def from_diagonal(cls, d) -> FiniteAbelianGroup:
        """Group ``prod Z/d_i``; the ``d_i`` must already form a divisibility chain."""
        return cls(tuple(x for x in d if x > 1))

    @classmethod
    def cyclic(cls, m: int) -> FiniteAbelianGroup:
        return cls((m,) if m > 1 else ())

    @property
    def order(self) -> int:
        return prod(self.invariant_factors)

    @property
    def is_trivial(self) -> bool:
        return not self.invariant_factors

    def __str__(self):
        if self.is_trivial:
            return "1"
        return " x ".join(f"Z/{d}" for d in self.invariant_factors)


@dataclass(frozen=True)
class LocalCone:
    apex: RatVector
    generators: tuple[tuple[IntVector, int], ...]

    def contains_direction(self, xi) -> bool:
        return all(dot(xi, y) >= 0 for y, _ in self.generators)


@dataclass(frozen=True)
class OrbiWeights:
    vertex: int
    weights: tuple[RatVector, ...]


def _face(W: WeightedPolytope, F) -> Face:
    if isinstance(F, Face):
        return find_face(W.base, F.active)
    return find_face(W.base, F)


def structure_group(W: WeightedPolytope, F) -> FiniteAbelianGroup:
    """Structure group over the open face ``F`` (a :class:`Face` or facet-index set)."""
    F = _face(W, F)
    S = F.active
    if not S:
        return FiniteAbelianGroup()
    gens = [W.facets[i].normal for i in S]
    basis = saturate(IntMatrix.from_columns(gens, rows=W.dim))
    coords = [lattice_coordinates(basis, tuple(W.labels[i] * a for a in W.facets[i].normal)) for i in S]
    d, _, _ = smith_normal_form(IntMatrix.from_columns(coords, rows=len(S)))
    return FiniteAbelianGroup.from_diagonal(d)


def orbi_weights(W: WeightedPolytope, v: int) -> OrbiWeights:
    """Dual basis to ``{m_i y_i}`` over the active facets of vertex ``v``.

    ``weights[j]`` pairs to 1 with the ``j``-th active facet's scaled normal
    and to 0 with the others.
    """
    act = W.base.vertex_facets[v]
    M = [[W.labels[i] * W.facets[i].normal[r] for i in act] for r in range(W.dim)]
    MT = [list(col) for col in zip(*M)]
    inv = inverse_rational(MT)
    if inv is None:
        raise ArithmeticError(f"singular vertex matrix at vertex {v}")
    n = W.dim
    return OrbiWeights(v, tuple(tuple(inv[r][j] for r in range(n)) for j in range(n)))


def local_cone(W: WeightedPolytope, F, verify: bool = False) -> LocalCone:
    """Labeled generators of the cone modelling ``W`` near the face ``F``.

    With ``verify=True`` checks that every facet outside ``F``'s active set
    is strictly slack at the barycentre of ``F``.
    """
    F = _face(W, F)
    pts = [W.vertices[i] for i in F.vertex_indices]
    apex = tuple(sum(c) / len(pts) for c in zip(*pts))
    if verify:
        for i, h in enumerate(W.facets):
            on = h.value(apex) == 0
            if on != (i in F.active):
                raise AssertionError(f"facet {i} activity disagrees with face {list(F.active)}")
    return LocalCone(apex, tuple((W.facets[i].normal, W.labels[i]) for i in F.active))


@dataclass(frozen=True)
class FaceRecord:
    face: Face
    group: FiniteAbelianGroup
    stabilizer_rank: int


@dataclass(frozen=True)
class SingularLocusReport:
    faces: tuple[FaceRecord, ...]

    @property
    def smooth(self) -> bool:
        return all(r.group.is_trivial for r in self.faces)

    @property
    def singular(self) -> tuple[FaceRecord, ...]:
        return tuple(r for r in self.faces if not r.group.is_trivial)


def singular_locus_report(W: WeightedPolytope) -> SingularLocusReport:
    return SingularLocusReport(tuple(
        FaceRecord(F, structure_group(W, F), len(F.active)) for F in face_lattice(W.base)
    ))


def check_orbi_weights(W: WeightedPolytope, v: int) -> None:
    """Raise AssertionError if the orbi-weights at ``v`` break duality,
    integrality after scaling by the group order, or edge alignment."""
    ow = orbi_weights(W, v)
    act = W.base.vertex_facets[v]
    order = structure_group(W, act).order
    for j, a in enumerate(ow.weights):
        for k, i in enumerate(act):
            x = tuple(W.labels[i] * t for t in W.facets[i].normal)
            assert dot(a, x) == (1 if j == k else 0)
        assert all((order * q).denominator == 1 for q in a)
    for a, (d, _) in zip(ow.weights, edges_at_vertex(W.base, v)):
        ratios = {q / e for q, e in zip(a, d) if e != 0}
        assert all(q == 0 for q, e in zip(a, d) if e == 0)
        assert len(ratios) == 1 and next(iter(ratios)) > Fraction(0)
