"""Exact H-representation polytopes: vertices, faces, edges, simplicity.

A polytope is the intersection of half-spaces ``<alpha, y> >= eta`` with
primitive inward integer normals ``y`` and rational offsets ``eta``.  Vertex
enumeration is brute force over ``n``-subsets of facets, which is fine for
the small polytopes this package deals with.
"""
from __future__ import annotations

from dataclasses import dataclass, field
from fractions import Fraction
from functools import cached_property
from itertools import combinations
from math import gcd
from typing import Sequence

from .lattice import (
    IntVector,
    RatVector,
    dot,
    format_fraction,
    kernel_lattice,
    IntMatrix,
    primitive,
    rational_rank,
    solve_rational,
    to_fraction,
)


class PolytopeError(ValueError):
    """Input does not describe a compact, full-dimensional polytope."""


class EmptyPolytope(PolytopeError):
    pass


class UnboundedPolytope(PolytopeError):
    pass


class DegeneratePolytope(PolytopeError):
    """Lower-dimensional, duplicate or redundant facet data."""


class NotSimple(PolytopeError):
    pass


@dataclass(frozen=True)
class HalfSpace:
    """``{alpha : <alpha, normal> >= offset}`` with ``normal`` primitive."""

    normal: IntVector
    offset: Fraction

    def __post_init__(self):
        if not any(self.normal):
            raise PolytopeError("zero normal")
        g = 0
        for x in self.normal:
            g = gcd(g, x)
        if g != 1:
            raise PolytopeError(f"normal {self.normal} is not primitive")

    @classmethod
    def make(cls, normal: Sequence[int], offset) -> HalfSpace:
        """Normalize an arbitrary nonzero integer normal to primitive form.

        The offset is divided by the same gcd so the half-space is unchanged.
        """
        normal = tuple(int(x) for x in normal)
        offset = to_fraction(offset)
        if not any(normal):
            raise PolytopeError("zero normal")
        g = 0
        for x in normal:
            g = gcd(g, x)
        return cls(primitive(normal), offset / g)

    def value(self, point: Sequence) -> Fraction:
        """Slack ``<point, normal> - offset``; nonnegative on the half-space."""
        return dot(point, self.normal) - self.offset

    def __str__(self):
        return f"<a,{list(self.normal)}> >= {format_fraction(self.offset)}"


@dataclass(frozen=True)
class Face:
    active: tuple[int, ...]
    dim: int
    vertex_indices: tuple[int, ...]


def _vertex_sort_key(v: RatVector):
    return tuple(v)


def enumerate_vertices(
    facets: Sequence[HalfSpace], n: int
) -> tuple[list[RatVector], list[tuple[int, ...]]]:
    """All vertices (lexicographic order) and their sorted active facet sets."""
    if len(facets) < n + 1:
        raise UnboundedPolytope(f"need at least {n + 1} half-spaces in dimension {n}")
    if not is_bounded(facets, n):
        raise UnboundedPolytope("unbounded polytope")
    found: dict[RatVector, None] = {}
    for subset in combinations(range(len(facets)), n):
        rows = [facets[i].normal for i in subset]
        x = solve_rational(rows, [facets[i].offset for i in subset])
        if x is None:
            continue
        if all(h.value(x) >= 0 for h in facets):
            found[x] = None
    if not found:
        raise EmptyPolytope("empty polytope")
    vertices = sorted(found, key=_vertex_sort_key)
    vertex_facets = [
        tuple(i for i, h in enumerate(facets) if h.value(v) == 0) for v in vertices
    ]
    return vertices, vertex_facets


def is_bounded(facets: Sequence[HalfSpace], n: int) -> bool:
    """True iff the recession cone ``{d : <d, y_i> >= 0 for all i}`` is ``{0}``.

    Equivalently the normals positively span the ambient space.  Checked
    exactly: the cone is nontrivial iff the normals are rank deficient or some
    extreme ray (cut out by ``n - 1`` independent normals) lies in it.
    """
    normals = [h.normal for h in facets]
    if rational_rank(normals) < n:
        return False
    for subset in combinations(range(len(normals)), n - 1):
        K = kernel_lattice(IntMatrix.from_rows([normals[i] for i in subset], cols=n))
        if K.cols != 1:
            continue
        d = K.column(0)
        for s in (1, -1):
            if all(s * dot(d, y) >= 0 for y in normals):
                return False
    return True


def _affine_rank(points: Sequence[RatVector]) -> int:
    if len(points) <= 1:
        return 0
    p0 = points[0]
    return rational_rank([[a - b for a, b in zip(p, p0)] for p in points[1:]])


@dataclass(frozen=True)
class Polytope:
    """Compact full-dimensional polytope with every half-space facet-defining.

    Build with :meth:`from_halfspaces`; the constructor assumes its vertex data
    is consistent with ``facets``.
    """

    dim: int
    facets: tuple[HalfSpace, ...]
    vertices: tuple[RatVector, ...] = field(compare=False)
    vertex_facets: tuple[tuple[int, ...], ...] = field(compare=False)

    @classmethod
    def from_halfspaces(cls, facets: Sequence[HalfSpace], dim: int | None = None) -> Polytope:
        facets = tuple(facets)
        if not facets:
            raise PolytopeError("no half-spaces given")
        if dim is None:
            dim = len(facets[0].normal)
        if dim < 1:
            raise PolytopeError("dimension must be positive")
        for i, h in enumerate(facets):
            if len(h.normal) != dim:
                raise PolytopeError(f"facet {i}: normal has length {len(h.normal)}, expected {dim}")
        seen: dict[HalfSpace, int] = {}
        for i, h in enumerate(facets):
            if h in seen:
                raise DegeneratePolytope(f"facet {i} duplicates facet {seen[h]}")
            seen[h] = i
        vertices, vertex_facets = enumerate_vertices(facets, dim)
        if _affine_rank(vertices) < dim:
            raise DegeneratePolytope("polytope is not full-dimensional")
        for i in range(len(facets)):
            on = [v for v, act in zip(vertices, vertex_facets) if i in act]
            if _affine_rank(on) < dim - 1 or not on:
                raise DegeneratePolytope(
                    f"facet {i} ({facets[i]}) is redundant: it does not support a facet"
                )
        return cls(dim, facets, tuple(vertices), tuple(vertex_facets))

    @property
    def n_facets(self) -> int:
        return len(self.facets)

    @property
    def normals(self) -> list[IntVector]:
        return [h.normal for h in self.facets]

    def vertex_index(self, point: Sequence) -> int:
        return self.vertices.index(tuple(Fraction(x) for x in point))

    @cached_property
    def _faces(self) -> tuple[Face, ...]:
        return tuple(_face_lattice(self))

    @cached_property
    def _edges(self) -> tuple[tuple[tuple[IntVector, int], ...], ...]:
        return tuple(tuple(_edges_at_vertex(self, v)) for v in range(len(self.vertices)))


def is_simple(P: Polytope) -> tuple[bool, tuple[int, tuple[int, ...]] | None]:
    """``(True, None)`` or ``(False, (vertex, active set))`` for the first offender."""
    for v, act in enumerate(P.vertex_facets):
        if len(act) != P.dim:
            return False, (v, act)
    return True, None


def _require_simple(P: Polytope) -> None:
    ok, witness = is_simple(P)
    if not ok:
        v, act = witness
        raise NotSimple(
            f"polytope is not simple: vertex {v} = {fmt_point(P.vertices[v])} lies on facets {list(act)}"
        )


def fmt_point(p: Sequence[Fraction]) -> str:
    return "(" + ", ".join(format_fraction(x) for x in p) + ")"


def _face_lattice(P: Polytope) -> list[Face]:
    _require_simple(P)
    sets: set[tuple[int, ...]] = set()
    for act in P.vertex_facets:
        for k in range(len(act) + 1):
            sets.update(combinations(act, k))
    faces = []
    for S in sorted(sets, key=lambda s: (len(s), s)):
        verts = tuple(v for v, act in enumerate(P.vertex_facets) if set(S) <= set(act))
        faces.append(Face(S, P.dim - len(S), verts))
    return faces


def face_lattice(P: Polytope) -> list[Face]:
    """All faces ordered by ``(|S|, S)``; ``S = ()`` is the polytope itself."""
    return list(P._faces)


def find_face(P: Polytope, active: Sequence[int]) -> Face:
    key = tuple(sorted(active))
    for F in P._faces:
        if F.active == key:
            return F
    raise PolytopeError(f"facet set {list(key)} is not a face")


def _edges_at_vertex(P: Polytope, v: int) -> list[tuple[IntVector, int]]:
    _require_simple(P)
    act = P.vertex_facets[v]
    x = P.vertices[v]
    out = []
    for j in act:
        kept = [P.facets[i].normal for i in act if i != j]
        if kept:
            K = kernel_lattice(IntMatrix.from_rows(kept, cols=P.dim))
            d = K.column(0)
        else:
            d = (1,)
        if dot(d, P.facets[j].normal) < 0:
            d = tuple(-a for a in d)
        t = None
        for h in P.facets:
            rate = dot(d, h.normal)
            if rate < 0:
                step = h.value(x) / -rate
                if step > 0 and (t is None or step < t):
                    t = step
        end = tuple(a + t * b for a, b in zip(x, d))
        out.append((primitive(d), P.vertex_index(end)))
    return out


def edges_at_vertex(P: Polytope, v: int) -> list[tuple[IntVector, int]]:
    """The ``n`` edges leaving vertex ``v`` as ``(primitive direction, other endpoint)``.

    Edge ``k`` drops the ``k``-th facet of the vertex's active set; its
    direction pairs to zero with the retained normals and positively with the
    dropped one.
    """
    return list(P._edges[v])


def facets_from_vertices(vertices: Sequence[RatVector], n: int) -> set[HalfSpace]:
    """Recover the facet inequalities from a vertex set by brute force.

    Every affinely independent ``n``-subset spans a candidate hyperplane; it is
    a facet if all vertices lie weakly on one side and the vertices on it span
    dimension ``n - 1``.
    """
    out: set[HalfSpace] = set()
    vs = list(vertices)
    for subset in combinations(range(len(vs)), n):
        p0 = vs[subset[0]]
        diffs = [[a - b for a, b in zip(vs[i], p0)] for i in subset[1:]]
        if n > 1 and rational_rank(diffs) < n - 1:
            continue
        if n == 1:
            cands = [(1,), (-1,)]
        else:
            den = 1
            for row in diffs:
                for q in row:
                    den = den * q.denominator // gcd(den, q.denominator)
            K = kernel_lattice(IntMatrix.from_rows([[int(q * den) for q in r] for r in diffs], cols=n))
            y = K.column(0)
            cands = [y, tuple(-a for a in y)]
        for y in cands:
            eta = dot(p0, y)
            vals = [dot(v, y) - eta for v in vs]
            if all(val >= 0 for val in vals):
                on = [v for v, val in zip(vs, vals) if val == 0]
                if _affine_rank(on) == n - 1:
                    out.add(HalfSpace(primitive(y), Fraction(eta)))
    return out
