"""Labeled polytopes: validation, isomorphism under translations and SL/GL(n, Z)."""
from __future__ import annotations

import json
from dataclasses import dataclass, field
from fractions import Fraction
from functools import cached_property
from itertools import permutations
from typing import Sequence

from .lattice import (
    IntMatrix,
    RatVector,
    determinant,
    dot,
    format_fraction,
    inverse_rational,
)
from .polytope import (
    DegeneratePolytope,
    EmptyPolytope,
    HalfSpace,
    Polytope,
    PolytopeError,
    UnboundedPolytope,
    is_bounded,
    is_simple,
    fmt_point,
)

CHECKS = ("nonempty", "bounded", "full_dimensional", "rational", "simple", "labels")


@dataclass
class ValidationReport:
    checks: dict[str, bool]
    messages: dict[str, str] = field(default_factory=dict)

    @property
    def ok(self) -> bool:
        return all(self.checks.get(c, False) for c in CHECKS)

    def failures(self) -> list[str]:
        return [f"{c}: {self.messages.get(c, 'failed')}" for c in CHECKS if not self.checks.get(c, False)]


def validate(facets: Sequence[HalfSpace], labels: Sequence[int], dim: int | None = None) -> ValidationReport:
    """Run every well-formedness check on raw labeled facet data.

    Never raises; checks that cannot be evaluated because an earlier one
    failed are reported as failed with an explanatory message.
    """
    checks = dict.fromkeys(CHECKS, False)
    msgs: dict[str, str] = {}
    facets = list(facets)
    if dim is None:
        dim = len(facets[0].normal) if facets else 0
    checks["rational"] = all(
        isinstance(x, int) for h in facets for x in h.normal
    ) and all(len(h.normal) == dim for h in facets)
    if not checks["rational"]:
        msgs["rational"] = "normals must be integer vectors of the ambient dimension"
    if len(labels) != len(facets):
        msgs["labels"] = f"{len(labels)} labels for {len(facets)} facets"
    else:
        bad = [i for i, m in enumerate(labels) if not (isinstance(m, int) and m >= 1)]
        checks["labels"] = not bad
        if bad:
            msgs["labels"] = f"facet {bad[0]}: label {labels[bad[0]]!r} is not a positive integer"

    if not checks["rational"] or dim < 1:
        return ValidationReport(checks, msgs)
    checks["bounded"] = len(facets) > dim and is_bounded(facets, dim)
    if not checks["bounded"]:
        msgs["bounded"] = "unbounded polytope"
    try:
        P = Polytope.from_halfspaces(facets, dim)
    except EmptyPolytope as e:
        msgs["nonempty"] = str(e)
        return ValidationReport(checks, msgs)
    except UnboundedPolytope as e:
        msgs.setdefault("nonempty", f"not evaluated ({e})")
        return ValidationReport(checks, msgs)
    except DegeneratePolytope as e:
        checks["nonempty"] = True
        msgs["full_dimensional"] = str(e)
        return ValidationReport(checks, msgs)
    except PolytopeError as e:
        msgs["nonempty"] = str(e)
        return ValidationReport(checks, msgs)
    checks["nonempty"] = checks["full_dimensional"] = True
    simple, witness = is_simple(P)
    checks["simple"] = simple
    if not simple:
        v, act = witness
        msgs["simple"] = f"vertex {v} = {fmt_point(P.vertices[v])} lies on {len(act)} facets {list(act)}"
    return ValidationReport(checks, msgs)


class InvalidPolytope(PolytopeError):
    def __init__(self, report: ValidationReport):
        self.report = report
        super().__init__("; ".join(report.failures()))


@dataclass(frozen=True)
class WeightedPolytope:
    """A simple rational polytope with a positive integer label on each facet."""

    base: Polytope
    labels: tuple[int, ...]

    def __post_init__(self):
        if len(self.labels) != self.base.n_facets:
            raise PolytopeError("one label per facet required")
        bad = [i for i, m in enumerate(self.labels) if not (isinstance(m, int) and m >= 1)]
        if bad:
            raise PolytopeError(f"facet {bad[0]}: label {self.labels[bad[0]]!r} is not a positive integer")
        simple, witness = is_simple(self.base)
        if not simple:
            raise PolytopeError(f"polytope is not simple: vertex {witness[0]} lies on facets {list(witness[1])}")

    @classmethod
    def build(cls, facets: Sequence[HalfSpace], labels: Sequence[int] | None = None,
              dim: int | None = None) -> WeightedPolytope:
        facets = list(facets)
        labels = tuple(labels) if labels is not None else (1,) * len(facets)
        report = validate(facets, labels, dim)
        if not report.ok:
            raise InvalidPolytope(report)
        return cls(Polytope.from_halfspaces(facets, dim), labels)

    @classmethod
    def from_data(cls, normals, offsets, labels=None) -> WeightedPolytope:
        return cls.build([HalfSpace.make(y, c) for y, c in zip(normals, offsets)], labels)

    @property
    def dim(self) -> int:
        return self.base.dim

    @property
    def facets(self) -> tuple[HalfSpace, ...]:
        return self.base.facets

    @property
    def vertices(self) -> tuple[RatVector, ...]:
        return self.base.vertices

    def validate(self) -> ValidationReport:
        return validate(self.facets, self.labels, self.dim)

    def with_labels(self, labels: Sequence[int]) -> WeightedPolytope:
        return WeightedPolytope.build(self.facets, labels, self.dim)

    def transform(self, L: IntMatrix, c: Sequence) -> WeightedPolytope:
        """Image under ``alpha -> L alpha + c`` (``L`` unimodular), facet order kept.

        Normals transform contragrediently: ``y' = L^{-T} y`` and
        ``eta' = eta + <c, y'>``.
        """
        Linv = inverse_rational(L.to_rows())
        if Linv is None:
            raise ValueError("L is singular")
        c = tuple(Fraction(x) for x in c)
        facets = []
        for h in self.facets:
            y2 = tuple(sum(Linv[j][i] * h.normal[j] for j in range(self.dim)) for i in range(self.dim))
            if any(q.denominator != 1 for q in y2):
                raise ValueError("L is not unimodular")
            y2 = tuple(int(q) for q in y2)
            facets.append(HalfSpace.make(y2, h.offset + dot(c, y2)))
        return WeightedPolytope.build(facets, self.labels, self.dim)

    @cached_property
    def vertex_group_orders(self) -> tuple[int, ...]:
        """``|det [m_i y_i]|`` over each vertex's active facets, sorted."""
        out = []
        for act in self.base.vertex_facets:
            M = [[self.labels[i] * self.facets[i].normal[r] for i in act] for r in range(self.dim)]
            out.append(abs(determinant(M)))
        return tuple(sorted(out))


@dataclass(frozen=True)
class Isomorphism:
    L: IntMatrix
    c: RatVector
    sigma: tuple[int, ...]

    def apply(self, point: Sequence) -> RatVector:
        return tuple(a + b for a, b in zip(self.L.apply(point), self.c))

    def inverse(self) -> Isomorphism:
        Linv = inverse_rational(self.L.to_rows())
        Li = IntMatrix.from_rows([[int(q) for q in r] for r in Linv], cols=len(Linv))
        c = tuple(-x for x in Li.apply(self.c))
        sigma = [0] * len(self.sigma)
        for i, j in enumerate(self.sigma):
            sigma[j] = i
        return Isomorphism(Li, c, tuple(sigma))


def isomorphic(W1: WeightedPolytope, W2: WeightedPolytope, group: str = "sl") -> Isomorphism | None:
    """Search for an affine lattice isomorphism carrying ``W1`` to ``W2``.

    The map is ``alpha -> L alpha + c`` with ``L`` integral, ``det L = 1``
    (``group="sl"``) or ``det L = +-1`` (``group="gl"``), sending facet ``i``
    to facet ``sigma[i]`` with equal labels.  Anchors are tried in
    lexicographic order of (target vertex, facet bijection) with the source
    anchored at its first vertex: every isomorphism sends that vertex
    somewhere, so nothing is missed.
    """
    group = group.lower()
    if group not in ("sl", "gl"):
        raise ValueError(f"unknown group {group!r}")
    for W in (W1, W2):
        if not isinstance(W, WeightedPolytope):
            raise TypeError("isomorphic expects WeightedPolytope arguments")
    n = W1.dim
    if (n != W2.dim or W1.base.n_facets != W2.base.n_facets
            or len(W1.vertices) != len(W2.vertices)
            or sorted(W1.labels) != sorted(W2.labels)
            or W1.vertex_group_orders != W2.vertex_group_orders):
        return None

    target = {(h.normal, h.offset): j for j, h in enumerate(W2.facets)}
    v = 0
    act1 = W1.base.vertex_facets[v]
    Y1 = [[W1.facets[i].normal[r] for i in act1] for r in range(n)]
    for w, act2 in enumerate(W2.base.vertex_facets):
        for perm in permutations(act2):
            if any(W1.labels[i] != W2.labels[j] for i, j in zip(act1, perm)):
                continue
            # L^T Y2 = Y1  =>  L^T = Y1 Y2^{-1}
            Y2 = [[W2.facets[j].normal[r] for j in perm] for r in range(n)]
            Y2inv = inverse_rational(Y2)
            LT = [[sum(Y1[r][k] * Y2inv[k][s] for k in range(n)) for s in range(n)] for r in range(n)]
            if any(q.denominator != 1 for row in LT for q in row):
                continue
            L = IntMatrix.from_rows([[int(LT[s][r]) for s in range(n)] for r in range(n)], cols=n)
            det = determinant(L.to_rows())
            if det != 1 and not (group == "gl" and det == -1):
                continue
            c = tuple(a - b for a, b in zip(W2.vertices[w], L.apply(W1.vertices[v])))
            sigma = _match_facets(W1, W2, L, c, target)
            if sigma is not None:
                return Isomorphism(L, c, sigma)
    return None


def _match_facets(W1, W2, L: IntMatrix, c, target) -> tuple[int, ...] | None:
    n = W1.dim
    Linv = inverse_rational(L.to_rows())
    sigma = []
    for i, h in enumerate(W1.facets):
        y2 = tuple(int(sum(Linv[j][k] * h.normal[j] for j in range(n))) for k in range(n))
        j = target.get((y2, h.offset + dot(c, y2)))
        if j is None or W2.labels[j] != W1.labels[i]:
            return None
        sigma.append(j)
    return tuple(sigma)


def canonical_key(W: WeightedPolytope) -> bytes:
    """Translation-invariant key: equal keys iff the labeled polytopes are translates.

    The lexicographically least vertex is moved to the origin and the facets
    sorted by (normal, offset, label).  Not invariant under SL(n, Z).
    """
    shift = W.vertices[0]
    rows = sorted(
        (list(h.normal), h.offset - dot(shift, h.normal), m)
        for h, m in zip(W.facets, W.labels)
    )
    payload = {"dim": W.dim, "facets": [[y, format_fraction(o), m] for y, o, m in rows]}
    return json.dumps(payload, separators=(",", ":"), sort_keys=True).encode("utf-8")
