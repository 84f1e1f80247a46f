"""Betti numbers from the moment-map Morse function.

A generic linear functional ``xi`` restricted to the polytope is a perfect
Morse function with critical points at the vertices.  The index at a vertex
is twice the number of edges along which ``xi`` decreases, so ``b_{2k}``
counts vertices with ``k`` descending edges and odd Betti numbers vanish.
Real coefficients only.
"""
from __future__ import annotations

from dataclasses import dataclass
from typing import Sequence

from .lattice import IntVector, dot
from .polytope import edges_at_vertex
from .weighted import WeightedPolytope


class NonGenericDirection(ValueError):
    pass


@dataclass(frozen=True)
class BettiProfile:
    n: int
    b: tuple[int, ...]
    xi_used: IntVector


def is_generic(W: WeightedPolytope, xi: Sequence[int]) -> bool:
    P = W.base
    if len(xi) != W.dim:
        return False
    for v in range(len(P.vertices)):
        if any(dot(xi, d) == 0 for d, _ in edges_at_vertex(P, v)):
            return False
    values = [dot(xi, v) for v in P.vertices]
    return len(set(values)) == len(values)


def generic_direction(W: WeightedPolytope) -> IntVector:
    """First generic ``(1, t, ..., t^{n-1})`` with ``t`` starting past the edge spread."""
    n = W.dim
    if n == 1:
        return (1,)
    spread = max(abs(a) for v in range(len(W.vertices)) for d, _ in edges_at_vertex(W.base, v) for a in d)
    t = spread + 1
    while True:
        xi = tuple(t ** k for k in range(n))
        if is_generic(W, xi):
            return xi
        t += 1


def vertex_index(W: WeightedPolytope, v: int, xi: Sequence[int]) -> int:
    pairings = [dot(xi, d) for d, _ in edges_at_vertex(W.base, v)]
    if any(p == 0 for p in pairings):
        raise NonGenericDirection("direction not generic")
    return 2 * sum(1 for p in pairings if p < 0)


def betti_numbers(W: WeightedPolytope, xi: Sequence[int] | None = None) -> BettiProfile:
    if xi is None:
        xi = generic_direction(W)
    xi = tuple(int(x) for x in xi)
    if len(xi) != W.dim:
        raise NonGenericDirection(f"direction has length {len(xi)}, expected {W.dim}")
    b = [0] * (2 * W.dim + 1)
    for v in range(len(W.vertices)):
        b[vertex_index(W, v, xi)] += 1
    return BettiProfile(W.dim, tuple(b), xi)
