import itertools
from collections import Counter
from fractions import Fraction as Q
from math import gcd

import pytest

from conftest import CORPUS, interval, square, triangle
from toricorb.invariants import (
    FiniteAbelianGroup,
    check_orbi_weights,
    local_cone,
    orbi_weights,
    singular_locus_report,
    structure_group,
)
from toricorb.lattice import inverse_rational
from toricorb.polytope import PolytopeError, face_lattice


def brute_vertex_group(W, v):
    """Element-order census of Z^n / span{m_i y_i} by enumerating the fundamental parallelepiped."""
    act = W.base.vertex_facets[v]
    gens = [tuple(W.labels[i] * a for a in W.facets[i].normal) for i in act]
    n = W.dim
    M = [[g[r] for g in gens] for r in range(n)]
    Minv = inverse_rational(M)
    bound = sum(max(abs(x) for x in g) for g in gens)
    reps = []
    for p in itertools.product(range(-bound, bound + 1), repeat=n):
        coords = [sum(Minv[r][k] * p[k] for k in range(n)) for r in range(n)]
        if all(0 <= c < 1 for c in coords):
            reps.append(coords)
    census = Counter()
    for c in reps:
        k = 1
        while any((k * x).denominator != 1 for x in c):
            k += 1
        census[k] += 1
    return census


def census_of(G: FiniteAbelianGroup):
    census = Counter()
    for elt in itertools.product(*[range(d) for d in G.invariant_factors]):
        k = 1
        for x, d in zip(elt, G.invariant_factors):
            o = d // gcd(x, d)
            k = k * o // gcd(k, o)
        census[k] += 1
    return census or Counter({1: 1})


class TestGroup:
    def test_printing(self):
        assert str(FiniteAbelianGroup()) == "1"
        assert str(FiniteAbelianGroup((2, 6))) == "Z/2 x Z/6"
        with pytest.raises(ValueError):
            FiniteAbelianGroup((2, 3))


class TestStructureGroup:
    def test_facet_cyclic(self):
        W = triangle((1, 1, 5))
        assert structure_group(W, [2]).invariant_factors == (5,)
        assert structure_group(W, [0]).is_trivial

    def test_delzant_vertex(self):
        assert structure_group(square(), [0, 1]).is_trivial

    def test_weighted_triangle_vertex(self):
        W = triangle((1, 1, 2))
        assert structure_group(W, [1, 2]).invariant_factors == (2,)

    def test_football(self):
        W = interval(2, 3)
        assert [structure_group(W, [i]).invariant_factors for i in (0, 1)] == [(2,), (3,)]

    def test_not_a_face(self):
        with pytest.raises(PolytopeError):
            structure_group(square(), [0, 2])

    @pytest.mark.parametrize("name", sorted(CORPUS))
    def test_vertex_groups_brute_force(self, name):
        W = CORPUS[name]
        for v, act in enumerate(W.base.vertex_facets):
            G = structure_group(W, act)
            assert census_of(G) == brute_vertex_group(W, v)

    @pytest.mark.parametrize("name", sorted(CORPUS))
    def test_facet_order_divides_vertex_order(self, name):
        W = CORPUS[name]
        for act in W.base.vertex_facets:
            order = structure_group(W, act).order
            for i in act:
                assert order % W.labels[i] == 0

    def test_non_cyclic_group(self):
        # all labels 2 on the cube: every vertex group is (Z/2)^3
        W = CORPUS["cube"].with_labels([2] * 6)
        assert structure_group(W, [0, 1, 2]).invariant_factors == (2, 2, 2)
        assert structure_group(W, [0, 1]).invariant_factors == (2, 2)


class TestOrbiWeights:
    def test_delzant(self):
        assert orbi_weights(square(), 0).weights == ((1, 0), (0, 1))

    def test_interval(self):
        assert orbi_weights(interval(2, 3), 0).weights == ((Q(1, 2),),)

    def test_weighted_triangle(self):
        W = triangle((1, 1, 2))
        v = W.base.vertex_index((1, 0))
        assert orbi_weights(W, v).weights == ((-1, 1), (Q(-1, 2), 0))

    @pytest.mark.parametrize("name", sorted(CORPUS))
    def test_duality_integrality_alignment(self, name):
        W = CORPUS[name]
        for v in range(len(W.vertices)):
            check_orbi_weights(W, v)


class TestLocalCone:
    def test_examples(self):
        W = square((1, 2, 1, 1))
        assert local_cone(W, []).generators == ()
        assert local_cone(W, [1]).generators == (((0, 1), 2),)
        assert local_cone(W, [0, 1], verify=True).generators == (((1, 0), 1), ((0, 1), 2))

    @pytest.mark.parametrize("name", sorted(CORPUS))
    def test_verify_all_faces(self, name):
        W = CORPUS[name]
        for F in face_lattice(W.base):
            local_cone(W, F, verify=True)


class TestSingularLocus:
    def test_delzant_triangle(self):
        rep = singular_locus_report(triangle())
        assert rep.smooth and len(rep.faces) == 7

    def test_football(self):
        rep = singular_locus_report(interval(2, 3))
        assert not rep.smooth
        assert [(r.face.active, str(r.group)) for r in rep.singular] == [((0,), "Z/2"), ((1,), "Z/3")]

    def test_weighted_triangle(self):
        rep = singular_locus_report(triangle((1, 1, 2)))
        assert [r.face.active for r in rep.singular] == [(2,), (0, 2), (1, 2)]
        assert all(str(r.group) == "Z/2" for r in rep.singular)
        assert all(r.stabilizer_rank == len(r.face.active) for r in rep.faces)
