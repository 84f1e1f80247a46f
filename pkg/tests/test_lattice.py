import random
from itertools import combinations
from math import gcd

import pytest
import sympy
from hypothesis import given, settings, strategies as st
from sympy.matrices.normalforms import smith_normal_form as sympy_snf

from toricorb.lattice import (
    IntMatrix,
    determinant,
    hermite_normal_form,
    kernel_lattice,
    lattice_coordinates,
    primitive,
    saturate,
    smith_normal_form,
)


def diag(d, rows, cols):
    return IntMatrix.from_rows([[d[i] if i == j and i < len(d) else 0 for j in range(cols)]
                                for i in range(rows)], cols=cols)


def determinantal_divisors(A):
    """d_1 ... d_k = gcd of all k x k minors; brute force over minors."""
    rows, cols = len(A), len(A[0])
    out, prev = [], 1
    for k in range(1, min(rows, cols) + 1):
        g = 0
        for R in combinations(range(rows), k):
            for C in combinations(range(cols), k):
                g = gcd(g, determinant([[A[r][c] for c in C] for r in R]))
        if g == 0:
            break
        out.append(g // prev)
        prev = g
    return out


matrices = st.integers(1, 4).flatmap(
    lambda r: st.integers(1, 5).flatmap(
        lambda c: st.lists(st.lists(st.integers(-9, 9), min_size=c, max_size=c), min_size=r, max_size=r)))


class TestHermite:
    def test_examples(self):
        H, U = hermite_normal_form([[2, 4], [1, 1]])
        assert H.to_rows() == [[1, 1], [0, 2]]
        assert (U @ IntMatrix.from_rows([[2, 4], [1, 1]])) == H
        assert abs(determinant(U.to_rows())) == 1

        H, U = hermite_normal_form(IntMatrix.identity(3))
        assert H == IntMatrix.identity(3) and U == IntMatrix.identity(3)

        H, _ = hermite_normal_form([[6], [4]])
        assert H.to_rows() == [[2], [0]]

    @given(matrices)
    @settings(max_examples=150, deadline=None)
    def test_properties(self, rows):
        A = IntMatrix.from_rows(rows)
        H, U = hermite_normal_form(A)
        assert U @ A == H
        assert abs(determinant(U.to_rows())) == 1
        # echelon shape, positive pivots, reduced above
        last = -1
        for i in range(H.rows):
            nz = [j for j in range(H.cols) if H[i, j]]
            if not nz:
                assert all(not any(H.row(k)) for k in range(i, H.rows))
                break
            p = nz[0]
            assert p > last and H[i, p] > 0
            assert all(0 <= H[k, p] < H[i, p] for k in range(i))
            last = p
        assert hermite_normal_form(H)[0] == H


class TestSmith:
    @pytest.mark.parametrize("A,d", [
        ([[2, 0], [0, 3]], [1, 6]),
        ([[1, 0], [0, 1]], [1, 1]),
        ([[0, -2], [1, -2]], [1, 2]),
    ])
    def test_examples(self, A, d):
        got, U, V = smith_normal_form(A)
        assert got == d
        assert U @ IntMatrix.from_rows(A) @ V == diag(d, 2, 2)

    @given(matrices)
    @settings(max_examples=150, deadline=None)
    def test_against_minors_and_sympy(self, rows):
        A = IntMatrix.from_rows(rows)
        d, U, V = smith_normal_form(A)
        assert U @ A @ V == diag(d, A.rows, A.cols)
        assert abs(determinant(U.to_rows())) == 1 and abs(determinant(V.to_rows())) == 1
        nz = [x for x in d if x]
        assert all(x > 0 for x in nz) and d[:len(nz)] == nz
        assert all(b % a == 0 for a, b in zip(nz, nz[1:]))
        assert nz == determinantal_divisors(rows)
        S = sympy_snf(sympy.Matrix(rows))
        theirs = sorted(abs(S[i, i]) for i in range(min(S.shape)) if S[i, i] != 0)
        assert sorted(nz) == theirs


class TestKernel:
    def test_examples(self):
        assert kernel_lattice([[1, -1]]).columns() == [(1, 1)]
        assert kernel_lattice([[2, -3]]).columns() == [(3, 2)]
        K = kernel_lattice(IntMatrix.identity(3))
        assert (K.rows, K.cols) == (3, 0)

    @given(matrices)
    @settings(max_examples=100, deadline=None)
    def test_kernel_properties(self, rows):
        A = IntMatrix.from_rows(rows)
        K = kernel_lattice(A)
        assert (A @ K).is_zero() if K.cols else True
        rank = sympy.Matrix(rows).rank()
        assert K.cols == A.cols - rank
        if K.cols:
            assert saturate(K) == K


class TestSaturate:
    def test_examples(self):
        assert saturate(IntMatrix.from_columns([(2, 2)])).columns() == [(1, 1)]
        assert saturate(IntMatrix.identity(2)) == IntMatrix.identity(2)
        B = IntMatrix.from_columns([(1, 0, 0), (0, 2, 0)])
        assert saturate(B).columns() == [(1, 0, 0), (0, 1, 0)]

    def test_dependent(self):
        with pytest.raises(ValueError, match="dependent generators"):
            saturate(IntMatrix.from_columns([(1, 2), (2, 4)]))

    def test_contains_original_with_finite_index(self):
        rng = random.Random(5)
        for _ in range(40):
            cols = [[rng.randint(-6, 6) for _ in range(4)] for _ in range(2)]
            B = IntMatrix.from_columns(cols)
            if sympy.Matrix(B.to_rows()).rank() < 2:
                continue
            S = saturate(B)
            coords = [lattice_coordinates(S, c) for c in cols]
            assert determinant([list(c) for c in coords]) != 0


class TestPrimitive:
    def test_examples(self):
        assert primitive((4, -6)) == (2, -3)
        assert primitive((0, 1)) == (0, 1)
        assert primitive((-3, 0, 0)) == (-1, 0, 0)

    def test_zero(self):
        with pytest.raises(ValueError, match="zero vector"):
            primitive((0, 0))

    @given(st.lists(st.integers(-50, 50), min_size=1, max_size=5).filter(any), st.integers(1, 20))
    def test_scale_invariant(self, v, k):
        p = primitive(v)
        assert primitive([k * x for x in v]) == p
        g = 0
        for x in p:
            g = gcd(g, x)
        assert g == 1
