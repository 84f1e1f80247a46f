"""Reduction recipe C^N // K for a labeled polytope, with exact and sampled checks.

With ``x_i = m_i y_i`` and ``A = [x_1 ... x_N]`` the torus ``K`` is the kernel
of ``R^N/Z^N -> R^n/Z^n``; its identity component has Lie algebra ``ker A``
and its component group is the torsion of ``Z^n / A Z^N``.

Sign convention: on the level set the squared moduli are
``s_i = <alpha, x_i> - m_i eta_i >= 0``, so for a kernel basis ``B``
``B^T s = -B^T (m_1 eta_1, ..., m_N eta_N)`` and that right-hand side is
the reduction level (in the coordinates of ``B``).
"""
from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction

import numpy as np

from .invariants import FiniteAbelianGroup
from .lattice import (
    IntMatrix,
    RatVector,
    dot,
    kernel_lattice,
    rational_rank,
    smith_normal_form,
    solve_rational,
)
from .polytope import HalfSpace, Polytope
from .weighted import WeightedPolytope


class ConstructionError(RuntimeError):
    """The reduction recipe disagrees with its polytope; indicates a bug."""


@dataclass(frozen=True)
class DelzantData:
    N: int
    A: IntMatrix
    kernel_basis: IntMatrix
    component_group: FiniteAbelianGroup
    level: RatVector
    eta_scaled: RatVector


@dataclass(frozen=True)
class VertexPreimage:
    vertex: int
    squared_moduli: RatVector


def build(W: WeightedPolytope) -> DelzantData:
    N, n = W.base.n_facets, W.dim
    cols = [tuple(m * a for a in h.normal) for h, m in zip(W.facets, W.labels)]
    A = IntMatrix.from_columns(cols, rows=n)
    if rational_rank(A.to_rows()) < n:
        raise ConstructionError("action not effective / polytope degenerate")
    B = kernel_lattice(A)
    d, _, _ = smith_normal_form(A)
    eta = tuple(m * h.offset for h, m in zip(W.facets, W.labels))
    level = tuple(-dot(B.column(k), eta) for k in range(B.cols))
    return DelzantData(N, A, B, FiniteAbelianGroup.from_diagonal(d), level, eta)


def recompute_image(D: DelzantData, W: WeightedPolytope) -> bool:
    """Exact check that ``{<alpha, x_i> >= m_i eta_i}`` has ``W``'s facets.

    Each scaled inequality is reduced back to primitive form and compared
    with the original facet; the vertex sets are compared as well.
    """
    try:
        scaled = [HalfSpace.make(D.A.column(i), D.eta_scaled[i]) for i in range(D.N)]
        P = Polytope.from_halfspaces(scaled, W.dim)
    except ValueError:
        return False
    return scaled == list(W.facets) and P.vertices == W.vertices


def vertex_preimage(D: DelzantData, W: WeightedPolytope, v: int) -> VertexPreimage:
    """Solve for ``|z_j|^2`` over vertex ``v``: zero on its facets, positive elsewhere."""
    act = set(W.base.vertex_facets[v])
    free = [j for j in range(D.N) if j not in act]
    B = D.kernel_basis
    rows = [[B[j, k] for j in free] for k in range(B.cols)]
    if len(free) != B.cols:
        raise ConstructionError(f"vertex {v}: {len(free)} unknowns for {B.cols} equations")
    sol = solve_rational(rows, D.level) if free else ()
    if sol is None:
        raise ConstructionError(f"construction inconsistency: singular system at vertex {v}")
    s = [Fraction(0)] * D.N
    for j, x in zip(free, sol):
        s[j] = x
    if any(x <= 0 for x in sol):
        raise ConstructionError(f"construction inconsistency: non-positive |z|^2 at vertex {v}: {sol}")
    return VertexPreimage(v, tuple(s))


def image_of(D: DelzantData, s) -> np.ndarray:
    """Least-squares ``alpha`` with ``<alpha, x_i> = s_i + m_i eta_i``."""
    A = np.array(D.A.to_rows(), dtype=float)
    rhs = np.asarray(s, dtype=float) + np.array([float(e) for e in D.eta_scaled])
    alpha, *_ = np.linalg.lstsq(A.T, rhs, rcond=None)
    return alpha


@dataclass
class SampleReport:
    count: int
    seed: int
    tol: float
    max_violation: float
    max_level_residual: float
    attempts: int

    @property
    def passed(self) -> bool:
        return self.max_violation <= self.tol and self.max_level_residual <= self.tol


def sample_moment_image(D: DelzantData, W: WeightedPolytope, count: int = 1000,
                        seed: int = 0, tol: float = 1e-9, max_attempts: int | None = None) -> SampleReport:
    """Rejection-sample the level set and check its image lies in ``W``.

    ``max_violation`` is the largest signed ``eta_i - <alpha, y_i>`` over all
    samples and facets (negative when every sample is strictly inside).
    The affine solution space of ``B^T s = level`` is parameterized by a
    particular solution plus an orthonormal null-space basis; coordinates are
    drawn uniformly (numpy PCG64 seeded with ``seed``) from the box spanned
    by the exact vertex preimages and kept when ``s >= 0``.
    """
    if count <= 0:
        return SampleReport(0, seed, tol, 0.0, 0.0, 0)
    rng = np.random.default_rng(seed)
    Bt = np.array(D.kernel_basis.T.to_rows(), dtype=float).reshape(D.kernel_basis.cols, D.N)
    level = np.array([float(x) for x in D.level])
    pre = np.array([[float(x) for x in vertex_preimage(D, W, v).squared_moduli]
                    for v in range(len(W.vertices))])
    if len(pre) == 0:
        raise ConstructionError("level set empty")
    s0 = pre.mean(axis=0)
    if Bt.shape[0]:
        _, sv, vt = np.linalg.svd(Bt)
        Z = vt[int(np.sum(sv > 1e-12)):].T
    else:
        Z = np.eye(D.N)
    coords = (pre - s0) @ Z
    lo, hi = coords.min(axis=0), coords.max(axis=0)
    normals = np.array([h.normal for h in W.facets], dtype=float)
    offsets = np.array([float(h.offset) for h in W.facets])
    max_attempts = max_attempts or 1000 * count
    worst, res = -np.inf, 0.0
    accepted = attempts = 0
    while accepted < count:
        if attempts >= max_attempts:
            raise ConstructionError("level set empty or too thin to sample")
        attempts += 1
        s = s0 + Z @ rng.uniform(lo, hi)
        if np.any(s < 0):
            continue
        accepted += 1
        if Bt.shape[0]:
            res = max(res, float(np.max(np.abs(Bt @ s - level))))
        alpha = image_of(D, s)
        worst = max(worst, float(np.max(offsets - normals @ alpha)))
    return SampleReport(count, seed, tol, worst, res, attempts)
