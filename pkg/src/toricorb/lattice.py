"""Exact integer linear algebra: Hermite/Smith normal forms, kernels, saturation.

Python ints are arbitrary precision, so nothing here can overflow.  Rationals
are :class:`fractions.Fraction`.  Matrices are small immutable row-major
values; shapes with zero rows or columns are allowed (an empty kernel basis is
an ``n x 0`` matrix).
"""
from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction
from math import gcd
from typing import Iterable, Sequence

IntVector = tuple[int, ...]
RatVector = tuple[Fraction, ...]


@dataclass(frozen=True)
class IntMatrix:
    rows: int
    cols: int
    entries: tuple[int, ...]

    def __post_init__(self):
        if self.rows < 0 or self.cols < 0:
            raise ValueError("negative matrix shape")
        if len(self.entries) != self.rows * self.cols:
            raise ValueError(
                f"expected {self.rows * self.cols} entries, got {len(self.entries)}"
            )

    @classmethod
    def from_rows(cls, rows: Sequence[Sequence[int]], cols: int | None = None) -> IntMatrix:
        rows = [tuple(int(x) for x in r) for r in rows]
        if cols is None:
            if not rows:
                raise ValueError("cannot infer column count of an empty row list")
            cols = len(rows[0])
        if any(len(r) != cols for r in rows):
            raise ValueError("ragged rows")
        return cls(len(rows), cols, tuple(x for r in rows for x in r))

    @classmethod
    def from_columns(cls, columns: Sequence[Sequence[int]], rows: int | None = None) -> IntMatrix:
        columns = [tuple(int(x) for x in c) for c in columns]
        if rows is None:
            if not columns:
                raise ValueError("cannot infer row count of an empty column list")
            rows = len(columns[0])
        return cls.from_rows([[c[i] for c in columns] for i in range(rows)], cols=len(columns)) \
            if columns else cls(rows, 0, ())

    @classmethod
    def identity(cls, n: int) -> IntMatrix:
        return cls.from_rows([[int(i == j) for j in range(n)] for i in range(n)], cols=n)

    @classmethod
    def zeros(cls, rows: int, cols: int) -> IntMatrix:
        return cls(rows, cols, (0,) * (rows * cols))

    def __getitem__(self, ij: tuple[int, int]) -> int:
        i, j = ij
        return self.entries[i * self.cols + j]

    def row(self, i: int) -> IntVector:
        return self.entries[i * self.cols:(i + 1) * self.cols]

    def column(self, j: int) -> IntVector:
        return tuple(self.entries[i * self.cols + j] for i in range(self.rows))

    def to_rows(self) -> list[list[int]]:
        return [list(self.row(i)) for i in range(self.rows)]

    def columns(self) -> list[IntVector]:
        return [self.column(j) for j in range(self.cols)]

    @property
    def T(self) -> IntMatrix:
        return IntMatrix.from_rows(self.columns(), cols=self.rows) if self.cols else IntMatrix(0, self.rows, ())

    def __matmul__(self, other: IntMatrix) -> IntMatrix:
        if self.cols != other.rows:
            raise ValueError(f"shape mismatch {self.rows}x{self.cols} @ {other.rows}x{other.cols}")
        out = []
        ocols = other.columns()
        for i in range(self.rows):
            r = self.row(i)
            out.append([sum(a * b for a, b in zip(r, c)) for c in ocols])
        return IntMatrix.from_rows(out, cols=other.cols)

    def apply(self, v: Sequence) -> tuple:
        """Matrix-vector product; works for int or Fraction entries of ``v``."""
        if len(v) != self.cols:
            raise ValueError("shape mismatch in matrix-vector product")
        return tuple(sum((a * b for a, b in zip(self.row(i), v)), 0) for i in range(self.rows))

    def is_zero(self) -> bool:
        return all(x == 0 for x in self.entries)

    def __repr__(self) -> str:
        return f"IntMatrix({self.to_rows()!r})" if self.rows else f"IntMatrix(0x{self.cols})"


def _as_matrix(A) -> IntMatrix:
    return A if isinstance(A, IntMatrix) else IntMatrix.from_rows(A)


# ---------------------------------------------------------------------------
# rational helpers

def to_fraction(x) -> Fraction:
    """Parse an int, Fraction or ``"p/q"`` string exactly; floats are refused."""
    if isinstance(x, bool):
        raise TypeError("booleans are not rationals")
    if isinstance(x, (int, Fraction)):
        return Fraction(x)
    if isinstance(x, str):
        return Fraction(x.strip())
    raise TypeError(f"cannot interpret {x!r} as an exact rational")


def format_fraction(q: Fraction) -> str:
    return str(q.numerator) if q.denominator == 1 else f"{q.numerator}/{q.denominator}"


def dot(u: Sequence, v: Sequence):
    return sum((a * b for a, b in zip(u, v)), 0)


def rational_rank(rows: Iterable[Sequence]) -> int:
    return len(_row_echelon([list(map(Fraction, r)) for r in rows]))


def _row_echelon(m: list[list[Fraction]]) -> list[list[Fraction]]:
    m = [r[:] for r in m]
    out = []
    ncols = len(m[0]) if m else 0
    for c in range(ncols):
        piv = next((r for r in m if r[c] != 0), None)
        if piv is None:
            continue
        m.remove(piv)
        for r in m:
            if r[c] != 0:
                f = r[c] / piv[c]
                for k in range(c, ncols):
                    r[k] -= f * piv[k]
        out.append(piv)
    return out


def solve_rational(rows: Sequence[Sequence], rhs: Sequence) -> RatVector | None:
    """Solve the square system ``rows @ x = rhs`` exactly; None if singular."""
    n = len(rows)
    m = [[Fraction(x) for x in r] + [Fraction(b)] for r, b in zip(rows, rhs)]
    for c in range(n):
        p = next((i for i in range(c, n) if m[i][c] != 0), None)
        if p is None:
            return None
        m[c], m[p] = m[p], m[c]
        pv = m[c][c]
        m[c] = [x / pv for x in m[c]]
        for i in range(n):
            if i != c and m[i][c] != 0:
                f = m[i][c]
                m[i] = [a - f * b for a, b in zip(m[i], m[c])]
    return tuple(m[i][n] for i in range(n))


def inverse_rational(rows: Sequence[Sequence]) -> list[list[Fraction]] | None:
    n = len(rows)
    cols = []
    for j in range(n):
        x = solve_rational(rows, [int(i == j) for i in range(n)])
        if x is None:
            return None
        cols.append(x)
    return [[cols[j][i] for j in range(n)] for i in range(n)]


def determinant(rows: Sequence[Sequence[int]]) -> int:
    """Exact determinant via fraction-free Bareiss elimination."""
    m = [list(map(int, r)) for r in rows]
    n = len(m)
    if n == 0:
        return 1
    sign, prev = 1, 1
    for k in range(n - 1):
        if m[k][k] == 0:
            p = next((i for i in range(k + 1, n) if m[i][k] != 0), None)
            if p is None:
                return 0
            m[k], m[p] = m[p], m[k]
            sign = -sign
        for i in range(k + 1, n):
            for j in range(k + 1, n):
                m[i][j] = (m[i][j] * m[k][k] - m[i][k] * m[k][j]) // prev
        prev = m[k][k]
    return sign * m[n - 1][n - 1]


# ---------------------------------------------------------------------------
# normal forms

def _min_abs_index(values: Sequence[int]) -> int | None:
    best = None
    for i, x in enumerate(values):
        if x != 0 and (best is None or abs(x) < abs(values[best])):
            best = i
    return best


def hermite_normal_form(A) -> tuple[IntMatrix, IntMatrix]:
    """Row-style Hermite normal form ``H = U @ A`` with ``U`` unimodular.

    Pivots are positive and entries above a pivot lie in ``[0, pivot)``.  The
    pivot row at each step is the remaining row whose entry in the current
    column is nonzero with least absolute value (lowest index on ties).
    """
    A = _as_matrix(A)
    m, n = A.rows, A.cols
    H = A.to_rows()
    U = IntMatrix.identity(m).to_rows()

    def swap(i, j):
        H[i], H[j] = H[j], H[i]
        U[i], U[j] = U[j], U[i]

    def addmul(dst, src, q):  # row_dst -= q * row_src
        H[dst] = [a - q * b for a, b in zip(H[dst], H[src])]
        U[dst] = [a - q * b for a, b in zip(U[dst], U[src])]

    r = 0
    for c in range(n):
        if r == m:
            break
        while True:
            k = _min_abs_index([H[i][c] for i in range(r, m)])
            if k is None:
                break
            swap(r, r + k)
            done = True
            for i in range(r + 1, m):
                if H[i][c] != 0:
                    addmul(i, r, H[i][c] // H[r][c])
                    if H[i][c] != 0:
                        done = False
            if done:
                break
        if all(H[i][c] == 0 for i in range(r, m)):
            continue
        if H[r][c] < 0:
            H[r] = [-x for x in H[r]]
            U[r] = [-x for x in U[r]]
        for i in range(r):
            q = H[i][c] // H[r][c]
            if q:
                addmul(i, r, q)
        r += 1
    return IntMatrix.from_rows(H, cols=n), IntMatrix.from_rows(U, cols=m)


def smith_normal_form(A) -> tuple[list[int], IntMatrix, IntMatrix]:
    """Return ``(d, U, V)`` with ``U @ A @ V = diag(d)`` and ``d[i] | d[i+1]``.

    ``d`` has ``min(rows, cols)`` entries; nonzero ones come first and are
    positive.  Pivot: least absolute nonzero value in the remaining block,
    first in row-major order on ties.
    """
    A = _as_matrix(A)
    m, n = A.rows, A.cols
    D = A.to_rows()
    U = IntMatrix.identity(m).to_rows()
    V = IntMatrix.identity(n).to_rows()

    def row_swap(i, j):
        D[i], D[j] = D[j], D[i]
        U[i], U[j] = U[j], U[i]

    def col_swap(i, j):
        for M in (D, V):
            for row in M:
                row[i], row[j] = row[j], row[i]

    def row_add(dst, src, q):  # row_dst -= q * row_src
        D[dst] = [a - q * b for a, b in zip(D[dst], D[src])]
        U[dst] = [a - q * b for a, b in zip(U[dst], U[src])]

    def col_add(dst, src, q):  # col_dst -= q * col_src
        for M in (D, V):
            for row in M:
                row[dst] -= q * row[src]

    for t in range(min(m, n)):
        while True:
            best = None
            for i in range(t, m):
                for j in range(t, n):
                    if D[i][j] != 0 and (best is None or abs(D[i][j]) < abs(D[best[0]][best[1]])):
                        best = (i, j)
            if best is None:
                break
            row_swap(t, best[0])
            col_swap(t, best[1])
            p = D[t][t]
            clean = True
            for i in range(t + 1, m):
                if D[i][t]:
                    row_add(i, t, D[i][t] // p)
                    clean = clean and D[i][t] == 0
            for j in range(t + 1, n):
                if D[t][j]:
                    col_add(j, t, D[t][j] // p)
                    clean = clean and D[t][j] == 0
            if not clean:
                continue
            bad = next(((i, j) for i in range(t + 1, m) for j in range(t + 1, n) if D[i][j] % p), None)
            if bad is None:
                break
            row_add(t, bad[0], -1)
        if D[t][t] < 0:
            D[t] = [-x for x in D[t]]
            U[t] = [-x for x in U[t]]
    d = [D[i][i] for i in range(min(m, n))]
    return d, IntMatrix.from_rows(U, cols=m), IntMatrix.from_rows(V, cols=n)


def invariant_factors(A) -> list[int]:
    """Nontrivial invariant factors (> 1) of the torsion of ``Z^rows / A Z^cols``."""
    d, _, _ = smith_normal_form(A)
    return [x for x in d if x > 1]


# ---------------------------------------------------------------------------
# lattices

def kernel_lattice(A) -> IntMatrix:
    """Columns form the HNF-canonical Z-basis of ``{v in Z^cols : A v = 0}``."""
    A = _as_matrix(A)
    H, U = hermite_normal_form(A.T)
    null_rows = [U.row(i) for i in range(H.rows) if all(x == 0 for x in H.row(i))]
    if not null_rows:
        return IntMatrix(A.cols, 0, ())
    Hk, _ = hermite_normal_form(IntMatrix.from_rows(null_rows, cols=A.cols))
    return Hk.T


def saturate(B) -> IntMatrix:
    """Z-basis (as columns) of ``span_Q(columns of B)`` intersected with ``Z^rows``."""
    B = _as_matrix(B)
    if rational_rank(B.columns()) < B.cols:
        raise ValueError("dependent generators")
    if B.cols == 0:
        return B
    left = kernel_lattice(B.T)  # rows x k', orthogonal complement
    if left.cols == 0:
        return IntMatrix.identity(B.rows)
    return kernel_lattice(left.T)


def primitive(v: Sequence[int]) -> IntVector:
    g = 0
    for x in v:
        g = gcd(g, int(x))
    if g == 0:
        raise ValueError("zero vector has no primitive representative")
    return tuple(int(x) // g for x in v)


def lattice_coordinates(basis: IntMatrix, v: Sequence[int]) -> IntVector:
    """Integer coordinates of ``v`` in the column basis; raises if not in the lattice."""
    k = basis.cols
    H, U = hermite_normal_form(basis.T)  # H = U basis^T; rows of H span the same lattice
    # solve c^T basis^T = v^T, i.e. find y with y H = v, then c = y U
    rows = [H.row(i) for i in range(k)]
    y = [0] * k
    rem = list(map(int, v))
    r = 0
    for c in range(len(rem)):
        if r < k and rows[r][c] != 0:
            q, s = divmod(rem[c], rows[r][c])
            if s:
                raise ValueError("vector is not in the lattice")
            y[r] = q
            rem = [a - q * b for a, b in zip(rem, rows[r])]
            r += 1
        elif rem[c] != 0:
            raise ValueError("vector is not in the lattice")
    if any(rem):
        raise ValueError("vector is not in the lattice")
    return tuple(sum(y[i] * U[i, j] for i in range(k)) for j in range(k))
