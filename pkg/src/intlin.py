"""
Exact integer linear algebra on Python ints.

Matrices follow one convention throughout the package: column j of a
matrix is the image of the j-th source basis vector in the target
lattice. Hermite forms are row-style, Smith forms come with both
transforms and their inverses.
"""

import logging
from dataclasses import dataclass
from fractions import Fraction
from math import gcd

from .errors import DimensionError

logger = logging.getLogger(__name__)


@dataclass(frozen=True)
class IntegerMatrix:
    """Immutable row-major integer matrix; empty shapes are allowed."""

    rows: int
    cols: int
    entries: tuple

    def __post_init__(self):
        if self.rows < 0 or self.cols < 0:
            raise DimensionError(f"negative shape {self.rows}x{self.cols}")
        if len(self.entries) != self.rows * self.cols:
            raise DimensionError(
                f"{len(self.entries)} entries do not fill a {self.rows}x{self.cols} matrix"
            )
        object.__setattr__(self, "entries", tuple(int(x) for x in self.entries))

    @classmethod
    def from_rows(cls, rows, cols=None):
        rows = [tuple(r) for r in rows]
        if cols is None:
            cols = len(rows[0]) if rows else 0
        for r in rows:
            if len(r) != cols:
                raise DimensionError(f"row of length {len(r)} in a matrix with {cols} columns")
        return cls(len(rows), cols, tuple(x for r in rows for x in r))

    @classmethod
    def from_columns(cls, columns, rows=None):
        columns = [tuple(c) for c in columns]
        if rows is None:
            rows = len(columns[0]) if columns else 0
        for c in columns:
            if len(c) != rows:
                raise DimensionError(f"column of length {len(c)} in a matrix with {rows} rows")
        return cls.from_rows([[c[i] for c in columns] for i in range(rows)], cols=len(columns))

    @classmethod
    def identity(cls, n):
        return cls.from_rows(_eye(n), cols=n)

    @classmethod
    def zeros(cls, rows, cols):
        return cls(rows, cols, (0,) * (rows * cols))

    def __getitem__(self, index):
        i, j = index
        return self.entries[i * self.cols + j]

    def row(self, i):
        return self.entries[i * self.cols:(i + 1) * self.cols]

    def column(self, j):
        return tuple(self.entries[i * self.cols + j] for i in range(self.rows))

    def to_rows(self):
        """Mutable copy as a list of lists."""
        return [list(self.row(i)) for i in range(self.rows)]

    def columns(self):
        return [self.column(j) for j in range(self.cols)]

    @property
    def shape(self):
        return (self.rows, self.cols)

    def transpose(self):
        return IntegerMatrix.from_rows(self.columns(), cols=self.rows)

    def apply(self, vector):
        if len(vector) != self.cols:
            raise DimensionError(f"vector of length {len(vector)} for a matrix with {self.cols} columns")
        return tuple(dot(self.row(i), vector) for i in range(self.rows))

    def __matmul__(self, other):
        if not isinstance(other, IntegerMatrix):
            return self.apply(other)
        if self.cols != other.rows:
            raise DimensionError(f"cannot multiply {self.shape} by {other.shape}")
        other_cols = other.columns()
        return IntegerMatrix.from_rows(
            [[dot(self.row(i), c) for c in other_cols] for i in range(self.rows)],
            cols=other.cols,
        )

    def is_zero(self):
        return not any(self.entries)

    def diagonal(self):
        return tuple(self[i, i] for i in range(min(self.rows, self.cols)))


@dataclass(frozen=True)
class SmithDecomposition:
    """A = U·S·V with U, V unimodular; U_inverse and V_inverse are exact inverses."""

    S: IntegerMatrix
    U: IntegerMatrix
    V: IntegerMatrix
    U_inverse: IntegerMatrix
    V_inverse: IntegerMatrix

    @property
    def invariant_factors(self):
        return tuple(d for d in self.S.diagonal() if d != 0)

    @property
    def rank(self):
        return len(self.invariant_factors)


@dataclass(frozen=True)
class AbelianGroupInvariants:
    free_rank: int
    torsion: tuple = ()

    def __post_init__(self):
        object.__setattr__(self, "torsion", tuple(self.torsion))
        for a, b in zip(self.torsion, self.torsion[1:]):
            if b % a:
                raise ValueError(f"torsion {self.torsion} is not a divisibility chain")

    @property
    def is_trivial(self):
        return self.free_rank == 0 and not self.torsion

    def as_dict(self):
        return {"free_rank": self.free_rank, "torsion": list(self.torsion)}


# ---------------- Vector helpers ----------------

def dot(u, v):
    return sum(a * b for a, b in zip(u, v))


def add(u, v):
    return tuple(a + b for a, b in zip(u, v))


def sub(u, v):
    return tuple(a - b for a, b in zip(u, v))


def scale(c, v):
    return tuple(c * a for a in v)


def neg(v):
    return tuple(-a for a in v)


def is_zero(v):
    return not any(v)


def primitive(v):
    """Divide an integer vector by the gcd of its entries."""
    g = 0
    for a in v:
        g = gcd(g, a)
    if g <= 1:
        return tuple(v)
    return tuple(a // g for a in v)


def sign_normalized(v):
    """Flip v so that its first nonzero entry is positive."""
    for a in v:
        if a:
            return tuple(v) if a > 0 else neg(v)
    return tuple(v)


def integral_multiple(fractions):
    """Smallest positive integer multiple of a rational vector that is integral."""
    denom = 1
    for q in fractions:
        denom = denom * q.denominator // gcd(denom, q.denominator)
    return tuple(int(q * denom) for q in fractions)


def _eye(n):
    return [[1 if i == j else 0 for j in range(n)] for i in range(n)]


def _axpy(target, source, c):
    """target += c * source, in place."""
    for k, s in enumerate(source):
        target[k] += c * s


# ---------------- Normal forms ----------------

def _hermite_rows(h, m, n):
    """Row-style HNF of a list-of-lists in place; returns (transform, pivot columns)."""
    u = _eye(m)
    r = 0
    pivots = []
    for c in range(n):
        if r == m:
            break
        while True:
            nonzero = [i for i in range(r, m) if h[i][c] != 0]
            if not nonzero:
                break
            p = min(nonzero, key=lambda i: (abs(h[i][c]), i))
            if p != r:
                h[p], h[r] = h[r], h[p]
                u[p], u[r] = u[r], u[p]
            cleared = True
            for i in range(r + 1, m):
                if h[i][c]:
                    q = h[i][c] // h[r][c]
                    _axpy(h[i], h[r], -q)
                    _axpy(u[i], u[r], -q)
                    if h[i][c]:
                        cleared = False
            if cleared:
                break
        if h[r][c] == 0:
            continue
        if h[r][c] < 0:
            h[r] = [-x for x in h[r]]
            u[r] = [-x for x in u[r]]
        for i in range(r):
            q = h[i][c] // h[r][c]
            if q:
                _axpy(h[i], h[r], -q)
                _axpy(u[i], u[r], -q)
        pivots.append(c)
        r += 1
    return u, pivots


def hermite_normal_form(A):
    """
    Row-style Hermite normal form.
    Returns (H, U) with H = U·A, U unimodular, pivots positive and the
    entries above each pivot reduced into [0, pivot).
    """
    h = A.to_rows()
    u, _ = _hermite_rows(h, A.rows, A.cols)
    return IntegerMatrix.from_rows(h, cols=A.cols), IntegerMatrix.from_rows(u, cols=A.rows)


class _SmithWorkspace:
    """Tracks S = P·A·Q together with P^-1 and Q^-1 under elementary moves."""

    def __init__(self, A):
        self.m, self.n = A.rows, A.cols
        self.s = A.to_rows()
        self.p = _eye(self.m)
        self.p_inv = _eye(self.m)
        self.q = _eye(self.n)
        self.q_inv = _eye(self.n)

    def row_swap(self, i, j):
        if i == j:
            return
        self.s[i], self.s[j] = self.s[j], self.s[i]
        self.p[i], self.p[j] = self.p[j], self.p[i]
        for row in self.p_inv:
            row[i], row[j] = row[j], row[i]

    def row_add(self, i, j, c):
        """row_i += c * row_j"""
        _axpy(self.s[i], self.s[j], c)
        _axpy(self.p[i], self.p[j], c)
        for row in self.p_inv:
            row[j] -= c * row[i]

    def row_negate(self, i):
        self.s[i] = [-x for x in self.s[i]]
        self.p[i] = [-x for x in self.p[i]]
        for row in self.p_inv:
            row[i] = -row[i]

    def col_swap(self, i, j):
        if i == j:
            return
        for row in self.s:
            row[i], row[j] = row[j], row[i]
        for row in self.q:
            row[i], row[j] = row[j], row[i]
        self.q_inv[i], self.q_inv[j] = self.q_inv[j], self.q_inv[i]

    def col_add(self, i, j, c):
        """col_i += c * col_j"""
        for row in self.s:
            row[i] += c * row[j]
        for row in self.q:
            row[i] += c * row[j]
        _axpy(self.q_inv[j], self.q_inv[i], -c)

    def run(self):
        s, m, n = self.s, self.m, self.n
        for t in range(min(m, n)):
            best = None
            for i in range(t, m):
                for j in range(t, n):
                    if s[i][j] and (best is None or abs(s[i][j]) < abs(s[best[0]][best[1]])):
                        best = (i, j)
            if best is None:
                break
            self.row_swap(t, best[0])
            self.col_swap(t, best[1])
            while True:
                for i in range(t + 1, m):
                    if s[i][t]:
                        self.row_add(i, t, -(s[i][t] // s[t][t]))
                for j in range(t + 1, n):
                    if s[t][j]:
                        self.col_add(j, t, -(s[t][j] // s[t][t]))
                leftovers = [(abs(s[i][t]), 0, i) for i in range(t + 1, m) if s[i][t]]
                leftovers += [(abs(s[t][j]), 1, j) for j in range(t + 1, n) if s[t][j]]
                if leftovers:
                    _, axis, k = min(leftovers)
                    if axis == 0:
                        self.row_swap(t, k)
                    else:
                        self.col_swap(t, k)
                    continue
                stray = next(
                    ((i, j) for i in range(t + 1, m) for j in range(t + 1, n) if s[i][j] % s[t][t]),
                    None,
                )
                if stray is None:
                    break
                self.row_add(t, stray[0], 1)
            if s[t][t] < 0:
                self.row_negate(t)


def smith_normal_form(A):
    """
    Smith normal form A = U·S·V.
    S is diagonal with d1 | d2 | ... and di >= 0; U and V are unimodular.
    """
    w = _SmithWorkspace(A)
    w.run()
    result = SmithDecomposition(
        S=IntegerMatrix.from_rows(w.s, cols=A.cols),
        U=IntegerMatrix.from_rows(w.p_inv, cols=A.rows),
        V=IntegerMatrix.from_rows(w.q_inv, cols=A.cols),
        U_inverse=IntegerMatrix.from_rows(w.p, cols=A.rows),
        V_inverse=IntegerMatrix.from_rows(w.q, cols=A.cols),
    )
    logger.debug("SNF of %dx%d matrix: invariant factors %s", A.rows, A.cols, result.invariant_factors)
    return result


# ---------------- Kernels, cokernels, solving ----------------

def kernel_basis(A):
    """
    Integer basis of {x : A·x = 0}.
    Vectors are the columns of V^-1 past the rank, in column order, each
    flipped so its first nonzero entry is positive.
    """
    snf = smith_normal_form(A)
    r = snf.rank
    return [sign_normalized(snf.V_inverse.column(j)) for j in range(r, A.cols)]


def solve_linear(A, b):
    """
    Canonical integer solution of A·x = b, or None.
    Uses the Hermite form H = U·A^T, so A·U^T = H^T is column-echelon;
    back-substitution sets the free coordinates to zero.
    """
    b = tuple(b)
    if len(b) != A.rows:
        raise DimensionError(f"right-hand side of length {len(b)} for {A.rows} equations")
    h = A.transpose().to_rows()
    u, pivots = _hermite_rows(h, A.cols, A.rows)
    y = [0] * A.cols
    for j, p in enumerate(pivots):
        residual = b[p] - sum(h[k][p] * y[k] for k in range(j))
        if residual % h[j][p]:
            return None
        y[j] = residual // h[j][p]
    for i in range(A.rows):
        if sum(h[k][i] * y[k] for k in range(len(pivots))) != b[i]:
            return None
    return tuple(sum(u[j][i] * y[j] for j in range(A.cols)) for i in range(A.cols))


def rational_solve(A, b):
    """Rational solution of A·x = b with SNF free coordinates set to zero, or None."""
    b = tuple(b)
    if len(b) != A.rows:
        raise DimensionError(f"right-hand side of length {len(b)} for {A.rows} equations")
    snf = smith_normal_form(A)
    c = snf.U_inverse.apply(b)
    r = snf.rank
    if any(c[i] for i in range(r, A.rows)):
        return None
    z = [Fraction(c[i], snf.S[i, i]) for i in range(r)] + [Fraction(0)] * (A.cols - r)
    return [sum(snf.V_inverse[i, k] * z[k] for k in range(A.cols)) for i in range(A.cols)]


def cokernel_invariants(A):
    """Invariants of Z^rows / column-span(A)."""
    snf = smith_normal_form(A)
    factors = snf.invariant_factors
    return AbelianGroupInvariants(
        free_rank=A.rows - len(factors),
        torsion=tuple(d for d in factors if d > 1),
    )


def rational_rank(A):
    h = A.to_rows()
    _, pivots = _hermite_rows(h, A.rows, A.cols)
    return len(pivots)


def determinant(A):
    """Fraction-free Bareiss elimination."""
    if A.rows != A.cols:
        raise DimensionError(f"determinant of a non-square {A.shape} matrix")
    n = A.rows
    if n == 0:
        return 1
    a = A.to_rows()
    sign, prev = 1, 1
    for k in range(n - 1):
        if a[k][k] == 0:
            swap = next((i for i in range(k + 1, n) if a[i][k]), None)
            if swap is None:
                return 0
            a[k], a[swap] = a[swap], a[k]
            sign = -sign
        for i in range(k + 1, n):
            for j in range(k + 1, n):
                a[i][j] = (a[i][j] * a[k][k] - a[i][k] * a[k][j]) // prev
        prev = a[k][k]
    return sign * a[n - 1][n - 1]


# ---------------- Lattice helpers ----------------

def lattice_basis(vectors, dim):
    """HNF row basis of the integer span of the vectors."""
    vectors = [tuple(v) for v in vectors]
    for v in vectors:
        if len(v) != dim:
            raise DimensionError(f"vector {v} does not live in Z^{dim}")
    h = [list(v) for v in vectors]
    _hermite_rows(h, len(h), dim)
    return [tuple(row) for row in h if any(row)]


def orthogonal_complement(vectors, dim):
    """Integer basis of {y : v·y = 0 for every v}."""
    return kernel_basis(IntegerMatrix.from_rows(vectors, cols=dim))


def coordinates(basis, vector):
    """Integer coordinates of vector in a list of independent basis vectors, or None."""
    if not basis:
        return () if is_zero(vector) else None
    return solve_linear(IntegerMatrix.from_columns(basis, rows=len(vector)), vector)
