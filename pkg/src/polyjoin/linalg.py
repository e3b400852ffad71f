"""Exact linear algebra over Z, Q and F_p.

Ranks and diagonal forms of boundary matrices go through the selected
elimination kernels (see ``_backend``). Everything that needs explicit
bases or transforms (homology representatives, induced maps, Smith form
with unimodular transforms) is done here with Python ints and Fractions.
"""
from __future__ import annotations

import re
from dataclasses import dataclass
from fractions import Fraction
from math import gcd

import numpy as np

from . import _backend
from .errors import InvalidInputError


def _is_prime(p: int) -> bool:
    if p < 2:
        return False
    i = 2
    while i * i <= p:
        if p % i == 0:
            return False
        i += 1
    return True


@dataclass(frozen=True)
class RingSpec:
    """Coefficient ring: ``Z``, ``Q`` or ``Fp`` with a prime ``p``."""

    tag: str
    p: int = 0

    def __post_init__(self):
        if self.tag not in ("Z", "Q", "Fp"):
            raise InvalidInputError(f"unknown ring {self.tag!r}")
        if self.tag == "Fp" and not _is_prime(self.p):
            raise InvalidInputError(f"F_p needs a prime p, got {self.p}")
        if self.tag != "Fp" and self.p:
            raise InvalidInputError("only F_p takes a characteristic")

    @classmethod
    def parse(cls, text: str | RingSpec) -> RingSpec:
        if isinstance(text, RingSpec):
            return text
        t = text.strip()
        if t in ("Z", "Q"):
            return cls(t)
        m = re.fullmatch(r"F(?:p:)?(\d+)", t)
        if m:
            return cls("Fp", int(m.group(1)))
        raise InvalidInputError(f"cannot parse ring {text!r}; expected Z, Q, F2, F3 or Fp:<p>")

    @property
    def is_field(self) -> bool:
        return self.tag != "Z"

    def __str__(self) -> str:
        return f"F{self.p}" if self.tag == "Fp" else self.tag


Z = RingSpec("Z")
Q = RingSpec("Q")
F2 = RingSpec("Fp", 2)
F3 = RingSpec("Fp", 3)


# matrices with more entries than this skip the dense kernels
DENSE_LIMIT = 4_000_000


class SparseMatrix:
    """Integer matrix stored column-wise as ``{row: value}`` dicts."""

    __slots__ = ("nrows", "ncols", "cols")

    def __init__(self, nrows: int, ncols: int, cols: list[dict] | None = None):
        self.nrows = nrows
        self.ncols = ncols
        self.cols = cols if cols is not None else [{} for _ in range(ncols)]

    @property
    def shape(self) -> tuple[int, int]:
        return self.nrows, self.ncols

    @classmethod
    def from_dense(cls, a) -> SparseMatrix:
        a = np.asarray(a)
        nr, nc = a.shape
        cols = [{i: int(v) for i, v in enumerate(a[:, j].tolist()) if v} for j in range(nc)]
        return cls(nr, nc, cols)

    def dense(self) -> np.ndarray:
        out = np.zeros((self.nrows, self.ncols), dtype=np.int64)
        for j, col in enumerate(self.cols):
            for i, v in col.items():
                out[i, j] = v
        return out

    def row_dicts(self) -> list[dict]:
        rows: list[dict] = [{} for _ in range(self.nrows)]
        for j, col in enumerate(self.cols):
            for i, v in col.items():
                rows[i][j] = v
        return rows

    def __matmul__(self, other: SparseMatrix) -> SparseMatrix:
        if self.ncols != other.nrows:
            raise InvalidInputError("shape mismatch in matrix product")
        cols = []
        for col in other.cols:
            acc: dict = {}
            for k, v in col.items():
                for i, w in self.cols[k].items():
                    acc[i] = acc.get(i, 0) + v * w
            cols.append({i: x for i, x in acc.items() if x})
        return SparseMatrix(self.nrows, other.ncols, cols)

    def is_zero(self, p: int = 0) -> bool:
        if p:
            return all(v % p == 0 for col in self.cols for v in col.values())
        return not any(self.cols)

    def __eq__(self, other) -> bool:
        return isinstance(other, SparseMatrix) and self.shape == other.shape and self.cols == other.cols

    def __repr__(self) -> str:
        return f"SparseMatrix({self.nrows}x{self.ncols}, nnz={sum(map(len, self.cols))})"


def as_array(matrix) -> np.ndarray:
    if isinstance(matrix, SparseMatrix):
        return matrix.dense()
    a = np.asarray(matrix, dtype=np.int64)
    if a.ndim != 2:
        raise InvalidInputError("expected a 2-D matrix")
    return a


def _too_big(matrix) -> bool:
    return isinstance(matrix, SparseMatrix) and matrix.nrows * matrix.ncols > DENSE_LIMIT


def _row_dicts(matrix) -> list[dict]:
    if isinstance(matrix, SparseMatrix):
        return matrix.row_dicts()
    return [{j: v for j, v in enumerate(row) if v} for row in np.asarray(matrix).tolist()]


def rank(matrix, ring: RingSpec) -> int:
    if _too_big(matrix):
        rows = matrix.row_dicts()
        if ring.tag == "Fp":
            return _backend.pykernels.rank_mod_p_rows(rows, ring.p)
        return len(_backend.pykernels.int_diagonal_rows(rows))
    a = as_array(matrix)
    if a.size == 0:
        return 0
    if ring.tag == "Fp":
        return _backend.rank_mod_p(a, ring.p)
    return len(_backend.int_diagonal(a))


def normalize_divisors(diag) -> list[int]:
    """Turn the nonzero entries of any diagonal form into invariant factors
    d_1 | d_2 | ... (units dropped)."""
    d = sorted(abs(x) for x in diag if x)
    changed = True
    while changed:
        changed = False
        for i in range(len(d)):
            for j in range(i + 1, len(d)):
                a, b = d[i], d[j]
                g = gcd(a, b)
                lcm = a // g * b
                if (g, lcm) != (a, b):
                    d[i], d[j] = g, lcm
                    changed = True
        d.sort()
    return [x for x in d if x != 1]


def integer_rank_and_torsion(matrix) -> tuple[int, list[int]]:
    if _too_big(matrix):
        diag = _backend.pykernels.int_diagonal_rows(matrix.row_dicts())
        return len(diag), normalize_divisors(diag)
    a = as_array(matrix)
    if a.size == 0:
        return 0, []
    diag = _backend.int_diagonal(a)
    return len(diag), normalize_divisors(diag)


# -- Smith normal form with transforms (pure Python, big ints) -----------

def smith_form(matrix) -> tuple[list[int], list[list[int]], list[list[int]]]:
    """Return ``(diag, U, V)`` with ``U @ M @ V`` diagonal, U and V unimodular.

    ``diag`` lists the diagonal of U M V (length min(rows, cols)), with the
    nonzero entries first and forming a divisibility chain.
    """
    M = [[int(x) for x in row] for row in as_array(matrix).tolist()]
    rows = len(M)
    cols = len(M[0]) if rows else 0
    A = [r[:] for r in M]
    U = [[int(i == j) for j in range(rows)] for i in range(rows)]
    V = [[int(i == j) for j in range(cols)] for i in range(cols)]

    def swap_rows(i, j):
        A[i], A[j] = A[j], A[i]
        U[i], U[j] = U[j], U[i]

    def swap_cols(i, j):
        for r in A:
            r[i], r[j] = r[j], r[i]
        for r in V:
            r[i], r[j] = r[j], r[i]

    def add_row(src, dst, q):  # row dst += q * row src
        if q:
            A[dst] = [a + q * b for a, b in zip(A[dst], A[src])]
            U[dst] = [a + q * b for a, b in zip(U[dst], U[src])]

    def add_col(src, dst, q):  # col dst += q * col src
        if q:
            for r in A:
                r[dst] += q * r[src]
            for r in V:
                r[dst] += q * r[src]

    t = 0
    while t < min(rows, cols):
        # pivot: smallest nonzero magnitude in the trailing block
        best = None
        for i in range(t, rows):
            for j in range(t, cols):
                if A[i][j] and (best is None or abs(A[i][j]) < best[0]):
                    best = (abs(A[i][j]), i, j)
        if best is None:
            break
        _, i, j = best
        swap_rows(t, i)
        swap_cols(t, j)
        while True:
            done = True
            for i in range(t + 1, rows):
                if A[i][t]:
                    q = A[i][t] // A[t][t]
                    add_row(t, i, -q)
                    if A[i][t]:
                        swap_rows(t, i)
                        done = False
            for j in range(t + 1, cols):
                if A[t][j]:
                    q = A[t][j] // A[t][t]
                    add_col(t, j, -q)
                    if A[t][j]:
                        swap_cols(t, j)
                        done = False
            if not done:
                continue
            # divisibility: fold any entry not divisible by the pivot into row t
            bad = None
            for i in range(t + 1, rows):
                for j in range(t + 1, cols):
                    if A[i][j] % A[t][t]:
                        bad = i
                        break
                if bad is not None:
                    break
            if bad is None:
                break
            add_row(bad, t, 1)
        if A[t][t] < 0:
            A[t] = [-x for x in A[t]]
            U[t] = [-x for x in U[t]]
        t += 1
    diag = [A[i][i] for i in range(min(rows, cols))]
    return diag, U, V


def inverse_unimodular(U: list[list[int]]) -> list[list[int]]:
    """Exact inverse of a unimodular integer matrix (Gauss-Jordan over Q)."""
    n = len(U)
    A = [[Fraction(x) for x in row] + [Fraction(int(i == j)) for j in range(n)] for i, row in enumerate(U)]
    for c in range(n):
        piv = next(r for r in range(c, n) if A[r][c] != 0)
        A[c], A[piv] = A[piv], A[c]
        inv = 1 / A[c][c]
        A[c] = [x * inv for x in A[c]]
        for r in range(n):
            if r != c and A[r][c] != 0:
                f = A[r][c]
                A[r] = [x - f * y for x, y in zip(A[r], A[c])]
    out = []
    for row in A:
        vals = row[n:]
        if any(v.denominator != 1 for v in vals):
            raise ArithmeticError("matrix is not unimodular")
        out.append([int(v) for v in vals])
    return out


def matmul(A, B):
    if not A:
        return []
    inner = len(B)
    cols = len(B[0]) if inner else 0
    return [[sum(A[i][k] * B[k][j] for k in range(inner)) for j in range(cols)] for i in range(len(A))]


# -- field arithmetic ----------------------------------------------------

class Field:
    """Scalar arithmetic for Q (Fractions) or F_p (ints mod p)."""

    def __init__(self, ring: RingSpec):
        if not ring.is_field:
            raise InvalidInputError(f"{ring} is not a field")
        self.ring = ring
        self.p = ring.p

    def coerce(self, x):
        return x % self.p if self.p else Fraction(x)

    def norm(self, x):
        return x % self.p if self.p else x

    def inv(self, x):
        return pow(x, -1, self.p) if self.p else 1 / x


def nullspace(matrix, field: Field) -> list[dict[int, object]]:
    """Basis of the kernel as sparse column vectors, via reduced row echelon form.

    Basis vector for free column f has a 1 at f; the order follows f.
    """
    cols = matrix.ncols if isinstance(matrix, SparseMatrix) else np.asarray(matrix).shape[1]
    R = []
    for row in _row_dicts(matrix):
        r = {j: field.coerce(v) for j, v in row.items()}
        r = {j: v for j, v in r.items() if v}
        if r:
            R.append(r)
    pivots: dict[int, dict] = {}
    for r in R:
        for pc, prow in sorted(pivots.items()):
            f = r.get(pc)
            if f:
                for j, v in prow.items():
                    w = field.norm(r.get(j, 0) - f * v)
                    if w:
                        r[j] = w
                    else:
                        r.pop(j, None)
        if not r:
            continue
        c = min(r)
        inv = field.inv(r[c])
        r = {j: field.norm(v * inv) for j, v in r.items()}
        for pc in list(pivots):
            prow = pivots[pc]
            f = prow.get(c)
            if f:
                for j, v in r.items():
                    w = field.norm(prow.get(j, 0) - f * v)
                    if w:
                        prow[j] = w
                    else:
                        prow.pop(j, None)
        pivots[c] = r
    basis = []
    for free in range(cols):
        if free in pivots:
            continue
        vec = {free: field.coerce(1)}
        for pc, prow in pivots.items():
            v = prow.get(free)
            if v:
                vec[pc] = field.norm(-v)
        basis.append(vec)
    return basis


class Span:
    """Incremental echelon basis of a subspace with tracked tag coordinates.

    Each stored row carries the coordinates (a sparse dict) it represents in a
    chosen generating set; vectors added with ``tag=None`` contribute zero
    coordinates, which is how boundaries are quotiented out.
    """

    def __init__(self, field: Field):
        self.field = field
        self.rows: dict[int, tuple[dict, dict]] = {}

    def reduce(self, vec: dict) -> tuple[dict, dict]:
        F = self.field
        v = dict(vec)
        coords: dict = {}
        for pc in sorted(self.rows):
            c = v.get(pc)
            if not c:
                continue
            row, tags = self.rows[pc]
            for j, x in row.items():
                w = F.norm(v.get(j, 0) - c * x)
                if w:
                    v[j] = w
                else:
                    v.pop(j, None)
            for t, x in tags.items():
                w = F.norm(coords.get(t, 0) + c * x)
                if w:
                    coords[t] = w
                else:
                    coords.pop(t, None)
        return v, coords

    def add(self, vec: dict, tag=None) -> bool:
        """Add ``vec``; return False when it already lies in the span."""
        F = self.field
        rem, coords = self.reduce(vec)
        if not rem:
            return False
        tags = {t: F.norm(-x) for t, x in coords.items()}
        if tag is not None:
            tags[tag] = F.norm(tags.get(tag, 0) + 1)
            tags = {t: x for t, x in tags.items() if x}
        pc = min(rem)
        inv = F.inv(rem[pc])
        self.rows[pc] = ({j: F.norm(x * inv) for j, x in rem.items()},
                         {t: F.norm(x * inv) for t, x in tags.items()})
        return True


def field_rank(rows: list[list], field: Field) -> int:
    s = Span(field)
    n = 0
    for r in rows:
        vec = {j: field.coerce(v) for j, v in enumerate(r)}
        vec = {j: v for j, v in vec.items() if v}
        if vec and s.add(vec):
            n += 1
    return n
