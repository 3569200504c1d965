"""Field-generic exact matrices and the linear algebra the rest of the package uses.

Two lanes share one interface:

* Q — `fractions.Fraction` entries; determinants clear denominators and run
  fraction-free (Bareiss) elimination on integers to control blow-up.
* F_p — ints in [0, p); determinants/rank/RREF delegate to the int64 kernels
  in `_kernels` (numba or numpy, see that module).

Conventions: matrix element access is 0-based; *index sets* (rows/columns of
minors, bracket factors, hypergraph edges) are 1-based strictly increasing
tuples, matching the combinatorial notation used throughout.
"""

from __future__ import annotations

from fractions import Fraction
from itertools import combinations
from math import lcm
from typing import Iterable, Sequence

import numpy as np

from . import _kernels
from .errors import IndexSetError, RankDeficiencyError, ShapeError
from .fields import Field, Scalar, require_same_field

IndexSet = tuple[int, ...]


def as_index_set(I: Iterable[int], ground: int | None = None, size: int | None = None) -> IndexSet:
    """Validate and normalize a 1-based strictly increasing index tuple."""
    t = tuple(int(i) for i in I)
    if not t:
        raise IndexSetError("index set must be nonempty")
    if any(b <= a for a, b in zip(t, t[1:])):
        raise IndexSetError(f"index set must be strictly increasing, got {t}")
    if t[0] < 1:
        raise IndexSetError(f"index sets are 1-based, got {t}")
    if ground is not None and t[-1] > ground:
        raise IndexSetError(f"index {t[-1]} outside ground set [{ground}]")
    if size is not None and len(t) != size:
        raise IndexSetError(f"expected {size} indices, got {len(t)}")
    return t


def complement(I: IndexSet, ground: int) -> IndexSet:
    inside = set(as_index_set(I, ground=ground))
    return tuple(i for i in range(1, ground + 1) if i not in inside)


def s_index(I: Iterable[int]) -> int:
    """Sum of (i_j - j) over the sorted entries i_1 < ... < i_k of I.

    Equals the number of inversions needed to sort I followed by its
    complement, mod 2 — the sign bookkeeping for complementary minors.
    """
    t = as_index_set(I)
    return sum(v - j for j, v in enumerate(t, start=1))


class Matrix:
    """Immutable dense matrix over a `Field`.

    Entries are stored as a tuple of row tuples of normalized scalars.
    """

    __slots__ = ("field", "rows", "cols", "entries")

    def __init__(self, field: Field, entries: Sequence[Sequence]):
        rows = tuple(tuple(field.normalize(x) for x in row) for row in entries)
        if not rows or not rows[0]:
            raise ShapeError("matrix must have at least one row and one column")
        width = len(rows[0])
        if any(len(r) != width for r in rows):
            raise ShapeError("ragged rows")
        object.__setattr__(self, "field", field)
        object.__setattr__(self, "rows", len(rows))
        object.__setattr__(self, "cols", width)
        object.__setattr__(self, "entries", rows)

    def __setattr__(self, name, value):
        raise AttributeError("Matrix is immutable")

    # -- constructors --------------------------------------------------------

    @classmethod
    def from_columns(cls, field: Field, columns: Sequence[Sequence]) -> "Matrix":
        cols = [tuple(c) for c in columns]
        if not cols or not cols[0]:
            raise ShapeError("need at least one nonempty column")
        if any(len(c) != len(cols[0]) for c in cols):
            raise ShapeError("ragged columns")
        return cls(field, list(zip(*cols)))

    @classmethod
    def identity(cls, field: Field, n: int) -> "Matrix":
        one, zero = field.one, field.zero
        return cls(field, [[one if i == j else zero for j in range(n)] for i in range(n)])

    # -- access ---------------------------------------------------------------

    @property
    def shape(self) -> tuple[int, int]:
        return (self.rows, self.cols)

    def entry(self, i: int, j: int) -> Scalar:
        """0-based element access."""
        return self.entries[i][j]

    def row(self, i: int) -> tuple[Scalar, ...]:
        return self.entries[i]

    def column(self, j: int) -> tuple[Scalar, ...]:
        return tuple(r[j] for r in self.entries)

    def columns(self) -> list[tuple[Scalar, ...]]:
        return [self.column(j) for j in range(self.cols)]

    def is_zero(self) -> bool:
        return all(x == 0 for row in self.entries for x in row)

    def __eq__(self, other):
        return (
            isinstance(other, Matrix)
            and self.field == other.field
            and self.entries == other.entries
        )

    def __hash__(self):
        return hash((self.field, self.entries))

    def __repr__(self):
        body = "; ".join(" ".join(str(x) for x in row) for row in self.entries)
        return f"Matrix({self.field}, {self.rows}x{self.cols}: [{body}])"

    # -- structural ops --------------------------------------------------------

    def transpose(self) -> "Matrix":
        return Matrix(self.field, list(zip(*self.entries)))

    def submatrix(self, row_set: Iterable[int], col_set: Iterable[int]) -> "Matrix":
        """Select rows and columns by 1-based index sets."""
        ri = as_index_set(row_set, ground=self.rows)
        ci = as_index_set(col_set, ground=self.cols)
        return Matrix(self.field, [[self.entries[i - 1][j - 1] for j in ci] for i in ri])

    def select_columns(self, col_set: Iterable[int]) -> "Matrix":
        return self.submatrix(range(1, self.rows + 1), col_set)

    def delete_column(self, j: int) -> "Matrix":
        """Drop the 1-based column j."""
        keep = [c for c in range(1, self.cols + 1) if c != j]
        return self.select_columns(keep)

    def scale_column(self, j: int, s: Scalar) -> "Matrix":
        """Return a copy with 1-based column j multiplied by s."""
        f = self.field
        s = f.normalize(s)
        return Matrix(
            f,
            [
                [f.mul(x, s) if c == j - 1 else x for c, x in enumerate(row)]
                for row in self.entries
            ],
        )

    def hstack(self, other: "Matrix") -> "Matrix":
        require_same_field(self.field, other.field, "hstack operands")
        if self.rows != other.rows:
            raise ShapeError("hstack needs equal row counts")
        return Matrix(self.field, [a + b for a, b in zip(self.entries, other.entries)])

    def matmul(self, other: "Matrix") -> "Matrix":
        require_same_field(self.field, other.field, "matmul operands")
        if self.cols != other.rows:
            raise ShapeError(f"cannot multiply {self.shape} by {other.shape}")
        f = self.field
        ot = list(zip(*other.entries))
        out = []
        for row in self.entries:
            out.append(
                [
                    sum((f.mul(a, b) for a, b in zip(row, col)), start=f.zero)
                    if f.kind == "Q"
                    else sum(a * b for a, b in zip(row, col)) % f.p
                    for col in ot
                ]
            )
        return Matrix(f, out)

    def neg(self) -> "Matrix":
        f = self.field
        return Matrix(f, [[f.neg(x) for x in row] for row in self.entries])

    # -- numpy bridge ------------------------------------------------------------

    def as_array(self) -> np.ndarray:
        """int64 residue array; only defined over F_p."""
        if self.field.kind != "Fp":
            raise TypeError("as_array is only available over F_p")
        return np.array(self.entries, dtype=np.int64)


# ---------------------------------------------------------------------------
# determinants
# ---------------------------------------------------------------------------


def _bareiss_det_int(rows: list[list[int]]) -> int:
    """Fraction-free (Bareiss) determinant of an integer matrix."""
    n = len(rows)
    a = [list(r) for r in rows]
    sign = 1
    prev = 1
    for k in range(n - 1):
        if a[k][k] == 0:
            for i in range(k + 1, n):
                if a[i][k] != 0:
                    a[k], a[i] = a[i], a[k]
                    sign = -sign
                    break
            else:
                return 0
        pk = a[k][k]
        for i in range(k + 1, n):
            aik = a[i][k]
            ri, rk = a[i], a[k]
            for j in range(k + 1, n):
                ri[j] = (ri[j] * pk - aik * rk[j]) // prev
            ri[k] = 0
        prev = pk
    return sign * a[-1][-1]


def _cleared_int_rows(entries) -> tuple[list[list[int]], Fraction]:
    """Scale each row to integers; return rows and the product of scalings."""
    out = []
    scale = Fraction(1)
    for row in entries:
        m = lcm(*(x.denominator for x in row)) if row else 1
        scale *= m
        out.append([int(x * m) for x in row])
    return out, scale


def det(M: Matrix) -> Scalar:
    """Exact determinant of a square matrix."""
    if M.rows != M.cols:
        raise ShapeError(f"determinant of non-square {M.shape}")
    if M.field.kind == "Fp":
        return _kernels.fp_det(M.as_array(), M.field.p)
    rows, scale = _cleared_int_rows(M.entries)
    return Fraction(_bareiss_det_int(rows)) / scale


def minor(M: Matrix, row_set: Iterable[int], col_set: Iterable[int]) -> Scalar:
    """Determinant of the (1-based) row/column selection, which must be square."""
    ri = as_index_set(row_set, ground=M.rows)
    ci = as_index_set(col_set, ground=M.cols)
    if len(ri) != len(ci):
        raise ShapeError(f"minor needs equal row/col counts, got {len(ri)} vs {len(ci)}")
    return det(M.submatrix(ri, ci))


# ---------------------------------------------------------------------------
# echelon forms, rank, kernels
# ---------------------------------------------------------------------------


def _rref_q(entries) -> tuple[list[list[Fraction]], list[int], int]:
    a = [list(row) for row in entries]
    rows, cols = len(a), len(a[0])
    pivots: list[int] = []
    r = 0
    for c in range(cols):
        if r == rows:
            break
        piv = next((i for i in range(r, rows) if a[i][c] != 0), None)
        if piv is None:
            continue
        a[r], a[piv] = a[piv], a[r]
        inv = 1 / a[r][c]
        a[r] = [x * inv for x in a[r]]
        for i in range(rows):
            if i != r and a[i][c] != 0:
                f = a[i][c]
                a[i] = [x - f * y for x, y in zip(a[i], a[r])]
        pivots.append(c)
        r += 1
    return a, pivots, r


def rref(M: Matrix) -> tuple[Matrix, tuple[int, ...], int]:
    """Reduced row echelon form: (matrix, 0-based pivot columns, rank)."""
    if M.field.kind == "Fp":
        arr, piv, r = _kernels.fp_rref(M.as_array(), M.field.p)
        return (
            Matrix(M.field, arr.tolist()),
            tuple(int(c) for c in piv[:r]),
            r,
        )
    a, piv, r = _rref_q(M.entries)
    return Matrix(M.field, a), tuple(piv), r


def rank(M: Matrix) -> int:
    if M.field.kind == "Fp":
        return _kernels.fp_rank(M.as_array(), M.field.p)
    return _rref_q(M.entries)[2]


def kernel_basis(M: Matrix) -> Matrix:
    """Canonical basis of the right kernel of a full-row-rank a x b matrix (a < b).

    Rows of the result are the reduced-echelon kernel basis: one row per free
    column, with an identity block in the free columns. For M = [I | A] the
    result is [-A^t | I]. Raises RankDeficiencyError if rows are dependent,
    ShapeError if a >= b.
    """
    if M.rows >= M.cols:
        raise ShapeError(f"kernel_basis expects a wide matrix, got {M.shape}")
    R, pivots, r = rref(M)
    if r < M.rows:
        raise RankDeficiencyError(f"matrix has rank {r} < {M.rows} rows")
    f = M.field
    free = [c for c in range(M.cols) if c not in set(pivots)]
    basis = []
    for fc in free:
        v = [f.zero] * M.cols
        v[fc] = f.one
        for i, pc in enumerate(pivots):
            v[pc] = f.neg(R.entries[i][fc])
        basis.append(v)
    return Matrix(f, basis)


def inverse(M: Matrix) -> Matrix:
    """Exact inverse of a square invertible matrix."""
    if M.rows != M.cols:
        raise ShapeError(f"inverse of non-square {M.shape}")
    aug = M.hstack(Matrix.identity(M.field, M.rows))
    R, pivots, r = rref(aug)
    if r < M.rows or any(pc >= M.rows for pc in pivots):
        raise RankDeficiencyError("matrix is singular")
    return R.select_columns(range(M.rows + 1, 2 * M.rows + 1))


# ---------------------------------------------------------------------------
# cached maximal minors
# ---------------------------------------------------------------------------


class MaximalMinors:
    """Cache of the maximal minors m_J of a wide full-height matrix.

    J ranges over 1-based column sets of size = the row count. Over F_p a
    bulk fill is batched through the int64 kernels; over Q each minor runs
    fraction-free on a denominator-cleared copy (the per-column clearing
    factors are divided back out, so values match `minor` exactly).
    """

    def __init__(self, M: Matrix):
        if M.rows > M.cols:
            raise ShapeError(f"expected a wide matrix, got {M.shape}")
        self.matrix = M
        self.width = M.rows
        self._cache: dict[IndexSet, Scalar] = {}
        self._complete = False
        if M.field.kind == "Fp":
            self._arr = M.as_array()
        else:
            cols = []
            factors = []
            for j in range(M.cols):
                col = M.column(j)
                m = lcm(*(x.denominator for x in col))
                factors.append(Fraction(m))
                cols.append([int(x * m) for x in col])
            self._int_cols = cols
            self._factors = factors

    def get(self, J: Iterable[int]) -> Scalar:
        J = as_index_set(J, ground=self.matrix.cols, size=self.width)
        hit = self._cache.get(J)
        if hit is not None:
            return hit
        M = self.matrix
        if M.field.kind == "Fp":
            sub = self._arr[:, [j - 1 for j in J]]
            val: Scalar = _kernels.fp_det(sub, M.field.p)
        else:
            rows = [[self._int_cols[j - 1][i] for j in J] for i in range(self.width)]
            scale = Fraction(1)
            for j in J:
                scale *= self._factors[j - 1]
            val = Fraction(_bareiss_det_int(rows)) / scale
        self._cache[J] = val
        return val

    def ensure_all(self) -> None:
        """Fill the cache with every maximal minor (batched over F_p)."""
        if self._complete:
            return
        M = self.matrix
        subsets = list(combinations(range(1, M.cols + 1), self.width))
        if M.field.kind == "Fp":
            idx = np.array([[j - 1 for j in J] for J in subsets], dtype=np.intp)
            stack = self._arr[:, idx].transpose(1, 0, 2)
            vals = _kernels.fp_batch_det(np.ascontiguousarray(stack), M.field.p)
            for J, v in zip(subsets, vals.tolist()):
                self._cache[J] = v
        else:
            for J in subsets:
                self.get(J)
        self._complete = True

    def vector(self) -> tuple[Scalar, ...]:
        """All maximal minors in lexicographic order of the column sets."""
        self.ensure_all()
        return tuple(
            self._cache[J] for J in combinations(range(1, self.matrix.cols + 1), self.width)
        )
