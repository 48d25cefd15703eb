"""Exact linear algebra over the rationals.

All computation uses :class:`fractions.Fraction`, so nothing is ever rounded.
Subspaces are stored through their reduced row-echelon basis with zero rows
dropped; RREF is unique, which turns subspace equality into a plain data
comparison and makes every derived object canonical.
"""

from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction
from typing import Iterable, Sequence

Scalar = Fraction
Vector = tuple[Fraction, ...]

ZERO = Fraction(0)
ONE = Fraction(1)


def as_scalar(x: int | str | Fraction) -> Fraction:
    """Coerce an int, Fraction or "p/q" string to an exact rational.

    Floats are rejected: admitting them would silently break exactness.
    """
    if isinstance(x, Fraction):
        return x
    if isinstance(x, int):
        return Fraction(x)
    if isinstance(x, str):
        return Fraction(x)
    raise TypeError(f"cannot interpret {x!r} as an exact rational")


def format_scalar(x: Fraction) -> str:
    """Render as "p/q", or "p" when the denominator is 1."""
    return str(x)


def vector(entries: Iterable) -> Vector:
    return tuple(as_scalar(e) for e in entries)


def zero_vector(dim: int) -> Vector:
    return (ZERO,) * dim


def unit_vector(dim: int, i: int) -> Vector:
    return tuple(ONE if j == i else ZERO for j in range(dim))


def vec_add(u: Sequence[Fraction], v: Sequence[Fraction]) -> Vector:
    return tuple(a + b for a, b in zip(u, v, strict=True))


def vec_sub(u: Sequence[Fraction], v: Sequence[Fraction]) -> Vector:
    return tuple(a - b for a, b in zip(u, v, strict=True))


def vec_scale(c: Fraction, v: Sequence[Fraction]) -> Vector:
    return tuple(c * a for a in v)


def vec_is_zero(v: Sequence[Fraction]) -> bool:
    return all(a == 0 for a in v)


@dataclass(frozen=True)
class Matrix:
    """Dense rational matrix, row-major and immutable."""

    rows: int
    cols: int
    entries: tuple[Vector, ...]

    def __post_init__(self) -> None:
        if len(self.entries) != self.rows:
            raise ValueError("row count mismatch")
        for r in self.entries:
            if len(r) != self.cols:
                raise ValueError("column count mismatch")

    @classmethod
    def from_rows(cls, rows: Sequence[Sequence], cols: int | None = None) -> "Matrix":
        rs = tuple(vector(r) for r in rows)
        if rs:
            c = len(rs[0])
        elif cols is not None:
            c = cols
        else:
            raise ValueError("empty matrix needs an explicit column count")
        return cls(len(rs), c, rs)

    @classmethod
    def identity(cls, n: int) -> "Matrix":
        return cls(n, n, tuple(unit_vector(n, i) for i in range(n)))

    @classmethod
    def zeros(cls, rows: int, cols: int) -> "Matrix":
        return cls(rows, cols, tuple(zero_vector(cols) for _ in range(rows)))

    def row(self, i: int) -> Vector:
        return self.entries[i]

    def column(self, j: int) -> Vector:
        return tuple(r[j] for r in self.entries)

    def transpose(self) -> "Matrix":
        return Matrix(self.cols, self.rows, tuple(self.column(j) for j in range(self.cols)))

    def mul(self, other: "Matrix") -> "Matrix":
        if self.cols != other.rows:
            raise ValueError("shape mismatch in matrix product")
        rows = []
        for r in self.entries:
            rows.append(tuple(
                sum((r[k] * other.entries[k][j] for k in range(self.cols)), ZERO)
                for j in range(other.cols)
            ))
        return Matrix(self.rows, other.cols, tuple(rows))

    def apply(self, v: Sequence[Fraction]) -> Vector:
        if len(v) != self.cols:
            raise ValueError("vector length does not match column count")
        return tuple(sum((r[k] * v[k] for k in range(self.cols)), ZERO) for r in self.entries)

    def add(self, other: "Matrix") -> "Matrix":
        if (self.rows, self.cols) != (other.rows, other.cols):
            raise ValueError("shape mismatch in matrix sum")
        return Matrix(self.rows, self.cols,
                      tuple(vec_add(a, b) for a, b in zip(self.entries, other.entries)))

    def scale(self, c: Fraction) -> "Matrix":
        return Matrix(self.rows, self.cols, tuple(vec_scale(as_scalar(c), r) for r in self.entries))

    def trace(self) -> Fraction:
        if self.rows != self.cols:
            raise ValueError("trace of a non-square matrix")
        return sum((self.entries[i][i] for i in range(self.rows)), ZERO)

    def det(self) -> Fraction:
        """Determinant by exact Gaussian elimination."""
        if self.rows != self.cols:
            raise ValueError("determinant of a non-square matrix")
        n = self.rows
        a = [list(r) for r in self.entries]
        det = ONE
        for col in range(n):
            pr = next((r for r in range(col, n) if a[r][col] != 0), None)
            if pr is None:
                return ZERO
            if pr != col:
                a[col], a[pr] = a[pr], a[col]
                det = -det
            pv = a[col][col]
            det *= pv
            for r in range(col + 1, n):
                if a[r][col] != 0:
                    f = a[r][col] / pv
                    a[r] = [x - f * y for x, y in zip(a[r], a[col])]
        return det

    def rank(self) -> int:
        return rref(self)[1]

    def is_invertible(self) -> bool:
        return self.rows == self.cols and self.det() != 0

    def inverse(self) -> "Matrix":
        if self.rows != self.cols:
            raise ValueError("inverse of a non-square matrix")
        n = self.rows
        a = [list(r) + list(unit_vector(n, i)) for i, r in enumerate(self.entries)]
        reduced, rank = rref(Matrix.from_rows(a, cols=2 * n))
        if rank < n or any(reduced.entries[i][i] != 1 for i in range(n)):
            raise ValueError("matrix is singular")
        return Matrix(n, n, tuple(r[n:] for r in reduced.entries))


def rref(m: Matrix) -> tuple[Matrix, int]:
    """Reduced row-echelon form of ``m`` (same shape, zero rows at the bottom)
    together with its rank.  The row space is preserved and the result is the
    unique RREF of ``m``."""
    a = [list(r) for r in m.entries]
    nr, nc = m.rows, m.cols
    piv = 0
    for col in range(nc):
        if piv == nr:
            break
        pr = next((r for r in range(piv, nr) if a[r][col] != 0), None)
        if pr is None:
            continue
        a[piv], a[pr] = a[pr], a[piv]
        pv = a[piv][col]
        if pv != 1:
            a[piv] = [x / pv for x in a[piv]]
        for r in range(nr):
            if r != piv and a[r][col] != 0:
                f = a[r][col]
                a[r] = [x - f * y for x, y in zip(a[r], a[piv])]
        piv += 1
    return Matrix.from_rows(a, cols=nc), piv


def _pivot(row: Sequence[Fraction]) -> int:
    return next(i for i, x in enumerate(row) if x != 0)


class SpanBuilder:
    """Incremental row-space accumulator kept permanently in RREF.

    Feeding vectors one at a time is the workhorse behind spans, closures and
    nullspace computations; the builder never holds more than ``ambient_dim``
    rows.
    """

    def __init__(self, ambient_dim: int, seed: Iterable[Sequence[Fraction]] = ()):
        self.ambient_dim = ambient_dim
        self._rows: list[list[Fraction]] = []   # sorted by pivot column
        self._pivots: list[int] = []
        for v in seed:
            self.add(v)

    def _residue(self, v: Sequence[Fraction]) -> list[Fraction]:
        w = list(v)
        for p, row in zip(self._pivots, self._rows):
            c = w[p]
            if c:
                for i in range(p, self.ambient_dim):
                    w[i] -= c * row[i]
        return w

    def contains(self, v: Sequence[Fraction]) -> bool:
        return vec_is_zero(self._residue(v))

    def add(self, v: Sequence[Fraction]) -> bool:
        """Add a vector; returns True iff the rank grew."""
        if len(v) != self.ambient_dim:
            raise ValueError("vector length does not match ambient dimension")
        w = self._residue(v)
        p = next((i for i, x in enumerate(w) if x != 0), None)
        if p is None:
            return False
        pv = w[p]
        if pv != 1:
            w = [x / pv for x in w]
        for q, row in zip(self._pivots, self._rows):
            c = row[p]
            if c:
                for i in range(p, self.ambient_dim):
                    row[i] -= c * w[i]
        pos = next((k for k, q in enumerate(self._pivots) if q > p), len(self._pivots))
        self._rows.insert(pos, w)
        self._pivots.insert(pos, p)
        return True

    @property
    def rank(self) -> int:
        return len(self._rows)

    def is_full(self) -> bool:
        return self.rank == self.ambient_dim

    def subspace(self) -> "Subspace":
        return Subspace._from_rref(self.ambient_dim, tuple(tuple(r) for r in self._rows))


class Subspace:
    """Linear subspace of Q^d, canonically represented by its RREF basis."""

    __slots__ = ("ambient_dim", "_rows", "_pivots")

    def __init__(self, ambient_dim: int, vectors: Iterable[Sequence[Fraction]] = ()):
        sb = SpanBuilder(ambient_dim, vectors)
        self.ambient_dim = ambient_dim
        self._rows = tuple(tuple(r) for r in sb._rows)
        self._pivots = tuple(sb._pivots)

    @classmethod
    def _from_rref(cls, ambient_dim: int, rows: tuple[Vector, ...]) -> "Subspace":
        s = cls.__new__(cls)
        s.ambient_dim = ambient_dim
        s._rows = rows
        s._pivots = tuple(_pivot(r) for r in rows)
        return s

    @classmethod
    def zero(cls, ambient_dim: int) -> "Subspace":
        return cls._from_rref(ambient_dim, ())

    @classmethod
    def full(cls, ambient_dim: int) -> "Subspace":
        return cls._from_rref(ambient_dim, tuple(unit_vector(ambient_dim, i) for i in range(ambient_dim)))

    @classmethod
    def coordinate(cls, ambient_dim: int, cols: Iterable[int]) -> "Subspace":
        """Span of the standard basis vectors at the given coordinates."""
        return cls._from_rref(ambient_dim, tuple(unit_vector(ambient_dim, c) for c in sorted(set(cols))))

    @property
    def dim(self) -> int:
        return len(self._rows)

    @property
    def basis(self) -> Matrix:
        return Matrix(len(self._rows), self.ambient_dim, self._rows)

    @property
    def rows(self) -> tuple[Vector, ...]:
        return self._rows

    def is_zero(self) -> bool:
        return not self._rows

    def is_full(self) -> bool:
        return len(self._rows) == self.ambient_dim

    def contains_vector(self, v: Sequence[Fraction]) -> bool:
        if len(v) != self.ambient_dim:
            raise ValueError("ambient dimension mismatch")
        w = list(v)
        for p, row in zip(self._pivots, self._rows):
            c = w[p]
            if c:
                for i in range(p, self.ambient_dim):
                    w[i] -= c * row[i]
        return vec_is_zero(w)

    def contains_subspace(self, other: "Subspace") -> bool:
        if other.ambient_dim != self.ambient_dim:
            raise ValueError("ambient dimension mismatch")
        return all(self.contains_vector(r) for r in other._rows)

    def __eq__(self, other: object) -> bool:
        return (isinstance(other, Subspace)
                and self.ambient_dim == other.ambient_dim
                and self._rows == other._rows)

    def __hash__(self) -> int:
        return hash((self.ambient_dim, self._rows))

    def __repr__(self) -> str:
        return f"Subspace(dim {self.dim} of Q^{self.ambient_dim})"


def span(vectors: Iterable[Sequence[Fraction]], ambient_dim: int) -> Subspace:
    """Smallest subspace containing all given vectors."""
    vs = [vector(v) for v in vectors]
    for v in vs:
        if len(v) != ambient_dim:
            raise ValueError("ambient dimension mismatch")
    return Subspace(ambient_dim, vs)


def subspace_sum(a: Subspace, b: Subspace) -> Subspace:
    if a.ambient_dim != b.ambient_dim:
        raise ValueError("ambient dimension mismatch")
    return Subspace(a.ambient_dim, a.rows + b.rows)


def subspace_intersect(a: Subspace, b: Subspace) -> Subspace:
    """Exact intersection via the Zassenhaus block trick: row-reduce
    [A|A; B|0] and read the intersection off the rows whose left half died."""
    if a.ambient_dim != b.ambient_dim:
        raise ValueError("ambient dimension mismatch")
    n = a.ambient_dim
    big = [list(r) + list(r) for r in a.rows] + [list(r) + [ZERO] * n for r in b.rows]
    if not big:
        return Subspace.zero(n)
    reduced, rank = rref(Matrix.from_rows(big, cols=2 * n))
    inter = [r[n:] for r in reduced.entries[:rank] if vec_is_zero(r[:n])]
    return Subspace(n, inter)


def contains(a: Subspace, item: "Subspace | Sequence[Fraction]") -> bool:
    """Membership test for a vector, or inclusion test for a subspace."""
    if isinstance(item, Subspace):
        return a.contains_subspace(item)
    return a.contains_vector(vector(item))


def solve(a: Matrix, rhs: Sequence[Fraction]) -> tuple[Vector | None, Subspace]:
    """Solve a·x = rhs exactly.

    Returns a particular solution (None when inconsistent) together with the
    full nullspace of ``a``.
    """
    b = vector(rhs)
    if len(b) != a.rows:
        raise ValueError("right-hand side length does not match row count")
    aug = Matrix.from_rows([list(r) + [b[i]] for i, r in enumerate(a.entries)], cols=a.cols + 1)
    reduced, rank = rref(aug)
    pivots: list[tuple[int, int]] = []   # (row, col) of each pivot in the coefficient block
    inconsistent = False
    for i in range(rank):
        p = _pivot(reduced.entries[i])
        if p == a.cols:
            inconsistent = True
        else:
            pivots.append((i, p))
    pivot_cols = {p for _, p in pivots}
    free_cols = [c for c in range(a.cols) if c not in pivot_cols]

    particular: Vector | None = None
    if not inconsistent:
        x = [ZERO] * a.cols
        for i, p in pivots:
            x[p] = reduced.entries[i][a.cols]
        particular = tuple(x)

    null_rows = []
    for f in free_cols:
        v = [ZERO] * a.cols
        v[f] = ONE
        for i, p in pivots:
            v[p] = -reduced.entries[i][f]
        null_rows.append(v)
    return particular, Subspace(a.cols, null_rows)


def nullspace(rows: Iterable[Sequence[Fraction]], ncols: int) -> Subspace:
    """Nullspace of the (possibly huge) linear system given row by row.

    Only the RREF of the row space is kept while streaming, so the memory
    footprint stays at most ncols rows.
    """
    sb = SpanBuilder(ncols)
    for r in rows:
        sb.add(r)
        if sb.is_full():
            break
    reduced = sb.subspace()
    pivots = {(_pivot(r)) for r in reduced.rows}
    free_cols = [c for c in range(ncols) if c not in pivots]
    null_rows = []
    for f in free_cols:
        v = [ZERO] * ncols
        v[f] = ONE
        for row in reduced.rows:
            p = _pivot(row)
            v[p] = -row[f]
        null_rows.append(v)
    return Subspace(ncols, null_rows)
