"""Dense exact matrices over the Gaussian rationals.

Elimination always pivots on the first nonzero entry in column order.  In
exact arithmetic no magnitude pivoting is needed, and the fixed rule keeps
every derived object (right inverses, null-space bases, completions)
deterministic.
"""
from __future__ import annotations

from typing import Iterable, Sequence

from .errors import DimensionError, InconsistentSystem, SingularMatrix, UnderdeterminedSystem
from .scalar import ONE, ZERO, Scalar, as_scalar


class Mat:
    """Immutable row-major matrix of :class:`Scalar` entries."""

    __slots__ = ("rows", "cols", "entries")

    def __init__(self, rows: int, cols: int, entries: Iterable):
        entries = tuple(as_scalar(e) for e in entries)
        if rows < 0 or cols < 0 or len(entries) != rows * cols:
            raise DimensionError(f"{len(entries)} entries do not fill a {rows}x{cols} matrix")
        self.rows = rows
        self.cols = cols
        self.entries = entries

    @classmethod
    def from_rows(cls, rows: Sequence[Sequence], cols: int | None = None) -> Mat:
        rows = [list(r) for r in rows]
        if cols is None:
            cols = len(rows[0]) if rows else 0
        if any(len(r) != cols for r in rows):
            raise DimensionError("ragged rows")
        return cls(len(rows), cols, (e for r in rows for e in r))

    @classmethod
    def column(cls, values: Sequence) -> Mat:
        return cls(len(values), 1, values)

    @classmethod
    def identity(cls, n: int) -> Mat:
        return cls(n, n, (ONE if i == j else ZERO for i in range(n) for j in range(n)))

    @classmethod
    def zeros(cls, rows: int, cols: int) -> Mat:
        return cls(rows, cols, (ZERO,) * (rows * cols))

    @property
    def shape(self) -> tuple[int, int]:
        return self.rows, self.cols

    def __getitem__(self, ij) -> Scalar:
        i, j = ij
        if not (0 <= i < self.rows and 0 <= j < self.cols):
            raise IndexError(ij)
        return self.entries[i * self.cols + j]

    def row(self, i: int) -> tuple[Scalar, ...]:
        return self.entries[i * self.cols:(i + 1) * self.cols]

    def col(self, j: int) -> tuple[Scalar, ...]:
        return self.entries[j::self.cols] if self.cols else ()

    def to_rows(self) -> list[list[Scalar]]:
        return [list(self.row(i)) for i in range(self.rows)]

    def transpose(self) -> Mat:
        return Mat(self.cols, self.rows, (self[i, j] for j in range(self.cols) for i in range(self.rows)))

    T = property(transpose)

    def select_columns(self, cols: Sequence[int]) -> Mat:
        return Mat(self.rows, len(cols), (self[i, j] for i in range(self.rows) for j in cols))

    def __matmul__(self, other: Mat) -> Mat:
        if not isinstance(other, Mat):
            return NotImplemented
        if self.cols != other.rows:
            raise DimensionError(f"cannot multiply {self.shape} by {other.shape}")
        bcols = [other.col(j) for j in range(other.cols)]
        out = []
        for i in range(self.rows):
            r = self.row(i)
            nz = [(t, a) for t, a in enumerate(r) if a]
            for c in bcols:
                acc = ZERO
                for t, a in nz:
                    b = c[t]
                    if b:
                        acc = acc + a * b
                out.append(acc)
        return Mat(self.rows, other.cols, out)

    def __add__(self, other: Mat) -> Mat:
        if self.shape != other.shape:
            raise DimensionError("shape mismatch")
        return Mat(self.rows, self.cols, (a + b for a, b in zip(self.entries, other.entries)))

    def __sub__(self, other: Mat) -> Mat:
        if self.shape != other.shape:
            raise DimensionError("shape mismatch")
        return Mat(self.rows, self.cols, (a - b for a, b in zip(self.entries, other.entries)))

    def scale(self, c) -> Mat:
        c = as_scalar(c)
        return Mat(self.rows, self.cols, (c * e for e in self.entries))

    def __eq__(self, other):
        if not isinstance(other, Mat):
            return NotImplemented
        return self.shape == other.shape and self.entries == other.entries

    def __hash__(self):
        return hash((self.rows, self.cols, self.entries))

    def __repr__(self):
        body = ", ".join("[" + ", ".join(str(e) for e in self.row(i)) + "]" for i in range(self.rows))
        return f"Mat([{body}])"


def hstack(*mats: Mat) -> Mat:
    rows = mats[0].rows
    if any(m.rows != rows for m in mats):
        raise DimensionError("hstack needs equal row counts")
    return Mat.from_rows([[e for m in mats for e in m.row(i)] for i in range(rows)],
                         cols=sum(m.cols for m in mats))


def vstack(*mats: Mat) -> Mat:
    cols = mats[0].cols
    if any(m.cols != cols for m in mats):
        raise DimensionError("vstack needs equal column counts")
    return Mat(sum(m.rows for m in mats), cols, (e for m in mats for e in m.entries))


def rref(m: Mat) -> tuple[list[list[Scalar]], list[int]]:
    """Reduced row echelon form as a list of rows, plus the pivot columns."""
    a = m.to_rows()
    pivots: list[int] = []
    r = 0
    for c in range(m.cols):
        if r == m.rows:
            break
        p = next((i for i in range(r, m.rows) if a[i][c]), None)
        if p is None:
            continue
        a[r], a[p] = a[p], a[r]
        piv = a[r][c]
        if piv != ONE:
            a[r] = [x / piv for x in a[r]]
        for i in range(m.rows):
            f = a[i][c]
            if i != r and f:
                ar = a[r]
                a[i] = [x - f * y if y else x for x, y in zip(a[i], ar)]
        pivots.append(c)
        r += 1
    return a, pivots


def rank(m: Mat) -> int:
    a = m.to_rows()
    r = 0
    for c in range(m.cols):
        if r == m.rows:
            break
        p = next((i for i in range(r, m.rows) if a[i][c]), None)
        if p is None:
            continue
        a[r], a[p] = a[p], a[r]
        piv = a[r][c]
        for i in range(r + 1, m.rows):
            f = a[i][c]
            if f:
                f = f / piv
                a[i] = [x - f * y if y else x for x, y in zip(a[i], a[r])]
        r += 1
    return r


def solve_unique(a: Mat, b: Sequence) -> list[Scalar]:
    """The unique ``x`` with ``a @ x == b``.

    Raises InconsistentSystem when no solution exists and
    UnderdeterminedSystem when a consistent system has a free variable.
    """
    b = [as_scalar(v) for v in b]
    if a.rows != len(b):
        raise DimensionError(f"matrix has {a.rows} rows but right-hand side has {len(b)} entries")
    aug = hstack(a, Mat.column(b)) if a.rows else Mat(0, a.cols + 1, ())
    red, pivots = rref(aug)
    if a.cols in pivots:
        raise InconsistentSystem("right-hand side is outside the column space")
    if len(pivots) < a.cols:
        raise UnderdeterminedSystem(f"rank {len(pivots)} < {a.cols} unknowns")
    x = [ZERO] * a.cols
    for r, c in enumerate(pivots):
        x[c] = red[r][a.cols]
    return x


def invert(m: Mat) -> Mat:
    if m.rows != m.cols:
        raise DimensionError(f"cannot invert a {m.rows}x{m.cols} matrix")
    n = m.rows
    if n == 0:
        return m
    red, pivots = rref(hstack(m, Mat.identity(n)))
    if pivots[:n] != list(range(n)):
        raise SingularMatrix("matrix is singular")
    return Mat.from_rows([row[n:] for row in red[:n]], cols=n)


def right_inverse(m: Mat) -> Mat | None:
    """``n`` with ``m @ n == I`` built on the pivot columns, or None if m lacks full row rank."""
    _, pivots = rref(m)
    if len(pivots) < m.rows:
        return None
    sub_inv = invert(m.select_columns(pivots))
    out = [[ZERO] * m.rows for _ in range(m.cols)]
    for r, c in enumerate(pivots):
        out[c] = list(sub_inv.row(r))
    return Mat.from_rows(out, cols=m.rows)


def null_space(m: Mat) -> list[list[Scalar]]:
    """Canonical reduced-echelon basis of the right null space, one vector per free column."""
    red, pivots = rref(m)
    basis = []
    for f in range(m.cols):
        if f in pivots:
            continue
        v = [ZERO] * m.cols
        v[f] = ONE
        for r, c in enumerate(pivots):
            v[c] = -red[r][f]
        basis.append(v)
    return basis


def kron(a: Mat, b: Mat) -> Mat:
    rows, cols = a.rows * b.rows, a.cols * b.cols
    out = []
    for i in range(a.rows):
        for k in range(b.rows):
            brow = b.row(k)
            for x in a.row(i):
                out.extend(x * y for y in brow)
    return Mat(rows, cols, out)


def kron_power(a: Mat, n: int) -> Mat:
    out = Mat.identity(1)
    for _ in range(n):
        out = kron(out, a)
    return out


def complete_to_invertible(x: Mat) -> Mat:
    """Invertible ``x'`` (k x k) with ``x @ x' == (I_2 | 0)`` for a rank-2, 2 x k matrix ``x``.

    The first two columns are ``right_inverse(x)``; the rest are the
    canonical null-space basis of ``x``.
    """
    if x.rows != 2 or x.cols < 2:
        raise DimensionError(f"expected a 2 x k matrix with k >= 2, got {x.shape}")
    ri = right_inverse(x)
    if ri is None:
        raise ValueError("matrix must have rank 2")
    cols = [list(ri.col(0)), list(ri.col(1))] + null_space(x)
    return Mat.from_rows([[c[i] for c in cols] for i in range(x.cols)], cols=x.cols)
