"""Dense signature tensors on domain size k.

Values are stored flat in lexicographic order with the first index most
significant.  Public index helpers use domain values ``1..k``; flat
positions and internal digits are 0-based.
"""
from __future__ import annotations

from dataclasses import dataclass
from itertools import product
from typing import Iterable, Sequence

from .errors import CapExceeded, DimensionError
from .linalg import Mat, rank
from .scalar import ONE, ZERO, Scalar, as_scalar

GENERATOR = "generator"
RECOGNIZER = "recognizer"
KINDS = (GENERATOR, RECOGNIZER)

# Dense storage guard; adjustable at runtime.
MAX_ENTRIES = 10**7


def check_size(k: int, n: int) -> None:
    if k ** n > MAX_ENTRIES:
        raise CapExceeded(f"signature with {k}^{n} entries exceeds the dense cap of {MAX_ENTRIES}")


@dataclass(frozen=True)
class Signature:
    kind: str
    domain_size: int
    arity: int
    values: tuple

    def __post_init__(self):
        if self.kind not in KINDS:
            raise ValueError(f"unknown signature kind {self.kind!r}")
        if self.domain_size < 1 or self.arity < 0:
            raise ValueError("domain size must be >= 1 and arity >= 0")
        check_size(self.domain_size, self.arity)
        vals = tuple(as_scalar(v) for v in self.values)
        if len(vals) != self.domain_size ** self.arity:
            raise DimensionError(
                f"{len(vals)} values given, {self.domain_size}^{self.arity} required"
            )
        object.__setattr__(self, "values", vals)

    @classmethod
    def zeros(cls, kind: str, k: int, n: int) -> Signature:
        check_size(k, n)
        return cls(kind, k, n, (ZERO,) * (k ** n))

    @property
    def k(self) -> int:
        return self.domain_size

    @property
    def n(self) -> int:
        return self.arity

    def __getitem__(self, multi: Sequence[int]) -> Scalar:
        """Entry at a 1-based multi-index."""
        return self.values[index_of(multi, self.domain_size)]

    def with_kind(self, kind: str) -> Signature:
        return Signature(kind, self.domain_size, self.arity, self.values)

    def is_zero(self) -> bool:
        return not any(self.values)

    def __repr__(self):
        vals = ", ".join(str(v) for v in self.values)
        return f"Signature({self.kind}, k={self.domain_size}, n={self.arity}, [{vals}])"


def index_of(multi: Sequence[int], k: int) -> int:
    flat = 0
    for d in multi:
        if not 1 <= d <= k:
            raise ValueError(f"digit {d} outside [1, {k}]")
        flat = flat * k + (d - 1)
    return flat


def multi_of(flat: int, k: int, n: int) -> tuple[int, ...]:
    if not 0 <= flat < k ** n:
        raise ValueError(f"flat index {flat} outside [0, {k}^{n})")
    digits = []
    for _ in range(n):
        flat, d = divmod(flat, k)
        digits.append(d + 1)
    return tuple(reversed(digits))


def restrict(r: Signature, keep: Sequence[int]) -> Signature:
    """Sub-tensor with every index confined to ``keep`` (1-based, strictly increasing)."""
    keep = list(keep)
    if not keep or any(not 1 <= s <= r.k for s in keep) or any(a >= b for a, b in zip(keep, keep[1:])):
        raise ValueError(f"invalid subset {keep} of [1, {r.k}]")
    vals = [r.values[index_of(multi, r.k)] for multi in product(keep, repeat=r.n)]
    return Signature(r.kind, len(keep), r.n, vals)


def _strides(k: int, n: int) -> list[int]:
    return [k ** (n - 1 - t) for t in range(n)]


def slice_matrix(r: Signature, t: int) -> Mat:
    """k x k^(n-1) matrix whose row w collects the entries with index t equal to w."""
    if not 1 <= t <= r.n:
        raise ValueError(f"position {t} outside [1, {r.n}]")
    k, n = r.k, r.n
    outer, inner = k ** (t - 1), k ** (n - t)
    vals = r.values
    rows = []
    for w in range(k):
        rows.append([vals[(o * k + w) * inner + j] for o in range(outer) for j in range(inner)])
    return Mat.from_rows(rows, cols=k ** (n - 1))


def is_degenerate(r: Signature) -> bool:
    """True iff every flattening has rank <= 1, i.e. r is an outer product of vectors."""
    if r.n < 1:
        raise ValueError("degeneracy is defined for arity >= 1")
    return all(rank(slice_matrix(r, t)) <= 1 for t in range(1, r.n + 1))


def _factor_values(vals: Sequence[Scalar], k: int, n: int):
    if n == 1:
        return [list(vals)]
    block = k ** (n - 1)
    rows = [vals[w * block:(w + 1) * block] for w in range(k)]
    lead = next(w for w in range(k) if any(rows[w]))
    base = rows[lead]
    j0 = next(j for j, x in enumerate(base) if x)
    coeffs = []
    for row in rows:
        c = row[j0] / base[j0]
        if any(x != c * y for x, y in zip(row, base)):
            return None
        coeffs.append(c)
    rest = _factor_values(base, k, n - 1)
    return None if rest is None else [coeffs] + rest


def factor(r: Signature) -> list[list[Scalar]] | None:
    """Vectors v_1..v_n with r = v_1 (x) ... (x) v_n, or None when r is non-degenerate.

    Peels off the first index: the first nonzero row of the first
    flattening is the remaining tensor, every other row must be a multiple
    of it.  The zero tensor factors as (0, e_1, ..., e_1).
    """
    if r.n < 1:
        raise ValueError("factorization is defined for arity >= 1")
    if r.is_zero():
        e1 = [ONE] + [ZERO] * (r.k - 1)
        return [[ZERO] * r.k] + [list(e1) for _ in range(r.n - 1)]
    return _factor_values(r.values, r.k, r.n)


def from_factors(vs: Sequence[Sequence], kind: str = RECOGNIZER) -> Signature:
    vs = [[as_scalar(x) for x in v] for v in vs]
    if not vs:
        return Signature(kind, 1, 0, (ONE,))
    k = len(vs[0])
    if any(len(v) != k for v in vs):
        raise DimensionError("factor vectors must share one length")
    check_size(k, len(vs))
    vals = [ONE]
    for v in vs:
        vals = [a * b for a in vals for b in v]
    return Signature(kind, k, len(vs), vals)


def _mode_product(vals: list, dims: list[int], t: int, coeffs: list[list[tuple[int, Scalar]]]) -> list:
    """Contract index t.  ``coeffs[i]`` lists (j, c) pairs: new index i gathers c * old index j."""
    outer = 1
    for d in dims[:t]:
        outer *= d
    inner = 1
    for d in dims[t + 1:]:
        inner *= d
    d_in, d_out = dims[t], len(coeffs)
    out = []
    for o in range(outer):
        base = o * d_in * inner
        for terms in coeffs:
            for s in range(inner):
                acc = ZERO
                for j, c in terms:
                    v = vals[base + j * inner + s]
                    if v:
                        acc = acc + c * v
                out.append(acc)
    dims[t] = d_out
    return out


def _contract_all(r: Signature, coeffs, d_in: int, d_out: int, kind: str) -> Signature:
    if r.k != d_in:
        raise DimensionError(f"signature on domain {r.k} cannot be contracted against dimension {d_in}")
    check_size(max(d_in, d_out), r.n)
    vals = list(r.values)
    dims = [d_in] * r.n
    for t in range(r.n):
        vals = _mode_product(vals, dims, t, coeffs)
    return Signature(kind, d_out, r.n, vals)


def _right_action(x: Mat):
    # new index i = column of x; old index j = row of x
    return [[(j, x[j, i]) for j in range(x.rows) if x[j, i]] for i in range(x.cols)]


def _left_action(x: Mat):
    return [[(j, x[i, j]) for j in range(x.cols) if x[i, j]] for i in range(x.rows)]


def apply_matrix(r: Signature, x: Mat) -> Signature:
    """``r . x^(n)`` for recognizers, ``x^(n) . r`` for generators, one mode at a time."""
    if r.kind == RECOGNIZER:
        return _contract_all(r, _right_action(x), x.rows, x.cols, RECOGNIZER)
    return _contract_all(r, _left_action(x), x.cols, x.rows, GENERATOR)


def apply_basis_recognizer(std: Signature, m: Mat) -> Signature:
    """Recognizer signature ``std . M^(n)`` on domain k from a standard one on domain m.rows."""
    if std.kind != RECOGNIZER:
        raise ValueError("expected a recognizer signature")
    if std.k != m.rows:
        raise DimensionError(f"standard signature on domain {std.k} vs basis with {m.rows} rows")
    return apply_matrix(std, m)


def apply_basis_generator(g: Signature, m: Mat) -> Signature:
    """Standard generator signature ``M^(n) . g`` on domain m.rows."""
    if g.kind != GENERATOR:
        raise ValueError("expected a generator signature")
    if g.k != m.cols:
        raise DimensionError(f"generator on domain {g.k} vs basis with {m.cols} columns")
    return apply_matrix(g, m)


def vanishes_outside(r: Signature, keep: Iterable[int]) -> bool:
    """True iff every entry with some index outside ``keep`` (1-based) is zero."""
    keep = set(keep)
    for flat, v in enumerate(r.values):
        if v and not keep.issuperset(multi_of(flat, r.k, r.n)):
            return False
    return True
