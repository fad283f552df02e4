"""Independent reference computations.  None of these reuse the elimination,
mode-product or memoized-matching code paths they are used to check."""
from __future__ import annotations

from itertools import combinations, product

import numpy as np

from holorank.linalg import Mat, kron_power
from holorank.scalar import ONE, ZERO


def det(rows):
    """Laplace expansion along the first row."""
    n = len(rows)
    if n == 0:
        return ONE
    if n == 1:
        return rows[0][0]
    total = ZERO
    for j, a in enumerate(rows[0]):
        if a:
            minor = [r[:j] + r[j + 1:] for r in rows[1:]]
            term = a * det(minor)
            total = total + term if j % 2 == 0 else total - term
    return total


def minor_rank(m: Mat) -> int:
    """Largest r with a nonzero r x r minor."""
    rows = m.to_rows()
    for r in range(min(m.rows, m.cols), 0, -1):
        for ri in combinations(range(m.rows), r):
            for ci in combinations(range(m.cols), r):
                if det([[rows[i][j] for j in ci] for i in ri]):
                    return r
    return 0


def degenerate_int_tensors(k: int, n: int) -> set:
    """Every outer product v_1 (x) ... (x) v_n with entries in {-1, 0, 1}, as int tuples.

    A degenerate tensor with entries in {-1, 0, 1} is nonzero only if some
    entry is +-1; the fibres through that entry are then factor vectors with
    entries in {-1, 0, 1}, so this set contains every such degenerate tensor.
    """
    vecs = np.array(list(product((-1, 0, 1), repeat=k)), dtype=np.int64)
    out = set()
    for combo in product(range(len(vecs)), repeat=n):
        t = vecs[combo[0]]
        for c in combo[1:]:
            t = np.multiply.outer(t, vecs[c])
        out.add(tuple(int(x) for x in np.ravel(t)))
    return out


def kron_apply_recognizer(values, m: Mat, n: int):
    """Row vector times the explicit Kronecker power."""
    big = kron_power(m, n)
    row = Mat(1, len(values), values)
    return (row @ big).entries


def kron_apply_generator(values, m: Mat, n: int):
    big = kron_power(m, n)
    return (big @ Mat.column(values)).entries


def brute_perfmatch(vertex_count, edges, removed=()):
    """Sum over all edge subsets that are perfect matchings of the remaining vertices."""
    alive = set(range(vertex_count)) - set(removed)
    if len(alive) % 2:
        return ZERO
    usable = [(u, v, w) for u, v, w in edges if u in alive and v in alive]
    total = ZERO
    for sub in combinations(usable, len(alive) // 2):
        covered = [x for u, v, _ in sub for x in (u, v)]
        if len(set(covered)) == len(alive):
            term = ONE
            for _, _, w in sub:
                term = term * w
            total = total + term
    return total


def einsum_contract(generators, recognizers, connections):
    """Contraction via numpy object-array einsum over one letter per connection."""
    letters = "abcdefghijklmnopqrstuvwxyz"
    gen_terms = [[None] * g.n for g in generators]
    rec_terms = [[None] * r.n for r in recognizers]
    for e, (gi, os_, ri, is_) in enumerate(connections):
        gen_terms[gi][os_] = letters[e]
        rec_terms[ri][is_] = letters[e]
    ops, subs = [], []
    for sig, term in zip(list(generators) + list(recognizers), gen_terms + rec_terms):
        arr = np.empty(len(sig.values), dtype=object)
        arr[:] = list(sig.values)
        ops.append(arr.reshape((sig.k,) * sig.n) if sig.n else arr.reshape(()))
        subs.append("".join(term))
    if not ops:
        return ONE
    res = np.einsum(",".join(subs) + "->", *ops, optimize=False)
    return res if not isinstance(res, np.ndarray) else res.item()
