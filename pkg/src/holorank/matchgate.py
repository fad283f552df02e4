"""Matchgates, matchgrids, PerfMatch and Holant contraction.

PerfMatch is computed by exact enumeration over vertex subsets (memoized
on the set of still-unmatched vertices), which is exponential but exact at
the scales this package targets.  Planarity and the cyclic order of
external nodes are taken on trust: the external order is the input order.
"""
from __future__ import annotations

from dataclasses import dataclass
from itertools import product
from typing import NamedTuple, Sequence

from .errors import CapExceeded, DimensionError, InfeasibleSignature, UnderdeterminedSystem
from .linalg import Mat, rank, right_inverse
from .scalar import ONE, ZERO, Scalar, as_scalar
from .signature import (
    GENERATOR,
    KINDS,
    RECOGNIZER,
    Signature,
    apply_basis_generator,
    apply_basis_recognizer,
    apply_matrix,
)

PERFMATCH_CAP = 24
CONTRACTION_CAP = 10**7


def basis_size(m: Mat) -> int:
    """l for a basis with 2^l rows; ValueError otherwise."""
    ell = m.rows.bit_length() - 1
    if m.rows < 1 or 1 << ell != m.rows:
        raise ValueError(f"a matchgate basis needs a power-of-two row count, got {m.rows}")
    return ell


@dataclass(frozen=True)
class GateGraph:
    vertex_count: int
    edges: tuple
    external: tuple
    kind: str = GENERATOR

    def __post_init__(self):
        if self.kind not in KINDS:
            raise ValueError(f"unknown gate kind {self.kind!r}")
        seen = set()
        edges = []
        for u, v, w in self.edges:
            u, v = int(u), int(v)
            if u > v:
                u, v = v, u
            if u == v:
                raise ValueError(f"self-loop at vertex {u}")
            if not (0 <= u and v < self.vertex_count):
                raise ValueError(f"edge ({u}, {v}) references a missing vertex")
            if (u, v) in seen:
                raise ValueError(f"duplicate edge ({u}, {v})")
            seen.add((u, v))
            edges.append((u, v, as_scalar(w)))
        ext = tuple(int(x) for x in self.external)
        if len(set(ext)) != len(ext) or any(not 0 <= x < self.vertex_count for x in ext):
            raise ValueError("external nodes must be distinct existing vertices")
        object.__setattr__(self, "edges", tuple(edges))
        object.__setattr__(self, "external", ext)

    @property
    def arity(self) -> int:
        return len(self.external)


class _Matcher:
    """Memoized PerfMatch over bitmasks of present vertices."""

    def __init__(self, g: GateGraph, cap: int | None = None):
        cap = PERFMATCH_CAP if cap is None else cap
        if g.vertex_count > cap:
            raise CapExceeded(f"{g.vertex_count} vertices exceed the PerfMatch cap of {cap}")
        self.adj = [[] for _ in range(g.vertex_count)]
        for u, v, w in g.edges:
            if w:
                self.adj[u].append((v, w))
                self.adj[v].append((u, w))
        self.full = (1 << g.vertex_count) - 1
        self.memo = {0: ONE}

    def __call__(self, mask: int) -> Scalar:
        if bin(mask).count("1") % 2:
            return ZERO
        return self._rec(mask)

    def _rec(self, mask: int) -> Scalar:
        hit = self.memo.get(mask)
        if hit is not None:
            return hit
        low = mask & -mask
        v = low.bit_length() - 1
        rest = mask ^ low
        acc = ZERO
        for u, w in self.adj[v]:
            bit = 1 << u
            if rest & bit:
                sub = self._rec(rest ^ bit)
                if sub:
                    acc = acc + w * sub
        self.memo[mask] = acc
        return acc


def perfmatch(g: GateGraph, removed: Sequence[int] = (), cap: int | None = None) -> Scalar:
    """Weighted sum over perfect matchings of ``g`` minus the ``removed`` vertices."""
    matcher = _Matcher(g, cap)
    mask = matcher.full
    for v in removed:
        mask &= ~(1 << v)
    return matcher(mask)


def standard_signature(g: GateGraph, cap: int | None = None) -> Signature:
    """Entry at bit string i_1..i_n (bit 1 = external node t removed) is PerfMatch(G - Z)."""
    matcher = _Matcher(g, cap)
    vals = []
    for bits in product((0, 1), repeat=g.arity):
        mask = matcher.full
        for b, v in zip(bits, g.external):
            if b:
                mask &= ~(1 << v)
        vals.append(matcher(mask))
    return Signature(g.kind, 2, g.arity, vals)


def as_bit_signature(s: Signature) -> Signature:
    """View a signature on domain 2^l as one on domain 2 with l bits per index."""
    if s.k == 2:
        return s
    ell = s.k.bit_length() - 1
    if 1 << ell != s.k:
        raise ValueError(f"domain size {s.k} is not a power of two")
    return Signature(s.kind, 2, s.n * ell, s.values)


def parity_condition(s: Signature) -> bool:
    """All nonzero entries sit at bit strings of one common parity."""
    s = as_bit_signature(s)
    return len({bin(i).count("1") % 2 for i, v in enumerate(s.values) if v}) <= 1


def first_identity_violation(s: Signature) -> tuple[int, int] | None:
    """First (beta, gamma) pair whose identity sum is nonzero, as flat bit strings.

    For bit strings beta, gamma differing at positions p_1 < ... < p_l the
    identity reads  sum_i (-1)^i s[beta ^ e_{p_i}] s[gamma ^ e_{p_i}] = 0.
    """
    s = as_bit_signature(s)
    n, vals = s.n, s.values
    size = 1 << n
    for beta in range(size):
        for gamma in range(beta + 1, size):
            diff = beta ^ gamma
            acc = ZERO
            sign = -1
            for p in range(n - 1, -1, -1):  # most significant bit is position 1
                bit = 1 << p
                if diff & bit:
                    a, b = vals[beta ^ bit], vals[gamma ^ bit]
                    if a and b:
                        acc = acc + a * b if sign > 0 else acc - a * b
                    sign = -sign
            if acc:
                return beta, gamma
    return None


def matchgate_identities(s: Signature) -> bool:
    """Parity condition plus the matchgate identities; domains of size 2^l read as l bits per index."""
    return parity_condition(s) and first_identity_violation(s) is None


@dataclass(frozen=True)
class Matchgrid:
    """Generators wired to recognizers.

    ``connections`` holds (generator, output slot, recognizer, input slot),
    0-based.  A slot groups ``bits_per_slot`` consecutive external nodes,
    matching a basis with 2^bits_per_slot rows.
    """

    generators: tuple
    recognizers: tuple
    connections: tuple
    bits_per_slot: int = 1

    def __post_init__(self):
        object.__setattr__(self, "generators", tuple(self.generators))
        object.__setattr__(self, "recognizers", tuple(self.recognizers))
        object.__setattr__(self, "connections", tuple(tuple(int(x) for x in c) for c in self.connections))
        if self.bits_per_slot < 1:
            raise ValueError("bits_per_slot must be >= 1")
        for g in self.generators + self.recognizers:
            if g.arity % self.bits_per_slot:
                raise ValueError(f"gate arity {g.arity} is not a multiple of {self.bits_per_slot}")
        if any(g.kind != GENERATOR for g in self.generators):
            raise ValueError("generator list contains a recognizer gate")
        if any(r.kind != RECOGNIZER for r in self.recognizers):
            raise ValueError("recognizer list contains a generator gate")
        _check_wiring(
            [g.arity // self.bits_per_slot for g in self.generators],
            [r.arity // self.bits_per_slot for r in self.recognizers],
            self.connections,
        )


def _check_wiring(gen_arities, rec_arities, connections) -> None:
    used_out, used_in = set(), set()
    for c in connections:
        if len(c) != 4:
            raise ValueError(f"connection {c} must have four entries")
        gi, os_, ri, is_ = c
        if not (0 <= gi < len(gen_arities) and 0 <= os_ < gen_arities[gi]):
            raise ValueError(f"connection {c} names a missing generator slot")
        if not (0 <= ri < len(rec_arities) and 0 <= is_ < rec_arities[ri]):
            raise ValueError(f"connection {c} names a missing recognizer slot")
        if (gi, os_) in used_out or (ri, is_) in used_in:
            raise ValueError(f"connection {c} reuses a slot")
        used_out.add((gi, os_))
        used_in.add((ri, is_))
    if len(used_out) != sum(gen_arities) or len(used_in) != sum(rec_arities):
        raise ValueError("every slot must carry exactly one connection")


def contract(
    generators: Sequence[Signature],
    recognizers: Sequence[Signature],
    connections: Sequence[Sequence[int]],
    cap: int | None = None,
) -> Scalar:
    """Sum over all assignments of domain values to connections of the product of entries."""
    cap = CONTRACTION_CAP if cap is None else cap
    _check_wiring([g.n for g in generators], [r.n for r in recognizers], connections)
    ks = {s.k for s in list(generators) + list(recognizers) if s.n}
    if len(ks) > 1:
        raise DimensionError(f"mixed domain sizes {sorted(ks)} in one contraction")
    k = ks.pop() if ks else 1
    f = len(connections)
    if k ** f > cap:
        raise CapExceeded(f"{k}^{f} contraction terms exceed the cap of {cap}")
    gen_slots = [[0] * g.n for g in generators]
    rec_slots = [[0] * r.n for r in recognizers]
    for e, (gi, os_, ri, is_) in enumerate(connections):
        gen_slots[gi][os_] = e
        rec_slots[ri][is_] = e
    const = ONE
    factors = []
    for sig, slots in zip(list(generators) + list(recognizers), gen_slots + rec_slots):
        if sig.n == 0:
            const = const * sig.values[0]
        else:
            factors.append((sig.values, slots))
    if not const:
        return ZERO
    total = ZERO
    for x in product(range(k), repeat=f):
        term = const
        for vals, slots in factors:
            idx = 0
            for e in slots:
                idx = idx * k + x[e]
            v = vals[idx]
            if not v:
                break
            term = term * v
        else:
            total = total + term
    return total


def grouped_standard(gate: GateGraph, bits_per_slot: int = 1, cap: int | None = None) -> Signature:
    """Standard signature on domain 2^bits_per_slot, grouping consecutive external nodes."""
    bits = standard_signature(gate, cap)
    return Signature(gate.kind, 1 << bits_per_slot, gate.arity // bits_per_slot, bits.values)


def _left_inverse(m: Mat) -> Mat | None:
    ri = right_inverse(m.transpose())
    return None if ri is None else ri.transpose()


def gate_signatures_under(
    grid: Matchgrid,
    basis: Mat | None = None,
    generator_signatures: Sequence[Signature] | None = None,
    cap: int | None = None,
) -> tuple[list[Signature], list[Signature]]:
    """Signatures of every gate under ``basis`` (default: the standard basis).

    Recognizers are std . M^(n).  Generators need a preimage of their
    standard signature: supplied ones are checked, otherwise a left inverse
    of M is used when M has full column rank.
    """
    if basis is None:
        basis = Mat.identity(1 << grid.bits_per_slot)
    if basis_size(basis) != grid.bits_per_slot:
        raise DimensionError(f"basis with {basis.rows} rows does not match {grid.bits_per_slot} bits per slot")
    ell = grid.bits_per_slot
    if generator_signatures is not None and len(generator_signatures) != len(grid.generators):
        raise DimensionError("one generator signature per generator gate is required")
    recs = [apply_basis_recognizer(grouped_standard(r, ell, cap), basis) for r in grid.recognizers]
    gens = []
    left = None
    for j, gate in enumerate(grid.generators):
        std = grouped_standard(gate, ell, cap)
        if generator_signatures is not None:
            g = generator_signatures[j]
        else:
            if left is None:
                if rank(basis) < basis.cols:
                    raise UnderdeterminedSystem(
                        "basis has dependent columns; supply the generator signatures explicitly"
                    )
                left = _left_inverse(basis)
            g = apply_matrix(std, left)
        if g.kind != GENERATOR or g.n != std.n:
            raise DimensionError(f"generator signature {j} has the wrong kind or arity")
        if apply_basis_generator(g, basis) != std:
            raise InfeasibleSignature(f"generator {j}: standard signature has no preimage of this form")
        gens.append(g)
    return gens, recs


def holant(
    grid: Matchgrid,
    basis: Mat | None = None,
    generator_signatures: Sequence[Signature] | None = None,
    cap: int | None = None,
    contraction_cap: int | None = None,
) -> Scalar:
    gens, recs = gate_signatures_under(grid, basis, generator_signatures, cap)
    return contract(gens, recs, grid.connections, contraction_cap)


def underlying_graph(grid: Matchgrid) -> GateGraph:
    """Disjoint union of all gates plus a weight-1 edge per matched pair of external nodes."""
    ell = grid.bits_per_slot
    offsets_g, offsets_r = [], []
    edges = []
    total = 0
    for gate, offsets in [(g, offsets_g) for g in grid.generators] + [(r, offsets_r) for r in grid.recognizers]:
        offsets.append(total)
        edges.extend((u + total, v + total, w) for u, v, w in gate.edges)
        total += gate.vertex_count
    for gi, os_, ri, is_ in grid.connections:
        gg, rg = grid.generators[gi], grid.recognizers[ri]
        for b in range(ell):
            u = offsets_g[gi] + gg.external[os_ * ell + b]
            v = offsets_r[ri] + rg.external[is_ * ell + b]
            edges.append((u, v, ONE))
    return GateGraph(total, tuple(edges), (), GENERATOR)


class HolantCheck(NamedTuple):
    holant: Scalar
    perfmatch: Scalar
    equal: bool


def holant_theorem_check(
    grid: Matchgrid,
    basis: Mat | None = None,
    generator_signatures: Sequence[Signature] | None = None,
    cap: int | None = None,
    contraction_cap: int | None = None,
) -> HolantCheck:
    gamma = underlying_graph(grid)
    pm = perfmatch(gamma, cap=cap)
    h = holant(grid, basis, generator_signatures, cap, contraction_cap)
    return HolantCheck(h, pm, h == pm)


def contraction_preserved(original, transformed, wiring, cap: int | None = None) -> bool:
    """Exact equality of the contractions of (generators, recognizers) before and after reduction."""
    (g0, r0), (g1, r1) = original, transformed
    if [g.n for g in g0] != [g.n for g in g1] or [r.n for r in r0] != [r.n for r in r1]:
        raise DimensionError("original and transformed instances have different shapes")
    return contract(g0, r0, wiring, cap) == contract(g1, r1, wiring, cap)
