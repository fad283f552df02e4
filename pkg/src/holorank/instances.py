"""Seeded random instance families used by the tests and the CLI.

Everything draws from a ``random.Random`` passed in by the caller, so a
seed fixes the output exactly.

* ``roundtrip_instance``: random standard signatures on a random rank-2
  2^l x k basis.  Purely algebraic, the standard signatures need not come
  from matchgates.
* ``gate_instance``: standard signatures produced by random outerplanar
  matchgates, on a basis built so that the generators are realizable too.
"""
from __future__ import annotations

import random
from dataclasses import dataclass, field
from fractions import Fraction
from itertools import combinations

from .linalg import Mat, invert, rank
from .matchgate import GateGraph, Matchgrid, grouped_standard
from .scalar import ONE, ZERO, Scalar
from .signature import GENERATOR, RECOGNIZER, Signature, apply_matrix, from_factors, is_degenerate


def random_scalar(rng: random.Random, bound: int = 2, complex_prob: float = 0.2, frac_prob: float = 0.2) -> Scalar:
    def part():
        num = rng.randint(-bound, bound)
        den = rng.randint(2, 3) if rng.random() < frac_prob else 1
        return Fraction(num, den)

    return Scalar(part(), part() if rng.random() < complex_prob else 0)


def random_weight(rng: random.Random, bound: int = 5) -> Scalar:
    """Nonzero rational with numerator and denominator at most ``bound`` in size."""
    num = rng.choice([x for x in range(-bound, bound + 1) if x])
    return Scalar(Fraction(num, rng.randint(1, bound)))


def random_mat(rng: random.Random, rows: int, cols: int, **kw) -> Mat:
    return Mat(rows, cols, [random_scalar(rng, **kw) for _ in range(rows * cols)])


def random_invertible(rng: random.Random, n: int) -> Mat:
    while True:
        m = random_mat(rng, n, n)
        if rank(m) == n:
            return m


def random_rank2_basis(rng: random.Random, rows: int, k: int) -> Mat:
    """Product of random rows x 2 and 2 x k factors, resampled until rank 2."""
    while True:
        m = random_mat(rng, rows, 2) @ random_mat(rng, 2, k)
        if rank(m) == 2:
            return m


def random_signature(rng: random.Random, kind: str, k: int, n: int, **kw) -> Signature:
    return Signature(kind, k, n, [random_scalar(rng, **kw) for _ in range(k ** n)])


@dataclass
class Instance:
    basis: Mat
    recognizers: list
    generators: list
    standard_recognizers: list
    standard_generators: list
    ell: int = 1
    extras: dict = field(default_factory=dict)


def _arities(rng: random.Random, count: int, first_min: int = 1, top: int = 3) -> list[int]:
    return [rng.randint(first_min if i == 0 else 1, top) for i in range(count)]


def roundtrip_instance(
    rng: random.Random,
    ell: int,
    k: int,
    n_recognizers: int | None = None,
    n_generators: int | None = None,
    max_arity: int = 3,
) -> Instance:
    """Realizable instance with a non-degenerate first recognizer (arity >= 2).

    Generators are arbitrary domain-k tensors; their standard signatures are
    M^(n) G.
    """
    rows = 1 << ell
    n_recognizers = rng.randint(1, 3) if n_recognizers is None else n_recognizers
    n_generators = rng.randint(0, 2) if n_generators is None else n_generators
    m = random_rank2_basis(rng, rows, k)
    arities = _arities(rng, n_recognizers, first_min=2, top=max_arity)
    while True:
        std_r = [random_signature(rng, RECOGNIZER, rows, n) for n in arities]
        recs = [apply_matrix(s, m) for s in std_r]
        if not is_degenerate(recs[0]):
            break
    gens = [random_signature(rng, GENERATOR, k, n) for n in _arities(rng, n_generators, top=max_arity)]
    std_g = [apply_matrix(g, m) for g in gens]
    return Instance(m, recs, gens, std_r, std_g, ell)


def closed_instance(rng: random.Random, ell: int, k: int, max_edges: int = 4):
    """Round-trip instance whose slots are all wired: returns (instance, connections)."""
    rows = 1 << ell
    m = random_rank2_basis(rng, rows, k)
    f = rng.randint(2, max_edges)
    rec_ar = _split(rng, f, first_min=2)
    gen_ar = _split(rng, f)
    while True:
        std_r = [random_signature(rng, RECOGNIZER, rows, n) for n in rec_ar]
        recs = [apply_matrix(s, m) for s in std_r]
        if not is_degenerate(recs[0]):
            break
    gens = [random_signature(rng, GENERATOR, k, n) for n in gen_ar]
    std_g = [apply_matrix(g, m) for g in gens]
    return Instance(m, recs, gens, std_r, std_g, ell), random_wiring(rng, gen_ar, rec_ar)


def _split(rng: random.Random, total: int, first_min: int = 1, top: int = 3) -> list[int]:
    parts = []
    while total:
        lo = min(first_min if not parts else 1, total)
        n = rng.randint(lo, min(top, total))
        parts.append(n)
        total -= n
    return parts


def random_wiring(rng: random.Random, gen_arities, rec_arities) -> list[tuple[int, int, int, int]]:
    outs = [(g, s) for g, n in enumerate(gen_arities) for s in range(n)]
    ins = [(r, s) for r, n in enumerate(rec_arities) for s in range(n)]
    if len(outs) != len(ins):
        raise ValueError("slot totals differ")
    rng.shuffle(ins)
    return [(g, os_, r, is_) for (g, os_), (r, is_) in zip(outs, ins)]


# --- matchgates -------------------------------------------------------------


def random_graph_gate(rng: random.Random, vertices: int, arity: int, kind: str = GENERATOR,
                      density: float = 0.5) -> GateGraph:
    """Random simple graph (not necessarily planar) with rational edge weights."""
    edges = [(u, v, random_weight(rng)) for u, v in combinations(range(vertices), 2) if rng.random() < density]
    external = rng.sample(range(vertices), arity)
    return GateGraph(vertices, tuple(edges), tuple(external), kind)


def _crosses(a: tuple[int, int], b: tuple[int, int]) -> bool:
    (p, q), (r, s) = a, b
    return p < r < q < s or r < p < s < q


def random_outerplanar_gate(rng: random.Random, arity: int, internal: int, kind: str = GENERATOR,
                            density: float = 0.6) -> GateGraph:
    """Gate whose vertices sit on a circle in index order with non-crossing chords.

    Every vertex lies on the outer face and the external nodes appear in
    increasing order around it, so the gate is a planar matchgate.
    """
    v = arity + internal
    external = sorted(rng.sample(range(v), arity))
    chords = list(combinations(range(v), 2))
    rng.shuffle(chords)
    chosen: list[tuple[int, int]] = []
    for c in chords:
        if rng.random() < density and not any(_crosses(c, d) for d in chosen):
            chosen.append(c)
    edges = tuple((a, b, random_weight(rng, 3)) for a, b in sorted(chosen))
    return GateGraph(v, edges, tuple(external), kind)


def pad_blocks(gate: GateGraph, dummy_removed: bool, info_first: bool) -> GateGraph:
    """Give each external node a partner so every index becomes a 2-bit block.

    The partner's bit is forced: with ``dummy_removed`` it is an isolated
    vertex that must be removed, otherwise it is a pendant that must stay.
    Vertices are renumbered along the circle so outerplanarity is kept.
    """
    pos: dict[int, int] = {}
    ext_of = {x: t for t, x in enumerate(gate.external)}
    extra_edges = []
    external = []
    nxt = 0

    def fresh():
        nonlocal nxt
        nxt += 1
        return nxt - 1

    for p in range(gate.vertex_count):
        if p in ext_of and not info_first:
            if not dummy_removed:
                z = fresh()
            y = fresh()
            if not dummy_removed:
                extra_edges.append((z, y, ONE))
        pos[p] = fresh()
        if p in ext_of:
            if info_first:
                y = fresh()
                if not dummy_removed:
                    z = fresh()
                    extra_edges.append((y, z, ONE))
                external.extend([pos[p], y])
            else:
                external.extend([y, pos[p]])
    edges = tuple((pos[a], pos[b], w) for a, b, w in gate.edges) + tuple(extra_edges)
    return GateGraph(nxt, edges, tuple(external), gate.kind)


def padded_basis(b: Mat, dummy_removed: bool, info_first: bool) -> Mat:
    """4 x k basis whose columns are beta_w (x) c (or c (x) beta_w) for the forced bit c."""
    c = (ZERO, ONE) if dummy_removed else (ONE, ZERO)
    rows = []
    for r in range(4):
        info, dummy = (r >> 1, r & 1) if info_first else (r & 1, r >> 1)
        rows.append([b[info, w] * c[dummy] for w in range(b.cols)])
    return Mat.from_rows(rows, cols=b.cols)


def _independent_pair(b: Mat) -> tuple[int, int]:
    return next((i, j) for i, j in combinations(range(b.cols), 2) if rank(b.select_columns([i, j])) == 2)


def _generator_preimage(rng: random.Random, b: Mat, std: Signature) -> Signature:
    """Random G on domain k with B^(n) G = std, kernel part drawn at random."""
    i, j = _independent_pair(b)
    k = b.cols
    inv = invert(b.select_columns([i, j]))
    embed = Mat.from_rows([[inv[0, c] if r == i else inv[1, c] if r == j else ZERO for c in range(2)]
                           for r in range(k)], cols=2)
    g0 = apply_matrix(std.with_kind(GENERATOR), embed)
    proj = embed @ b
    t = random_signature(rng, GENERATOR, k, std.n)
    noise = apply_matrix(t, proj)
    return Signature(GENERATOR, k, std.n, [a + x - y for a, x, y in zip(g0.values, t.values, noise.values)])


def gate_instance(
    rng: random.Random,
    ell: int,
    k: int,
    n_recognizers: int | None = None,
    n_generators: int | None = None,
    max_arity: int = 3,
    max_vertices: int = 6,
    require_nondegenerate_generator: bool = True,
) -> Instance:
    """Instance realizable by actual outerplanar matchgates on a rank-2 basis.

    ``extras["collapsed"]`` holds a 2 x k basis B on which the same
    instance is realizable, with ``extras["collapsed_standards"]`` its
    recognizer standard signatures.  For l = 1 the basis is B itself; for
    l = 2 it is B padded with a forced second bit per index.
    """
    if ell not in (1, 2):
        raise ValueError("gate instances support l in {1, 2}")
    n_recognizers = rng.randint(1, 3) if n_recognizers is None else n_recognizers
    n_generators = rng.randint(1, 2) if n_generators is None else n_generators
    b = random_rank2_basis(rng, 2, k)
    dummy_removed, info_first = rng.random() < 0.5, rng.random() < 0.5
    m = b if ell == 1 else padded_basis(b, dummy_removed, info_first)

    def gate(arity_bits, kind):
        internal = rng.randint(0, max(0, max_vertices - arity_bits))
        return random_outerplanar_gate(rng, arity_bits, internal, kind)

    rec_ar = _arities(rng, n_recognizers, first_min=2, top=max_arity)
    std_r, recs = [], []
    for idx, n in enumerate(rec_ar):
        while True:
            std = grouped_standard(gate(ell * n, RECOGNIZER), ell)
            r = apply_matrix(std, m)
            if idx > 0 or not is_degenerate(r):
                break
        std_r.append(std)
        recs.append(r)
    gen_ar = _arities(rng, n_generators, first_min=2 if require_nondegenerate_generator else 1, top=max_arity)
    gens, std_g, collapsed_g = [], [], []
    for idx, n in enumerate(gen_ar):
        while True:
            base = gate(n, GENERATOR)
            base_std = grouped_standard(base, 1)
            if not (idx == 0 and require_nondegenerate_generator) or not is_degenerate(base_std):
                break
        g = _generator_preimage(rng, b, base_std)
        full_gate = base if ell == 1 else pad_blocks(base, dummy_removed, info_first)
        std = grouped_standard(full_gate, ell)
        gens.append(g)
        std_g.append(std)
        collapsed_g.append(base_std)
    collapsed_r = [apply_matrix(s, _block_select(dummy_removed, info_first)) if ell == 2 else s for s in std_r]
    return Instance(m, recs, gens, std_r, std_g, ell,
                    {"collapsed": b, "collapsed_standards": collapsed_r, "collapsed_generator_standards": collapsed_g})


def _block_select(dummy_removed: bool, info_first: bool) -> Mat:
    # 4 x 2 map fixing the forced bit of each block
    d = 1 if dummy_removed else 0
    rows = [[ZERO, ZERO] for _ in range(4)]
    for info in range(2):
        r = 2 * info + d if info_first else 2 * d + info
        rows[r][info] = ONE
    return Mat.from_rows(rows, cols=2)


def trivial_instance(rng: random.Random, ell: int, k: int) -> Instance:
    """Realizable recognizers with generators that are outer products, so every reduced generator is degenerate."""
    inst = roundtrip_instance(rng, ell, k, n_generators=0)
    gens = []
    for n in _arities(rng, rng.randint(1, 2)):
        gens.append(from_factors([[random_scalar(rng) for _ in range(k)] for _ in range(n)], GENERATOR))
    inst.generators = gens
    inst.standard_generators = [apply_matrix(g, inst.basis) for g in gens]
    return inst


def random_matchgrid(rng: random.Random, max_gates: int = 3, max_vertices: int = 14,
                     max_edges: int = 4) -> Matchgrid:
    """Random wiring of 1-2 generators to 1-2 recognizers, general (possibly non-planar) gates."""
    shape = rng.choice([(1, 1), (1, 2), (2, 1)] if max_gates >= 3 else [(1, 1)])
    f = rng.randint(0, max_edges)
    gen_ar = _split_into(rng, f, shape[0])
    rec_ar = _split_into(rng, f, shape[1])
    budget = max_vertices - 2 * f
    gates = []
    for kind, ars in ((GENERATOR, gen_ar), (RECOGNIZER, rec_ar)):
        for n in ars:
            extra = rng.randint(0, min(3, budget))
            budget -= extra
            gates.append(random_graph_gate(rng, n + extra, n, kind))
    gens, recs = gates[:shape[0]], gates[shape[0]:]
    return Matchgrid(tuple(gens), tuple(recs), tuple(random_wiring(rng, gen_ar, rec_ar)))


def _split_into(rng: random.Random, total: int, parts: int) -> list[int]:
    cuts = sorted(rng.randint(0, total) for _ in range(parts - 1))
    bounds = [0] + cuts + [total]
    return [b - a for a, b in zip(bounds, bounds[1:])]
