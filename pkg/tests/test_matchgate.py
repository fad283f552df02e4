import random
from fractions import Fraction

import pytest

from holorank.errors import CapExceeded, InfeasibleSignature, UnderdeterminedSystem
from holorank.instances import (
    random_graph_gate,
    random_invertible,
    random_outerplanar_gate,
    random_wiring,
)
from holorank.linalg import Mat
from holorank.matchgate import (
    GateGraph,
    Matchgrid,
    contract,
    contraction_preserved,
    first_identity_violation,
    grouped_standard,
    holant,
    holant_theorem_check,
    matchgate_identities,
    parity_condition,
    perfmatch,
    standard_signature,
    underlying_graph,
)
from holorank.reduction import make_certificate
from holorank.scalar import Scalar
from holorank.signature import GENERATOR, RECOGNIZER, Signature, apply_matrix

from .oracles import brute_perfmatch, einsum_contract

W, U = Scalar(Fraction(3, 2)), Scalar(-4)


def edge_gate(w, kind=GENERATOR, external=(0, 1)):
    return GateGraph(2, ((0, 1, w),), external, kind)


def test_perfmatch_examples():
    assert perfmatch(edge_gate(5)) == 5
    assert perfmatch(GateGraph(0, (), ())) == 1
    assert perfmatch(GateGraph(3, ((0, 1, 1), (1, 2, 1), (0, 2, 1)), ())) == 0
    assert perfmatch(GateGraph(4, ((0, 1, 1), (1, 2, 1), (2, 3, 1), (0, 3, 1)), ())) == 2


def test_perfmatch_matches_brute_force():
    rng = random.Random(1)
    for _ in range(150):
        v = rng.randint(0, 8)
        g = random_graph_gate(rng, v, 0, density=rng.random())
        removed = rng.sample(range(v), rng.randint(0, v))
        assert perfmatch(g, removed) == brute_perfmatch(v, g.edges, removed)


def test_perfmatch_multiplicative_and_order_free():
    rng = random.Random(2)
    for _ in range(40):
        a = random_graph_gate(rng, rng.randint(0, 6), 0)
        b = random_graph_gate(rng, rng.randint(0, 6), 0)
        off = a.vertex_count
        union = GateGraph(off + b.vertex_count, a.edges + tuple((u + off, v + off, w) for u, v, w in b.edges), ())
        assert perfmatch(union) == perfmatch(a) * perfmatch(b)
        shuffled = list(a.edges)
        rng.shuffle(shuffled)
        assert perfmatch(GateGraph(a.vertex_count, tuple((v, u, w) for u, v, w in shuffled), ())) == perfmatch(a)


def test_perfmatch_cap():
    with pytest.raises(CapExceeded):
        perfmatch(GateGraph(26, (), ()))
    with pytest.raises(CapExceeded):
        perfmatch(GateGraph(6, (), ()), cap=4)


def test_gate_validation():
    for edges, ext in [(((0, 0, 1),), ()), (((0, 1, 1), (1, 0, 2)), ()), (((0, 5, 1),), ()), ((), (0, 0))]:
        with pytest.raises(ValueError):
            GateGraph(3, edges, ext)


def test_standard_signature_examples():
    assert standard_signature(edge_gate(W)).values == (W, 0, 0, 1)
    assert standard_signature(edge_gate(W, external=(0,))).values == (W, 0)
    g0 = GateGraph(4, ((0, 1, 2), (2, 3, 3), (1, 2, 5)), ())
    s = standard_signature(g0)
    assert s.n == 0 and s.values == (6,)
    assert standard_signature(edge_gate(W, RECOGNIZER)).kind == RECOGNIZER


def test_standard_signature_bit_order():
    # path 0-1-2 with externals (0, 2): removing node 0 leaves edge 1-2
    g = GateGraph(3, ((0, 1, 2), (1, 2, 7)), (0, 2))
    assert standard_signature(g).values == (0, 2, 7, 0)


def test_identities_examples():
    assert matchgate_identities(Signature(GENERATOR, 2, 2, [5, 0, 0, 1]))
    assert not matchgate_identities(Signature(GENERATOR, 2, 2, [1, 1, 0, 0]))
    assert not matchgate_identities(Signature(GENERATOR, 2, 2, [1, 1, 1, 1]))
    for b, c in [(1, 2), (0, 7), (Scalar(1, 1), -3)]:
        assert matchgate_identities(Signature(GENERATOR, 2, 2, [0, b, c, 0]))
    assert matchgate_identities(Signature(GENERATOR, 2, 0, [4]))


def test_identities_have_content_at_arity_four():
    even = [0] * 16
    even[0b0000] = even[0b1111] = 1
    s = Signature(GENERATOR, 2, 4, even)
    assert parity_condition(s) and first_identity_violation(s) is not None
    k4 = GateGraph(4, tuple((u, v, 1) for u in range(4) for v in range(u + 1, 4)), (0, 1, 2, 3))
    assert not matchgate_identities(standard_signature(k4))
    c4 = GateGraph(4, ((0, 1, 1), (1, 2, 1), (2, 3, 1), (0, 3, 1)), (0, 1, 2, 3))
    assert matchgate_identities(standard_signature(c4))


def test_identities_on_domain_four_read_as_bit_pairs():
    c4 = GateGraph(4, ((0, 1, 1), (1, 2, 1), (2, 3, 1), (0, 3, 1)), (0, 1, 2, 3))
    assert matchgate_identities(grouped_standard(c4, 2))


def test_gate_signatures_pass_identities_with_reversed_twin():
    rng = random.Random(3)
    for _ in range(60):
        arity = rng.randint(0, 6)
        g = random_outerplanar_gate(rng, arity, rng.randint(0, 3))
        twin = GateGraph(g.vertex_count, g.edges, tuple(reversed(g.external)), g.kind)
        assert matchgate_identities(standard_signature(g))
        assert matchgate_identities(standard_signature(twin))


def test_matchgrid_validation():
    gen, rec = edge_gate(W), edge_gate(U, RECOGNIZER)
    Matchgrid((gen,), (rec,), ((0, 0, 0, 0), (0, 1, 0, 1)))
    with pytest.raises(ValueError):
        Matchgrid((gen,), (rec,), ((0, 0, 0, 0),))
    with pytest.raises(ValueError):
        Matchgrid((gen,), (rec,), ((0, 0, 0, 0), (0, 0, 0, 1)))
    with pytest.raises(ValueError):
        Matchgrid((rec,), (gen,), ((0, 0, 0, 0), (0, 1, 0, 1)))
    with pytest.raises(ValueError):
        Matchgrid((gen,), (rec,), ((0, 0, 0, 0), (0, 1, 0, 1)), bits_per_slot=3)


def four_cycle_grid():
    return Matchgrid((edge_gate(W),), (edge_gate(U, RECOGNIZER),), ((0, 0, 0, 0), (0, 1, 0, 1)))


def test_holant_examples():
    g = Signature(GENERATOR, 3, 1, [1, 2, 3])
    r = Signature(RECOGNIZER, 3, 1, [4, 5, 6])
    assert contract([g], [r], [(0, 0, 0, 0)]) == 32
    assert holant(four_cycle_grid()) == W * U + 1
    zero_gate = GateGraph(3, ((0, 1, 1),), (0, 1), RECOGNIZER)  # spare vertex 2 is never matched
    assert holant(Matchgrid((edge_gate(W),), (zero_gate,), ((0, 0, 0, 0), (0, 1, 0, 1)))) == 0


def test_holant_theorem_examples():
    res = holant_theorem_check(four_cycle_grid())
    assert res.holant == res.perfmatch == W * U + 1 and res.equal
    gamma = underlying_graph(four_cycle_grid())
    assert gamma.vertex_count == 4 and len(gamma.edges) == 4
    empty = holant_theorem_check(Matchgrid((), (), ()))
    assert empty == (1, 1, True)
    g0 = GateGraph(4, ((0, 1, 2), (2, 3, 3), (0, 3, 1), (1, 2, 5)), ())
    res = holant_theorem_check(Matchgrid((g0,), (), ()))
    assert res.holant == res.perfmatch == perfmatch(g0) == 11


def test_holant_is_basis_independent():
    rng = random.Random(4)
    from holorank.instances import random_matchgrid

    for _ in range(15):
        grid = random_matchgrid(rng, max_vertices=10)
        basis = random_invertible(rng, 2)
        res = holant_theorem_check(grid, basis)
        assert res.equal and res.holant == holant(grid)


def test_holant_needs_generators_for_wide_basis():
    # a 2 x 3 basis has dependent columns; supplied generator signatures are checked
    gen_gate = GateGraph(2, ((0, 1, 1),), (0, 1))
    rec_gate = GateGraph(2, ((0, 1, 2),), (0, 1), RECOGNIZER)
    grid = Matchgrid((gen_gate,), (rec_gate,), ((0, 0, 0, 0), (0, 1, 0, 1)))
    basis = Mat.from_rows([[1, 0, 1], [0, 1, 1]])
    std = standard_signature(gen_gate)  # (1, 0, 0, 1)
    g_ok = Signature(GENERATOR, 3, 2, [1, 0, 0, 0, 1, 0, 0, 0, 0])
    assert apply_matrix(g_ok, basis) == std
    res = holant_theorem_check(grid, basis, [g_ok])
    assert res.equal and res.perfmatch == 3
    with pytest.raises(UnderdeterminedSystem):
        holant(grid, basis)
    with pytest.raises(InfeasibleSignature):
        holant(grid, basis, [Signature(GENERATOR, 3, 2, [0] * 9)])


def test_holant_with_two_bits_per_slot():
    rng = random.Random(6)
    for _ in range(10):
        gen = random_outerplanar_gate(rng, 2, rng.randint(0, 2))
        rec = random_outerplanar_gate(rng, 2, rng.randint(0, 2), RECOGNIZER)
        grid = Matchgrid((gen,), (rec,), ((0, 0, 0, 0),), bits_per_slot=2)
        res = holant_theorem_check(grid, random_invertible(rng, 4))
        assert res.equal


def test_contract_matches_einsum_oracle():
    rng = random.Random(7)
    for _ in range(40):
        k = rng.randint(1, 3)
        gen_ar = [rng.randint(0, 2) for _ in range(rng.randint(1, 2))]
        total = sum(gen_ar)
        rec_ar = [total] if total else [0]
        gens = [Signature(GENERATOR, k, n, [rng.randint(-3, 3) for _ in range(k ** n)]) for n in gen_ar]
        recs = [Signature(RECOGNIZER, k, n, [rng.randint(-3, 3) for _ in range(k ** n)]) for n in rec_ar]
        wiring = random_wiring(rng, gen_ar, rec_ar)
        assert contract(gens, recs, wiring) == einsum_contract(gens, recs, wiring)


def test_contraction_cap():
    g = Signature(GENERATOR, 3, 3, [1] * 27)
    r = Signature(RECOGNIZER, 3, 3, [1] * 27)
    wiring = [(0, i, 0, i) for i in range(3)]
    assert contract([g], [r], wiring) == 27
    with pytest.raises(CapExceeded):
        contract([g], [r], wiring, cap=26)


def test_contraction_preserved_sample_instance():
    r = Signature(RECOGNIZER, 3, 2, [1, 0, 1, 0, 1, 1, 1, 1, 2])
    e3 = Signature(GENERATOR, 3, 1, [0, 0, 1])
    cert = make_certificate([r], [e3, e3])
    wiring = [(0, 0, 0, 0), (1, 0, 0, 1)]
    assert cert.reduced_generators[0].values == (1, 1)
    assert contract([e3, e3], [r], wiring) == 2
    assert contract(cert.reduced_generators, cert.reduced_recognizers, wiring) == 2
    assert contraction_preserved(([e3, e3], [r]), (cert.reduced_generators, cert.reduced_recognizers), wiring)


def test_contraction_preserved_identity_transform():
    r = Signature(RECOGNIZER, 2, 2, [1, 2, 3, 5])
    g = Signature(GENERATOR, 2, 2, [1, -1, 0, 2])
    cert = make_certificate([r], [g])
    wiring = [(0, 0, 0, 1), (0, 1, 0, 0)]
    assert contraction_preserved(([g], [r]), (cert.reduced_generators, cert.reduced_recognizers), wiring)
