import json
import random

import pytest
from hypothesis import given, settings, strategies as st

from holorank.errors import DimensionError
from holorank.instances import gate_instance, random_invertible, random_outerplanar_gate, random_rank2_basis, trivial_instance
from holorank.linalg import Mat
from holorank.matchgate import grouped_standard
from holorank.realizability import (
    collapse_verify,
    generator_realizable_on,
    recognizer_realizable_on_size1,
    simultaneous_check,
)
from holorank.reduction import verify_lift
from holorank.signature import GENERATOR, RECOGNIZER, Signature, apply_matrix, from_factors

M = Mat.from_rows([[1, 0, 1], [0, 1, 1]])
R_SAMPLE = Signature(RECOGNIZER, 3, 2, [1, 0, 1, 0, 1, 1, 1, 1, 2])
E1E1 = from_factors([[1, 0, 0], [1, 0, 0]], GENERATOR)
E3 = Signature(GENERATOR, 3, 1, [0, 0, 1])


def test_generator_examples():
    std, ok = generator_realizable_on(E3, M)
    assert std.values == (1, 1) and not ok
    std, ok = generator_realizable_on(E1E1, M)
    assert std.values == (1, 0, 0, 0) and ok
    std, ok = generator_realizable_on(Signature(GENERATOR, 3, 2, [0] * 9), M)
    assert std.is_zero() and ok


def test_generator_dimension_errors():
    with pytest.raises(DimensionError):
        generator_realizable_on(Signature(GENERATOR, 2, 1, [1, 0]), M)
    with pytest.raises(ValueError):
        generator_realizable_on(E3, Mat.from_rows([[1, 0, 1], [0, 1, 1], [1, 1, 0]]))


def test_recognizer_size1_examples():
    std, ok = recognizer_realizable_on_size1(R_SAMPLE, M)
    assert std.values == (1, 0, 0, 1) and ok
    e3e3 = from_factors([[0, 0, 1], [0, 0, 1]])
    assert recognizer_realizable_on_size1(e3e3, M) == (None, False)
    ident = Mat.identity(2)
    for vals, expect in [([5, 0, 0, 1], True), ([1, 1, 0, 0], False)]:
        r = Signature(RECOGNIZER, 2, 2, vals)
        std, ok = recognizer_realizable_on_size1(r, ident)
        assert std == r and ok is expect


def test_recognizer_size1_errors():
    with pytest.raises(ValueError):
        recognizer_realizable_on_size1(R_SAMPLE, Mat.from_rows([[1, 1, 1], [2, 2, 2]]))
    with pytest.raises(DimensionError):
        recognizer_realizable_on_size1(R_SAMPLE, Mat.identity(3))


def test_recognizer_size1_soundness_on_gates():
    rng = random.Random(11)
    for _ in range(40):
        k = rng.randint(2, 4)
        m = random_rank2_basis(rng, 2, k)
        gate = random_outerplanar_gate(rng, rng.randint(1, 3), rng.randint(0, 3), RECOGNIZER)
        std = grouped_standard(gate, 1)
        std2, ok = recognizer_realizable_on_size1(apply_matrix(std, m), m)
        assert std2 == std and ok


def test_simultaneous_examples():
    rep = simultaneous_check([R_SAMPLE], [E1E1], M)
    assert rep.overall and [v.ok for v in rep.verdicts] == [True, True]
    rep = simultaneous_check([R_SAMPLE], [E1E1, E3], M)
    assert not rep.overall
    bad = rep.verdicts[-1]
    assert bad.role == GENERATOR and bad.index == 1 and bad.failure["stage"] == "parity"
    assert simultaneous_check([], [], M).overall


def test_simultaneous_json_shape():
    rep = simultaneous_check([R_SAMPLE], [E3], M)
    doc = rep.to_json()
    assert doc["overall"] is False
    assert set(doc["signatures"][0]) == {"index", "role", "ok", "failure"}
    assert doc["signatures"][0]["failure"] is None
    json.dumps(doc)


def test_simultaneous_row_space_failure():
    rep = simultaneous_check([from_factors([[0, 0, 1], [0, 0, 1]])], [], M)
    assert rep.verdicts[0].failure["stage"] == "row_space"


def test_simultaneous_needs_candidates_for_wide_bases():
    inst = gate_instance(random.Random(12), 2, 3)
    with pytest.raises(ValueError):
        simultaneous_check(inst.recognizers, inst.generators, inst.basis)
    rep = simultaneous_check(inst.recognizers, inst.generators, inst.basis, inst.standard_recognizers)
    assert rep.overall
    wrong = [Signature(RECOGNIZER, 4, s.n, [0] * 4 ** s.n) for s in inst.standard_recognizers]
    rep = simultaneous_check(inst.recognizers, inst.generators, inst.basis, wrong)
    assert rep.verdicts[0].failure["stage"] == "standard_mismatch"


@settings(max_examples=25, deadline=None)
@given(st.integers(0, 10 ** 6), st.randoms(use_true_random=False))
def test_simultaneous_permutation_invariant(seed, shuffler):
    inst = gate_instance(random.Random(seed), 1, 3)
    gens = inst.generators + [E3]
    base = simultaneous_check(inst.recognizers, gens, inst.basis)
    ri, gi = list(range(len(inst.recognizers))), list(range(len(gens)))
    shuffler.shuffle(ri)
    shuffler.shuffle(gi)
    rep = simultaneous_check([inst.recognizers[i] for i in ri], [gens[j] for j in gi], inst.basis)
    assert rep.overall == base.overall
    assert sorted(v.ok for v in rep.verdicts) == sorted(v.ok for v in base.verdicts)


def _candidate(inst, cert):
    return inst.basis.select_columns([cert.sigma - 1, cert.tau - 1])


@pytest.mark.parametrize("ell", [1, 2])
def test_collapse_passes_on_gate_instances(ell):
    rng = random.Random(20 + ell)
    for _ in range(15):
        inst = gate_instance(rng, ell, rng.randint(3, 4))
        from holorank.reduction import make_certificate

        cert = make_certificate(inst.recognizers, inst.generators)
        cand = _candidate(inst, cert)
        stds = None if ell == 1 else [apply_matrix(s, Mat.identity(4)) for s in inst.standard_recognizers]
        rep = collapse_verify(inst.recognizers, inst.generators, inst.basis, cand, stds)
        assert rep.status == "pass", rep.detail
        assert rep.lifted_basis == inst.basis
        std_r = [v.standard for v in rep.verdicts if v.role == RECOGNIZER]
        std_g = [v.standard for v in rep.verdicts if v.role == GENERATOR]
        assert verify_lift(inst.recognizers, inst.generators, std_r, std_g, rep.lifted_basis)
        # the 2 x k basis B the instance was built on collapses the same way
        b = inst.extras["collapsed"]
        rep_b = collapse_verify(inst.recognizers, inst.generators, inst.basis, _candidate_b(b, cert))
        assert rep_b.status == "pass", rep_b.detail


def _candidate_b(b, cert):
    return b.select_columns([cert.sigma - 1, cert.tau - 1])


def test_collapse_trivial():
    rng = random.Random(30)
    for _ in range(10):
        inst = trivial_instance(rng, 2, 3)
        cand = random_invertible(rng, 2)
        rep = collapse_verify(inst.recognizers, inst.generators, inst.basis, cand)
        assert rep.status == "trivial" and not rep.overall


def test_collapse_wrong_candidate_fails_at_realizability():
    rng = random.Random(31)
    failures = 0
    for _ in range(20):
        inst = gate_instance(rng, 1, 3)
        rep = collapse_verify(inst.recognizers, inst.generators, inst.basis, random_invertible(rng, 2))
        if rep.status == "fail":
            failures += 1
            assert rep.failed_stage == "realizability"
            bad = [v for v in rep.verdicts if not v.ok]
            assert bad and bad[0].failure["stage"] in ("parity", "identities", "row_space")
    assert failures >= 15


def test_collapse_errors():
    inst = gate_instance(random.Random(32), 2, 3)
    from holorank.reduction import make_certificate

    cand = _candidate(inst, make_certificate(inst.recognizers, inst.generators))
    with pytest.raises(ValueError):
        collapse_verify(inst.recognizers, inst.generators, inst.basis, cand)
    with pytest.raises(ValueError):
        collapse_verify(inst.recognizers, inst.generators, inst.basis, Mat.from_rows([[1, 1], [1, 1]]))
    with pytest.raises(DimensionError):
        collapse_verify(inst.recognizers, inst.generators, inst.basis, M)
