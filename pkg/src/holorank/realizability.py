"""Realizability of signatures on a given rank-2 basis, and the collapse verifier.

Whether a standard signature comes from a matchgate is decided by the
matchgate identities (``matchgate.matchgate_identities``).  For a 2 x k
basis a recognizer's standard signature is unique and is solved for; for
bases with more rows the caller supplies candidate standard signatures
and they are checked.
"""
from __future__ import annotations

from dataclasses import dataclass, field
from typing import Sequence

from .errors import DimensionError
from .linalg import Mat, rank, right_inverse
from .matchgate import basis_size, first_identity_violation, parity_condition
from .reduction import NotReducible, ReductionCertificate, Trivial, lift_basis, make_certificate, verify_lift
from .signature import (
    GENERATOR,
    RECOGNIZER,
    Signature,
    apply_basis_generator,
    apply_basis_recognizer,
    apply_matrix,
    is_degenerate,
)


@dataclass
class Verdict:
    index: int
    role: str
    ok: bool
    failure: dict | None = None
    standard: Signature | None = None

    def to_json(self) -> dict:
        return {"index": self.index, "role": self.role, "ok": self.ok, "failure": self.failure}


@dataclass
class SimultaneousReport:
    verdicts: list
    overall: bool

    def to_json(self) -> dict:
        return {"signatures": [v.to_json() for v in self.verdicts], "overall": self.overall}


def _oracle_failure(std: Signature) -> dict | None:
    if not parity_condition(std):
        return {"stage": "parity", "detail": "nonzero entries of both parities"}
    bad = first_identity_violation(std)
    if bad is not None:
        return {"stage": "identities", "detail": f"identity fails for bit strings {bad[0]} and {bad[1]}"}
    return None


def generator_realizable_on(g: Signature, m: Mat) -> tuple[Signature, bool]:
    """Standard signature M^(n) g and whether it passes the matchgate identities."""
    basis_size(m)
    std = apply_basis_generator(g, m)
    return std, _oracle_failure(std) is None


def recognizer_realizable_on_size1(r: Signature, m: Mat) -> tuple[Signature | None, bool]:
    """Unique standard signature of r on a rank-2, 2 x k basis.

    Returns (std, identities_ok), or (None, False) when r is not in the row
    space of M^(n).
    """
    if m.rows != 2:
        raise DimensionError(f"expected a 2 x k basis, got {m.rows} rows")
    if r.k != m.cols:
        raise DimensionError(f"recognizer on domain {r.k} vs basis with {m.cols} columns")
    n_inv = right_inverse(m)
    if n_inv is None:
        raise ValueError("basis must have rank 2")
    std = apply_matrix(r, n_inv)
    if apply_basis_recognizer(std, m) != r:
        return None, False
    return std, _oracle_failure(std) is None


def _check_recognizer(i, r, m, supplied):
    if m.rows == 2:
        std, _ = recognizer_realizable_on_size1(r, m)
        if std is None:
            return Verdict(i, RECOGNIZER, False, {"stage": "row_space", "detail": "no standard signature maps onto it"})
    else:
        std = supplied
        if std.kind != RECOGNIZER or std.k != m.rows or std.n != r.n:
            raise DimensionError(f"candidate standard signature {i} has the wrong shape")
        if apply_basis_recognizer(std, m) != r:
            return Verdict(i, RECOGNIZER, False, {"stage": "standard_mismatch",
                                                  "detail": "candidate standard signature does not map onto it"})
    failure = _oracle_failure(std)
    return Verdict(i, RECOGNIZER, failure is None, failure, std)


def simultaneous_check(
    recognizers: Sequence[Signature],
    generators: Sequence[Signature],
    m: Mat,
    standard_recognizers: Sequence[Signature] | None = None,
) -> SimultaneousReport:
    """Per-signature realizability on the common basis ``m``.

    With 2 rows recognizers are decided outright; with 2^l > 2 rows the
    candidate standard signatures in ``standard_recognizers`` are verified.
    """
    basis_size(m)
    if rank(m) != 2:
        raise ValueError("basis must have rank 2")
    if m.rows > 2 and recognizers:
        if standard_recognizers is None or len(standard_recognizers) != len(recognizers):
            raise ValueError("bases with more than 2 rows need one candidate standard signature per recognizer")
    verdicts = []
    for i, r in enumerate(recognizers):
        verdicts.append(_check_recognizer(i, r, m, None if m.rows == 2 else standard_recognizers[i]))
    for j, g in enumerate(generators):
        std, _ = generator_realizable_on(g, m)
        failure = _oracle_failure(std)
        verdicts.append(Verdict(j, GENERATOR, failure is None, failure, std))
    return SimultaneousReport(verdicts, all(v.ok for v in verdicts))


@dataclass
class CollapseReport:
    status: str  # "pass", "trivial" or "fail"
    failed_stage: str | None = None
    detail: str | None = None
    certificate: ReductionCertificate | None = None
    verdicts: list = field(default_factory=list)
    lifted_basis: Mat | None = None

    @property
    def overall(self) -> bool:
        return self.status == "pass"


def _degenerate_or_scalar(s: Signature) -> bool:
    return s.n == 0 or is_degenerate(s)


def collapse_verify(
    recognizers: Sequence[Signature],
    generators: Sequence[Signature],
    m: Mat,
    candidate: Mat,
    standard_recognizers: Sequence[Signature] | None = None,
) -> CollapseReport:
    """Check that an instance on a rank-2 basis ``m`` collapses onto ``candidate``.

    Steps: reduce to domain 2, confirm (alpha_sigma alpha_tau) X = m, stop
    as trivial when every reduced generator is degenerate, check the reduced
    instance on ``candidate``, then check the original instance on the
    lifted basis candidate . X.  ``standard_recognizers`` are candidate
    standard signatures of the reduced recognizers, needed only when
    ``candidate`` has more than 2 rows.
    """
    basis_size(m)
    if rank(m) != 2 or rank(candidate) != 2:
        raise ValueError("both bases must have rank 2")
    if candidate.cols != 2:
        raise DimensionError("candidate basis must have 2 columns")
    cert = make_certificate(recognizers, generators)
    if isinstance(cert, Trivial):
        return CollapseReport("trivial", detail=cert.reason)
    if isinstance(cert, NotReducible):
        return CollapseReport("fail", "reduction", f"{cert.stage}: {cert.detail}")
    if m.cols != cert.x.cols:
        raise DimensionError("basis and signatures disagree on the domain size")
    pair = m.select_columns([cert.sigma - 1, cert.tau - 1])
    if pair @ cert.x != m:
        return CollapseReport("fail", "basis_factorization",
                              "the selected columns of the basis do not reproduce it through X", cert)
    if all(_degenerate_or_scalar(g) for g in cert.reduced_generators):
        return CollapseReport("trivial", detail="all reduced generators are degenerate", certificate=cert)
    report = simultaneous_check(cert.reduced_recognizers, cert.reduced_generators, candidate, standard_recognizers)
    if not report.overall:
        bad = next(v for v in report.verdicts if not v.ok)
        return CollapseReport("fail", "realizability",
                              f"reduced {bad.role} {bad.index}: {bad.failure['stage']}", cert, report.verdicts)
    lifted = lift_basis(candidate, cert)
    std_r = [v.standard for v in report.verdicts if v.role == RECOGNIZER]
    std_g = [v.standard for v in report.verdicts if v.role == GENERATOR]
    if not verify_lift(recognizers, generators, std_r, std_g, lifted):
        return CollapseReport("fail", "lift", "original instance is not realized on the lifted basis",
                              cert, report.verdicts, lifted)
    return CollapseReport("pass", certificate=cert, verdicts=report.verdicts, lifted_basis=lifted)
