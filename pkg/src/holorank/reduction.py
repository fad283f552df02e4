"""Reduce a domain-k instance on a rank-2 basis to an instance on domain 2.

The pipeline: pick the first non-degenerate recognizer, find a pair
(sigma, tau) whose restriction stays non-degenerate, recover the 2 x k
factor X with (alpha_sigma alpha_tau) X = M from the linear systems
A X = b_w, complete X to an invertible X', and transform every signature by
X' (recognizers) or X'^-1 (generators) before restricting to {1, 2}.
"""
from __future__ import annotations

from dataclasses import dataclass
from itertools import combinations
from typing import Sequence

from .errors import DimensionError, InconsistentSystem, UnderdeterminedSystem
from .linalg import Mat, complete_to_invertible, invert, rank, solve_unique
from .signature import (
    GENERATOR,
    RECOGNIZER,
    Signature,
    apply_basis_generator,
    apply_basis_recognizer,
    apply_matrix,
    is_degenerate,
    restrict,
    vanishes_outside,
)


@dataclass(frozen=True)
class ReductionCertificate:
    sigma: int
    tau: int
    x: Mat
    x_prime: Mat
    x_prime_inv: Mat
    reduced_recognizers: tuple
    reduced_generators: tuple
    pivot_recognizer: int = 0


@dataclass(frozen=True)
class Trivial:
    reason: str = "all recognizers are degenerate"


@dataclass(frozen=True)
class NotReducible:
    stage: str
    detail: str


class SolveFailure(ArithmeticError):
    """Some system A X = b_w has no solution; ``w`` is the 1-based offending column."""

    def __init__(self, w: int):
        super().__init__(f"system for w={w} is inconsistent")
        self.w = w


def find_pair(r: Signature) -> tuple[int, int] | None:
    """Lexicographically first sigma < tau with a non-degenerate restriction to {sigma, tau}."""
    if r.n < 1:
        return None
    for s, t in combinations(range(1, r.k + 1), 2):
        if not is_degenerate(restrict(r, (s, t))):
            return s, t
    return None


def _check(r: Signature, *idx: int) -> None:
    for i in idx:
        if not 1 <= i <= r.k:
            raise ValueError(f"index {i} outside [1, {r.k}]")


def _position_rows(r: Signature, t: int, w: int) -> list:
    # entries with index t fixed to w (0-based t, w), remaining indices lexicographic
    k, n = r.k, r.n
    outer, inner = k ** t, k ** (n - 1 - t)
    return [r.values[(o * k + w) * inner + j] for o in range(outer) for j in range(inner)]


def build_b(r: Signature, w: int) -> list:
    """Column of length n k^(n-1): position-major blocks, each with w at that position."""
    _check(r, w)
    out = []
    for t in range(r.n):
        out.extend(_position_rows(r, t, w - 1))
    return out


def build_A(r: Signature, sigma: int, tau: int) -> Mat:
    if sigma == tau:
        raise ValueError("sigma and tau must differ")
    a, b = build_b(r, sigma), build_b(r, tau)
    return Mat(len(a), 2, (x for pair in zip(a, b) for x in pair))


def solve_X(r: Signature, sigma: int, tau: int) -> Mat:
    """The 2 x k matrix whose column w uniquely solves A X = b_w.

    Raises SolveFailure(w) for the first inconsistent system, and
    ValueError when A has rank below 2.
    """
    a = build_A(r, sigma, tau)
    if rank(a) < 2:
        raise ValueError("A has rank < 2; the restriction to (sigma, tau) is degenerate")
    cols = []
    for w in range(1, r.k + 1):
        try:
            cols.append(solve_unique(a, build_b(r, w)))
        except InconsistentSystem:
            raise SolveFailure(w) from None
        except UnderdeterminedSystem:  # pragma: no cover - excluded by the rank check
            raise ValueError("A has rank < 2") from None
    return Mat(2, r.k, [cols[w][0] for w in range(r.k)] + [cols[w][1] for w in range(r.k)])


def _validate(recognizers: Sequence[Signature], generators: Sequence[Signature]) -> int | None:
    sigs = list(recognizers) + list(generators)
    if any(r.kind != RECOGNIZER for r in recognizers):
        raise ValueError("recognizer list contains a generator")
    if any(g.kind != GENERATOR for g in generators):
        raise ValueError("generator list contains a recognizer")
    ks = {s.k for s in sigs}
    if len(ks) > 1:
        raise DimensionError(f"mixed domain sizes {sorted(ks)}")
    return ks.pop() if ks else None


def make_certificate(recognizers: Sequence[Signature], generators: Sequence[Signature] = ()):
    """Run the forward reduction.

    Returns a ReductionCertificate, Trivial when no recognizer is
    non-degenerate, or NotReducible naming the first failed check.
    """
    k = _validate(recognizers, generators)
    pivot = next((i for i, r in enumerate(recognizers) if r.n >= 1 and not is_degenerate(r)), None)
    if pivot is None:
        return Trivial()
    if k < 2:
        return NotReducible("pair", "domain size 1 has no pair")
    r1 = recognizers[pivot]
    pair = find_pair(r1)
    if pair is None:
        return NotReducible("pair", f"recognizer {pivot} has no non-degenerate restriction to a pair")
    sigma, tau = pair
    try:
        x = solve_X(r1, sigma, tau)
    except SolveFailure as exc:
        return NotReducible("solve", f"A X = b_{exc.w} is inconsistent for recognizer {pivot}")
    xp = complete_to_invertible(x)
    xp_inv = invert(xp)
    reduced_r = []
    for i, r in enumerate(recognizers):
        rp = apply_matrix(r, xp)
        if not vanishes_outside(rp, (1, 2)):
            return NotReducible("vanishing", f"transformed recognizer {i} is nonzero outside {{1, 2}}")
        rc = restrict(rp, (1, 2))
        if apply_matrix(rc, x) != r:
            return NotReducible("factorization", f"recognizer {i} differs from its reduced form times X")
        reduced_r.append(rc)
    reduced_g = [restrict(apply_matrix(g, xp_inv), (1, 2)) for g in generators]
    return ReductionCertificate(sigma, tau, x, xp, xp_inv, tuple(reduced_r), tuple(reduced_g), pivot)


def check_restriction_lemma(r: Signature, cert: ReductionCertificate) -> bool:
    """Restricting r X' to {1, 2} gives the same tensor as restricting r to {sigma, tau}."""
    return restrict(apply_matrix(r, cert.x_prime), (1, 2)) == restrict(r, (cert.sigma, cert.tau))


def lift_basis(m2: Mat, cert: ReductionCertificate) -> Mat:
    """Domain-k basis ``m2 X`` from a 2^l x 2 basis realizing the reduced instance."""
    if m2.cols != 2:
        raise DimensionError(f"expected a basis with 2 columns, got {m2.cols}")
    if rank(m2) < 2:
        raise ValueError("basis must have rank 2")
    return m2 @ cert.x


def verify_lift(
    recognizers: Sequence[Signature],
    generators: Sequence[Signature],
    standard_recognizers: Sequence[Signature],
    standard_generators: Sequence[Signature],
    m: Mat,
) -> bool:
    """True iff R_i = std_R_i M^(n) and M^(n) G_j = std_G_j hold exactly for all i, j."""
    if len(recognizers) != len(standard_recognizers) or len(generators) != len(standard_generators):
        raise DimensionError("signature and standard-signature counts differ")
    for r, std in zip(recognizers, standard_recognizers):
        if std.k != m.rows or r.k != m.cols:
            raise DimensionError("recognizer dimensions do not match the basis")
        if apply_basis_recognizer(std, m) != r:
            return False
    for g, std in zip(generators, standard_generators):
        if std.k != m.rows or g.k != m.cols:
            raise DimensionError("generator dimensions do not match the basis")
        if apply_basis_generator(g, m) != std.with_kind(GENERATOR):
            return False
    return True

