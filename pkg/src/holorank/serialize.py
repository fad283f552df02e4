"""JSON encodings.  Every number is a canonical scalar string, never a float."""
from __future__ import annotations

import json
from typing import Any

from .linalg import Mat
from .matchgate import GateGraph, Matchgrid
from .reduction import ReductionCertificate
from .scalar import Scalar, as_scalar, format_scalar
from .signature import GENERATOR, RECOGNIZER, Signature


class SchemaError(ValueError):
    pass


def _require(obj: Any, key: str, kind=None):
    if not isinstance(obj, dict) or key not in obj:
        raise SchemaError(f"missing field {key!r}")
    value = obj[key]
    if kind is not None and (not isinstance(value, kind) or (kind is int and isinstance(value, bool))):
        raise SchemaError(f"field {key!r} has the wrong type")
    return value


def scalar_from_json(x) -> Scalar:
    if isinstance(x, bool) or isinstance(x, float):
        raise SchemaError(f"scalars must be strings or integers, got {x!r}")
    try:
        return as_scalar(x)
    except (TypeError, ValueError) as exc:
        raise SchemaError(str(exc)) from None


def signature_to_json(s: Signature) -> dict:
    return {"kind": s.kind, "domain_size": s.k, "arity": s.n, "values": [format_scalar(v) for v in s.values]}


def signature_from_json(obj) -> Signature:
    kind = _require(obj, "kind", str)
    k = _require(obj, "domain_size", int)
    n = _require(obj, "arity", int)
    values = _require(obj, "values", list)
    try:
        return Signature(kind, k, n, [scalar_from_json(v) for v in values])
    except SchemaError:
        raise
    except ValueError as exc:
        raise SchemaError(str(exc)) from None


def mat_to_json(m: Mat) -> dict:
    return {"rows": m.rows, "cols": m.cols, "entries": [[format_scalar(e) for e in m.row(i)] for i in range(m.rows)]}


def mat_from_json(obj) -> Mat:
    rows = _require(obj, "rows", int)
    cols = _require(obj, "cols", int)
    entries = _require(obj, "entries", list)
    if len(entries) != rows or any(not isinstance(r, list) or len(r) != cols for r in entries):
        raise SchemaError(f"entries do not form a {rows}x{cols} matrix")
    return Mat(rows, cols, [scalar_from_json(e) for r in entries for e in r])


def _matrix_only(m: Mat) -> list:
    return [[format_scalar(e) for e in m.row(i)] for i in range(m.rows)]


def _matrix_from_rows(rows) -> Mat:
    if not isinstance(rows, list) or not rows or any(not isinstance(r, list) for r in rows):
        raise SchemaError("expected a non-empty list of rows")
    try:
        return Mat.from_rows([[scalar_from_json(e) for e in r] for r in rows])
    except ValueError as exc:
        raise SchemaError(str(exc)) from None


def instance_from_json(obj) -> tuple[list[Signature], list[Signature]]:
    recs = [signature_from_json(s) for s in obj.get("recognizers", [])] if isinstance(obj, dict) else None
    if recs is None:
        raise SchemaError("instance must be an object")
    gens = [signature_from_json(s) for s in obj.get("generators", [])]
    if any(r.kind != RECOGNIZER for r in recs) or any(g.kind != GENERATOR for g in gens):
        raise SchemaError("signature kinds do not match their lists")
    return recs, gens


def instance_to_json(recognizers, generators) -> dict:
    return {
        "recognizers": [signature_to_json(r) for r in recognizers],
        "generators": [signature_to_json(g) for g in generators],
    }


def certificate_to_json(cert: ReductionCertificate) -> dict:
    return {
        "sigma": cert.sigma,
        "tau": cert.tau,
        "x": _matrix_only(cert.x),
        "x_prime": _matrix_only(cert.x_prime),
        "x_prime_inv": _matrix_only(cert.x_prime_inv),
        "pivot_recognizer": cert.pivot_recognizer,
        "reduced_recognizers": [signature_to_json(s) for s in cert.reduced_recognizers],
        "reduced_generators": [signature_to_json(s) for s in cert.reduced_generators],
    }


def certificate_from_json(obj) -> ReductionCertificate:
    return ReductionCertificate(
        sigma=_require(obj, "sigma", int),
        tau=_require(obj, "tau", int),
        x=_matrix_from_rows(_require(obj, "x")),
        x_prime=_matrix_from_rows(_require(obj, "x_prime")),
        x_prime_inv=_matrix_from_rows(_require(obj, "x_prime_inv")),
        reduced_recognizers=tuple(signature_from_json(s) for s in obj.get("reduced_recognizers", [])),
        reduced_generators=tuple(signature_from_json(s) for s in obj.get("reduced_generators", [])),
        pivot_recognizer=obj.get("pivot_recognizer", 0),
    )


def gate_to_json(g: GateGraph) -> dict:
    return {
        "kind": g.kind,
        "vertices": g.vertex_count,
        "edges": [[u, v, format_scalar(w)] for u, v, w in g.edges],
        "external": list(g.external),
    }


def gate_from_json(obj) -> GateGraph:
    edges = _require(obj, "edges", list)
    if any(not isinstance(e, list) or len(e) != 3 for e in edges):
        raise SchemaError("edges must be [u, v, weight] triples")
    try:
        return GateGraph(
            _require(obj, "vertices", int),
            tuple((int(u), int(v), scalar_from_json(w)) for u, v, w in edges),
            tuple(_require(obj, "external", list)),
            obj.get("kind", GENERATOR),
        )
    except SchemaError:
        raise
    except (TypeError, ValueError) as exc:
        raise SchemaError(str(exc)) from None


def grid_to_json(grid: Matchgrid) -> dict:
    out = {
        "generators": [gate_to_json(g) for g in grid.generators],
        "recognizers": [gate_to_json(r) for r in grid.recognizers],
        "connections": [list(c) for c in grid.connections],
    }
    if grid.bits_per_slot != 1:
        out["bits_per_slot"] = grid.bits_per_slot
    return out


def grid_from_json(obj) -> Matchgrid:
    try:
        return Matchgrid(
            tuple(gate_from_json(g) for g in obj.get("generators", [])),
            tuple(gate_from_json(r) for r in obj.get("recognizers", [])),
            tuple(_require(obj, "connections", list)),
            obj.get("bits_per_slot", 1),
        )
    except SchemaError:
        raise
    except (TypeError, ValueError, AttributeError) as exc:
        raise SchemaError(str(exc)) from None


def dumps(obj) -> str:
    return json.dumps(obj, sort_keys=True, indent=2) + "\n"
