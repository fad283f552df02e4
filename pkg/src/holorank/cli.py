"""Command-line front end.

Every subcommand reads JSON files and prints one JSON document.  Exit
codes: 0 success/true, 1 property false, 2 input or validation error,
3 enumeration cap exceeded.
"""
from __future__ import annotations

import argparse
import json
import random
import sys
from pathlib import Path

from . import matchgate, signature
from .errors import CapExceeded, HolorankError
from .instances import closed_instance, gate_instance, roundtrip_instance, trivial_instance
from .linalg import Mat
from .matchgate import holant, holant_theorem_check, matchgate_identities, perfmatch, standard_signature
from .realizability import collapse_verify
from .reduction import NotReducible, Trivial, lift_basis, make_certificate, verify_lift
from .scalar import format_scalar
from .serialize import (
    SchemaError,
    certificate_from_json,
    certificate_to_json,
    dumps,
    gate_from_json,
    grid_from_json,
    instance_from_json,
    instance_to_json,
    mat_from_json,
    mat_to_json,
    signature_from_json,
    signature_to_json,
)
from .signature import factor, is_degenerate, restrict

EXIT_OK, EXIT_FALSE, EXIT_INPUT, EXIT_CAP = 0, 1, 2, 3


def _load(path: str):
    try:
        text = sys.stdin.read() if path == "-" else Path(path).read_text(encoding="utf-8")
    except OSError as exc:
        raise SchemaError(f"cannot read {path}: {exc.strerror}") from None
    try:
        return json.loads(text)
    except json.JSONDecodeError as exc:
        raise SchemaError(f"{path}: malformed JSON ({exc.msg} at line {exc.lineno})") from None


def _basis(path: str | None) -> Mat | None:
    return None if path is None else mat_from_json(_load(path))


def cmd_degenerate(args):
    s = signature_from_json(_load(args.sig))
    d = is_degenerate(s)
    return {"degenerate": d}, EXIT_OK if d else EXIT_FALSE


def cmd_factor(args):
    s = signature_from_json(_load(args.sig))
    vs = factor(s)
    if vs is None:
        return {"factors": None}, EXIT_FALSE
    return {"factors": [[format_scalar(x) for x in v] for v in vs]}, EXIT_OK


def cmd_restrict(args):
    s = signature_from_json(_load(args.sig))
    try:
        keep = [int(x) for x in args.keep.split(",")]
    except ValueError:
        raise SchemaError(f"--keep must be comma-separated integers, got {args.keep!r}") from None
    return signature_to_json(restrict(s, keep)), EXIT_OK


def cmd_reduce(args):
    recs, gens = instance_from_json(_load(args.instance))
    cert = make_certificate(recs, gens)
    if isinstance(cert, Trivial):
        return {"status": "trivial", "reason": cert.reason}, EXIT_FALSE
    if isinstance(cert, NotReducible):
        return {"status": "not_reducible", "stage": cert.stage, "reason": cert.detail}, EXIT_FALSE
    return {"status": "certificate", **certificate_to_json(cert)}, EXIT_OK


def cmd_lift(args):
    cert = certificate_from_json(_load(args.certificate))
    return mat_to_json(lift_basis(_basis(args.basis), cert)), EXIT_OK


def cmd_verify_lift(args):
    recs, gens = instance_from_json(_load(args.instance))
    std_obj = _load(args.standards)
    std_r = [signature_from_json(s) for s in std_obj.get("recognizers", [])]
    std_g = [signature_from_json(s) for s in std_obj.get("generators", [])]
    ok = verify_lift(recs, gens, std_r, std_g, _basis(args.basis))
    return {"verified": ok}, EXIT_OK if ok else EXIT_FALSE


def cmd_signature(args):
    return signature_to_json(standard_signature(gate_from_json(_load(args.gate)))), EXIT_OK


def cmd_perfmatch(args):
    return {"perfmatch": format_scalar(perfmatch(gate_from_json(_load(args.gate))))}, EXIT_OK


def cmd_identities(args):
    ok = matchgate_identities(signature_from_json(_load(args.sig)))
    return {"identities": ok}, EXIT_OK if ok else EXIT_FALSE


def _generator_sigs(obj):
    sigs = obj.get("generator_signatures")
    return None if sigs is None else [signature_from_json(s) for s in sigs]


def cmd_holant(args):
    obj = _load(args.grid)
    h = holant(grid_from_json(obj), _basis(args.basis), _generator_sigs(obj))
    return {"holant": format_scalar(h)}, EXIT_OK


def cmd_holant_check(args):
    obj = _load(args.grid)
    res = holant_theorem_check(grid_from_json(obj), _basis(args.basis), _generator_sigs(obj))
    out = {"holant": format_scalar(res.holant), "perfmatch": format_scalar(res.perfmatch), "equal": res.equal}
    return out, EXIT_OK if res.equal else EXIT_FALSE


def cmd_collapse_verify(args):
    recs, gens = instance_from_json(_load(args.instance))
    std_r = None
    if args.standards is not None:
        std_r = [signature_from_json(s) for s in _load(args.standards).get("recognizers", [])]
    rep = collapse_verify(recs, gens, _basis(args.basis), _basis(args.candidate), std_r)
    out = {
        "status": rep.status,
        "failed_stage": rep.failed_stage,
        "detail": rep.detail,
        "overall": rep.overall,
        "signatures": [v.to_json() for v in rep.verdicts],
        "lifted_basis": None if rep.lifted_basis is None else mat_to_json(rep.lifted_basis),
    }
    if rep.certificate is not None:
        out["sigma"], out["tau"] = rep.certificate.sigma, rep.certificate.tau
    return out, EXIT_OK if rep.status == "pass" else EXIT_FALSE


def cmd_random_instance(args):
    rng = random.Random(args.seed)
    wiring = None
    if args.family == "roundtrip":
        inst = roundtrip_instance(rng, args.ell, args.k)
    elif args.family == "closed":
        inst, wiring = closed_instance(rng, args.ell, args.k)
    elif args.family == "gates":
        inst = gate_instance(rng, args.ell, args.k)
    else:
        inst = trivial_instance(rng, args.ell, args.k)
    bundle = {
        "seed": args.seed,
        "family": args.family,
        "instance": instance_to_json(inst.recognizers, inst.generators),
        "basis": mat_to_json(inst.basis),
        "standards": instance_to_json(inst.standard_recognizers, inst.standard_generators),
    }
    if wiring is not None:
        bundle["connections"] = [list(c) for c in wiring]
    cert = make_certificate(inst.recognizers, inst.generators)
    if not isinstance(cert, (Trivial, NotReducible)):
        bundle["candidate"] = mat_to_json(inst.basis.select_columns([cert.sigma - 1, cert.tau - 1]))
    if args.out is not None:
        out = Path(args.out)
        out.mkdir(parents=True, exist_ok=True)
        for key in ("instance", "basis", "standards", "candidate"):
            if key in bundle:
                (out / f"{key}.json").write_text(dumps(bundle[key]), encoding="utf-8")
    return bundle, EXIT_OK


def build_parser() -> argparse.ArgumentParser:
    p = argparse.ArgumentParser(prog="holorank", description=__doc__.splitlines()[0])
    p.add_argument("--cap", type=int, default=None,
                   help="override enumeration limits (PerfMatch vertices, contraction terms, dense entries)")
    sub = p.add_subparsers(dest="command", required=True)

    def add(name, fn, *positional, help=None):
        sp = sub.add_parser(name, help=help)
        for arg in positional:
            sp.add_argument(arg)
        sp.set_defaults(func=fn)
        return sp

    add("degenerate", cmd_degenerate, "sig", help="test whether a signature is an outer product")
    add("factor", cmd_factor, "sig", help="factor a degenerate signature")
    add("restrict", cmd_restrict, "sig", help="restrict a signature to a subset of the domain").add_argument(
        "--keep", required=True, help="comma-separated 1-based domain values")
    add("reduce", cmd_reduce, "instance", help="reduce an instance to domain 2")
    add("lift", cmd_lift, "certificate", help="lift a domain-2 basis through a certificate").add_argument(
        "--basis", required=True)
    sp = add("verify-lift", cmd_verify_lift, "instance", help="check an instance against standard signatures")
    sp.add_argument("--basis", required=True)
    sp.add_argument("--standards", required=True)
    add("signature", cmd_signature, "gate", help="standard signature of a gate")
    add("perfmatch", cmd_perfmatch, "gate", help="weighted perfect-matching sum of a gate graph")
    add("identities", cmd_identities, "sig", help="parity condition and matchgate identities")
    add("holant", cmd_holant, "grid", help="Holant value of a matchgrid").add_argument("--basis")
    add("holant-check", cmd_holant_check, "grid", help="compare Holant with PerfMatch of the grid graph").add_argument(
        "--basis")
    sp = add("collapse-verify", cmd_collapse_verify, "instance", help="verify a collapse onto a candidate basis")
    sp.add_argument("--basis", required=True)
    sp.add_argument("--candidate", required=True)
    sp.add_argument("--standards", help="candidate standard signatures of the reduced recognizers")
    sp = sub.add_parser("random-instance", help="emit a seeded random instance")
    sp.add_argument("--seed", type=int, required=True)
    sp.add_argument("--family", choices=["roundtrip", "closed", "gates", "trivial"], default="roundtrip")
    sp.add_argument("--ell", type=int, choices=[1, 2], default=1)
    sp.add_argument("--k", type=int, default=3)
    sp.add_argument("--out", help="also write instance/basis/standards/candidate JSON files here")
    sp.set_defaults(func=cmd_random_instance)
    return p


def main(argv=None) -> int:
    parser = build_parser()
    args = parser.parse_args(argv)
    saved = matchgate.PERFMATCH_CAP, matchgate.CONTRACTION_CAP, signature.MAX_ENTRIES
    if args.cap is not None:
        matchgate.PERFMATCH_CAP = matchgate.CONTRACTION_CAP = signature.MAX_ENTRIES = args.cap
    try:
        out, code = args.func(args)
    except CapExceeded as exc:
        out, code = {"error": str(exc), "kind": "cap_exceeded"}, EXIT_CAP
    except (SchemaError, HolorankError, ValueError, TypeError, KeyError, AttributeError) as exc:
        out, code = {"error": str(exc), "kind": type(exc).__name__}, EXIT_INPUT
    finally:
        matchgate.PERFMATCH_CAP, matchgate.CONTRACTION_CAP, signature.MAX_ENTRIES = saved
    sys.stdout.write(dumps(out))
    return code


if __name__ == "__main__":
    raise SystemExit(main())
