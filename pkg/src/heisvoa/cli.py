"""Command-line interface: JSON documents in, canonical JSON (or DOT) out."""

from __future__ import annotations

import argparse
import contextlib
import json
import random
import sys

from . import linalg as la
from . import sampling as sm
from .conformal import (
    IsotropicClass,
    ValueClass,
    ZeroClass,
    central_charge,
    classify_moduli,
    fock_central_charge,
    is_automorphism,
)
from .errors import HeisVOAError
from .fock import QuadLin, mutated_linear_sign, virasoro_mode
from .orbits import classify, enumerate_labels, witness, witness_residuals
from .poset import hasse
from .scalars import decode_scalar, encode_scalar, using_tolerance
from .semiconformal import (
    ScPair,
    commutant_weight1,
    complement,
    double_commutant_weight1,
    fock_semiconformal_check,
    is_semiconformal,
    maximal_chain,
)
from .serialization import (
    decode_matrix,
    decode_vector,
    dumps,
    encode_matrix,
    encode_vector,
    fock_from_json,
    fock_to_json,
    pair_from_json,
    pair_to_json,
    quadlin_from_json,
)
from . import verify as verify_mod

MUTATIONS = ("sign-of-linear-term",)


def _parse_h(text: str, backend: str) -> tuple:
    text = text.strip()
    if text.startswith("["):
        items = json.loads(text)
    else:
        items = [t for t in text.split(",") if t.strip()]
    return tuple(decode_scalar(x.strip() if isinstance(x, str) else x, backend) for x in items)


def _backend(args, doc=None) -> str:
    if args.backend:
        return args.backend
    if isinstance(doc, dict) and doc.get("backend") in ("exact", "approx"):
        return doc["backend"]
    return "exact"


def _read(args):
    if args.input in (None, "-"):
        return json.load(sys.stdin)
    with open(args.input) as fh:
        return json.load(fh)


def _h_from_flags(args, backend: str, rng: random.Random | None = None, required: bool = True):
    if args.h is not None:
        h = _parse_h(args.h, backend)
        if args.dim is not None and args.dim != len(h):
            raise HeisVOAError(f"--dim {args.dim} disagrees with --h of length {len(h)}")
        return h
    if rng is not None and args.dim is not None:
        return la.convert(sm.rational_vector(rng, args.dim, nonzero=True), backend)
    if required:
        raise HeisVOAError("--h is required")
    return None


def _pair_doc(doc, backend: str) -> ScPair:
    body = doc.get("pair", doc)
    return pair_from_json(body, backend)


def _label_json(label) -> dict:
    out = {"family": label.family, "k": label.k}
    if label.y is not None:
        out["y"] = encode_scalar(label.y)
    return out


def _emit(obj):
    sys.stdout.write(obj if isinstance(obj, str) else dumps(obj))


# --- commands -----------------------------------------------------------------

def cmd_check(args) -> int:
    doc = _read(args)
    p = _pair_doc(doc, _backend(args, doc))
    ok = is_semiconformal(p.A, p.B, p.h)
    result = {"semiconformal": ok}
    if args.fock and la.is_symmetric(p.A):
        result["fock"] = fock_semiconformal_check(p, args.weight_bound)
    _emit(result)
    return 0 if ok else 1


def cmd_classify(args) -> int:
    doc = _read(args)
    _emit(_label_json(classify(_pair_doc(doc, _backend(args, doc)))))
    return 0


def cmd_labels(args) -> int:
    backend = _backend(args)
    h = _h_from_flags(args, backend)
    fams = enumerate_labels(len(h), h)
    _emit(
        [
            {
                "family": f.family,
                "k": list(f.ks),
                "parametric": f.parametric,
                "excluded_y": [encode_scalar(y) for y in f.excluded_y],
            }
            for f in fams
        ]
    )
    return 0


def cmd_commutant(args) -> int:
    doc = _read(args)
    p = _pair_doc(doc, _backend(args, doc))
    _emit(
        {
            "commutant": [encode_vector(v) for v in commutant_weight1(p).basis],
            "double_commutant": [encode_vector(v) for v in double_commutant_weight1(p).basis],
        }
    )
    return 0


def cmd_complement(args) -> int:
    doc = _read(args)
    _emit(pair_to_json(complement(_pair_doc(doc, _backend(args, doc)))))
    return 0


def cmd_chain(args) -> int:
    backend = _backend(args)
    h = _h_from_flags(args, backend, random.Random(args.seed))
    chain = maximal_chain(len(h), h)
    if args.format == "dot":
        _emit(hasse(chain).to_dot())
    else:
        _emit([pair_to_json(p) for p in chain])
    return 0


def cmd_poset(args) -> int:
    doc = _read(args)
    backend = _backend(args, doc)
    items = doc["pairs"] if isinstance(doc, dict) else doc
    pairs = []
    for i, item in enumerate(items):
        try:
            pairs.append(pair_from_json(item, backend))
        except (KeyError, ValueError) as exc:
            raise HeisVOAError(f"pair {i}: {exc}") from exc
    g = hasse(pairs)
    _emit(g.to_dot() if args.format == "dot" else g.to_json())
    return 0


def cmd_charge(args) -> int:
    doc = _read(args) if args.input else None
    backend = _backend(args, doc)
    if doc is None:
        W = QuadLin.omega(_h_from_flags(args, backend), backend)
        c = central_charge(W)
    elif "S" in doc:
        W = quadlin_from_json(doc, backend)
        c = central_charge(W)
    else:
        p = _pair_doc(doc, backend)
        W = p.quadlin
        c = central_charge(p)
    _emit({"charge": encode_scalar(c), "fock": encode_scalar(fock_central_charge(W))})
    return 0


def cmd_moduli(args) -> int:
    h = _h_from_flags(args, _backend(args))
    cls = classify_moduli(h)
    if isinstance(cls, ZeroClass):
        out = {"class": "zero"}
    elif isinstance(cls, IsotropicClass):
        out = {"class": "isotropic"}
    else:
        assert isinstance(cls, ValueClass)
        out = {"class": "value", "s": encode_scalar(cls.s)}
    _emit(out)
    return 0


def cmd_aut_check(args) -> int:
    doc = _read(args)
    backend = _backend(args, doc)
    Q = decode_matrix(doc["Q"], backend)
    h = decode_vector(doc["h"], backend) if "h" in doc else _h_from_flags(args, backend)
    ok = is_automorphism(Q, h)
    _emit({"automorphism": ok})
    return 0 if ok else 1


def cmd_fock_apply(args) -> int:
    doc = _read(args)
    backend = _backend(args, doc)
    W = quadlin_from_json(doc["W"], backend)
    v = fock_from_json(doc["v"], backend)
    _emit(fock_to_json(virasoro_mode(W, int(doc["m"]), v)))
    return 0


def cmd_witness(args) -> int:
    doc = _read(args)
    backend = _backend(args, doc)
    p1, p2 = pair_from_json(doc["p1"], backend), pair_from_json(doc["p2"], backend)
    Q = witness(p1, p2)
    res = witness_residuals(Q, p1, p2)
    _emit({"Q": encode_matrix(Q.matrix), "residuals": {k: float(v) for k, v in sorted(res.items())}})
    return 0


def cmd_verify(args) -> int:
    ctx = mutated_linear_sign() if args.mutate == "sign-of-linear-term" else contextlib.nullcontext()
    with ctx:
        report, timings = verify_mod.run(args.seed, args.max_dim, args.cases, args.only)
    _emit(report)
    total = sum(timings.values())
    failed = [r["property"] for r in report if r["failures"]]
    for r in report:
        status = "FAIL" if r["failures"] else "ok"
        print(f"{status:4} {r['property']} cases={r['cases']} {timings[r['property']]:.2f}s", file=sys.stderr)
    print(f"{len(report) - len(failed)}/{len(report)} properties passed in {total:.2f}s", file=sys.stderr)
    return 1 if failed else 0


COMMANDS = {
    "check": (cmd_check, "test the semi-conformal matrix conditions of a pair"),
    "classify": (cmd_classify, "orbit label of a pair under the stabiliser of h"),
    "labels": (cmd_labels, "orbit families and their k ranges for --h"),
    "commutant": (cmd_commutant, "weight-one commutant and double commutant"),
    "complement": (cmd_complement, "the pair of omega_h - omega'"),
    "chain": (cmd_chain, "maximal chain from coordinate flags"),
    "poset": (cmd_poset, "Hasse diagram of a list of pairs"),
    "charge": (cmd_charge, "central charge with its Fock-space oracle"),
    "moduli": (cmd_moduli, "moduli class of omega_h"),
    "aut-check": (cmd_aut_check, "whether Q is orthogonal and fixes h"),
    "fock-apply": (cmd_fock_apply, "apply L(m) of a weight-two vector to a Fock vector"),
    "witness": (cmd_witness, "orthogonal map carrying one pair to another"),
    "verify": (cmd_verify, "run the seeded property suites"),
}


def build_parser() -> argparse.ArgumentParser:
    common = argparse.ArgumentParser(add_help=False)
    common.add_argument("--backend", choices=("exact", "approx"), help="scalar backend (default: document field or exact)")
    common.add_argument("--epsilon", type=float, default=1e-9, help="tolerance for approximate comparisons")
    common.add_argument("--seed", type=int, default=0)
    common.add_argument("--dim", type=int)
    common.add_argument("--h", help='shift vector, e.g. "1,0" or "1,i" or a JSON array')

    parser = argparse.ArgumentParser(prog="heisvoa", description=__doc__)
    sub = parser.add_subparsers(dest="command", required=True)
    for name, (_, help_text) in COMMANDS.items():
        sp = sub.add_parser(name, parents=[common], help=help_text)
        if name not in ("labels", "moduli", "chain", "verify"):
            sp.add_argument("input", nargs="?", help="JSON document (default: stdin)")
        if name == "check":
            sp.add_argument("--fock", action="store_true", help="also run the Fock-space check")
            sp.add_argument("--weight-bound", type=int, default=4)
        if name in ("chain", "poset"):
            sp.add_argument("--format", choices=("json", "dot"), default="json")
        if name == "verify":
            sp.add_argument("--max-dim", type=int, default=3)
            sp.add_argument("--cases", type=int, help="cap on cases per property")
            sp.add_argument("--only", action="append", help="run properties with this name prefix")
            sp.add_argument("--mutate", choices=MUTATIONS, help="inject a known bug to test oracle sensitivity")
    return parser


def main(argv=None) -> int:
    args = build_parser().parse_args(argv)
    handler = COMMANDS[args.command][0]
    try:
        with using_tolerance(args.epsilon):
            return handler(args)
    except (HeisVOAError, ValueError, KeyError, json.JSONDecodeError) as exc:
        print(json.dumps({"error": type(exc).__name__, "message": str(exc)}), file=sys.stderr)
        return 1


if __name__ == "__main__":
    sys.exit(main())
