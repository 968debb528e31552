"""JSON codecs for vectors, matrices, pairs, Fock vectors and weight-two data."""

from __future__ import annotations

import json

from . import linalg as la
from .bispace import Subspace
from .fock import FockVector, QuadLin, monomial
from .scalars import decode_scalar, encode_scalar
from .semiconformal import RegPair, ScPair


def encode_vector(v) -> list:
    return [encode_scalar(x) for x in v]


def decode_vector(obj, backend: str | None = None) -> tuple:
    return tuple(decode_scalar(x, backend) for x in obj)


def encode_matrix(M) -> list:
    return [encode_vector(r) for r in M]


def decode_matrix(obj, backend: str | None = None) -> tuple:
    return tuple(decode_vector(r, backend) for r in obj)


def _unify(*parts):
    """Promote mixed exact/approx decoded parts to approx."""
    if any(la.backend_of_entries(p) == "approx" for p in parts):
        return tuple(la.convert(p, "approx") for p in parts)
    return parts


def pair_to_json(p: ScPair) -> dict:
    return {"A": encode_matrix(p.A), "B": encode_vector(p.B), "h": encode_vector(p.h)}


def pair_from_json(obj: dict, backend: str | None = None) -> ScPair:
    A, B, h = decode_matrix(obj["A"], backend), decode_vector(obj["B"], backend), decode_vector(obj["h"], backend)
    return ScPair(*_unify(A, B, h))


def regpair_to_json(r: RegPair) -> dict:
    return {"basis": encode_matrix(r.subspace.matrix), "hprime": encode_vector(r.hprime), "h": encode_vector(r.h)}


def regpair_from_json(obj: dict, backend: str | None = None) -> RegPair:
    basis = decode_matrix(obj["basis"], backend)
    h = decode_vector(obj["h"], backend)
    cols = la.columns(basis) if basis and basis[0] else []
    return RegPair(Subspace(tuple(cols), len(h)), decode_vector(obj["hprime"], backend), h)


def quadlin_to_json(W: QuadLin) -> dict:
    return {"S": encode_matrix(W.S), "b": encode_vector(W.b)}


def quadlin_from_json(obj: dict, backend: str | None = None) -> QuadLin:
    return QuadLin(*_unify(decode_matrix(obj["S"], backend), decode_vector(obj["b"], backend)))


def fock_to_json(v: FockVector) -> list:
    return [
        {"monomial": [list(f) for f in mono], "coefficient": encode_scalar(c)}
        for mono, c in sorted(v.terms.items())
    ]


def fock_from_json(obj: list, backend: str | None = None) -> FockVector:
    out = FockVector()
    for rec in obj:
        mono = monomial(*(tuple(f) for f in rec["monomial"]))
        out = out + FockVector.basis(mono, decode_scalar(rec["coefficient"], backend))
    return out


def dumps(obj) -> str:
    """Canonical JSON text: sorted keys, fixed separators, trailing newline."""
    return json.dumps(obj, sort_keys=True, indent=2) + "\n"
