"""Seeded property suites with a machine-readable report.

Each property draws its own ``random.Random`` seeded from ``(seed, name)``
so reruns reproduce the same cases and properties do not interfere.
A report entry is ``{property, cases, failures: [{input, expected, got}]}``.
"""

from __future__ import annotations

import itertools
import random
import time
from dataclasses import dataclass, field
from typing import Callable

from . import linalg as la
from . import sampling as sm
from .bispace import (
    Subspace,
    cayley_orthogonal,
    form,
    hyperbolic_partner,
    orthogonal_complement,
    projection_matrix,
)
from .conformal import (
    apply_orthogonal,
    central_charge,
    classify_moduli,
    degree_operator_agrees,
    fock_central_charge,
    fock_grading_conformal,
    grading_conformal_classify,
    is_automorphism,
)
from .errors import DifferentOrbits, UnclassifiedOrbit
from .fock import FockVector, QuadLin, basis_monomials, mode_apply, virasoro_bracket_defect, virasoro_mode
from .orbits import classify, label_in_range, witness, witness_residuals
from .poset import hasse
from .scalars import Exact, sqrt
from .semiconformal import (
    ScPair,
    commutant_weight1,
    complement,
    fock_commutant_weight1,
    fock_semiconformal_check,
    from_subspace,
    is_semiconformal,
    leq,
    leq_fock_check,
    leq_geometric,
    to_subspace,
)
from .serialization import encode_matrix, encode_vector, pair_to_json, quadlin_to_json


@dataclass
class Outcome:
    cases: int = 0
    failures: list = field(default_factory=list)

    def check(self, ok: bool, input, expected, got):
        self.cases += 1
        if not ok:
            self.failures.append({"input": input, "expected": expected, "got": got})


@dataclass(frozen=True)
class Config:
    seed: int = 0
    max_dim: int = 3
    cases: int | None = None

    def n(self, default: int) -> int:
        return default if self.cases is None else min(default, self.cases)

    def dims(self, lo: int = 1) -> list[int]:
        return list(range(lo, self.max_dim + 1))


PROPERTIES: dict[str, Callable[[random.Random, Config], Outcome]] = {}


def prop(name: str):
    def register(fn):
        PROPERTIES[name] = fn
        return fn

    return register


def _moduli(rng: random.Random, d: int) -> str:
    return rng.choice([m for m in sm.MODULI if d >= 2 or m != "isotropic"])


def _random_pair(rng: random.Random, d: int, h=None) -> ScPair:
    if h is None:
        h = sm.shift(rng, d, _moduli(rng, d))
    return sm.pair(rng, h)


def _comparable(rng: random.Random, d: int, h) -> tuple[ScPair, ScPair]:
    """``p1 <= p2`` from a regular ``S1`` inside a regular ``S2``."""
    S2 = sm.regular_subspace(rng, d, complex_entries=rng.random() < 0.3)
    for _ in range(50):
        k1 = rng.randint(0, S2.k)
        vs = [la.matvec(S2.matrix, sm.rational_vector(rng, S2.k)) for _ in range(k1)]
        if k1 and la.rank(la.from_columns(vs, d)) < k1:
            continue
        S1 = Subspace(tuple(vs), d)
        if S1.k == 0 or la.det(S1.gram):
            return from_subspace(S1, h), from_subspace(S2, h)
    return ScPair.zero(h), from_subspace(S2, h)


# --- scalars ------------------------------------------------------------------

@prop("scalars.field_axioms")
def _field_axioms(rng, cfg):
    out = Outcome()
    for _ in range(cfg.n(1000)):
        a, b, c = (sm.gaussian(rng, 50, 50) for _ in range(3))
        ok = (a + b) + c == a + (b + c) and (a * b) * c == a * (b * c) and a * (b + c) == a * b + a * c
        ok = ok and a + b == b + a and a * b == b * a
        if b:
            ok = ok and (a / b) * b == a
        out.check(ok, [str(a), str(b), str(c)], True, ok)
    return out


@prop("scalars.sqrt_of_squares")
def _sqrt_squares(rng, cfg):
    out = Outcome()
    for _ in range(cfg.n(200)):
        r = sm.gaussian(rng, 20, 20)
        a = r * r
        s = sqrt(a)
        out.check(s * s == a, str(a), str(a), str(s * s))
    return out


# --- bispace ------------------------------------------------------------------

@prop("bispace.projection_identities")
def _projection(rng, cfg):
    out = Outcome()
    for _ in range(cfg.n(100)):
        d = rng.choice(cfg.dims())
        S = sm.regular_subspace(rng, d, complex_entries=rng.random() < 0.4)
        P = projection_matrix(S)
        C = orthogonal_complement(S)
        Pc = projection_matrix(C)
        ok = (
            la.is_zero_matrix(la.sub(la.matmul(P, P), P))
            and la.is_symmetric(P)
            and la.is_zero_matrix(la.sub(la.add(P, Pc), la.identity(d)))
            and C.k + S.k == d
        )
        out.check(ok, encode_matrix(S.matrix) if S.k else [], True, ok)
    return out


@prop("bispace.hyperbolic_partner")
def _partner(rng, cfg):
    out = Outcome()
    dims = cfg.dims(2)
    for _ in range(cfg.n(100) if dims else 0):
        d = rng.choice(dims)
        b = sm.shift(rng, d, "isotropic")
        bp = hyperbolic_partner(b)
        ok = form(bp, bp) == 0 and form(b, bp) == 1
        out.check(ok, encode_vector(b), [0, 1], [str(form(bp, bp)), str(form(b, bp))])
    return out


@prop("bispace.cayley_orthogonal")
def _cayley(rng, cfg):
    out = Outcome()
    for _ in range(cfg.n(100)):
        d = rng.choice(cfg.dims())
        M = sm.antisymmetric(rng, d)
        Q = cayley_orthogonal(M).matrix
        ok = la.is_zero_matrix(la.sub(la.matmul(la.transpose(Q), Q), la.identity(d)))
        out.check(ok, encode_matrix(M), True, ok)
    return out


# --- fock ---------------------------------------------------------------------

@prop("fock.mode_commutators")
def _commutators(rng, cfg):
    out = Outcome()
    d = min(cfg.max_dim, 2)
    basis = [m for w in range(4) for m in basis_monomials(d, w)]
    trials = cfg.n(150)
    for _ in range(trials):
        i, j = rng.randint(1, d), rng.randint(1, d)
        m, n = rng.randint(-3, 3), rng.randint(-3, 3)
        mono = rng.choice(basis)
        v = FockVector.basis(mono)
        lhs = mode_apply(i, m, mode_apply(j, n, v)) - mode_apply(j, n, mode_apply(i, m, v))
        c = m if (i == j and m + n == 0) else 0
        ok = (lhs - Exact(c) * v).is_zero()
        out.check(ok, {"i": i, "j": j, "m": m, "n": n, "monomial": [list(f) for f in mono]}, c, repr(lhs))
    return out


@prop("fock.degree_operator")
def _degree(rng, cfg):
    out = Outcome()
    for _ in range(cfg.n(10)):
        d = rng.choice(cfg.dims())
        h = sm.shift(rng, d, _moduli(rng, d))
        ok = degree_operator_agrees(QuadLin.omega(h), 4)
        out.check(ok, encode_vector(h), True, ok)
    return out


@prop("fock.translation")
def _translation(rng, cfg):
    out = Outcome()
    for d in cfg.dims():
        W = QuadLin.omega([0] * d)
        for i in range(1, d + 1):
            got = virasoro_mode(W, -1, FockVector.basis(((i, 1),)))
            ok = got == FockVector.basis(((i, 2),))
            out.check(ok, {"d": d, "i": i}, f"h{i}(-2)1", repr(got))
    return out


@prop("fock.virasoro_relations")
def _virasoro(rng, cfg):
    out = Outcome()
    for _ in range(cfg.n(3)):
        d = rng.choice(cfg.dims())
        p = _random_pair(rng, d)
        W = p.quadlin
        for m, n in itertools.product(range(-2, 3), repeat=2):
            defect = virasoro_bracket_defect(W, m, n, 3)
            out.check(defect == 0, dict(quadlin_to_json(W), m=m, n=n), 0, defect)
    return out


# --- conformal ----------------------------------------------------------------

@prop("conformal.charge_oracle")
def _charge(rng, cfg):
    out = Outcome()
    for _ in range(cfg.n(50)):
        d = rng.choice(cfg.dims())
        p = _random_pair(rng, d)
        c, f = central_charge(p), fock_central_charge(p.quadlin)
        out.check(c == f, pair_to_json(p), str(c), str(f))
    return out


@prop("conformal.grading_classifier_oracle")
def _grading(rng, cfg):
    out = Outcome()
    for _ in range(cfg.n(30)):
        d = rng.choice(cfg.dims())
        b = sm.rational_vector(rng, d)
        if rng.random() < 0.5:
            S = la.identity(d)
        else:
            X = tuple(sm.rational_vector(rng, d) for _ in range(d))
            S = la.add(X, la.transpose(X))
        W = QuadLin(S, b)
        accepted = grading_conformal_classify(W) is not None
        oracle = fock_grading_conformal(W)
        out.check(accepted == oracle, quadlin_to_json(W), oracle, accepted)
    return out


@prop("conformal.charge_additivity")
def _additivity(rng, cfg):
    out = Outcome()
    for _ in range(cfg.n(100)):
        d = rng.choice(cfg.dims())
        p = _random_pair(rng, d)
        lhs = central_charge(p) + central_charge(complement(p))
        rhs = central_charge(ScPair.top(p.h))
        out.check(lhs == rhs, pair_to_json(p), str(rhs), str(lhs))
    return out


@prop("conformal.moduli_invariance")
def _moduli_inv(rng, cfg):
    out = Outcome()
    for _ in range(cfg.n(50)):
        d = rng.choice(cfg.dims())
        h = sm.shift(rng, d, _moduli(rng, d))
        Q = sm.orthogonal(rng, d)
        a, b = classify_moduli(h), classify_moduli(Q(h))
        out.check(a == b, encode_vector(h), repr(a), repr(b))
    return out


@prop("conformal.stabilizer_closure")
def _closure(rng, cfg):
    out = Outcome()
    for _ in range(cfg.n(30)):
        d = rng.choice(cfg.dims())
        h = sm.shift(rng, d, _moduli(rng, d))
        Q1, Q2 = sm.stabilizer_element(rng, h), sm.stabilizer_element(rng, h)
        ok = is_automorphism(Q1 @ Q2, h) and is_automorphism(Q1.inverse(), h)
        out.check(ok, encode_vector(h), True, ok)
    return out


# --- semiconformal ------------------------------------------------------------

@prop("semiconformal.roundtrip")
def _roundtrip(rng, cfg):
    out = Outcome()
    for _ in range(cfg.n(200)):
        d = rng.choice(cfg.dims())
        h = sm.shift(rng, d, _moduli(rng, d))
        S = sm.regular_subspace(rng, d, complex_entries=rng.random() < 0.3)
        p = from_subspace(S, h)
        r = to_subspace(p)
        ok = r.subspace.same_as(S) and la.is_zero_vector(la.sub(r.hprime, la.matvec(projection_matrix(S), h)))
        out.check(ok, {"basis": encode_matrix(S.matrix) if S.k else [], "h": encode_vector(h)}, True, ok)
    return out


def _pair_sample(rng, cfg, d, h):
    """Mix of comparable, complementary and unrelated pairs."""
    kind = rng.random()
    if kind < 0.4:
        p1, p2 = _comparable(rng, d, h)
        return (p1, p2) if rng.random() < 0.7 else (p2, p1)
    p = sm.pair(rng, h)
    if kind < 0.6:
        return p, complement(p)
    return p, sm.pair(rng, h)


@prop("semiconformal.order_equivalence")
def _order_eq(rng, cfg):
    out = Outcome()
    for _ in range(cfg.n(200)):
        d = rng.choice(cfg.dims())
        h = sm.shift(rng, d, _moduli(rng, d))
        p1, p2 = _pair_sample(rng, cfg, d, h)
        a, b = leq(p1, p2), leq_geometric(to_subspace(p1), to_subspace(p2))
        out.check(a == b, [pair_to_json(p1), pair_to_json(p2)], a, b)
    return out


@prop("semiconformal.fock_equivalence")
def _fock_eq(rng, cfg):
    out = Outcome()
    n = cfg.n(100)
    for t in range(n):
        d = rng.choice(cfg.dims())
        h = sm.shift(rng, d, _moduli(rng, d))
        p = sm.pair(rng, h)
        if t % 2:
            p = sm.perturbed(rng, p)
        a, b = is_semiconformal(p.A, p.B, p.h), fock_semiconformal_check(p, 4)
        out.check(a == b, pair_to_json(p), a, b)
    return out


@prop("semiconformal.order_fock_equivalence")
def _order_fock(rng, cfg):
    out = Outcome()
    for _ in range(cfg.n(100)):
        d = rng.choice(cfg.dims())
        h = sm.shift(rng, d, _moduli(rng, d))
        p1, p2 = _pair_sample(rng, cfg, d, h)
        a, b = leq(p1, p2), leq_fock_check(p1, p2, 4)
        out.check(a == b, [pair_to_json(p1), pair_to_json(p2)], a, b)
    return out


@prop("semiconformal.commutant_oracle")
def _commutant(rng, cfg):
    out = Outcome()
    for _ in range(cfg.n(50)):
        d = rng.choice(cfg.dims())
        p = _random_pair(rng, d)
        a, b = commutant_weight1(p), fock_commutant_weight1(p)
        out.check(a.same_as(b), pair_to_json(p), a.k, b.k)
    return out


@prop("semiconformal.order_axioms")
def _axioms(rng, cfg):
    out = Outcome()
    for _ in range(cfg.n(100)):
        d = rng.choice(cfg.dims())
        h = sm.shift(rng, d, _moduli(rng, d))
        p1, p2 = _comparable(rng, d, h)
        p3 = sm.pair(rng, h) if rng.random() < 0.5 else ScPair.top(h)
        same12 = la.is_zero_matrix(la.sub(p1.A, p2.A)) and la.is_zero_vector(la.sub(p1.B, p2.B))
        ok = leq(p1, p1)
        ok = ok and (not (leq(p1, p2) and leq(p2, p1)) or same12)
        ok = ok and (not (leq(p1, p2) and leq(p2, p3)) or leq(p1, p3))
        ok = ok and (not leq(p1, p2) or same12 or p1.k < p2.k)
        ok = ok and (not leq(p1, p2) or form(p2.B, p1.B) == form(p1.B, p1.B))
        ok = ok and (not leq(p1, p2) or leq(complement(p2), complement(p1)))
        ok = ok and complement(complement(p1)) == p1
        out.check(ok, [pair_to_json(p) for p in (p1, p2, p3)], True, ok)
    return out


# --- orbits -------------------------------------------------------------------

@prop("orbits.range_soundness")
def _ranges(rng, cfg):
    out = Outcome()
    for _ in range(cfg.n(300)):
        d = rng.choice(cfg.dims())
        mod = _moduli(rng, d)
        if rng.random() < 0.5:
            p = sm.pair(rng, sm.shift(rng, d, mod))
        else:
            from .orbits import k_range

            fams = [f for f in sm.families_for(mod) if k_range(f, d)]
            fam = rng.choice(fams)
            p = sm.family_pair(rng, fam, rng.choice(list(k_range(fam, d))), d)
        try:
            lab = classify(p)
            hh = None if la.is_zero_vector(p.h) else form(p.h, p.h)
            ok, got = label_in_range(lab, d, hh), lab.family
        except UnclassifiedOrbit as exc:
            ok, got = False, str(exc)
        out.check(ok, pair_to_json(p), "label in range", got)
    return out


@prop("orbits.invariance")
def _invariance(rng, cfg):
    out = Outcome()
    for _ in range(cfg.n(100)):
        d = rng.choice(cfg.dims())
        p = _random_pair(rng, d)
        Q = sm.stabilizer_element(rng, p.h)
        q = apply_orthogonal(Q, p)
        a, b = classify(p), classify(q)
        out.check(a.same_as(b), {"pair": pair_to_json(p), "Q": encode_matrix(Q.matrix)}, repr(a), repr(b))
    return out


@prop("orbits.witness_soundness")
def _witness(rng, cfg):
    out = Outcome()
    for _ in range(cfg.n(50)):
        d = rng.choice(cfg.dims())
        p = _random_pair(rng, d)
        q = apply_orthogonal(sm.stabilizer_element(rng, p.h), p)
        res = witness_residuals(witness(p, q), p, q)
        worst = max(res.values())
        out.check(worst <= 1e-9, [pair_to_json(p), pair_to_json(q)], "<= 1e-9", res)
    return out


@prop("orbits.separation")
def _separation(rng, cfg):
    out = Outcome()
    for _ in range(cfg.n(100)):
        d = rng.choice(cfg.dims())
        h = sm.shift(rng, d, _moduli(rng, d))
        p, q = sm.pair(rng, h), sm.pair(rng, h)
        if classify(p).same_as(classify(q)):
            continue
        try:
            Q = witness(p, q)
            got = encode_matrix(Q.matrix)
        except DifferentOrbits:
            got = "DifferentOrbits"
        out.check(got == "DifferentOrbits", [pair_to_json(p), pair_to_json(q)], "DifferentOrbits", got)
    return out


# --- cli plumbing -------------------------------------------------------------

@prop("poset.transitive_reduction")
def _poset(rng, cfg):
    out = Outcome()
    for _ in range(cfg.n(10)):
        d = rng.choice(cfg.dims())
        h = sm.shift(rng, d, _moduli(rng, d))
        pairs = [sm.pair(rng, h) for _ in range(rng.randint(2, 8))]
        pairs += [p for p in _comparable(rng, d, h)]
        g = hasse(pairs)
        n = len(g.nodes)
        R = [[i != j and leq(g.nodes[i], g.nodes[j]) for j in range(n)] for i in range(n)]
        # brute force: drop every edge implied by a two-step path
        expected = {(i, j) for i in range(n) for j in range(n) if R[i][j]}
        for i, c, j in itertools.product(range(n), repeat=3):
            if R[i][c] and R[c][j]:
                expected.discard((i, j))
        out.check(set(g.edges) == expected, [pair_to_json(p) for p in g.nodes], sorted(expected), list(g.edges))
    return out


def run(seed: int = 0, max_dim: int = 3, cases: int | None = None, only: list[str] | None = None):
    """Run the registered properties; returns ``(report, seconds per property)``."""
    cfg = Config(seed, max_dim, cases)
    report, timings = [], {}
    for name, fn in PROPERTIES.items():
        if only and not any(name.startswith(o) for o in only):
            continue
        rng = random.Random(f"{seed}:{name}")
        start = time.perf_counter()
        outcome = fn(rng, cfg)
        timings[name] = time.perf_counter() - start
        report.append({"property": name, "cases": outcome.cases, "failures": outcome.failures})
    return report, timings
