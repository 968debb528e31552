"""Acceptance criteria 1-11, each printing one PASS/FAIL line with its runtime."""

import itertools
import random
import time

import pytest

from heisvoa import linalg as la
from heisvoa import sampling as sm
from heisvoa.bispace import Subspace, form, projection_matrix
from heisvoa.conformal import (
    apply_orthogonal,
    central_charge,
    degree_operator_agrees,
    fock_central_charge,
    grading_conformal_classify,
)
from heisvoa.errors import UnclassifiedOrbit
from heisvoa.fock import QuadLin, graded_dim, virasoro_bracket_defect
from heisvoa.orbits import classify, k_range, label_in_range, witness, witness_residuals
from heisvoa.scalars import Exact
from heisvoa.semiconformal import (
    ScPair,
    commutant_weight1,
    complement,
    difference,
    double_commutant_weight1,
    fock_commutant_weight1,
    fock_double_commutant_weight1,
    fock_semiconformal_check,
    from_subspace,
    is_chain,
    is_semiconformal,
    leq,
    leq_fock_check,
    leq_geometric,
    maximal_chain,
    tensor_character_check,
    to_subspace,
)


@pytest.fixture
def report(capsys):
    """Run ``body`` under a time limit and print a single PASS/FAIL line."""

    def _report(number: int, title: str, body, limit: float | None = None):
        start = time.perf_counter()
        problems = body()
        elapsed = time.perf_counter() - start
        if limit is not None and elapsed > limit:
            problems.append(f"runtime {elapsed:.1f}s exceeds {limit:.0f}s")
        status = "PASS" if not problems else "FAIL"
        with capsys.disabled():
            print(f"\n[criterion {number:2d}] {status} {title} ({elapsed:.2f}s)")
            for p in problems[:5]:
                print(f"    {p}")
        assert not problems, problems

    return _report


def _moduli(rng, d):
    return rng.choice(["value", "zero"] + (["isotropic"] if d >= 2 else []))


def test_criterion_01_central_charge(report):
    def body():
        rng = random.Random(101)
        bad = []
        for _ in range(50):
            d = rng.randint(1, 5)
            h = sm.rational_vector(rng, d, bound=5)
            W = QuadLin.omega(h)
            expected = d - 12 * sum((x * x for x in h), Exact(0))
            c, f = central_charge(W), fock_central_charge(W)
            if not (c == expected == f):
                bad.append(f"h={h}: formula {expected}, charge {c}, fock {f}")
        return bad

    report(1, "central charge d - 12<h,h> and Fock L(2) oracle, 50 shifts", body, limit=5)


def test_criterion_02_grading_classifier(report):
    def body():
        rng = random.Random(202)
        bad = []
        candidates = []
        for t in range(100):
            d = rng.randint(1, 3)
            b = sm.rational_vector(rng, d)
            if t % 2 == 0:
                S = la.identity(d)
            else:
                X = tuple(sm.rational_vector(rng, d, bound=2) for _ in range(d))
                S = la.add(X, la.transpose(X))
            candidates.append(QuadLin(S, b))
        for W in candidates:
            is_identity = la.is_zero_matrix(la.sub(W.S, la.identity(W.dim)))
            if (grading_conformal_classify(W) is not None) != is_identity:
                bad.append(f"classifier disagrees with S = I on {W}")
        for W in candidates[:20]:
            accepted = grading_conformal_classify(W) is not None
            if degree_operator_agrees(W, 3) != accepted:
                bad.append(f"Fock L'(0) check disagrees on {W}")
        return bad

    report(2, "grading-preserving classifier accepts exactly S = I; Fock L'(0) on 20", body, limit=30)


def test_criterion_03_semiconformal_oracle(report):
    def body():
        rng = random.Random(303)
        bad = []
        for t in range(100):
            d = rng.randint(1, 3)
            p = sm.pair(rng, sm.shift(rng, d, _moduli(rng, d)))
            if t % 2:
                p = sm.perturbed(rng, p)
            a, b = is_semiconformal(p.A, p.B, p.h), fock_semiconformal_check(p, 4)
            if a != b or a != (t % 2 == 0):
                bad.append(f"matrix {a} vs Fock {b} on {p}")
        return bad

    report(3, "matrix conditions <=> Fock conditions, 100 candidates (50 perturbed)", body, limit=60)


def _ordered_sample(rng, d, h):
    kind = rng.random()
    if kind < 0.5:
        S2 = sm.regular_subspace(rng, d, complex_entries=rng.random() < 0.3)
        for _ in range(20):
            k1 = rng.randint(0, S2.k)
            vs = [la.matvec(S2.matrix, sm.rational_vector(rng, S2.k)) for _ in range(k1)]
            try:
                p1 = from_subspace(Subspace(tuple(vs), d), h)
                break
            except ValueError:
                continue
        else:
            p1 = ScPair.zero(h)
        p2 = from_subspace(S2, h)
        return (p1, p2) if rng.random() < 0.8 else (p2, p1)
    p = sm.pair(rng, h)
    if kind < 0.7:
        return p, complement(p)
    return p, sm.pair(rng, h)


def test_criterion_04_order_oracles(report):
    def body():
        rng = random.Random(404)
        bad = []
        comparable = 0
        for _ in range(100):
            d = rng.randint(1, 3)
            h = sm.shift(rng, d, _moduli(rng, d))
            p1, p2 = _ordered_sample(rng, d, h)
            a = leq(p1, p2)
            b = leq_fock_check(p1, p2, 4)
            c = leq_geometric(to_subspace(p1), to_subspace(p2))
            comparable += a
            if not (a == b == c):
                bad.append(f"matrix {a}, Fock {b}, geometric {c}")
        if not 20 <= comparable <= 80:
            bad.append(f"sample is lopsided: {comparable} comparable of 100")
        return bad

    report(4, "order: matrix <=> Fock <=> geometric, 100 triples", body)


def test_criterion_05_roundtrip(report):
    def body():
        rng = random.Random(505)
        bad = []
        for _ in range(200):
            d = rng.randint(1, 5)
            h = sm.shift(rng, d, _moduli(rng, d))
            S = sm.regular_subspace(rng, d, complex_entries=rng.random() < 0.4)
            r = to_subspace(from_subspace(S, h))
            if not r.subspace.same_as(S) or r.hprime != la.matvec(projection_matrix(S), h):
                bad.append(f"round trip failed for {S}")
        return bad

    report(5, "Reg <-> SymId round trips, 200 regular subspaces", body)


def test_criterion_06_commutant(report):
    def body():
        rng = random.Random(606)
        bad = []
        for _ in range(50):
            d = rng.randint(1, 4)
            p = sm.pair(rng, sm.shift(rng, d, _moduli(rng, d)))
            if not commutant_weight1(p).same_as(fock_commutant_weight1(p)):
                bad.append(f"Ker A differs from ker L'(-1) on {p}")
            total = central_charge(p) + central_charge(complement(p))
            if total != central_charge(ScPair.top(p.h)):
                bad.append(f"charges not additive on {p}")
        return bad

    report(6, "Ker A = weight-one kernel of L'(-1); c' + c'' = c, 50 pairs", body)


def test_criterion_07_virasoro(report):
    def body():
        rng = random.Random(707)
        bad = []
        for d in (1, 2, 3):
            h = sm.shift(rng, d, _moduli(rng, d))
            Ws = [("omega_h", QuadLin.omega(h))]
            Ws += [(f"pair {i}", sm.pair(rng, h, k=rng.randint(1, d)).quadlin) for i in range(3)]
            for name, W in Ws:
                for m, n in itertools.product(range(-3, 4), repeat=2):
                    defect = virasoro_bracket_defect(W, m, n, 5)
                    if defect != 0:
                        bad.append(f"d={d} {name} m={m} n={n}: defect {defect}")
        return bad

    report(7, "Virasoro brackets exact for m,n in [-3,3], weight <= 5, d <= 3", body, limit=120)


def test_criterion_08_orbits(report):
    def body():
        rng = random.Random(808)
        bad = []
        seen = set()
        pairs = []
        for t in range(500):
            d = rng.randint(1, 5)
            mod = sm.MODULI[t % 3] if d >= 2 or t % 3 != 1 else "value"
            if rng.random() < 0.5:
                p = sm.pair(rng, sm.shift(rng, d, mod))
            else:
                fams = [f for f in sm.families_for(mod) if k_range(f, d)]
                fam = rng.choice(fams)
                p = sm.family_pair(rng, fam, rng.choice(list(k_range(fam, d))), d)
            try:
                lab = classify(p)
            except UnclassifiedOrbit as exc:
                bad.append(str(exc))
                continue
            hh = None if la.is_zero_vector(p.h) else form(p.h, p.h)
            if not label_in_range(lab, d, hh):
                bad.append(f"{lab} outside the stated ranges (d={d})")
            seen.add(lab.family)
            pairs.append(p)
        missing = {"I1", "I2", "I3", "I4", "I5", "J1", "J2", "J3", "J4", "ZeroShift"} - seen
        if missing:
            bad.append(f"families never sampled: {sorted(missing)}")
        for p in pairs[:100]:
            Q = sm.stabilizer_element(rng, p.h)
            if not classify(apply_orthogonal(Q, p)).same_as(classify(p)):
                bad.append(f"label changed under stabiliser element on {p}")
        for p in pairs[100:150]:
            q = apply_orthogonal(sm.stabilizer_element(rng, p.h), p)
            res = witness_residuals(witness(p, q), p, q)
            if max(res.values()) > 1e-9:
                bad.append(f"witness residuals {res}")
        return bad

    report(8, "orbit labels in range (500), stabiliser invariance (100), witnesses (50)", body)


def test_criterion_09_maximal_chain(report):
    def body():
        rng = random.Random(909)
        bad = []
        for d in range(1, 7):
            h = sm.shift(rng, d, _moduli(rng, d))
            chain = maximal_chain(d, h)
            if len(chain) - 1 != d:
                bad.append(f"d={d}: chain length {len(chain) - 1}")
            if not is_chain(chain):
                bad.append(f"d={d}: not strictly increasing")
            if not is_chain([complement(p) for p in reversed(chain)]):
                bad.append(f"d={d}: complement reversal is not a chain")
        return bad

    report(9, "maximal chains of length d, d <= 6, with complement reversal", body)


def _series(d, n):
    out = [1] + [0] * n
    for k in range(1, n + 1):
        for _ in range(d):
            for j in range(k, n + 1):
                out[j] += out[j - k]
    return out


def test_criterion_10_characters(report):
    def body():
        bad = []
        for d in range(1, 5):
            for n in range(9):
                if graded_dim(d, n) != _series(d, n)[n]:
                    bad.append(f"graded_dim({d},{n}) disagrees with the generating function")
            h = la.vector([1] + [0] * (d - 1))
            for k, p in enumerate(maximal_chain(d, h)):
                if not tensor_character_check(p, 8):
                    bad.append(f"d={d} k={k}: convolution fails")
        return bad

    report(10, "graded dimensions factor for all k <= d <= 4, n <= 8", body)


def test_criterion_11_chain_differences(report):
    def body():
        rng = random.Random(1111)
        bad = []
        for d in range(1, 5):
            for _ in range(2):
                h = sm.shift(rng, d, _moduli(rng, d))
                chain = maximal_chain(d, h)
                for i in range(1, d + 1):
                    diff = difference(chain[i], chain[i - 1])
                    if not diff.is_valid():
                        bad.append(f"d={d} i={i}: difference is not semi-conformal")
                        continue
                    k_mat = double_commutant_weight1(diff).k
                    k_fock = fock_double_commutant_weight1(diff).k
                    if not (k_mat == k_fock == 1):
                        bad.append(f"d={d} i={i}: double commutant dims {k_mat} / {k_fock}")
        return bad

    report(11, "chain differences have one-dimensional weight-one double commutant", body)
