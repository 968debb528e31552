import itertools
import random
from fractions import Fraction

import pytest
from hypothesis import given, strategies as st

from heisvoa import linalg as la
from heisvoa import sampling as sm
from heisvoa.fock import (
    VACUUM,
    FockVector,
    QuadLin,
    basis_monomials,
    fock_to_quadlin,
    graded_dim,
    mode_apply,
    monomial,
    mutated_linear_sign,
    operator_matrix,
    quadlin_to_fock,
    virasoro_bracket_defect,
    virasoro_mode,
    weight,
)
from heisvoa.scalars import Exact

from conftest import mat, vec

half = Exact(Fraction(1, 2))
quarter = Exact(Fraction(1, 4))


def h(i, n):
    return FockVector.basis(monomial((i, n)))


def test_mode_apply_examples():
    assert mode_apply(1, 1, h(1, 1)) == FockVector.vacuum()
    assert mode_apply(1, 0, h(1, 1)).is_zero()
    v = FockVector.basis(monomial((1, 2), (1, 1)))
    assert mode_apply(1, 2, v) == Exact(2) * h(1, 1)
    assert mode_apply(2, -1, FockVector.vacuum()) == h(2, 1)


def test_monomials_are_canonical():
    assert monomial((2, 1), (1, 3)) == ((1, 3), (2, 1))
    assert weight(monomial((2, 1), (1, 3))) == 4
    with pytest.raises(ValueError):
        monomial((0, 1))


def test_vector_arithmetic():
    v = h(1, 1) + h(2, 1)
    assert (v - h(2, 1)) == h(1, 1)
    assert (Exact(0) * v).is_zero()
    assert len(v) == 2 and v.weights() == {1}
    assert v.component(2).is_zero()


def test_virasoro_examples():
    W0 = QuadLin.omega(vec(0))
    assert virasoro_mode(W0, 0, h(1, 1)) == h(1, 1)
    W = QuadLin(mat([[2, 1], [1, 3]]), vec(5, -1))
    assert virasoro_mode(W, 0, FockVector.vacuum()).is_zero()
    for c0 in (Exact(0), Exact(1), Exact(Fraction(2, 3))):
        Wh = QuadLin.omega((c0,))
        got = virasoro_mode(Wh, 2, quadlin_to_fock(Wh))
        assert got == FockVector.vacuum((1 - 12 * c0 * c0) / 2)
        a = -2 * c0
        assert got == FockVector.vacuum((1 - 3 * a * a) / 2)


def test_quadlin_to_fock_examples():
    assert quadlin_to_fock(QuadLin.omega(vec(0))) == FockVector.basis(monomial((1, 1), (1, 1)), half)
    expected = (
        FockVector.basis(monomial((1, 1), (1, 1)), half)
        + FockVector.basis(monomial((2, 1), (2, 1)), half)
        + h(1, 2)
    )
    assert quadlin_to_fock(QuadLin.omega(vec(1, 0))) == expected
    W = QuadLin(mat([[half, half], [half, half]]), vec(half, half))
    expected = (
        FockVector.basis(monomial((1, 1), (1, 1)), quarter)
        + FockVector.basis(monomial((2, 1), (2, 1)), quarter)
        + FockVector.basis(monomial((1, 1), (2, 1)), half)
        + half * h(1, 2)
        + half * h(2, 2)
    )
    assert quadlin_to_fock(W) == expected
    assert fock_to_quadlin(expected, 2) == W


def test_bracket_defect_examples():
    assert virasoro_bracket_defect(QuadLin.omega(vec(0)), 1, -1, 3) == 0
    assert virasoro_bracket_defect(QuadLin.omega(vec(1, 0)), 2, -2, 4, central_charge=Exact(-10)) == 0
    bad = QuadLin(mat([[2, 0], [0, 1]]), vec(0, 0))
    assert virasoro_bracket_defect(bad, 2, 0, 3) > 0
    # [L(1), L(1)] is identically zero, so the m = n = 1 case cannot detect anything
    assert virasoro_bracket_defect(bad, 1, 1, 3) == 0


def test_graded_dim_examples():
    assert graded_dim(1, 4) == 5
    assert graded_dim(2, 2) == 5
    assert all(graded_dim(d, 0) == 1 for d in range(1, 6))
    for d, n in itertools.product(range(1, 4), range(6)):
        assert graded_dim(d, n) == len(list(basis_monomials(d, n)))


def _colored_partitions(d, n):
    """Coefficient of q^n in prod_k (1 - q^k)^(-d) by series multiplication."""
    series = [1] + [0] * n
    for k in range(1, n + 1):
        for _ in range(d):
            for j in range(k, n + 1):
                series[j] += series[j - k]
    return series[n]


@given(st.integers(1, 4), st.integers(0, 10))
def test_graded_dim_generating_function(d, n):
    assert graded_dim(d, n) == _colored_partitions(d, n)


def test_mode_commutators():
    d = 2
    basis = [m for w in range(5) for m in basis_monomials(d, w)]
    for i, j in itertools.product(range(1, d + 1), repeat=2):
        for m, n in itertools.product(range(-3, 4), repeat=2):
            for mono in basis[::3]:
                v = FockVector.basis(mono)
                lhs = mode_apply(i, m, mode_apply(j, n, v)) - mode_apply(j, n, mode_apply(i, m, v))
                c = m if (i == j and m + n == 0) else 0
                assert lhs == Exact(c) * v


@given(st.integers(0, 10**6), st.integers(1, 3))
def test_degree_operator(seed, d):
    rng = random.Random(seed)
    Wh = QuadLin.omega(sm.shift(rng, d, rng.choice(["value", "zero"] + (["isotropic"] if d > 1 else []))))
    for w in range(4 if d == 3 else 6 if d == 1 else 5):
        for mono in basis_monomials(d, w):
            v = FockVector.basis(mono)
            assert virasoro_mode(Wh, 0, v) == Exact(w) * v


@given(st.integers(0, 10**6), st.integers(-3, 3))
def test_weight_shift(seed, m):
    rng = random.Random(seed)
    d = rng.randint(1, 3)
    S = tuple(sm.rational_vector(rng, d) for _ in range(d))
    W = QuadLin(la.add(S, la.transpose(S)), sm.rational_vector(rng, d))
    for w in range(4):
        for mono in list(basis_monomials(d, w))[:4]:
            out = virasoro_mode(W, m, FockVector.basis(mono))
            assert out.weights() <= {w - m}


def test_translation():
    W = QuadLin.omega(vec(0, 0, 0))
    for i in (1, 2, 3):
        assert virasoro_mode(W, -1, h(i, 1)) == h(i, 2)


def test_truncation_window_is_exact():
    rng = random.Random(5)
    W = QuadLin(mat([[1, 2], [2, -1]]), vec(1, 3))
    for w in range(4):
        for mono in basis_monomials(2, w):
            v = FockVector.basis(mono)
            for m in range(-3, 4):
                assert virasoro_mode(W, m, v) == virasoro_mode(W, m, v, margin=8)


def test_linear_sign_convention_on_vacuum_module():
    # the displayed L'(0) carries +b.h(0) while the derivation gives -(m+1) b.h(m);
    # on this module h(0) = 0, so L(0) agrees under either sign
    W = QuadLin(mat([[1, 0], [0, 1]]), vec(3, -2))
    v = quadlin_to_fock(W) + h(1, 3)
    normal = virasoro_mode(W, 0, v)
    with mutated_linear_sign():
        flipped = virasoro_mode(W, 0, v)
        assert virasoro_mode(W, 1, quadlin_to_fock(W)) != FockVector()
    assert normal == flipped
    assert virasoro_mode(W, 1, quadlin_to_fock(W)).is_zero()


def test_virasoro_relations_for_shifted_conformal_vectors():
    for hv in (vec(1, 0), vec(Fraction(1, 2), 2, -1)):
        W = QuadLin.omega(hv)
        for m, n in itertools.product(range(-3, 4), repeat=2):
            assert virasoro_bracket_defect(W, m, n, 4) == 0


def test_operator_matrix_shape():
    W = QuadLin.omega(vec(1, 0))
    M, src, dst = operator_matrix(lambda v: virasoro_mode(W, -1, v), 2, 1, 2)
    assert (len(src), len(dst)) == (graded_dim(2, 1), graded_dim(2, 2))
    assert la.shape(M) == (len(dst), len(src))
    assert VACUUM == ()
