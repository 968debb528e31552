"""Semi-conformal vectors of (V, omega_h) as symmetric idempotent pairs.

A weight-two vector ``1/2 h(-1)^T A h(-1) 1 + B . h(-2) 1`` is semi-conformal
for ``omega_h`` exactly when ``A`` is symmetric idempotent and ``B = A h``.
The matrix-level statements here are paired with Fock-space checks that
recompute the same facts from mode operators.
"""

from __future__ import annotations

from dataclasses import dataclass

from . import linalg as la
from .bispace import Subspace, form, is_regular, projection_matrix
from .errors import ContextMismatch, DimensionMismatch, InvalidPair, IsotropicGenerator, NotRegular
from .fock import (
    VACUUM,
    FockVector,
    QuadLin,
    graded_dim,
    mode_apply,
    operator_matrix,
    quadlin_to_fock,
    virasoro_mode,
    weight,
)
from .scalars import Exact, current_tolerance, is_zero


@dataclass(frozen=True)
class ScPair:
    """Coordinates ``(A, B)`` of a weight-two vector, relative to the shift ``h``.

    Construction only checks shapes; use :func:`is_semiconformal` (or
    :meth:`is_valid`) for the idempotent conditions.
    """

    A: tuple
    B: tuple
    h: tuple

    def __post_init__(self):
        A = tuple(tuple(r) for r in self.A)
        object.__setattr__(self, "A", A)
        object.__setattr__(self, "B", tuple(self.B))
        object.__setattr__(self, "h", tuple(self.h))
        n, m = la.shape(A)
        d = len(self.h)
        if n != d or (d and m != d) or len(self.B) != d:
            raise DimensionMismatch(f"A is {n}x{m}, B has {len(self.B)} entries, h has {d}")

    @property
    def dim(self) -> int:
        return len(self.h)

    @property
    def backend(self) -> str:
        return la.backend_of_entries(self.A, self.B, self.h)

    @property
    def quadlin(self) -> QuadLin:
        return QuadLin(self.A, self.B)

    @property
    def k(self) -> int:
        return rank_of_idempotent(self.A)

    def is_valid(self) -> bool:
        return is_semiconformal(self.A, self.B, self.h)

    @classmethod
    def zero(cls, h, backend: str | None = None) -> "ScPair":
        backend = backend or la.backend_of_entries(h)
        d = len(h)
        return cls(la.zeros(d, d, backend), la.vector([0] * d, backend), la.vector(h, backend))

    @classmethod
    def top(cls, h, backend: str | None = None) -> "ScPair":
        """The pair of ``omega_h`` itself: ``(I, h)``."""
        backend = backend or la.backend_of_entries(h)
        h = la.vector(h, backend)
        return cls(la.identity(len(h), backend), h, h)


@dataclass(frozen=True)
class RegPair:
    """A regular subspace together with the projection of ``h`` onto it."""

    subspace: Subspace
    hprime: tuple
    h: tuple

    def __post_init__(self):
        object.__setattr__(self, "hprime", tuple(self.hprime))
        object.__setattr__(self, "h", tuple(self.h))
        if not is_regular(self.subspace):
            raise NotRegular("RegPair needs a regular subspace")

    @property
    def y(self):
        return form(self.hprime, self.hprime)


def rank_of_idempotent(A) -> int:
    """Rank of a symmetric idempotent, read off as its trace."""
    t = la.trace(A)
    if isinstance(t, Exact):
        if t.im or t.re.denominator != 1 or t.re < 0:
            raise ValueError(f"trace {t} is not a nonnegative integer")
        return int(t.re)
    r = round(t.re)
    if abs(t - r) > current_tolerance().epsilon or r < 0:
        raise ValueError(f"trace {t!r} is not close to a nonnegative integer")
    return int(r)


def is_semiconformal(A, B, h) -> bool:
    """``A^T = A``, ``A^2 = A`` and ``A h = B``."""
    A = tuple(tuple(r) for r in A)
    d = len(h)
    if la.shape(A) != (d, d) or len(B) != d:
        raise DimensionMismatch(f"A is {la.shape(A)}, B has {len(B)} entries, h has {d}")
    if d == 0:
        return True
    return (
        la.is_symmetric(A)
        and la.is_zero_matrix(la.sub(la.matmul(A, A), A))
        and la.is_zero_vector(la.sub(la.matvec(A, tuple(h)), tuple(B)))
    )


def _require_valid(p: ScPair, index: int | None = None):
    if not p.is_valid():
        raise InvalidPair("not a semi-conformal pair", index)


def _same_context(p1, p2):
    if len(p1.h) != len(p2.h) or not la.is_zero_vector(la.sub(p1.h, p2.h)):
        raise ContextMismatch("pairs refer to different shift vectors h")


def from_subspace(S: Subspace, h) -> ScPair:
    """``(P_S, P_S h)`` for a regular subspace ``S``."""
    A = projection_matrix(S)
    h = tuple(h)
    return ScPair(A, la.matvec(A, h), h)


def to_subspace(p: ScPair) -> RegPair:
    """``(Im A, B)``; the image of a symmetric idempotent is regular."""
    _require_valid(p)
    if p.dim == 0:
        return RegPair(Subspace.zero(0), (), ())
    S = Subspace(tuple(la.column_space(p.A)), p.dim)
    return RegPair(S, p.B, p.h)


def from_regpair(r: RegPair) -> ScPair:
    return from_subspace(r.subspace, r.h)


def leq(p1: ScPair, p2: ScPair) -> bool:
    """``A2 A1 = A1`` and ``A2 B1 = B1 = A1 B2``."""
    _same_context(p1, p2)
    return (
        la.is_zero_matrix(la.sub(la.matmul(p2.A, p1.A), p1.A))
        and la.is_zero_vector(la.sub(la.matvec(p2.A, p1.B), p1.B))
        and la.is_zero_vector(la.sub(la.matvec(p1.A, p2.B), p1.B))
    )


def leq_geometric(r1: RegPair, r2: RegPair) -> bool:
    """Subspace inclusion plus ``P2(h1') = h1' = P1(h2')``."""
    _same_context(r1, r2)
    S1, S2 = r1.subspace, r2.subspace
    if S1.k > S2.k:
        return False
    if S1.k and la.rank(la.from_columns(list(S2.basis) + list(S1.basis), S1.dim)) != S2.k:
        return False
    P1, P2 = projection_matrix(S1), projection_matrix(S2)
    return la.is_zero_vector(la.sub(la.matvec(P2, r1.hprime), r1.hprime)) and la.is_zero_vector(
        la.sub(la.matvec(P1, r2.hprime), r1.hprime)
    )


def complement(p: ScPair) -> ScPair:
    """``(I - A, h - B)``, the pair of ``omega_h - omega'``."""
    backend = p.backend
    return ScPair(la.sub(la.identity(p.dim, backend), p.A), la.sub(p.h, p.B), p.h)


def difference(p_big: ScPair, p_small: ScPair) -> ScPair:
    """Pair of ``omega^big - omega^small``."""
    _same_context(p_big, p_small)
    return ScPair(la.sub(p_big.A, p_small.A), la.sub(p_big.B, p_small.B), p_big.h)


def commutant_weight1(p: ScPair) -> Subspace:
    """``Ker A``: the weight-one part of the commutant of the subalgebra generated by omega'."""
    _require_valid(p)
    return Subspace(tuple(la.nullspace(p.A, p.dim)), p.dim)


def double_commutant_weight1(p: ScPair) -> Subspace:
    """``Im A``: the weight-one part of the double commutant."""
    _require_valid(p)
    return Subspace(tuple(la.column_space(p.A)) if p.dim else (), p.dim)


def _weight1_kernel(op, d: int) -> Subspace:
    M, src, _ = operator_matrix(op, d, 1, 2)
    # src is sorted, so src[j] == ((j+1, 1),) and kernel coordinates are h-coordinates
    assert [m[0][0] for m in src] == list(range(1, d + 1))
    return Subspace(tuple(la.nullspace(M, d)), d)


def fock_commutant_weight1(p: ScPair) -> Subspace:
    """Kernel of ``L'(-1)`` on weight one, computed from mode operators."""
    W = p.quadlin
    return _weight1_kernel(lambda v: virasoro_mode(W, -1, v), p.dim)


def fock_double_commutant_weight1(p: ScPair) -> Subspace:
    """Kernel of ``L(-1) - L'(-1)`` on weight one (``L`` from ``omega_h``)."""
    W, Wh = p.quadlin, QuadLin.omega(p.h)
    return _weight1_kernel(lambda v: virasoro_mode(Wh, -1, v) - virasoro_mode(W, -1, v), p.dim)


def fock_semiconformal_check(p: ScPair, N: int = 4) -> bool:
    """Recheck semi-conformality of a symmetric candidate inside the Fock space.

    With ``L`` the modes of ``omega_h`` and ``L'`` those of the candidate:
    ``L(0) w' = 2 w'``, ``L(1) w' = 0``, ``L(2) w' = c'/2 * 1`` with
    ``c' = tr A - 12 B.B``, ``L(n) w' = 0`` for ``3 <= n <= N`` and
    ``L'(-1) w' = L(-1) w'``.
    """
    if not la.is_symmetric(p.A):
        raise ValueError("candidate matrix must be symmetric")
    one = la.one_of(p.backend)
    Wh = QuadLin.omega(p.h, p.backend)
    W = p.quadlin
    w = quadlin_to_fock(W)
    c_prime = la.trace(p.A) - 12 * form(p.B, p.B)
    checks = [
        virasoro_mode(Wh, 0, w) - (2 * one) * w,
        virasoro_mode(Wh, 1, w),
        virasoro_mode(Wh, 2, w) - FockVector.vacuum(c_prime / 2),
        virasoro_mode(W, -1, w) - virasoro_mode(Wh, -1, w),
    ]
    checks += [virasoro_mode(Wh, n, w) for n in range(3, N + 1)]
    return all(c.is_zero() for c in checks)


def leq_fock_check(p1: ScPair, p2: ScPair, N: int = 4) -> bool:
    """Order relation recomputed with the modes ``L1`` of ``p1`` and ``L2`` of ``p2``.

    ``L2(0) w1 = 2 w1``, ``L2(1) w1 = 0``, ``L2(2) w1 = L1(2) w1`` and
    ``L2(-1) w1 = L1(-1) w1``; ``L2(n) w1 = 0`` for ``3 <= n <= N`` holds
    for weight reasons and is checked as well.
    """
    _same_context(p1, p2)
    one = la.one_of(p1.backend)
    W1, W2 = p1.quadlin, p2.quadlin
    w1 = quadlin_to_fock(W1)
    checks = [
        virasoro_mode(W2, 0, w1) - (2 * one) * w1,
        virasoro_mode(W2, 1, w1),
        virasoro_mode(W2, 2, w1) - virasoro_mode(W1, 2, w1),
        virasoro_mode(W2, -1, w1) - virasoro_mode(W1, -1, w1),
    ]
    checks += [virasoro_mode(W2, n, w1) for n in range(3, N + 1)]
    return all(c.is_zero() for c in checks)


def maximal_chain(d: int, h) -> list[ScPair]:
    """``0 < p_1 < ... < p_d = (I, h)`` from the coordinate flags ``span(e_1..e_k)``."""
    if d < 1:
        raise ValueError("dimension must be positive")
    h = tuple(h)
    if len(h) != d:
        raise DimensionMismatch(f"h has {len(h)} entries, expected {d}")
    backend = la.backend_of_entries(h)
    E = la.columns(la.identity(d, backend))
    return [from_subspace(Subspace(tuple(E[:k]), d), h) for k in range(d + 1)]


def is_chain(pairs: list[ScPair]) -> bool:
    return all(leq(a, b) and not leq(b, a) for a, b in zip(pairs, pairs[1:]))


def tensor_character_check(p: ScPair, N: int) -> bool:
    """Graded dimensions factor as Heisenberg(k) x Heisenberg(d-k) up to weight N."""
    k = p.k
    d = p.dim
    return all(
        graded_dim(d, n) == sum(graded_dim(k, a) * graded_dim(d - k, n - a) for a in range(n + 1))
        for n in range(N + 1)
    )


def rank1_generated(hp, h) -> ScPair:
    """Pair of the rank-one Heisenberg subalgebra generated by the non-isotropic ``hp``."""
    hp, h = tuple(hp), tuple(h)
    n2 = form(hp, hp)
    if is_zero(n2):
        raise IsotropicGenerator("generator must satisfy <hp, hp> != 0")
    A = la.scale(n2.inverse(), tuple(tuple(x * y for y in hp) for x in hp))
    B = la.scale(form(hp, h) / n2, hp)
    return ScPair(A, B, h)


def rank1_shift_parameter(hp, h):
    """``a`` with ``L(1) hp(-1) 1 = a * 1`` in the Fock space of ``omega_h``."""
    backend = la.backend_of_entries(hp, h)
    v = FockVector()
    for i, c in enumerate(hp):
        if c:
            v = v + mode_apply(i + 1, -1, FockVector.vacuum(c))
    image = virasoro_mode(QuadLin.omega(h, backend), 1, v)
    if any(weight(m) for m in image.terms):
        raise ValueError("L(1) of a weight-one vector must be a multiple of the vacuum")
    a = image.coefficient(VACUUM)
    return a if a != 0 else la.zero_of(backend)
