"""Conformal vectors omega_h, their central charges, moduli and automorphisms."""

from __future__ import annotations

from dataclasses import dataclass, field

from . import linalg as la
from .bispace import OrthogonalMap, form
from .errors import DimensionMismatch, NotConformalCandidate
from .fock import VACUUM, FockVector, QuadLin, basis_monomials, quadlin_to_fock, virasoro_mode, weight
from .scalars import is_zero


@dataclass(frozen=True)
class ConformalVector:
    """``omega_h`` together with its central charge ``d - 12 <h, h>``."""

    h: tuple
    charge: object = field(init=False)

    def __post_init__(self):
        h = tuple(self.h)
        object.__setattr__(self, "h", h)
        object.__setattr__(self, "charge", len(h) - 12 * form(h, h))

    @property
    def quadlin(self) -> QuadLin:
        return QuadLin.omega(self.h)


@dataclass(frozen=True)
class ZeroClass:
    family: str = "zero"


@dataclass(frozen=True)
class IsotropicClass:
    family: str = "isotropic"


@dataclass(frozen=True)
class ValueClass:
    """Nonzero ``s = <h, h>``.

    A line coordinate ``t`` with ``h = t * xi`` and ``<xi, xi> = 1`` is
    determined up to sign and ``s = t^2``, so ``s`` labels the same classes
    as ``C*/{+-1}``.
    """

    s: object
    family: str = "value"


ModuliClass = ZeroClass | IsotropicClass | ValueClass


def _S_is_identity(W: QuadLin) -> bool:
    d = W.dim
    I = la.identity(d, W.backend)
    return la.is_zero_matrix(la.sub(W.S, I))


def grading_conformal_classify(W: QuadLin):
    """Return ``h`` when ``W = omega_h`` (i.e. ``S = I``), else ``None``.

    These are exactly the conformal vectors whose ``L(0)`` is the standard
    degree operator.
    """
    if _S_is_identity(W):
        return tuple(W.b)
    return None


def degree_operator_agrees(W: QuadLin, max_weight: int) -> bool:
    """Fock check that ``L(0)`` of ``W`` acts as ``weight * id`` up to ``max_weight``."""
    one = la.one_of(W.backend)
    for w in range(max_weight + 1):
        for mono in basis_monomials(W.dim, w):
            v = FockVector.basis(mono, one)
            if not (virasoro_mode(W, 0, v) - (w * one) * v).is_zero():
                return False
    return True


def fock_grading_conformal(W: QuadLin) -> bool:
    """Oracle form of the classifier: ``L(0)`` is the identity on weight one and ``L(0) W = 2 W``."""
    one = la.one_of(W.backend)
    vec = quadlin_to_fock(W)
    if not (virasoro_mode(W, 0, vec) - (2 * one) * vec).is_zero():
        return False
    return degree_operator_agrees(W, 1)


def _is_semiconformal_quadlin(W: QuadLin) -> bool:
    S = W.S
    if not la.is_zero_matrix(la.sub(la.matmul(S, S), S)):
        return False
    return la.is_zero_vector(la.sub(la.matvec(S, W.b), W.b))


def central_charge(W):
    """``trace(S) - 12 b.b`` for ``omega_h`` or a semi-conformal vector.

    Accepts a :class:`QuadLin` or a semi-conformal pair (anything with
    ``A``, ``B`` and ``h``).
    """
    if isinstance(W, QuadLin):
        if not (_S_is_identity(W) or _is_semiconformal_quadlin(W)):
            raise NotConformalCandidate("S is neither the identity nor a symmetric idempotent fixing b")
        return W.central_charge()
    from .semiconformal import is_semiconformal

    if not is_semiconformal(W.A, W.B, W.h):
        raise NotConformalCandidate("pair fails the semi-conformal matrix conditions")
    return la.trace(W.A) - 12 * form(W.B, W.B)


def fock_central_charge(W: QuadLin):
    """Twice the vacuum coefficient of ``L(2) W`` computed in the Fock space."""
    image = virasoro_mode(W, 2, quadlin_to_fock(W))
    coeff = image.coefficient(VACUUM)
    if any(weight(m) != 0 for m in image.terms):
        raise ValueError("L(2) W left the vacuum line")
    return 2 * coeff if coeff != 0 else la.zero_of(W.backend)


def classify_moduli(h) -> ModuliClass:
    h = tuple(h)
    if la.is_zero_vector(h):
        return ZeroClass()
    s = form(h, h)
    if is_zero(s):
        return IsotropicClass()
    return ValueClass(s)


def _matrix_of(Q):
    return Q.matrix if isinstance(Q, OrthogonalMap) else tuple(tuple(r) for r in Q)


def is_automorphism(Q, h) -> bool:
    """True iff ``Q`` is orthogonal and fixes ``h`` (the stabiliser of ``omega_h``)."""
    M = _matrix_of(Q)
    n, m = la.shape(M)
    if n != m or n != len(h):
        return False
    QtQ = la.matmul(la.transpose(M), M)
    if not la.is_zero_matrix(la.sub(QtQ, la.identity(n, la.backend_of_entries(M)))):
        return False
    return la.is_zero_vector(la.sub(la.matvec(M, tuple(h)), tuple(h)))


def apply_orthogonal(Q, W):
    """Transport a weight-two vector (or semi-conformal pair) along ``Q``.

    ``(S, b) -> (Q S Q^T, Q b)``; for a pair the context ``h`` moves to ``Q h``.
    """
    M = _matrix_of(Q)
    if not isinstance(Q, OrthogonalMap):
        OrthogonalMap(M)  # raises NotOrthogonal
    Mt = la.transpose(M)
    if isinstance(W, QuadLin):
        if W.dim != len(M):
            raise DimensionMismatch(f"map of size {len(M)} on dimension {W.dim}")
        return QuadLin(la.matmul(la.matmul(M, W.S), Mt), la.matvec(M, W.b))
    from .semiconformal import ScPair

    if len(W.h) != len(M):
        raise DimensionMismatch(f"map of size {len(M)} on dimension {len(W.h)}")
    return ScPair(la.matmul(la.matmul(M, W.A), Mt), la.matvec(M, W.B), la.matvec(M, W.h))


def voa_isomorphic(h1, h2) -> bool:
    """Whether ``omega_h1`` and ``omega_h2`` lie in one orbit of the orthogonal group."""
    if len(h1) != len(h2):
        raise DimensionMismatch(f"dimensions {len(h1)} and {len(h2)}")
    c1, c2 = classify_moduli(h1), classify_moduli(h2)
    if type(c1) is not type(c2):
        return False
    if isinstance(c1, ValueClass):
        return is_zero(c1.s - c2.s)
    return True
