"""Orbits of the stabiliser G = O(h)_h on semi-conformal pairs.

Classification is purely invariant based: ``k = rank A``, ``beta = B`` and
``y = <beta, beta>``, plus whether ``beta`` is ``0`` or ``h``.  Explicit
orthogonal witnesses are built separately and may need square roots, in
which case they are computed with approximate scalars.
"""

from __future__ import annotations

from dataclasses import dataclass

from . import linalg as la
from .bispace import OrthogonalMap, form, hyperbolic_partner, orthonormal_basis
from .errors import ContextMismatch, DifferentOrbits, ExactSqrtUnavailable, UnclassifiedOrbit
from .scalars import is_zero
from .semiconformal import ScPair, _require_valid, _same_context

FAMILIES = ("I1", "I2", "I3", "I4", "I5", "J1", "J2", "J3", "J4", "ZeroShift")
PARAMETRIC = {"I3", "J3"}


@dataclass(frozen=True)
class OrbitLabel:
    family: str
    k: int
    y: object = None

    def __post_init__(self):
        if self.family not in FAMILIES:
            raise ValueError(f"unknown orbit family {self.family!r}")

    def same_as(self, other: "OrbitLabel") -> bool:
        if (self.family, self.k) != (other.family, other.k):
            return False
        if self.family in PARAMETRIC:
            return is_zero(self.y - other.y)
        return True


def k_range(family: str, d: int) -> range:
    """Dimensions ``k`` allowed for ``family`` in ambient dimension ``d``."""
    return {
        "I1": range(1, d + 1),
        "I2": range(0, d),
        "I3": range(1, d),
        "I4": range(1, d - 1),
        "I5": range(2, d),
        "J1": range(2, d + 1),
        "J2": range(0, d - 1),
        "J3": range(1, d),
        "J4": range(2, d - 1),
        "ZeroShift": range(0, d + 1),
    }[family]


def label_in_range(label: OrbitLabel, d: int, hh=None) -> bool:
    """Check ``label`` against the parameter ranges of its family."""
    if label.k not in k_range(label.family, d):
        return False
    if label.family == "I3":
        return not is_zero(label.y) and (hh is None or not is_zero(label.y - hh))
    if label.family == "J3":
        return not is_zero(label.y)
    return True


def classify(p: ScPair) -> OrbitLabel:
    _require_valid(p)
    h, beta, k, d = p.h, p.B, p.k, p.dim
    if la.is_zero_vector(h):
        label = OrbitLabel("ZeroShift", k)
        hh = None
    else:
        hh = form(h, h)
        y = form(beta, beta)
        beta_is_h = la.is_zero_vector(la.sub(beta, h))
        beta_is_0 = la.is_zero_vector(beta)
        if not is_zero(hh):
            if beta_is_h:
                label = OrbitLabel("I1", k)
            elif beta_is_0:
                label = OrbitLabel("I2", k)
            elif not is_zero(y) and not is_zero(y - hh):
                label = OrbitLabel("I3", k, y)
            elif is_zero(y - hh):
                label = OrbitLabel("I4", k)
            else:
                label = OrbitLabel("I5", k)
        else:
            if beta_is_h:
                label = OrbitLabel("J1", k)
            elif beta_is_0:
                label = OrbitLabel("J2", k)
            elif not is_zero(y):
                label = OrbitLabel("J3", k, y)
            else:
                label = OrbitLabel("J4", k)
    if not label_in_range(label, d, hh):
        raise UnclassifiedOrbit(f"{label} lies outside the listed parameter ranges for d={d}")
    return label


def same_orbit(p1: ScPair, p2: ScPair) -> bool:
    _same_context(p1, p2)
    return classify(p1).same_as(classify(p2))


def _perp_within(U: list, S: list, dim: int) -> list:
    """Basis of ``{x in span(U) : <x, s> = 0 for s in S}``."""
    if not U:
        return []
    if not S:
        return list(U)
    constraints = tuple(tuple(form(s, u) for u in U) for s in S)
    zero = la.zero_of(la.backend_of_entries(U))
    out = []
    for c in la.nullspace(constraints, len(U)):
        v = [zero] * dim
        for cj, u in zip(c, U):
            if cj:
                v = [a + cj * b for a, b in zip(v, u)]
        out.append(tuple(v))
    return out


def _adapted_basis(U: list, u, dim: int) -> list:
    """Basis of ``span(U)`` starting at ``u`` whose Gram matrix depends only on ``<u, u>``.

    ``u = 0``: orthonormal.  ``<u,u> = s != 0``: ``u`` then orthonormal
    (Gram ``diag(s, 1, ..)``).  ``u`` isotropic: ``u, u*`` with
    ``<u, u*> = 1`` then orthonormal.
    """
    if not U:
        return []
    if la.is_zero_vector(u):
        return orthonormal_basis(U, dim)
    if not is_zero(form(u, u)):
        return [u] + orthonormal_basis(_perp_within(U, [u], dim), dim)
    partner = hyperbolic_partner(u, within=U)
    return [u, partner] + orthonormal_basis(_perp_within(U, [u, partner], dim), dim)


def _frame(p: ScPair) -> list:
    image = la.column_space(p.A) if p.k else []
    kernel = la.nullspace(p.A, p.dim) if p.k < p.dim else []
    return _adapted_basis(list(image), p.B, p.dim) + _adapted_basis(list(kernel), la.sub(p.h, p.B), p.dim)


def _witness(p1: ScPair, p2: ScPair) -> OrthogonalMap:
    P1 = la.from_columns(_frame(p1), p1.dim)
    P2 = la.from_columns(_frame(p2), p2.dim)
    return OrthogonalMap(la.matmul(P2, la.inverse(P1)))


def witness(p1: ScPair, p2: ScPair) -> OrthogonalMap:
    """Orthogonal ``Q`` fixing ``h`` with ``Q A1 Q^T = A2`` and ``Q B1 = B2``.

    Frames adapted to ``(Im A, B)`` and ``(Ker A, h - B)`` have equal Gram
    matrices for pairs in one orbit, so ``Q = P2 P1^{-1}`` is orthogonal.
    Falls back to approximate scalars when an exact root is unavailable.
    """
    _same_context(p1, p2)
    if not same_orbit(p1, p2):
        raise DifferentOrbits(f"{classify(p1)} vs {classify(p2)}")
    try:
        return _witness(p1, p2)
    except ExactSqrtUnavailable:
        pass
    a1 = ScPair(la.convert(p1.A, "approx"), la.convert(p1.B, "approx"), la.convert(p1.h, "approx"))
    a2 = ScPair(la.convert(p2.A, "approx"), la.convert(p2.B, "approx"), la.convert(p2.h, "approx"))
    return _witness(a1, a2)


def witness_residuals(Q: OrthogonalMap, p1: ScPair, p2: ScPair) -> dict:
    """Residuals of the defining identities, measured in floating point."""
    M = la.convert(Q.matrix, "approx")
    A1, A2 = la.convert(p1.A, "approx"), la.convert(p2.A, "approx")
    B1, B2 = la.convert(p1.B, "approx"), la.convert(p2.B, "approx")
    h = la.convert(p1.h, "approx")
    return {
        "orthogonal": la.residual(la.matmul(la.transpose(M), M), la.identity(len(M), "approx")),
        "conjugation": la.residual(la.matmul(la.matmul(M, A1), la.transpose(M)), A2),
        "shift": la.residual(la.matvec(M, B1), B2),
        "fixes_h": la.residual(la.matvec(M, h), h),
    }


@dataclass(frozen=True)
class OrbitFamily:
    """A family of orbits with its dimension range; ``parametric`` families carry ``y``."""

    family: str
    ks: tuple
    parametric: bool = False
    excluded_y: tuple = ()


def enumerate_labels(d: int, h) -> list[OrbitFamily]:
    """Nonempty orbit families for the moduli class of ``h``."""
    if d < 1:
        raise ValueError("dimension must be positive")
    h = tuple(h)
    if len(h) != d:
        raise ContextMismatch(f"h has {len(h)} entries, expected {d}")
    if la.is_zero_vector(h):
        names = ["ZeroShift"]
        excluded = {}
    elif not is_zero(form(h, h)):
        names = ["I1", "I2", "I3", "I4", "I5"]
        zero = la.zero_of(la.backend_of_entries(h))
        excluded = {"I3": (zero, form(h, h))}
    else:
        names = ["J1", "J2", "J3", "J4"]
        excluded = {"J3": (la.zero_of(la.backend_of_entries(h)),)}
    out = []
    for name in names:
        ks = tuple(k_range(name, d))
        if ks:
            out.append(OrbitFamily(name, ks, name in PARAMETRIC, excluded.get(name, ())))
    return out
