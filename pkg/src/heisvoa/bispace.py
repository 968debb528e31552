"""The ambient orthogonal space: coordinates, regular subspaces, orthogonal maps.

The form is the identity Gram matrix in standard coordinates and is
bilinear over the complex numbers (no conjugation), so nonzero isotropic
vectors such as ``(1, i)`` exist.
"""

from __future__ import annotations

from dataclasses import dataclass
from typing import Sequence

from . import linalg as la
from .errors import (
    DimensionMismatch,
    DivisionByZero,
    ExactSqrtUnavailable,
    NotAntisymmetric,
    NotAPerfectSquare,
    NotIsotropic,
    NotOrthogonal,
    NotOrthonormalInput,
    NotRegular,
    SingularCayley,
    ZeroVector,
)
from .scalars import Exact, current_tolerance, is_zero, sqrt


def form(u, v):
    """Symmetric bilinear form ``sum(u_i * v_i)``."""
    if len(u) != len(v):
        raise DimensionMismatch(f"vectors of length {len(u)} and {len(v)}")
    return la.dot(u, v)


@dataclass(frozen=True)
class AmbientSpace:
    dim: int

    def __post_init__(self):
        if self.dim < 1:
            raise ValueError("ambient dimension must be positive")

    def standard_basis(self, backend: str = "exact"):
        return la.columns(la.identity(self.dim, backend))


@dataclass(frozen=True)
class Subspace:
    """Subspace spanned by linearly independent column vectors.

    ``basis`` holds the columns; ``dim`` is the ambient dimension (needed for
    the zero subspace).
    """

    basis: tuple
    dim: int

    def __post_init__(self):
        basis = tuple(tuple(v) for v in self.basis)
        object.__setattr__(self, "basis", basis)
        for v in basis:
            if len(v) != self.dim:
                raise DimensionMismatch(f"basis vector of length {len(v)} in dimension {self.dim}")
        if basis and la.rank(self.matrix) != len(basis):
            raise ValueError("basis vectors are linearly dependent")

    @classmethod
    def spanned_by(cls, vectors: Sequence, dim: int) -> "Subspace":
        """Subspace spanned by ``vectors``, keeping an independent subset."""
        vectors = [tuple(v) for v in vectors]
        if not vectors:
            return cls((), dim)
        return cls(tuple(la.column_space(la.from_columns(vectors, dim))), dim)

    @classmethod
    def full(cls, dim: int, backend: str = "exact") -> "Subspace":
        return cls(tuple(la.columns(la.identity(dim, backend))), dim)

    @classmethod
    def zero(cls, dim: int) -> "Subspace":
        return cls((), dim)

    @property
    def k(self) -> int:
        return len(self.basis)

    @property
    def matrix(self):
        """The d x k basis matrix."""
        return la.from_columns(list(self.basis), self.dim)

    @property
    def gram(self):
        return tuple(tuple(form(u, v) for v in self.basis) for u in self.basis)

    def contains(self, v) -> bool:
        if not self.basis:
            return la.is_zero_vector(v)
        return la.rank(la.from_columns(list(self.basis) + [tuple(v)], self.dim)) == self.k

    def same_as(self, other: "Subspace") -> bool:
        return self.dim == other.dim and la.same_column_space(self.basis, other.basis, self.dim)


@dataclass(frozen=True)
class OrthogonalMap:
    """A matrix ``Q`` with ``Q^T Q = I``."""

    matrix: tuple

    def __post_init__(self):
        Q = tuple(tuple(r) for r in self.matrix)
        object.__setattr__(self, "matrix", Q)
        n, m = la.shape(Q)
        if n != m:
            raise DimensionMismatch(f"orthogonal map must be square, got {n}x{m}")
        QtQ = la.matmul(la.transpose(Q), Q)
        if not la.is_zero_matrix(la.sub(QtQ, la.identity(n, la.backend_of_entries(Q)))):
            raise NotOrthogonal("Q^T Q != I")

    @property
    def dim(self) -> int:
        return len(self.matrix)

    def __call__(self, v):
        return la.matvec(self.matrix, v)

    def __matmul__(self, other: "OrthogonalMap") -> "OrthogonalMap":
        return OrthogonalMap(la.matmul(self.matrix, other.matrix))

    def inverse(self) -> "OrthogonalMap":
        return OrthogonalMap(la.transpose(self.matrix))

    @classmethod
    def identity(cls, dim: int, backend: str = "exact") -> "OrthogonalMap":
        return cls(la.identity(dim, backend))


def _det_is_zero(G) -> bool:
    if not G:
        return False
    d = la.det(G)
    if isinstance(d, Exact):
        return not d
    scale = max(1.0, la.max_abs(G)) ** len(G)
    return abs(d) <= current_tolerance().epsilon * scale


def is_regular(S: Subspace) -> bool:
    return not _det_is_zero(S.gram)


def projection_matrix(S: Subspace):
    """``V (V^T V)^{-1} V^T``: the orthogonal projection onto ``S``."""
    if not is_regular(S):
        raise NotRegular("projection onto a degenerate subspace")
    backend = la.backend_of_entries(S.basis)
    if S.k == 0:
        return la.zeros(S.dim, S.dim, backend)
    V = S.matrix
    return la.matmul(la.matmul(V, la.inverse(S.gram)), la.transpose(V))


def orthogonal_complement(S: Subspace) -> Subspace:
    if not is_regular(S):
        raise NotRegular("complement of a degenerate subspace")
    if S.k == 0:
        return Subspace.full(S.dim)
    return Subspace(tuple(la.nullspace(la.transpose(S.matrix))), S.dim)


def hyperbolic_partner(b, within: Sequence | None = None):
    """Isotropic ``b'`` with ``<b, b'> = 1``.

    Uses the first vector ``w`` of ``within`` (default: the standard basis)
    with ``<b, w> != 0`` and returns ``w/<b,w> - <w,w>/(2<b,w>^2) b``, which
    stays in ``span(within)`` whenever ``b`` does.
    """
    if la.is_zero_vector(b):
        raise ZeroVector("hyperbolic partner of the zero vector")
    if not is_zero(form(b, b)):
        raise NotIsotropic("vector is not isotropic")
    if len(b) < 2:
        raise DimensionMismatch("isotropic vectors need dimension at least 2")
    candidates = within if within is not None else la.columns(la.identity(len(b), la.backend_of_entries(b)))
    for w in candidates:
        bw = form(b, w)
        if is_zero(bw):
            continue
        c = form(w, w) / (2 * bw * bw)
        return la.sub(la.scale(bw.inverse(), w), la.scale(c, b))
    raise NotRegular("no vector pairs nontrivially with the isotropic vector")


def _normalize(v, norm2):
    try:
        r = sqrt(norm2)
    except NotAPerfectSquare as exc:
        raise ExactSqrtUnavailable(str(exc)) from exc
    return la.scale(r.inverse(), v)


def orthonormal_basis(vectors: Sequence, dim: int) -> list:
    """Orthonormal basis of the regular subspace spanned by ``vectors``.

    Gram-Schmidt for a complex symmetric form: a non-isotropic pivot is
    normalised directly; when every remaining vector is isotropic the pivot
    ``u`` is replaced by ``(u+u')/sqrt(2)`` and ``(u-u')/sqrt(-2)`` for its
    hyperbolic partner ``u'``.  Exact inputs raise
    :class:`ExactSqrtUnavailable` when an irrational root would be needed.
    """
    W = list(la.column_space(la.from_columns([tuple(v) for v in vectors], dim))) if vectors else []
    if not W:
        return []
    if _det_is_zero(tuple(tuple(form(u, v) for v in W) for u in W)):
        raise NotRegular("cannot orthonormalise a degenerate subspace")
    found: list = []
    current = list(W)
    while current:
        norms = [form(v, v) for v in current]
        pivot = None
        if isinstance(norms[0], Exact):
            for v, n in zip(current, norms):
                if n:
                    try:
                        sqrt(n)
                    except NotAPerfectSquare:
                        if pivot is None:
                            pivot = (v, n)
                        continue
                    pivot = (v, n)
                    break
        else:
            best = max(range(len(current)), key=lambda i: abs(norms[i]))
            if not is_zero(norms[best]):
                pivot = (current[best], norms[best])
        if pivot is not None:
            found.append(_normalize(*pivot))
        else:
            u = current[0]
            up = hyperbolic_partner(u, within=current)
            found.append(_normalize(la.add(u, up), 2 * form(u, up)))
            found.append(_normalize(la.sub(u, up), -2 * form(u, up)))
        # basis of W intersected with the orthogonal complement of `found`
        constraints = tuple(tuple(form(f, w) for w in W) for f in found)
        coords = la.nullspace(constraints, len(W))
        current = [
            tuple(sum((c[j] * W[j][i] for j in range(len(W))), 0 * W[0][0]) for i in range(dim))
            for c in coords
        ]
    return found


def extend_orthonormal(vs: Sequence, dim: int | None = None) -> OrthogonalMap:
    """Orthogonal map whose first columns are the orthonormal vectors ``vs``."""
    vs = [tuple(v) for v in vs]
    if dim is None:
        if not vs:
            raise ValueError("dimension required when no vectors are given")
        dim = len(vs[0])
    backend = la.backend_of_entries(vs)
    for i, u in enumerate(vs):
        if len(u) != dim:
            raise DimensionMismatch(f"vector of length {len(u)} in dimension {dim}")
        for j, v in enumerate(vs):
            target = 1 if i == j else 0
            if not is_zero(form(u, v) - target):
                raise NotOrthonormalInput(f"<v{i}, v{j}> != {target}")
    if vs:
        complement = la.nullspace(tuple(vs), dim)
    else:
        complement = la.columns(la.identity(dim, backend))
    rest = orthonormal_basis(complement, dim)
    return OrthogonalMap(la.from_columns(vs + rest, dim))


def cayley_orthogonal(M) -> OrthogonalMap:
    """``(I - M)(I + M)^{-1}`` for antisymmetric ``M``; fixes every vector in ``ker M``."""
    n, m = la.shape(M)
    if n != m:
        raise DimensionMismatch(f"Cayley transform of a {n}x{m} matrix")
    for i in range(n):
        for j in range(i, n):
            if not is_zero(M[i][j] + M[j][i]):
                raise NotAntisymmetric(f"M[{i}][{j}] + M[{j}][{i}] != 0")
    backend = la.backend_of_entries(M)
    I = la.identity(n, backend)
    try:
        inv = la.inverse(la.add(I, M))
    except DivisionByZero as exc:
        raise SingularCayley("I + M is singular") from exc
    return OrthogonalMap(la.matmul(la.sub(I, M), inv))
