"""The level-one Heisenberg Fock space and its mode operators.

States are finite linear combinations of monomials
``h_{i1}(-n1) ... h_{ik}(-nk) 1``.  A monomial is stored as a sorted tuple
of ``(direction, mode)`` pairs with 1-based directions and positive modes;
the empty tuple is the vacuum.

Virasoro modes are attached to any weight-two vector written as
``QuadLin(S, b)``, i.e. ``1/2 sum S_ij h_i(-1) h_j(-1) 1 + sum b_i h_i(-2) 1``.
Its field has modes

    L(m) = 1/2 sum_ij S_ij sum_k :h_i(k) h_j(m-k):  -  (m+1) sum_i b_i h_i(m)

with creation operators (negative modes) to the left inside ``:...:``.  The
linear part follows from ``Y(D u, z) = d/dz Y(u, z)``.  On this vacuum module
``h_i(0)`` acts as zero.
"""

from __future__ import annotations

import contextlib
import functools
from bisect import insort
from contextvars import ContextVar
from dataclasses import dataclass
from typing import Callable, Iterable, Iterator

from . import linalg as la
from .errors import DimensionMismatch
from .scalars import Exact, is_zero

Monomial = tuple  # tuple[tuple[int, int], ...]
VACUUM: Monomial = ()

# Sign of the linear term in L(m).  Only the verification harness flips it,
# to show that the oracle notices a wrong sign.
_linear_sign: ContextVar[int] = ContextVar("linear_sign", default=-1)


@contextlib.contextmanager
def mutated_linear_sign():
    token = _linear_sign.set(+1)
    try:
        yield
    finally:
        _linear_sign.reset(token)


def monomial(*factors) -> Monomial:
    """Canonical monomial from ``(direction, mode)`` pairs."""
    out = []
    for i, n in factors:
        if i < 1 or n < 1:
            raise ValueError(f"bad factor h_{i}(-{n})")
        out.append((int(i), int(n)))
    return tuple(sorted(out))


def weight(mono: Monomial) -> int:
    return sum(n for _, n in mono)


class FockVector:
    """Sparse linear combination of monomials; treated as an immutable value."""

    __slots__ = ("terms",)

    def __init__(self, terms=None):
        clean = {}
        if terms:
            for mono, c in dict(terms).items():
                if not (isinstance(c, Exact) and not c) and c != 0:
                    clean[tuple(mono)] = c
        self.terms: dict = clean

    @classmethod
    def vacuum(cls, coeff=None) -> "FockVector":
        return cls({VACUUM: Exact(1) if coeff is None else coeff})

    @classmethod
    def basis(cls, mono: Monomial, coeff=None) -> "FockVector":
        return cls({tuple(mono): Exact(1) if coeff is None else coeff})

    def __iter__(self):
        return iter(self.terms.items())

    def __len__(self):
        return len(self.terms)

    def coefficient(self, mono: Monomial):
        return self.terms.get(tuple(mono), 0)

    def __add__(self, other: "FockVector") -> "FockVector":
        out = dict(self.terms)
        for mono, c in other.terms.items():
            out[mono] = out[mono] + c if mono in out else c
        return FockVector(out)

    def __neg__(self) -> "FockVector":
        return FockVector({m: -c for m, c in self.terms.items()})

    def __sub__(self, other: "FockVector") -> "FockVector":
        return self + (-other)

    def __rmul__(self, scalar) -> "FockVector":
        return FockVector({m: scalar * c for m, c in self.terms.items()})

    def __eq__(self, other):
        if not isinstance(other, FockVector):
            return NotImplemented
        return (self - other).is_zero()

    __hash__ = None

    def is_zero(self) -> bool:
        return all(is_zero(c) for c in self.terms.values())

    def norm(self) -> float:
        """Largest coefficient magnitude."""
        return max((abs(c) for c in self.terms.values()), default=0.0)

    def weights(self) -> set[int]:
        return {weight(m) for m in self.terms}

    def component(self, w: int) -> "FockVector":
        return FockVector({m: c for m, c in self.terms.items() if weight(m) == w})

    def __repr__(self):
        if not self.terms:
            return "FockVector(0)"
        parts = []
        for mono, c in sorted(self.terms.items()):
            word = "".join(f"h{i}(-{n})" for i, n in mono) or "1"
            parts.append(f"({c})*{word}")
        return " + ".join(parts)


def _annihilate(mono: Monomial, i: int, n: int):
    """``h_i(n)`` for ``n > 0`` on a monomial: ``(multiplier, monomial)`` or None."""
    count = mono.count((i, n))
    if not count:
        return None
    lst = list(mono)
    lst.remove((i, n))
    return n * count, tuple(lst)


def _create(mono: Monomial, i: int, n: int) -> Monomial:
    lst = list(mono)
    insort(lst, (i, n))
    return tuple(lst)


def mode_apply(i: int, n: int, v: FockVector) -> FockVector:
    """Apply ``h_i(n)``: creation for ``n < 0``, derivation for ``n > 0``, zero for ``n = 0``."""
    if i < 1:
        raise ValueError(f"direction must be >= 1, got {i}")
    if n == 0:
        return FockVector()
    out: dict = {}
    for mono, c in v.terms.items():
        if n < 0:
            new = _create(mono, i, -n)
            out[new] = out[new] + c if new in out else c
        else:
            hit = _annihilate(mono, i, n)
            if hit:
                mult, new = hit
                val = c * mult
                out[new] = out[new] + val if new in out else val
    return FockVector(out)


@dataclass(frozen=True)
class QuadLin:
    """Weight-two vector ``1/2 h(-1)^T S h(-1) 1 + b . h(-2) 1`` with symmetric ``S``."""

    S: tuple
    b: tuple

    def __post_init__(self):
        S = tuple(tuple(r) for r in self.S)
        b = tuple(self.b)
        object.__setattr__(self, "S", S)
        object.__setattr__(self, "b", b)
        n, m = la.shape(S)
        if n != m or n != len(b):
            raise DimensionMismatch(f"S is {n}x{m} but b has length {len(b)}")
        if not la.is_symmetric(S):
            raise ValueError("S must be symmetric")

    @property
    def dim(self) -> int:
        return len(self.b)

    @property
    def backend(self) -> str:
        return la.backend_of_entries(self.S, self.b)

    @classmethod
    def omega(cls, h, backend: str | None = None) -> "QuadLin":
        """The conformal vector ``omega_h = omega_0 + h(-2) 1``."""
        backend = backend or la.backend_of_entries(h)
        h = la.vector(h, backend)
        return cls(la.identity(len(h), backend), h)

    def central_charge(self):
        """``trace(S) - 12 b.b``; meaningful when the vector is (semi-)conformal."""
        return la.trace(self.S) - 12 * la.dot(self.b, self.b)


def quadlin_to_fock(W: QuadLin) -> FockVector:
    backend = W.backend
    half = la.one_of(backend) / 2
    out: dict = {}
    d = W.dim
    for i in range(d):
        if W.S[i][i]:
            out[((i + 1, 1), (i + 1, 1))] = half * W.S[i][i]
        for j in range(i + 1, d):
            if W.S[i][j]:
                out[((i + 1, 1), (j + 1, 1))] = W.S[i][j]
        if W.b[i]:
            out[((i + 1, 2),)] = W.b[i]
    return FockVector(out)


def fock_to_quadlin(v: FockVector, d: int) -> QuadLin:
    """Inverse of :func:`quadlin_to_fock` on weight-two vectors."""
    backend = la.backend_of_entries(list(v.terms.values()))
    zero = la.zero_of(backend)
    S = [[zero] * d for _ in range(d)]
    b = [zero] * d
    for mono, c in v.terms.items():
        if any(i > d for i, _ in mono):
            raise DimensionMismatch(f"monomial {mono} uses a direction beyond {d}")
        if mono and len(mono) == 1 and mono[0][1] == 2:
            b[mono[0][0] - 1] = c
        elif len(mono) == 2 and mono[0][1] == 1 and mono[1][1] == 1:
            i, j = mono[0][0] - 1, mono[1][0] - 1
            if i == j:
                S[i][i] = 2 * c
            else:
                S[i][j] = S[j][i] = c
        else:
            raise ValueError(f"{mono} is not a weight-two monomial")
    return QuadLin(tuple(map(tuple, S)), tuple(b))


class _VirasoroAction:
    """Memoised action of the modes L(m) of one weight-two vector on monomials."""

    def __init__(self, W: QuadLin, sign: int, margin: int):
        self.W = W
        self.sign = sign
        self.margin = margin
        self.d = W.dim
        backend = W.backend
        half = la.one_of(backend) / 2
        self.halfS = [[half * W.S[i][j] for j in range(self.d)] for i in range(self.d)]
        self.nonzero = [
            [(j, self.halfS[i][j]) for j in range(self.d) if not (isinstance(W.S[i][j], Exact) and not W.S[i][j])]
            for i in range(self.d)
        ]
        self.cache: dict = {}

    def on_monomial(self, m: int, mono: Monomial) -> dict:
        key = (m, mono)
        hit = self.cache.get(key)
        if hit is not None:
            return hit
        out: dict = {}

        def put(new, val):
            if new in out:
                out[new] = out[new] + val
            else:
                out[new] = val

        K = weight(mono) + abs(m) + self.margin
        present = sorted(set(mono))
        for k in range(-K, K + 1):
            l = m - k
            if k == 0 or l == 0:
                continue
            if k > 0 and l > 0:
                # both annihilate; they commute
                for j, nl in present:
                    if nl != l:
                        continue
                    first = _annihilate(mono, j, l)
                    rest = sorted(set(first[1]))
                    for i, nk in rest:
                        if nk != k:
                            continue
                        second = _annihilate(first[1], i, k)
                        coef = self.halfS[i - 1][j - 1]
                        if coef:
                            put(second[1], coef * (first[0] * second[0]))
            elif k < 0 and l < 0:
                for i in range(self.d):
                    for j, coef in self.nonzero[i]:
                        put(_create(_create(mono, j + 1, -l), i + 1, -k), coef)
            else:
                # one creation, one annihilation; the annihilator acts first
                if k > 0:
                    ann, cre = k, -l
                    for i, nk in present:
                        if nk != ann:
                            continue
                        mult, reduced = _annihilate(mono, i, ann)
                        for j, coef in self.nonzero[i - 1]:
                            put(_create(reduced, j + 1, cre), coef * mult)
                else:
                    ann, cre = l, -k
                    for j, nl in present:
                        if nl != ann:
                            continue
                        mult, reduced = _annihilate(mono, j, ann)
                        for i, coef in self.nonzero[j - 1]:
                            put(_create(reduced, i + 1, cre), coef * mult)
        if m != 0:
            factor = self.sign * (m + 1)
            if factor:
                for i, bi in enumerate(self.W.b):
                    if isinstance(bi, Exact) and not bi:
                        continue
                    if m < 0:
                        put(_create(mono, i + 1, -m), bi * factor)
                    else:
                        hit2 = _annihilate(mono, i + 1, m)
                        if hit2:
                            put(hit2[1], bi * (factor * hit2[0]))
        out = {k_: v for k_, v in out.items() if not (isinstance(v, Exact) and not v)}
        self.cache[key] = out
        return out

    def apply(self, m: int, v: FockVector) -> FockVector:
        out: dict = {}
        for mono, c in v.terms.items():
            for new, val in self.on_monomial(m, mono).items():
                term = c * val
                out[new] = out[new] + term if new in out else term
        return FockVector(out)


@functools.lru_cache(maxsize=64)
def _action(W: QuadLin, sign: int, margin: int) -> _VirasoroAction:
    return _VirasoroAction(W, sign, margin)


def virasoro_mode(W: QuadLin, m: int, v: FockVector, margin: int = 2) -> FockVector:
    """``L(m) v`` for the field of ``W``.

    The normal-ordered sum over ``k`` is restricted to
    ``|k| <= weight + |m| + margin``; every omitted term annihilates ``v``.
    """
    if not v.terms:
        return FockVector()
    mono_dim = max((i for mono in v.terms for i, _ in mono), default=0)
    if mono_dim > W.dim:
        raise DimensionMismatch(f"vector uses direction {mono_dim} but W has dimension {W.dim}")
    return _action(W, _linear_sign.get(), margin).apply(m, v)


def basis_monomials(d: int, n: int) -> Iterator[Monomial]:
    """All monomials of weight ``n`` in ``d`` directions (d-coloured partitions of n)."""
    parts = [(i, mode) for mode in range(1, n + 1) for i in range(1, d + 1)]
    parts.sort(key=lambda p: (p[1], p[0]), reverse=True)

    def rec(remaining: int, start: int, acc: list):
        if remaining == 0:
            yield tuple(sorted(acc))
            return
        for idx in range(start, len(parts)):
            i, mode = parts[idx]
            if mode <= remaining:
                acc.append((i, mode))
                yield from rec(remaining - mode, idx, acc)
                acc.pop()

    yield from rec(n, 0, [])


def graded_dim(d: int, n: int) -> int:
    """Number of d-coloured partitions of ``n``: coefficient of q^n in prod (1-q^k)^{-d}."""
    if n < 0:
        raise ValueError("weight must be nonnegative")
    if d < 0:
        raise ValueError("dimension must be nonnegative")
    counts = [1] + [0] * n
    for part in range(1, n + 1):
        for _ in range(d):
            for total in range(part, n + 1):
                counts[total] += counts[total - part]
    return counts[n]


def operator_matrix(op: Callable[[FockVector], FockVector], d: int, w_in: int, w_out: int):
    """Matrix of ``op`` from the weight ``w_in`` basis to the weight ``w_out`` basis."""
    src = sorted(basis_monomials(d, w_in))
    dst = sorted(basis_monomials(d, w_out))
    index = {m: r for r, m in enumerate(dst)}
    cols = []
    backend = "exact"
    for mono in src:
        image = op(FockVector.basis(mono))
        col = [0] * len(dst)
        for new, c in image.terms.items():
            if new not in index:
                raise ValueError(f"operator leaves weight {w_out}: {new}")
            col[index[new]] = c
            backend = la.backend_of_entries([c], default=backend)
        cols.append(col)
    cols = [la.vector(col, backend) for col in cols]
    return la.from_columns(cols, len(dst)), src, dst


def virasoro_bracket_defect(W: QuadLin, m: int, n: int, N: int, central_charge=None) -> float:
    """Largest violation of the Virasoro relation on monomials of weight <= N.

    Checks ``[L(m), L(n)] - (m-n) L(m+n) - delta_{m+n,0} (m^3-m)/12 c`` where
    ``c = trace(S) - 12 b.b`` unless given.
    """
    c = W.central_charge() if central_charge is None else central_charge
    anomaly = c * (la.one_of(W.backend) * (m**3 - m) / 12) if m + n == 0 else None
    worst = 0.0
    for w in range(N + 1):
        for mono in basis_monomials(W.dim, w):
            v = FockVector.basis(mono, la.one_of(W.backend))
            lhs = virasoro_mode(W, m, virasoro_mode(W, n, v)) - virasoro_mode(W, n, virasoro_mode(W, m, v))
            rhs = (m - n) * la.one_of(W.backend) * virasoro_mode(W, m + n, v) if m != n else FockVector()
            if anomaly is not None:
                rhs = rhs + anomaly * v
            worst = max(worst, (lhs - rhs).norm())
    return worst


def iter_basis(d: int, max_weight: int) -> Iterable[Monomial]:
    for w in range(max_weight + 1):
        yield from basis_monomials(d, w)
