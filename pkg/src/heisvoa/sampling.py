"""Seeded random instances: scalars, subspaces, shifts, pairs and stabiliser elements.

Everything is exact.  Pairs in a prescribed orbit family are built from a
fixed configuration in standard coordinates and then moved by a random
orthogonal map, so the family is known by construction.
"""

from __future__ import annotations

import random
from fractions import Fraction

from . import linalg as la
from .bispace import Subspace, cayley_orthogonal, form, is_regular
from .conformal import apply_orthogonal
from .errors import SingularCayley
from .scalars import I, Exact, is_zero
from .semiconformal import ScPair, from_subspace, is_semiconformal

MODULI = ("value", "isotropic", "zero")


def rational(rng: random.Random, bound: int = 3, max_den: int = 3) -> Exact:
    return Exact(Fraction(rng.randint(-bound, bound), rng.randint(1, max_den)))


def gaussian(rng: random.Random, bound: int = 3, max_den: int = 3) -> Exact:
    return Exact(rational(rng, bound, max_den).re, rational(rng, bound, max_den).re)


def rational_vector(rng: random.Random, d: int, bound: int = 3, nonzero: bool = False) -> tuple:
    while True:
        v = tuple(rational(rng, bound) for _ in range(d))
        if not nonzero or not la.is_zero_vector(v):
            return v


def gaussian_vector(rng: random.Random, d: int, bound: int = 3) -> tuple:
    return tuple(gaussian(rng, bound) for _ in range(d))


def antisymmetric(rng: random.Random, d: int, bound: int = 2) -> tuple:
    rows = [[Exact(0)] * d for _ in range(d)]
    for i in range(d):
        for j in range(i + 1, d):
            c = rational(rng, bound)
            rows[i][j], rows[j][i] = c, -c
    return tuple(tuple(r) for r in rows)


def orthogonal(rng: random.Random, d: int):
    """Exact Cayley transform of a random real antisymmetric matrix (``I + M`` is always invertible)."""
    return cayley_orthogonal(antisymmetric(rng, d))


def regular_subspace(rng: random.Random, d: int, k: int | None = None, complex_entries: bool = False) -> Subspace:
    if k is None:
        k = rng.randint(0, d)
    if k == 0:
        return Subspace.zero(d)
    while True:
        make = gaussian_vector if complex_entries else rational_vector
        vs = [make(rng, d) for _ in range(k)]
        M = la.from_columns(vs, d)
        if la.rank(M) != k:
            continue
        S = Subspace(tuple(vs), d)
        if is_regular(S):
            return S


def shift(rng: random.Random, d: int, moduli: str = "value") -> tuple:
    """Random ``h`` in the requested moduli class (``value``, ``isotropic`` or ``zero``)."""
    if moduli == "zero":
        return la.vector([0] * d)
    if moduli == "value":
        return rational_vector(rng, d, nonzero=True)
    if moduli == "isotropic":
        if d < 2:
            raise ValueError("isotropic shifts need d >= 2")
        scale = Exact(rng.choice([1, 2, -1, Fraction(1, 2), 3]))
        h0 = la.vector([scale, scale * I] + [0] * (d - 2))
        return la.matvec(orthogonal(rng, d).matrix, h0)
    raise ValueError(f"unknown moduli class {moduli!r}")


def pair(rng: random.Random, h, k: int | None = None, complex_entries: bool | None = None) -> ScPair:
    """Valid pair from a random regular subspace (generic families only)."""
    d = len(h)
    if complex_entries is None:
        complex_entries = rng.random() < 0.3
    return from_subspace(regular_subspace(rng, d, k, complex_entries), h)


def _e(d: int, i: int, c=1) -> tuple:
    v = [Exact(0)] * d
    v[i] = Exact(c) if not isinstance(c, Exact) else c
    return tuple(v)


def _comb(*terms) -> tuple:
    out = terms[0][1]
    out = la.scale(terms[0][0], out)
    for c, v in terms[1:]:
        out = la.add(out, la.scale(c, v))
    return out


def family_config(family: str, k: int, d: int, rng: random.Random | None = None) -> tuple[tuple, list]:
    """Standard-coordinate ``(h0, spanning vectors)`` realising ``family`` with dimension ``k``.

    Anisotropic families use ``h0 = c e1``; isotropic ones ``h0 = e1 + i e2``.
    Raises ``ValueError`` when ``k`` lies outside the family's range.
    """
    from .orbits import k_range

    if k not in k_range(family, d):
        raise ValueError(f"{family} has no orbit with k={k} in dimension {d}")
    rng = rng or random.Random(0)
    e = [_e(d, i) for i in range(d)]
    one = Exact(1)
    if family == "ZeroShift":
        return la.vector([0] * d), list(e[:k])
    if family.startswith("I"):
        c = Exact(rng.choice([1, 2, -1, Fraction(1, 2), 3]))
        h0 = la.scale(c, e[0])
        if family == "I1":
            return h0, e[:k]
        if family == "I2":
            return h0, e[1 : k + 1]
        if family == "I3":
            r = Exact(rng.choice([1, 2, -2, Fraction(1, 3), 3]))
            return h0, [_comb((one, e[0]), (r, e[1]))] + e[2 : k + 1]
        if family == "I4":
            beta = _comb((c, e[0]), (c, e[1]), (c * I, e[2]))
            return h0, [beta] + e[3 : k + 2]
        if family == "I5":
            beta = _comb((one, e[1]), (I, e[2]))
            partner = _comb((one, e[1]), (c.inverse(), e[0]))
            return h0, [beta, partner] + e[3 : k + 1]
    h0 = _comb((one, e[0]), (I, e[1]))
    if family == "J1":
        return h0, e[:k]
    if family == "J2":
        return h0, e[2 : k + 2]
    if family == "J3":
        r = Exact(rng.choice([0, 1, 2, -2, Fraction(1, 3)]))
        return h0, [_comb((one, e[0]), (r, e[1]))] + e[2 : k + 1]
    if family == "J4":
        beta = _comb((one, e[2]), (I, e[3]))
        partner = _comb((one, e[2]), (one, e[0]))
        return h0, [beta, partner] + e[4 : k + 2]
    raise ValueError(f"unknown family {family!r}")


def family_pair(rng: random.Random, family: str, k: int, d: int, Q=None) -> ScPair:
    """A pair of the given family, moved by ``Q`` (random orthogonal by default)."""
    h0, vs = family_config(family, k, d, rng)
    p0 = from_subspace(Subspace(tuple(vs), d), h0)
    Q = Q if Q is not None else orthogonal(rng, d)
    return apply_orthogonal(Q, p0)


def families_for(moduli: str) -> tuple:
    return {
        "value": ("I1", "I2", "I3", "I4", "I5"),
        "isotropic": ("J1", "J2", "J3", "J4"),
        "zero": ("ZeroShift",),
    }[moduli]


def stabilizer_element(rng: random.Random, h, attempts: int = 50):
    """Exact orthogonal ``Q`` with ``Q h = h``.

    A Cayley transform of ``M = sum c_ab (w_a w_b^T - w_b w_a^T)`` with the
    ``w`` spanning ``h^perp`` (so ``M h = 0``), optionally followed by the
    reflection in a non-isotropic vector orthogonal to ``h``.
    """
    from .bispace import OrthogonalMap

    h = tuple(h)
    d = len(h)
    backend = la.backend_of_entries(h)
    if la.is_zero_vector(h):
        perp = la.columns(la.identity(d, backend))
    else:
        perp = la.nullspace((h,), d)
    for _ in range(attempts):
        M = la.zeros(d, d, backend)
        for a in range(len(perp)):
            for b in range(a + 1, len(perp)):
                c = rational(rng, 2)
                if not c:
                    continue
                wa, wb = perp[a], perp[b]
                term = tuple(tuple(wa[i] * wb[j] - wb[i] * wa[j] for j in range(d)) for i in range(d))
                M = la.add(M, la.scale(c, term))
        try:
            Q = cayley_orthogonal(M)
        except SingularCayley:
            continue
        if perp and rng.random() < 0.5:
            w = perp[rng.randrange(len(perp))]
            ww = form(w, w)
            if not is_zero(ww):
                R = la.sub(la.identity(d, backend), la.scale(2 / ww, tuple(tuple(x * y for y in w) for x in w)))
                Q = OrthogonalMap(la.matmul(R, Q.matrix))
        return Q
    raise SingularCayley("no invertible I + M found")


def perturbed(rng: random.Random, p: ScPair, attempts: int = 100) -> ScPair:
    """Symmetric candidate obtained by nudging one entry of ``A`` (symmetrically) or of ``B``; never valid."""
    d = p.dim
    for _ in range(attempts):
        delta = rational(rng, 2)
        if not delta:
            continue
        A = [list(r) for r in p.A]
        B = list(p.B)
        if rng.random() < 0.6:
            i, j = rng.randrange(d), rng.randrange(d)
            A[i][j] = A[i][j] + delta
            if i != j:
                A[j][i] = A[j][i] + delta
        else:
            B[rng.randrange(d)] += delta
        if not is_semiconformal(A, B, p.h):
            return ScPair(A, B, p.h)
    raise RuntimeError("could not perturb pair into an invalid candidate")
