"""Dense linear algebra over :mod:`heisvoa.scalars`.

Vectors are tuples of scalars and matrices are tuples of row tuples.  All
routines work for both backends; zero tests go through
:func:`heisvoa.scalars.is_zero`, so the approximate backend honours the
current tolerance.  Elimination uses partial pivoting by magnitude, which is
harmless for exact inputs and needed for approximate ones.
"""

from __future__ import annotations

from typing import Iterable, Sequence

from .errors import DimensionMismatch, DivisionByZero
from .scalars import ONE, ZERO, Approx, Exact, exact, is_zero, to_approx

Vector = tuple
Matrix = tuple


def zero_of(backend: str):
    return ZERO if backend == "exact" else Approx(0.0)


def one_of(backend: str):
    return ONE if backend == "exact" else Approx(1.0)


def backend_of_entries(*objs, default: str = "exact") -> str:
    """Backend of the first scalar found inside the (nested) arguments."""
    for obj in objs:
        stack = [obj]
        while stack:
            x = stack.pop()
            if isinstance(x, Exact):
                return "exact"
            if isinstance(x, Approx):
                return "approx"
            if isinstance(x, (tuple, list)):
                stack.extend(reversed(x))
    return default


def convert(x, backend: str):
    """Convert a scalar, vector or matrix to ``backend``."""
    if isinstance(x, (tuple, list)):
        return tuple(convert(e, backend) for e in x)
    return exact(x) if backend == "exact" else to_approx(x)


def vector(entries: Iterable, backend: str = "exact") -> Vector:
    return tuple(convert(e, backend) for e in entries)


def matrix(rows: Iterable[Iterable], backend: str = "exact") -> Matrix:
    return tuple(tuple(convert(e, backend) for e in row) for row in rows)


def zeros(r: int, c: int, backend: str = "exact") -> Matrix:
    z = zero_of(backend)
    return tuple((z,) * c for _ in range(r))


def identity(n: int, backend: str = "exact") -> Matrix:
    z, o = zero_of(backend), one_of(backend)
    return tuple(tuple(o if i == j else z for j in range(n)) for i in range(n))


def shape(M: Matrix) -> tuple[int, int]:
    return len(M), (len(M[0]) if M else 0)


def transpose(M: Matrix, ncols: int | None = None) -> Matrix:
    if not M:
        return tuple(() for _ in range(ncols or 0))
    return tuple(zip(*M))


def columns(M: Matrix) -> list[Vector]:
    return list(transpose(M))


def from_columns(cols: Sequence[Vector], nrows: int, backend: str = "exact") -> Matrix:
    if not cols:
        return tuple(() for _ in range(nrows))
    return tuple(zip(*cols))


def dot(u: Vector, v: Vector):
    """Bilinear (not sesquilinear) pairing of two coordinate vectors."""
    if len(u) != len(v):
        raise DimensionMismatch(f"lengths {len(u)} and {len(v)}")
    total = 0
    for a, b in zip(u, v):
        total = a * b + total
    if isinstance(total, int):
        return zero_of(backend_of_entries(u, v))
    return total


def matmul(A: Matrix, B: Matrix) -> Matrix:
    ra, ca = shape(A)
    rb, cb = shape(B)
    if ca != rb and not (ra == 0 or cb == 0):
        raise DimensionMismatch(f"cannot multiply {ra}x{ca} by {rb}x{cb}")
    if ca == 0:
        return zeros(ra, cb, backend_of_entries(A, B))
    Bt = transpose(B)
    return tuple(tuple(dot(row, col) for col in Bt) for row in A)


def matvec(A: Matrix, v: Vector) -> Vector:
    if A and len(A[0]) != len(v):
        raise DimensionMismatch(f"matrix has {len(A[0])} columns, vector has {len(v)} entries")
    if A and not A[0]:
        return tuple(zero_of(backend_of_entries(v)) for _ in A)
    return tuple(dot(row, v) for row in A)


def add(A, B):
    if isinstance(A, tuple) and A and isinstance(A[0], tuple):
        if shape(A) != shape(B):
            raise DimensionMismatch(f"{shape(A)} vs {shape(B)}")
        return tuple(tuple(a + b for a, b in zip(ra, rb)) for ra, rb in zip(A, B))
    if len(A) != len(B):
        raise DimensionMismatch(f"lengths {len(A)} and {len(B)}")
    return tuple(a + b for a, b in zip(A, B))


def sub(A, B):
    if isinstance(A, tuple) and A and isinstance(A[0], tuple):
        if shape(A) != shape(B):
            raise DimensionMismatch(f"{shape(A)} vs {shape(B)}")
        return tuple(tuple(a - b for a, b in zip(ra, rb)) for ra, rb in zip(A, B))
    if len(A) != len(B):
        raise DimensionMismatch(f"lengths {len(A)} and {len(B)}")
    return tuple(a - b for a, b in zip(A, B))


def scale(c, A):
    if isinstance(A, tuple) and A and isinstance(A[0], tuple):
        return tuple(tuple(c * a for a in row) for row in A)
    return tuple(c * a for a in A)


def trace(A: Matrix):
    total = zero_of(backend_of_entries(A))
    for i in range(len(A)):
        total = total + A[i][i]
    return total


def is_zero_vector(v: Vector) -> bool:
    return all(is_zero(x) for x in v)


def is_zero_matrix(A: Matrix) -> bool:
    return all(is_zero(x) for row in A for x in row)


def max_abs(A) -> float:
    """Largest entry magnitude of a scalar, vector or matrix (0.0 when empty)."""
    if isinstance(A, (tuple, list)):
        return max((max_abs(x) for x in A), default=0.0)
    return abs(A)


def residual(A, B) -> float:
    return max_abs(sub(A, B)) if A else 0.0


def is_symmetric(A: Matrix) -> bool:
    return all(is_zero(A[i][j] - A[j][i]) for i in range(len(A)) for j in range(i + 1, len(A)))


def rref(M: Matrix) -> tuple[list[list], list[int]]:
    """Reduced row echelon form and pivot columns."""
    rows = [list(r) for r in M]
    nr, nc = shape(M)
    pivots: list[int] = []
    r = 0
    for c in range(nc):
        if r == nr:
            break
        best, best_abs = None, -1.0
        for i in range(r, nr):
            x = rows[i][c]
            if is_zero(x):
                continue
            mag = abs(x)
            if best is None or mag > best_abs:
                best, best_abs = i, mag
                if isinstance(x, Exact):
                    break
        if best is None:
            continue
        rows[r], rows[best] = rows[best], rows[r]
        inv = rows[r][c].inverse()
        rows[r] = [x * inv for x in rows[r]]
        for i in range(nr):
            if i != r:
                f = rows[i][c]
                if not is_zero(f):
                    pivot_row = rows[r]
                    rows[i] = [a - f * b for a, b in zip(rows[i], pivot_row)]
        pivots.append(c)
        r += 1
    return rows, pivots


def rank(M: Matrix) -> int:
    return len(rref(M)[1])


def nullspace(M: Matrix, ncols: int | None = None) -> list[Vector]:
    """Basis of ``{x : M x = 0}`` (one vector per free column)."""
    nr, nc = shape(M)
    if nr == 0:
        nc = ncols if ncols is not None else nc
        backend = backend_of_entries(M)
        return [tuple(one_of(backend) if i == j else zero_of(backend) for i in range(nc)) for j in range(nc)]
    backend = backend_of_entries(M)
    R, pivots = rref(M)
    free = [c for c in range(nc) if c not in pivots]
    basis = []
    for f in free:
        x = [zero_of(backend)] * nc
        x[f] = one_of(backend)
        for row, p in zip(R, pivots):
            x[p] = -row[f]
        basis.append(tuple(x))
    return basis


def column_space(M: Matrix) -> list[Vector]:
    """Basis of the column space taken from the pivot columns of ``M``."""
    _, pivots = rref(M)
    cols = columns(M)
    return [cols[p] for p in pivots]


def inverse(M: Matrix) -> Matrix:
    n, m = shape(M)
    if n != m:
        raise DimensionMismatch(f"cannot invert a {n}x{m} matrix")
    if n == 0:
        return ()
    backend = backend_of_entries(M)
    aug = tuple(tuple(row) + idrow for row, idrow in zip(M, identity(n, backend)))
    R, pivots = rref(aug)
    if pivots[:n] != list(range(n)):
        raise DivisionByZero("matrix is singular")
    return tuple(tuple(row[n:]) for row in R)


def det(M: Matrix):
    n, m = shape(M)
    if n != m:
        raise DimensionMismatch(f"determinant of a {n}x{m} matrix")
    backend = backend_of_entries(M)
    rows = [list(r) for r in M]
    result = one_of(backend)
    for c in range(n):
        best, best_abs = None, -1.0
        for i in range(c, n):
            x = rows[i][c]
            if x:
                mag = abs(x)
                if mag > best_abs:
                    best, best_abs = i, mag
        if best is None:
            return zero_of(backend)
        if best != c:
            rows[c], rows[best] = rows[best], rows[c]
            result = -result
        piv = rows[c][c]
        if is_zero(piv):
            # only reachable for approximate entries: the largest pivot is below tolerance
            return zero_of(backend)
        result = result * piv
        inv = piv.inverse()
        for i in range(c + 1, n):
            f = rows[i][c] * inv
            if f:
                rows[i] = [a - f * b for a, b in zip(rows[i], rows[c])]
    return result


def solve(M: Matrix, b: Vector) -> Vector:
    return matvec(inverse(M), b)


def same_column_space(U: Sequence[Vector], V: Sequence[Vector], dim: int) -> bool:
    """True when two lists of column vectors span the same subspace."""
    ru = rank(from_columns(list(U), dim)) if U else 0
    rv = rank(from_columns(list(V), dim)) if V else 0
    if ru != rv:
        return False
    if ru == 0:
        return True
    return rank(from_columns(list(U) + list(V), dim)) == ru
