"""Complex scalars over two backends.

``Exact`` holds a Gaussian rational ``re + im*i`` with arbitrary-precision
rational parts; ``Approx`` wraps a double-precision complex number.  Both
support the usual arithmetic operators.  Plain Python integers (and
``Fraction``/``mpq`` for the exact backend, ``float``/``complex`` for the
approximate one) are promoted automatically; combining an ``Exact`` with an
``Approx`` raises :class:`BackendMismatch`.
"""

from __future__ import annotations

import cmath
import contextlib
import math
import re
from contextvars import ContextVar
from dataclasses import dataclass
from fractions import Fraction
from numbers import Rational
from typing import Union

from gmpy2 import mpq

from .errors import BackendMismatch, DivisionByZero, NotAPerfectSquare


@dataclass(frozen=True)
class Tolerance:
    epsilon: float = 1e-9

    def __post_init__(self):
        if not self.epsilon >= 0:
            raise ValueError(f"tolerance must be nonnegative, got {self.epsilon!r}")


DEFAULT_TOLERANCE = Tolerance()
_current_tolerance: ContextVar[Tolerance] = ContextVar("tolerance", default=DEFAULT_TOLERANCE)


def current_tolerance() -> Tolerance:
    return _current_tolerance.get()


@contextlib.contextmanager
def using_tolerance(tol: Tolerance | float):
    """Temporarily change the tolerance used by approximate comparisons."""
    if not isinstance(tol, Tolerance):
        tol = Tolerance(float(tol))
    token = _current_tolerance.set(tol)
    try:
        yield tol
    finally:
        _current_tolerance.reset(token)


def _to_mpq(x) -> mpq:
    if isinstance(x, bool):
        return mpq(int(x))
    if isinstance(x, int):
        return mpq(x)
    if type(x) is type(mpq(0)):
        return x
    if isinstance(x, Rational):
        return mpq(x.numerator, x.denominator)
    raise BackendMismatch(f"cannot use {type(x).__name__} in the exact backend")


class Exact:
    """Gaussian rational ``re + im*i``."""

    __slots__ = ("re", "im")

    def __init__(self, re=0, im=0):
        object.__setattr__(self, "re", _to_mpq(re))
        object.__setattr__(self, "im", _to_mpq(im))

    def __setattr__(self, name, value):
        raise AttributeError("Exact scalars are immutable")

    @classmethod
    def _raw(cls, re: mpq, im: mpq) -> "Exact":
        obj = object.__new__(cls)
        object.__setattr__(obj, "re", re)
        object.__setattr__(obj, "im", im)
        return obj

    @staticmethod
    def _coerce(other) -> "Exact":
        if isinstance(other, Exact):
            return other
        if isinstance(other, Approx):
            raise BackendMismatch("cannot combine Exact and Approx scalars")
        if isinstance(other, (int, Rational)):
            return Exact._raw(_to_mpq(other), _ZERO_Q)
        if isinstance(other, (float, complex)):
            raise BackendMismatch(f"cannot combine Exact with {type(other).__name__}")
        return NotImplemented

    def __add__(self, other):
        o = self._coerce(other)
        if o is NotImplemented:
            return o
        return Exact._raw(self.re + o.re, self.im + o.im)

    __radd__ = __add__

    def __sub__(self, other):
        o = self._coerce(other)
        if o is NotImplemented:
            return o
        return Exact._raw(self.re - o.re, self.im - o.im)

    def __rsub__(self, other):
        o = self._coerce(other)
        if o is NotImplemented:
            return o
        return Exact._raw(o.re - self.re, o.im - self.im)

    def __mul__(self, other):
        o = self._coerce(other)
        if o is NotImplemented:
            return o
        a, b, c, d = self.re, self.im, o.re, o.im
        if not b and not d:
            return Exact._raw(a * c, _ZERO_Q)
        return Exact._raw(a * c - b * d, a * d + b * c)

    __rmul__ = __mul__

    def __truediv__(self, other):
        o = self._coerce(other)
        if o is NotImplemented:
            return o
        return self * o.inverse()

    def __rtruediv__(self, other):
        o = self._coerce(other)
        if o is NotImplemented:
            return o
        return o * self.inverse()

    def inverse(self) -> "Exact":
        a, b = self.re, self.im
        n = a * a + b * b
        if not n:
            raise DivisionByZero("division by exact zero")
        return Exact._raw(a / n, -b / n)

    def __neg__(self):
        return Exact._raw(-self.re, -self.im)

    def __pos__(self):
        return self

    def __pow__(self, n: int):
        if not isinstance(n, int):
            return NotImplemented
        if n < 0:
            return self.inverse() ** (-n)
        result, base = ONE, self
        while n:
            if n & 1:
                result = result * base
            base = base * base
            n >>= 1
        return result

    def __eq__(self, other):
        try:
            o = self._coerce(other)
        except BackendMismatch:
            return False
        if o is NotImplemented:
            return o
        return self.re == o.re and self.im == o.im

    def __hash__(self):
        if not self.im:
            return hash(self.re)
        return hash((self.re, self.im))

    def __bool__(self):
        return bool(self.re) or bool(self.im)

    def __abs__(self) -> float:
        return math.hypot(float(self.re), float(self.im))

    def __complex__(self):
        return complex(float(self.re), float(self.im))

    def conjugate(self) -> "Exact":
        return Exact._raw(self.re, -self.im)

    @property
    def is_real(self) -> bool:
        return not self.im

    def __repr__(self):
        return f"Exact({encode_exact(self)!r})"

    def __str__(self):
        return encode_exact(self)


class Approx:
    """Double-precision complex scalar."""

    __slots__ = ("value",)

    def __init__(self, re=0.0, im=0.0):
        if isinstance(re, Exact) or isinstance(im, Exact):
            raise BackendMismatch("construct Approx from Exact with to_approx()")
        object.__setattr__(self, "value", complex(re) + 1j * complex(im))

    def __setattr__(self, name, value):
        raise AttributeError("Approx scalars are immutable")

    @classmethod
    def _raw(cls, z: complex) -> "Approx":
        obj = object.__new__(cls)
        object.__setattr__(obj, "value", z)
        return obj

    @staticmethod
    def _coerce(other):
        if isinstance(other, Approx):
            return other.value
        if isinstance(other, Exact):
            raise BackendMismatch("cannot combine Approx and Exact scalars")
        if isinstance(other, (int, float, complex)):
            return complex(other)
        if isinstance(other, Rational):
            return complex(float(other))
        return NotImplemented

    @property
    def re(self) -> float:
        return self.value.real

    @property
    def im(self) -> float:
        return self.value.imag

    def __add__(self, other):
        o = self._coerce(other)
        return o if o is NotImplemented else Approx._raw(self.value + o)

    __radd__ = __add__

    def __sub__(self, other):
        o = self._coerce(other)
        return o if o is NotImplemented else Approx._raw(self.value - o)

    def __rsub__(self, other):
        o = self._coerce(other)
        return o if o is NotImplemented else Approx._raw(o - self.value)

    def __mul__(self, other):
        o = self._coerce(other)
        return o if o is NotImplemented else Approx._raw(self.value * o)

    __rmul__ = __mul__

    def __truediv__(self, other):
        o = self._coerce(other)
        if o is NotImplemented:
            return o
        if abs(o) <= current_tolerance().epsilon:
            raise DivisionByZero(f"division by approximate zero ({o!r})")
        return Approx._raw(self.value / o)

    def __rtruediv__(self, other):
        o = self._coerce(other)
        if o is NotImplemented:
            return o
        return Approx._raw(o) / self

    def inverse(self) -> "Approx":
        return Approx._raw(1.0 + 0j) / self

    def __neg__(self):
        return Approx._raw(-self.value)

    def __pos__(self):
        return self

    def __pow__(self, n: int):
        if not isinstance(n, int):
            return NotImplemented
        if n < 0:
            return self.inverse() ** (-n)
        return Approx._raw(self.value**n)

    def __eq__(self, other):
        try:
            o = self._coerce(other)
        except BackendMismatch:
            return False
        if o is NotImplemented:
            return o
        return self.value == o

    def __hash__(self):
        return hash(self.value)

    def __bool__(self):
        return bool(self.value)

    def __abs__(self) -> float:
        return abs(self.value)

    def __complex__(self):
        return self.value

    def conjugate(self) -> "Approx":
        return Approx._raw(self.value.conjugate())

    @property
    def is_real(self) -> bool:
        return self.value.imag == 0

    def __repr__(self):
        return f"Approx({self.value.real!r}, {self.value.imag!r})"


Scalar = Union[Exact, Approx]

_ZERO_Q = mpq(0)
ZERO = Exact()
ONE = Exact(1)
I = Exact(0, 1)


def exact(x) -> Exact:
    """Promote an int/rational/string/Exact to an exact scalar."""
    if isinstance(x, Exact):
        return x
    if isinstance(x, str):
        return parse_exact(x)
    if isinstance(x, complex):
        raise BackendMismatch("complex floats belong to the approximate backend")
    return Exact(x)


def to_approx(x) -> Approx:
    if isinstance(x, Approx):
        return x
    if isinstance(x, Exact):
        return Approx._raw(complex(float(x.re), float(x.im)))
    return Approx._raw(complex(x))


def backend_of(x) -> str:
    if isinstance(x, Exact):
        return "exact"
    if isinstance(x, Approx):
        return "approx"
    raise TypeError(f"not a scalar: {x!r}")


def same_backend(a, b):
    """Raise BackendMismatch unless ``a`` and ``b`` share a backend."""
    if type(a) is not type(b):
        raise BackendMismatch(f"{type(a).__name__} vs {type(b).__name__}")


def is_zero(a, tol: Tolerance | None = None) -> bool:
    if isinstance(a, Exact):
        return not a
    if isinstance(a, Approx):
        eps = (tol or current_tolerance()).epsilon
        return abs(a.value) <= eps
    if isinstance(a, (int, Rational)):
        return a == 0
    return abs(a) <= (tol or current_tolerance()).epsilon


def _rational_sqrt(q: mpq) -> mpq:
    if q < 0:
        raise NotAPerfectSquare(f"{q} is negative")
    n, d = int(q.numerator), int(q.denominator)
    rn, rd = math.isqrt(n), math.isqrt(d)
    if rn * rn != n or rd * rd != d:
        raise NotAPerfectSquare(f"{q} is not a rational square")
    return mpq(rn, rd)


def sqrt(a):
    """Square root with nonnegative real part (principal branch).

    Exact inputs must be squares of Gaussian rationals, otherwise
    :class:`NotAPerfectSquare` is raised and the caller should retry with
    :func:`to_approx`.
    """
    if isinstance(a, Approx):
        return Approx._raw(cmath.sqrt(a.value))
    a = exact(a)
    p, q = a.re, a.im
    if not q:
        if p >= 0:
            return Exact._raw(_rational_sqrt(p), _ZERO_Q)
        return Exact._raw(_ZERO_Q, _rational_sqrt(-p))
    modulus = _rational_sqrt(p * p + q * q)
    x = _rational_sqrt((modulus + p) / 2)
    y = _rational_sqrt((modulus - p) / 2)
    if q < 0:
        y = -y
    root = Exact._raw(x, y)
    assert root * root == a
    return root


# --- JSON encodings -------------------------------------------------------

def _fmt_q(q: mpq) -> str:
    if q.denominator == 1:
        return str(q.numerator)
    return f"{q.numerator}/{q.denominator}"


def encode_exact(a: Exact) -> str:
    """Encode as ``"p/q+r/si"`` (unit denominators and zero parts omitted)."""
    if not a.im:
        return _fmt_q(a.re)
    imag = _fmt_q(a.im) + "i"
    if not a.re:
        return imag
    sign = "" if a.im < 0 else "+"
    return f"{_fmt_q(a.re)}{sign}{imag}"


_RATIONAL = re.compile(r"[+-]?\d+(?:/\d+)?")


def _parse_rational(text: str, original: str) -> Fraction:
    if not _RATIONAL.fullmatch(text):
        raise ValueError(f"not an exact scalar: {original!r}")
    return Fraction(text)


def parse_exact(text: str) -> Exact:
    """Inverse of :func:`encode_exact`; also accepts ``i``, ``-i`` and spaced forms."""
    s = text.replace(" ", "")
    if not s:
        raise ValueError("empty scalar")
    if not s.endswith("i"):
        return Exact(_parse_rational(s, text))
    body = s[:-1]
    cut = max(body.rfind("+"), body.rfind("-"))
    if cut <= 0:
        real, imag = "", body
    else:
        real, imag = body[:cut], body[cut:]
    if imag in ("", "+"):
        im_part = Fraction(1)
    elif imag == "-":
        im_part = Fraction(-1)
    else:
        im_part = _parse_rational(imag, text)
    re_part = _parse_rational(real, text) if real else Fraction(0)
    return Exact(re_part, im_part)


def encode_scalar(a):
    if isinstance(a, Exact):
        return encode_exact(a)
    if isinstance(a, Approx):
        return [a.re, a.im]
    return encode_exact(exact(a))


def decode_scalar(obj, backend: str | None = None):
    """Decode a JSON scalar: a string (exact), a ``[re, im]`` pair (approx) or a number."""
    if isinstance(obj, str):
        value = parse_exact(obj)
    elif isinstance(obj, (list, tuple)) and len(obj) == 2:
        value = Approx(float(obj[0]), float(obj[1]))
    elif isinstance(obj, bool):
        raise ValueError("booleans are not scalars")
    elif isinstance(obj, int):
        value = Exact(obj)
    elif isinstance(obj, float):
        value = Approx(obj)
    else:
        raise ValueError(f"cannot decode scalar from {obj!r}")
    if backend == "approx":
        return to_approx(value)
    if backend == "exact" and isinstance(value, Approx):
        raise BackendMismatch("approximate scalar supplied to the exact backend")
    return value
