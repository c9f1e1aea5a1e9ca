"""Exact scalars: rationals and elements of a quadratic field Q(sqrt(D)).

Rationals are plain :class:`fractions.Fraction` values.  A
:class:`QuadScalar` stores ``a + b*sqrt(D)`` with ``a, b`` rational and
``D`` a square-free integer; ``D == 1`` encodes a pure rational.  Values
whose irrational part vanishes are always normalised back to ``D == 1``,
so equality is component-wise.

Arithmetic between two irrational values with different ``D`` raises
:class:`~downup.errors.FieldError`: every computation lives in one fixed
quadratic extension.
"""

from __future__ import annotations

import math
import re
from fractions import Fraction
from typing import Optional, Union

from .errors import FieldError, ParseError, PreconditionError

Rational = Fraction
ScalarLike = Union[int, Fraction, "QuadScalar", str]

# Roots of unity in a quadratic field have Euler phi(m) <= 2.
ROOT_OF_UNITY_ORDERS = (1, 2, 3, 4, 6)


def square_split(n: int) -> tuple[int, int]:
    """Return ``(s, D)`` with ``n == s*s*D`` and ``D`` square-free.

    The sign of ``n`` is carried by ``D``.  ``n`` must be nonzero.

    >>> square_split(12)
    (2, 3)
    >>> square_split(-8)
    (2, -2)
    """
    if n == 0:
        raise ValueError("square_split(0) is undefined")
    sign = -1 if n < 0 else 1
    m = abs(n)
    s, core = 1, 1
    p = 2
    # After dividing out all primes p with p**3 <= m, the cofactor is 1, a
    # prime, a product of two distinct primes, or a prime square.
    while p * p * p <= m:
        if m % p == 0:
            e = 0
            while m % p == 0:
                m //= p
                e += 1
            s *= p ** (e // 2)
            if e % 2:
                core *= p
        p += 1 if p == 2 else 2
    r = math.isqrt(m)
    if r * r == m:
        s *= r
    else:
        core *= m
    return s, sign * core


def squarefree_part(n: int) -> int:
    return square_split(n)[1]


def as_fraction(x: Union[int, Fraction, str]) -> Fraction:
    if isinstance(x, Fraction):
        return x
    if isinstance(x, bool):
        raise TypeError("bool is not a scalar")
    if isinstance(x, int):
        return Fraction(x)
    if isinstance(x, str):
        q = QuadScalar.parse(x)
        if not q.is_rational():
            raise FieldError(f"{x!r} is not rational")
        return q.a
    raise TypeError(f"cannot interpret {type(x).__name__} as a rational")


def _fmt_rational(x: Fraction) -> str:
    if x.denominator == 1:
        return str(x.numerator)
    return f"{x.numerator}/{x.denominator}"


class QuadScalar:
    """Immutable exact value ``a + b*sqrt(D)``."""

    __slots__ = ("_a", "_b", "_D")

    def __init__(self, a: Union[int, Fraction] = 0, b: Union[int, Fraction] = 0, D: int = 1) -> None:
        a = as_fraction(a)
        b = as_fraction(b)
        if not isinstance(D, int) or D == 0:
            raise FieldError(f"invalid discriminant {D!r}")
        if b and D != 1:
            s, D = square_split(D)
            b *= s
        if D == 1:
            a, b = a + b, Fraction(0)
        if not b:
            D = 1
        self._a = a
        self._b = b
        self._D = D

    # -- accessors -----------------------------------------------------
    @property
    def a(self) -> Fraction:
        return self._a

    @property
    def b(self) -> Fraction:
        return self._b

    @property
    def D(self) -> int:
        return self._D

    @classmethod
    def coerce(cls, x: ScalarLike) -> "QuadScalar":
        if isinstance(x, QuadScalar):
            return x
        if isinstance(x, str):
            return cls.parse(x)
        return cls(as_fraction(x))

    def is_rational(self) -> bool:
        return self._D == 1

    def is_zero(self) -> bool:
        return not self._a and not self._b

    def is_real(self) -> bool:
        return self._D > 0

    def to_fraction(self) -> Fraction:
        if self._D != 1:
            raise FieldError(f"{self} is not rational")
        return self._a

    # -- arithmetic ----------------------------------------------------
    def _common(self, other: "QuadScalar") -> int:
        if self._D == other._D or other._D == 1:
            return self._D
        if self._D == 1:
            return other._D
        raise FieldError(f"cannot mix Q(sqrt({self._D})) and Q(sqrt({other._D}))")

    @staticmethod
    def _other(x) -> Optional["QuadScalar"]:
        if isinstance(x, QuadScalar):
            return x
        if isinstance(x, (int, Fraction)) and not isinstance(x, bool):
            return QuadScalar(x)
        return None

    def __add__(self, other):
        o = self._other(other)
        if o is None:
            return NotImplemented
        D = self._common(o)
        return QuadScalar(self._a + o._a, self._b + o._b, D)

    __radd__ = __add__

    def __neg__(self) -> "QuadScalar":
        return QuadScalar(-self._a, -self._b, self._D)

    def __pos__(self) -> "QuadScalar":
        return self

    def __sub__(self, other):
        o = self._other(other)
        if o is None:
            return NotImplemented
        D = self._common(o)
        return QuadScalar(self._a - o._a, self._b - o._b, D)

    def __rsub__(self, other):
        o = self._other(other)
        if o is None:
            return NotImplemented
        return o - self

    def __mul__(self, other):
        o = self._other(other)
        if o is None:
            return NotImplemented
        D = self._common(o)
        a1, b1, a2, b2 = self._a, self._b, o._a, o._b
        return QuadScalar(a1 * a2 + b1 * b2 * D, a1 * b2 + a2 * b1, D)

    __rmul__ = __mul__

    def conjugate(self) -> "QuadScalar":
        return QuadScalar(self._a, -self._b, self._D)

    def norm(self) -> Fraction:
        """Field norm ``a^2 - b^2 D`` (equals ``|x|^2`` when ``D < 0``)."""
        return self._a * self._a - self._b * self._b * self._D

    def inverse(self) -> "QuadScalar":
        if self.is_zero():
            raise ZeroDivisionError("division by zero in Q(sqrt(D))")
        n = self.norm()
        return QuadScalar(self._a / n, -self._b / n, self._D)

    def __truediv__(self, other):
        o = self._other(other)
        if o is None:
            return NotImplemented
        self._common(o)
        return self * o.inverse()

    def __rtruediv__(self, other):
        o = self._other(other)
        if o is None:
            return NotImplemented
        return o * self.inverse()

    def __pow__(self, n: int) -> "QuadScalar":
        if not isinstance(n, int):
            return NotImplemented
        if n < 0:
            return self.inverse() ** (-n)
        result = QuadScalar(1)
        base = self
        while n:
            if n & 1:
                result = result * base
            base = base * base
            n >>= 1
        return result

    # -- comparison ----------------------------------------------------
    def __eq__(self, other) -> bool:
        o = self._other(other)
        if o is None:
            return NotImplemented
        return self._a == o._a and self._b == o._b and self._D == o._D

    def __hash__(self) -> int:
        if self._D == 1:
            return hash(self._a)
        return hash((self._a, self._b, self._D))

    def __bool__(self) -> bool:
        return not self.is_zero()

    def sign(self) -> int:
        """Sign of a real value (``D > 0`` or rational); exact."""
        if self._D == 1:
            return (self._a > 0) - (self._a < 0)
        if self._D < 0:
            raise FieldError(f"{self} is not real")
        sa = (self._a > 0) - (self._a < 0)
        sb = (self._b > 0) - (self._b < 0)
        if sa == 0 or sa == sb:
            return sb
        # opposite signs: the larger magnitude wins; a^2 == b^2 D is impossible
        return sa if self._a * self._a > self._b * self._b * self._D else sb

    def __abs__(self) -> "QuadScalar":
        return -self if self.sign() < 0 else self

    def __lt__(self, other) -> bool:
        o = self._other(other)
        if o is None:
            return NotImplemented
        return (self - o).sign() < 0

    def __le__(self, other) -> bool:
        o = self._other(other)
        if o is None:
            return NotImplemented
        return (self - o).sign() <= 0

    def __gt__(self, other) -> bool:
        o = self._other(other)
        if o is None:
            return NotImplemented
        return (self - o).sign() > 0

    def __ge__(self, other) -> bool:
        o = self._other(other)
        if o is None:
            return NotImplemented
        return (self - o).sign() >= 0

    # -- text form -----------------------------------------------------
    def __str__(self) -> str:
        if self._D == 1:
            return _fmt_rational(self._a)
        surd = f"{_fmt_rational(abs(self._b))}*sqrt({self._D})"
        if not self._a:
            return ("-" if self._b < 0 else "") + surd
        return f"{_fmt_rational(self._a)}{'-' if self._b < 0 else '+'}{surd}"

    def __repr__(self) -> str:
        return f"QuadScalar('{self}')"

    _TEXT = re.compile(
        r"""^(?P<a>[+-]?\d+(?:/\d+)?)?
            (?:(?P<sign>[+-])?(?P<b>\d+(?:/\d+)?)?\*?sqrt\((?P<D>[+-]?\d+)\))?$""",
        re.VERBOSE,
    )

    @classmethod
    def parse(cls, text: str) -> "QuadScalar":
        """Parse ``"p/q"`` or ``"p/q+r/s*sqrt(D)"`` (whitespace ignored)."""
        s = "".join(text.split())
        m = cls._TEXT.match(s)
        if not s or m is None:
            raise ParseError("malformed scalar literal", text, _first_bad(s))
        a, sign, b, D = m.group("a", "sign", "b", "D")
        try:
            if D is None:
                return cls(Fraction(a))
            if a is not None and sign is None and b is None:
                # "r/s*sqrt(D)": the leading number is the surd coefficient
                a, b = None, a
            coeff = Fraction(b) if b is not None else Fraction(1)
            if sign == "-":
                coeff = -coeff
            Dv = int(D)
            if Dv == 0:
                raise ParseError("sqrt(0) is not a valid discriminant", text, s.index("sqrt"))
            return cls(Fraction(a) if a is not None else 0, coeff, Dv)
        except ZeroDivisionError:
            raise ParseError("zero denominator in scalar literal", text, s.find("/0")) from None


def _first_bad(s: str) -> int:
    for i, ch in enumerate(s):
        if ch not in "0123456789/+-*sqrt()":
            return i
    return 0


def scalar(x: ScalarLike) -> QuadScalar:
    """Coerce ints, fractions and text to :class:`QuadScalar`."""
    return QuadScalar.coerce(x)


ZERO = QuadScalar(0)
ONE = QuadScalar(1)


def field_ops(x: ScalarLike, y: ScalarLike, op: str) -> QuadScalar | bool:
    """Dispatch one of ``add sub mul div neg eq is_zero`` by name."""
    x, y = scalar(x), scalar(y)
    table = {
        "add": lambda: x + y,
        "sub": lambda: x - y,
        "mul": lambda: x * y,
        "div": lambda: x / y,
        "neg": lambda: -x,
        "eq": lambda: x == y,
        "is_zero": lambda: x.is_zero(),
    }
    try:
        return table[op]()
    except KeyError:
        raise ValueError(f"unknown field operation {op!r}") from None


def sqrt_in_field(x: Union[int, Fraction, QuadScalar]) -> QuadScalar:
    """Return ``y`` with ``y*y == x`` for a rational ``x``.

    The result is rational when ``x`` is the square of a rational, and
    ``b*sqrt(D)`` with ``b > 0`` and ``D`` square-free otherwise (negative
    ``x`` gives an imaginary quadratic field).
    """
    if isinstance(x, QuadScalar):
        x = x.to_fraction()
    x = as_fraction(x)
    if not x:
        return QuadScalar(0)
    p, q = x.numerator, x.denominator
    s, D = square_split(p * q)
    return QuadScalar(0, Fraction(s, q), D)


def root_of_unity_order(x: ScalarLike) -> Optional[int]:
    """Least ``p`` with ``x**p == 1``, or ``None`` if ``x`` is no root of unity."""
    x = scalar(x)
    if x.is_zero():
        raise PreconditionError("x != 0", "root_of_unity_order(0) is undefined")
    for p in ROOT_OF_UNITY_ORDERS:
        if x ** p == 1:
            return p
    return None
