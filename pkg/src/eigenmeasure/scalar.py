"""Exact arithmetic in real quadratic fields Q(sqrt(d)) and exact phase bookkeeping.

All comb parameters (modulation frequencies, translates, lattice constants)
live in a single field Q(sqrt(d)), where d is the square-free core of the
ambient lattice parameter.  Equality and ordering are decided exactly.
"""
from __future__ import annotations

import cmath
import math
from dataclasses import dataclass, field
from functools import lru_cache
from fractions import Fraction
from gmpy2 import mpq
from numbers import Rational
from typing import Union

Number = Union[int, Fraction, "QuadScalar"]


class RadicandError(ValueError):
    """Raised when two irrational quantities from different fields are mixed."""


@lru_cache(maxsize=None)
def _is_squarefree(d: int) -> bool:
    if d < 1:
        return False
    k = 2
    while k * k <= d:
        if d % (k * k) == 0:
            return False
        k += 1
    return True


def normalize_radicand(n: int) -> tuple[int, int]:
    """Split ``n = f**2 * d`` with ``d`` square-free.

    >>> normalize_radicand(12)
    (2, 3)
    """
    if isinstance(n, bool) or not isinstance(n, int):
        raise TypeError(f"expected a positive integer, got {n!r}")
    if n < 1:
        raise ValueError(f"radicand must be positive, got {n}")
    f, d = 1, n
    k = 2
    while k * k <= d:
        while d % (k * k) == 0:
            d //= k * k
            f *= k
        k += 1
    return f, d


@dataclass(frozen=True, slots=True, eq=False)
class QuadScalar:
    """The real number ``a + b*sqrt(d)`` with rational ``a``, ``b``."""

    a: Fraction
    b: Fraction = mpq(0)
    d: int = 1
    _hash: int | None = field(default=None, init=False, repr=False)

    def __post_init__(self):
        a, b = self.a, self.b
        if type(a) is not mpq:
            a = mpq(a)
        if type(b) is not mpq:
            b = mpq(b)
        if not _is_squarefree(self.d):
            raise ValueError(f"radicand {self.d} is not square-free")
        if self.d == 1:
            a, b = a + b, mpq(0)
        object.__setattr__(self, "a", a)
        object.__setattr__(self, "b", b)

    # -- constructors -------------------------------------------------------

    @classmethod
    def rational(cls, x, d: int = 1) -> "QuadScalar":
        return cls(mpq(x), mpq(0), d)

    @classmethod
    def sqrt(cls, n: int, coeff=1) -> "QuadScalar":
        """``coeff * sqrt(n)`` written over the square-free core of ``n``."""
        f, d = normalize_radicand(n)
        if d == 1:
            return cls(mpq(coeff) * f, mpq(0), 1)
        return cls(mpq(0), mpq(coeff) * f, d)

    @classmethod
    def coerce(cls, x, d: int = 1) -> "QuadScalar":
        if isinstance(x, QuadScalar):
            return x
        if isinstance(x, (int, Fraction, Rational)):
            return cls(mpq(x), mpq(0), d)
        raise TypeError(f"cannot interpret {x!r} as a QuadScalar")

    # -- structure ----------------------------------------------------------

    @property
    def is_rational(self) -> bool:
        return self.b == 0

    def over(self, d: int) -> "QuadScalar":
        """Re-express in Q(sqrt(d)); only rational values can change field."""
        if self.d == d:
            return self
        if self.b != 0:
            raise RadicandError(f"{self} does not lie in Q(sqrt({d}))")
        return QuadScalar(self.a, mpq(0), d)

    def _common(self, other) -> tuple["QuadScalar", "QuadScalar"]:
        other = QuadScalar.coerce(other, self.d)
        if self.d == other.d:
            return self, other
        if other.b == 0:
            return self, other.over(self.d)
        if self.b == 0:
            return self.over(other.d), other
        raise RadicandError(f"mixed radicands sqrt({self.d}) and sqrt({other.d})")

    def conjugate(self) -> "QuadScalar":
        """Galois conjugate ``a - b*sqrt(d)``."""
        return QuadScalar(self.a, -self.b, self.d)

    def norm(self) -> Fraction:
        return self.a * self.a - self.b * self.b * self.d

    def sign(self) -> int:
        a, b, d = self.a, self.b, self.d
        sa = (a > 0) - (a < 0)
        sb = (b > 0) - (b < 0)
        if sb == 0:
            return sa
        if sa == 0 or sa == sb:
            return sb
        # opposite signs: compare a**2 with b**2 * d
        diff = a * a - b * b * d
        return sa if diff > 0 else sb

    def floor(self) -> int:
        g = math.floor(float(self))
        while self < g:
            g -= 1
        while self >= g + 1:
            g += 1
        return g

    def ceil(self) -> int:
        return -(-self).floor()

    # -- arithmetic ---------------------------------------------------------

    def __neg__(self):
        return QuadScalar(-self.a, -self.b, self.d)

    def __pos__(self):
        return self

    def __add__(self, other):
        if type(other) is QuadScalar and other.d == self.d:
            return QuadScalar(self.a + other.a, self.b + other.b, self.d)
        try:
            x, y = self._common(other)
        except TypeError:
            return NotImplemented
        return QuadScalar(x.a + y.a, x.b + y.b, x.d)

    __radd__ = __add__

    def __sub__(self, other):
        if type(other) is QuadScalar and other.d == self.d:
            return QuadScalar(self.a - other.a, self.b - other.b, self.d)
        try:
            x, y = self._common(other)
        except TypeError:
            return NotImplemented
        return QuadScalar(x.a - y.a, x.b - y.b, x.d)

    def __rsub__(self, other):
        return (-self).__add__(other)

    def __mul__(self, other):
        if type(other) is int:
            return QuadScalar(self.a * other, self.b * other, self.d)
        try:
            x, y = self._common(other)
        except TypeError:
            return NotImplemented
        return QuadScalar(x.a * y.a + x.b * y.b * x.d, x.a * y.b + x.b * y.a, x.d)

    __rmul__ = __mul__

    def inverse(self) -> "QuadScalar":
        n = self.norm()
        if n == 0:
            raise ZeroDivisionError("QuadScalar division by zero")
        return QuadScalar(self.a / n, -self.b / n, self.d)

    def __truediv__(self, other):
        try:
            x, y = self._common(other)
        except TypeError:
            return NotImplemented
        return x * y.inverse()

    def __rtruediv__(self, other):
        try:
            x, y = self._common(other)
        except TypeError:
            return NotImplemented
        return y * x.inverse()

    # -- comparison ---------------------------------------------------------

    def _key(self):
        return (self.a, self.b, self.d if self.b else 1)

    def __eq__(self, other):
        if isinstance(other, (int, Fraction, type(mpq()))):
            return self.b == 0 and self.a == other
        if not isinstance(other, QuadScalar):
            return NotImplemented
        if self is other:
            return True
        return self.a == other.a and self.b == other.b and (self.b == 0 or self.d == other.d)

    def __hash__(self):
        h = self._hash
        if h is None:
            h = hash(self.a) if self.b == 0 else hash(self._key())
            object.__setattr__(self, "_hash", h)
        return h

    def _cmp(self, other) -> int:
        x, y = self._common(other)
        return (x - y).sign()

    def __lt__(self, other):
        return self._cmp(other) < 0

    def __le__(self, other):
        return self._cmp(other) <= 0

    def __gt__(self, other):
        return self._cmp(other) > 0

    def __ge__(self, other):
        return self._cmp(other) >= 0

    def __bool__(self):
        return self.a != 0 or self.b != 0

    def __float__(self):
        if self.b == 0:
            return float(self.a)
        return float(self.a) + float(self.b) * math.sqrt(self.d)

    # -- text / json --------------------------------------------------------

    def __str__(self):
        return self.to_dsl()

    def __repr__(self):
        return f"QuadScalar({self.a}, {self.b}, d={self.d})"

    def to_dsl(self) -> str:
        """Render in the expression-language scalar syntax."""
        if self.b == 0:
            return str(self.a)
        rad = f"{abs(self.b)}*sqrt({self.d})"
        if self.a == 0:
            return rad if self.b > 0 else f"-{rad}"
        return f"{self.a}{'+' if self.b > 0 else '-'}{rad}"

    def to_json(self) -> dict:
        return {"a": _frac_str(self.a), "b": _frac_str(self.b), "d": self.d}

    @classmethod
    def from_json(cls, obj: dict) -> "QuadScalar":
        return cls(mpq(obj["a"]), mpq(obj.get("b", "0")), int(obj.get("d", 1)))


def _frac_str(x: Fraction) -> str:
    return f"{x.numerator}/{x.denominator}"


def reduce_mod(x: QuadScalar, period: QuadScalar) -> tuple[QuadScalar, int]:
    """Return ``(x', m)`` with ``x = x' + m*period`` and ``x'`` in ``(-period/2, period/2]``."""
    x = QuadScalar.coerce(x)
    period = QuadScalar.coerce(period, x.d)
    if x.d != period.d and not x.is_rational and not period.is_rational:
        raise RadicandError(f"mixed radicands sqrt({x.d}) and sqrt({period.d})")
    if period.sign() <= 0:
        raise ValueError(f"period must be positive, got {period}")
    # m = ceil(x/period - 1/2); trust the float quotient away from integers
    t = float(x) / float(period) - 0.5
    m = math.ceil(t)
    if abs(t - round(t)) < 1e-6 or abs(t) > 1e12:
        m = (x / period - mpq(1, 2)).ceil()
    if m == 0:
        return x, 0
    return x - period * m, m


# 2**-64 / q resolution for the irrational part of a phase
_PHASE_BITS = 64


def _frac_sqrt_part(b, d: int):
    """Fractional part of ``b*sqrt(d)``, exact to about 2**-64 / denominator(b)."""
    p, q = abs(b.numerator), b.denominator
    scale = 1 << _PHASE_BITS
    x = math.isqrt(p * p * d * scale * scale)  # ~ p*sqrt(d)*2**64
    t = mpq(x % (q * scale), q * scale)
    if b < 0:
        t = (1 - t) % 1
    return t


_QUARTER_TURNS = {mpq(0): 1 + 0j, mpq(1, 4): 1j, mpq(1, 2): -1 + 0j, mpq(3, 4): -1j}


@dataclass(frozen=True, slots=True)
class PhaseExponent:
    """The unimodular number ``exp(2*pi*i*theta)``, stored by its exponent.

    The rational part of ``theta`` is kept in [0, 1); the irrational part
    is exact and left alone.
    """

    theta: QuadScalar

    def __post_init__(self):
        t = QuadScalar.coerce(self.theta)
        object.__setattr__(self, "theta", QuadScalar(t.a % 1, t.b, t.d))

    def __mul__(self, other: "PhaseExponent") -> "PhaseExponent":
        return PhaseExponent(self.theta + other.theta)

    def inverse(self) -> "PhaseExponent":
        return PhaseExponent(-self.theta)

    def value(self) -> complex:
        return phase_value(self)


def phase_value(p: PhaseExponent | QuadScalar) -> complex:
    """Evaluate ``exp(2*pi*i*theta)`` in double precision.

    Quarter turns with a rational exponent come out exactly as 1, i, -1 or -i.
    """
    theta = p.theta if isinstance(p, PhaseExponent) else QuadScalar.coerce(p)
    a = theta.a % 1
    if theta.b == 0:
        exact = _QUARTER_TURNS.get(a)
        if exact is not None:
            return exact
        t = a
    else:
        t = (a + _frac_sqrt_part(theta.b, theta.d)) % 1
    # fold into (-1/2, 1/2] before going to floating point
    if t > mpq(1, 2):
        t -= 1
    return cmath.exp(2j * math.pi * float(t))
