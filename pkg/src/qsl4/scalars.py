"""Scalar tower for line and point coordinates.

Three kinds of value share one duck-typed interface:

* ``Fraction`` for rationals;
* :class:`QuadScalar` for ``a + b*sqrt(d)`` with ``d`` a square-free integer (``d < 0``
  encodes complex values, ``d = -1`` gives the Gaussian rationals);
* :class:`NumScalar`, a high-precision complex float used only when roots leave the
  exact tower.  Every ``NumScalar`` marks its result as inexact.

Arithmetic between a rational and either other kind is always defined.  Mixing two
different extensions degrades to ``NumScalar`` (and is therefore flagged inexact).
"""
from __future__ import annotations

from fractions import Fraction
from functools import total_ordering
from math import isqrt

import mpmath

NUMERIC_DPS = 60
NUMERIC_TOL = mpmath.mpf("1e-30")


# ---------------------------------------------------------------------- integer helpers

def _is_square(n: int) -> bool:
    return n >= 0 and isqrt(n) ** 2 == n


def squarefree_decompose(n: int) -> tuple[int, int]:
    """Return (k, d) with n = k^2 * d and d square-free (sign kept in d)."""
    if n == 0:
        return 0, 0
    sign = -1 if n < 0 else 1
    n = abs(n)
    k, d = 1, 1
    p = 2
    while p * p <= n and p < 100_000:
        if n % p == 0:
            e = 0
            while n % p == 0:
                n //= p
                e += 1
            k *= p ** (e // 2)
            if e % 2:
                d *= p
        p += 1 if p == 2 else 2
    if n > 1:
        if _is_square(n):
            k *= isqrt(n)
        elif p * p > n:
            d *= n
        else:
            # large leftover: fall back to a full factorization
            from sympy import factorint

            for q, e in factorint(n).items():
                k *= q ** (e // 2)
                if e % 2:
                    d *= q
    return k, sign * d


def rational_sqrt(r: Fraction):
    """Exact square root of a rational: a Fraction, or a QuadScalar when irrational."""
    r = Fraction(r)
    if r == 0:
        return Fraction(0)
    n, m = r.numerator, r.denominator
    k, d = squarefree_decompose(n * m)
    if d == 1:
        return Fraction(k, m)
    return QuadScalar(Fraction(0), Fraction(k, m), d)


# ---------------------------------------------------------------------- quadratic extension

@total_ordering
class QuadScalar:
    """a + b*sqrt(d) with rational a, b and square-free d not in {0, 1}."""

    __slots__ = ("a", "b", "d")
    _scalar_tag = "quad"

    def __init__(self, a, b, d: int):
        if d in (0, 1):
            raise ValueError("quadratic extension needs a square-free d not in {0, 1}")
        self.a = Fraction(a)
        self.b = Fraction(b)
        self.d = int(d)

    @staticmethod
    def make(a, b, d):
        """Collapse to a Fraction when the irrational part vanishes."""
        b = Fraction(b)
        if b == 0:
            return Fraction(a)
        return QuadScalar(a, b, d)

    # arithmetic ------------------------------------------------------
    def _coerce(self, other):
        if isinstance(other, QuadScalar):
            if other.d != self.d:
                return None
            return other.a, other.b
        if isinstance(other, (int, Fraction)):
            return Fraction(other), Fraction(0)
        return None

    def _mixed(self, other) -> bool:
        return isinstance(other, NumScalar) or (isinstance(other, QuadScalar) and other.d != self.d)

    def __add__(self, other):
        if self._mixed(other):
            return NumScalar(self) + NumScalar(other)
        c = self._coerce(other)
        if c is None:
            return NotImplemented
        return QuadScalar.make(self.a + c[0], self.b + c[1], self.d)

    __radd__ = __add__

    def __neg__(self):
        return QuadScalar(-self.a, -self.b, self.d)

    def __sub__(self, other):
        return self + (-other)

    def __rsub__(self, other):
        return (-self) + other

    def __mul__(self, other):
        if self._mixed(other):
            return NumScalar(self) * NumScalar(other)
        c = self._coerce(other)
        if c is None:
            return NotImplemented
        a, b = c
        return QuadScalar.make(self.a * a + self.d * self.b * b, self.a * b + self.b * a, self.d)

    __rmul__ = __mul__

    def norm(self) -> Fraction:
        return self.a * self.a - self.d * self.b * self.b

    def galois(self) -> "QuadScalar":
        return QuadScalar(self.a, -self.b, self.d)

    def inverse(self):
        n = self.norm()
        return QuadScalar.make(self.a / n, -self.b / n, self.d)

    def __truediv__(self, other):
        if self._mixed(other):
            return NumScalar(self) / NumScalar(other)
        if isinstance(other, QuadScalar):
            return self * other.inverse()
        if isinstance(other, (int, Fraction)):
            if other == 0:
                raise ZeroDivisionError("division by zero")
            return QuadScalar.make(self.a / other, self.b / other, self.d)
        return NotImplemented

    def __rtruediv__(self, other):
        if isinstance(other, (int, Fraction)):
            return self.inverse() * Fraction(other)
        return NotImplemented

    def __pow__(self, n: int):
        if n < 0:
            return self.inverse() ** (-n)
        result = Fraction(1)
        base = self
        while n:
            if n & 1:
                result = base * result
            n >>= 1
            if n:
                base = base * base
        return result

    # comparison ------------------------------------------------------
    def __eq__(self, other):
        if isinstance(other, QuadScalar):
            if other.d != self.d:
                return False  # 1, sqrt(d1), sqrt(d2) are linearly independent over Q
            return self.a == other.a and self.b == other.b
        if isinstance(other, (int, Fraction)):
            return self.b == 0 and self.a == other
        if isinstance(other, NumScalar):
            return other == self
        return NotImplemented

    def __lt__(self, other):
        return sort_key(self) < sort_key(other)

    def __hash__(self):
        return hash((self.a, self.b, self.d))

    def conjugate(self):
        """Complex conjugate: Galois conjugation for imaginary fields, identity for real ones."""
        return self.galois() if self.d < 0 else self

    def is_real(self) -> bool:
        return self.d > 0

    def to_mpc(self):
        with mpmath.workdps(NUMERIC_DPS):
            r = mpmath.sqrt(mpmath.mpf(self.d))
            return mpmath.mpf(self.a.numerator) / self.a.denominator + (
                mpmath.mpf(self.b.numerator) / self.b.denominator
            ) * r

    def __str__(self):
        rad = "i" if self.d == -1 else f"sqrt({self.d})"
        b = self.b
        if b == 1:
            irr = rad
        elif b == -1:
            irr = "-" + rad
        else:
            irr = f"{b}*{rad}"
        if self.a == 0:
            return irr
        if irr.startswith("-"):
            return f"{self.a} - {irr[1:]}"
        return f"{self.a} + {irr}"

    def __repr__(self):
        return f"QuadScalar({self})"


# ---------------------------------------------------------------------- numeric fallback

class NumScalar:
    """High-precision complex value; equality with zero uses a fixed tolerance."""

    __slots__ = ("v",)
    _scalar_tag = "num"

    def __init__(self, value):
        with mpmath.workdps(NUMERIC_DPS):
            self.v = to_mpc(value)

    def _other(self, other):
        if isinstance(other, NumScalar):
            return other.v
        if isinstance(other, (int, Fraction, QuadScalar)):
            return to_mpc(other)
        return None

    def _wrap(self, fn, other):
        o = self._other(other)
        if o is None:
            return NotImplemented
        with mpmath.workdps(NUMERIC_DPS):
            return NumScalar(fn(self.v, o))

    def __add__(self, other):
        return self._wrap(lambda a, b: a + b, other)

    __radd__ = __add__

    def __sub__(self, other):
        return self._wrap(lambda a, b: a - b, other)

    def __rsub__(self, other):
        return self._wrap(lambda a, b: b - a, other)

    def __mul__(self, other):
        return self._wrap(lambda a, b: a * b, other)

    __rmul__ = __mul__

    def __truediv__(self, other):
        return self._wrap(lambda a, b: a / b, other)

    def __rtruediv__(self, other):
        return self._wrap(lambda a, b: b / a, other)

    def __neg__(self):
        with mpmath.workdps(NUMERIC_DPS):
            return NumScalar(-self.v)

    def __pow__(self, n: int):
        with mpmath.workdps(NUMERIC_DPS):
            return NumScalar(self.v ** n)

    def __eq__(self, other):
        o = self._other(other)
        if o is None:
            return NotImplemented
        with mpmath.workdps(NUMERIC_DPS):
            return abs(self.v - o) <= NUMERIC_TOL * max(1, abs(o))

    def __hash__(self):
        return hash(round(float(self.v.real), 12)) ^ hash(round(float(self.v.imag), 12))

    def conjugate(self):
        with mpmath.workdps(NUMERIC_DPS):
            return NumScalar(mpmath.conj(self.v))

    def is_real(self) -> bool:
        return abs(self.v.imag) <= NUMERIC_TOL

    def to_mpc(self):
        return self.v

    def __str__(self):
        with mpmath.workdps(20):
            if self.is_real():
                return f"~{mpmath.nstr(self.v.real, 15)}"
            return f"~({mpmath.nstr(self.v.real, 15)} + {mpmath.nstr(self.v.imag, 15)}*i)"

    __repr__ = __str__


# ---------------------------------------------------------------------- generic helpers

def to_mpc(c):
    if isinstance(c, NumScalar):
        return c.v
    if isinstance(c, QuadScalar):
        return mpmath.mpc(c.to_mpc())
    if isinstance(c, (int, Fraction)):
        c = Fraction(c)
        with mpmath.workdps(NUMERIC_DPS):
            return mpmath.mpc(mpmath.mpf(c.numerator) / c.denominator)
    return mpmath.mpc(c)


def is_exact(c) -> bool:
    return not isinstance(c, NumScalar)


def conj(c):
    if isinstance(c, (int, Fraction)):
        return c
    return c.conjugate()


def is_real(c) -> bool:
    if isinstance(c, (int, Fraction)):
        return True
    return c.is_real()


def extension_of(c) -> int | None:
    """The d of Q(sqrt d) containing c (None for rationals, 0 for numeric values)."""
    if isinstance(c, QuadScalar):
        return c.d
    if isinstance(c, NumScalar):
        return 0
    return None


def sort_key(c) -> tuple:
    """Deterministic ordering: rationals, then extensions by d, then numeric values."""
    if isinstance(c, (int, Fraction)):
        return (0, 0, Fraction(c), Fraction(0))
    if isinstance(c, QuadScalar):
        return (1, c.d, c.a, c.b)
    v = c.v
    return (2, 0, Fraction(str(mpmath.nstr(v.real, 25))), Fraction(str(mpmath.nstr(v.imag, 25))))


def sqrt_in_field(c):
    """Square root of c inside Q or inside c's own extension; None if it leaves the tower.

    Rationals always have a root in some Q(sqrt d).  For c = a + b*sqrt(d) a root
    x + y*sqrt(d) exists iff a^2 - d b^2 is a rational square s^2 and one of
    (a +- s)/2 is a rational square.
    """
    if isinstance(c, (int, Fraction)):
        return rational_sqrt(Fraction(c))
    if isinstance(c, QuadScalar):
        n = c.norm()
        s = rational_sqrt(n)
        if not isinstance(s, Fraction):
            return None
        for cand in ((c.a + s) / 2, (c.a - s) / 2):
            x = rational_sqrt(cand)
            if isinstance(x, Fraction) and x != 0:
                return QuadScalar.make(x, c.b / (2 * x), c.d)
        return None
    return None


def to_json(c):
    """Serialize an exact scalar as 'num/den' or an {a, b, d} triple."""
    if isinstance(c, (int, Fraction)):
        c = Fraction(c)
        return f"{c.numerator}/{c.denominator}"
    if isinstance(c, QuadScalar):
        return {"a": to_json(c.a), "b": to_json(c.b), "d": c.d}
    with mpmath.workdps(40):
        return {"approx": [mpmath.nstr(c.v.real, 35), mpmath.nstr(c.v.imag, 35)], "inexact": True}


def from_json(obj):
    if isinstance(obj, str):
        return Fraction(obj)
    if isinstance(obj, dict) and "d" in obj:
        return QuadScalar.make(Fraction(obj["a"]), Fraction(obj["b"]), int(obj["d"]))
    if isinstance(obj, dict) and "approx" in obj:
        re_, im_ = obj["approx"]
        return NumScalar(mpmath.mpc(re_, im_))
    raise ValueError(f"not a serialized scalar: {obj!r}")
