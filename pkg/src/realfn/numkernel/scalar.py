"""Coefficient field: exact Gaussian rationals and double-precision complex.

Exact values are :class:`GaussianRational`; floating values are plain Python
``complex``. The two never mix: any arithmetic between them raises
:class:`~realfn.errors.ModeError`.
"""

from __future__ import annotations

import enum
import math
from fractions import Fraction
from numbers import Rational

from ..errors import InvalidInput, ModeError

DEFAULT_TOL = 1e-9


class Mode(enum.Enum):
    EXACT = "exact"
    FLOAT = "float"


class GaussianRational:
    """Element ``re + im*i`` of Q(i) with arbitrary-precision parts."""

    __slots__ = ("re", "im")

    def __init__(self, re=0, im=0):
        if isinstance(re, (float, complex)) or isinstance(im, (float, complex)):
            raise ModeError("GaussianRational parts must be rational, got a float")
        self.re = Fraction(re)
        self.im = Fraction(im)

    @classmethod
    def parse(cls, re: str, im: str = "0") -> "GaussianRational":
        try:
            return cls(Fraction(str(re).strip()), Fraction(str(im).strip()))
        except (ValueError, ZeroDivisionError) as exc:
            raise InvalidInput(f"not a rational number: {re!r}, {im!r}") from exc

    # -- coercion ---------------------------------------------------------
    @staticmethod
    def _coerce(other):
        if isinstance(other, GaussianRational):
            return other
        if isinstance(other, (int, Rational)) and not isinstance(other, bool):
            return GaussianRational(other)
        if isinstance(other, (float, complex)):
            raise ModeError("cannot mix exact and floating scalars")
        return NotImplemented

    # -- arithmetic -------------------------------------------------------
    def __add__(self, other):
        o = self._coerce(other)
        if o is NotImplemented:
            return o
        return GaussianRational(self.re + o.re, self.im + o.im)

    __radd__ = __add__

    def __sub__(self, other):
        o = self._coerce(other)
        if o is NotImplemented:
            return o
        return GaussianRational(self.re - o.re, self.im - o.im)

    def __rsub__(self, other):
        o = self._coerce(other)
        if o is NotImplemented:
            return o
        return o - self

    def __mul__(self, other):
        o = self._coerce(other)
        if o is NotImplemented:
            return o
        return GaussianRational(self.re * o.re - self.im * o.im,
                                self.re * o.im + self.im * o.re)

    __rmul__ = __mul__

    def __truediv__(self, other):
        o = self._coerce(other)
        if o is NotImplemented:
            return o
        n = o.norm()
        if n == 0:
            raise ZeroDivisionError("division by exact zero")
        num = self * o.conjugate()
        return GaussianRational(num.re / n, num.im / n)

    def __rtruediv__(self, other):
        o = self._coerce(other)
        if o is NotImplemented:
            return o
        return o / self

    def __neg__(self):
        return GaussianRational(-self.re, -self.im)

    def __pos__(self):
        return self

    def __pow__(self, k: int):
        if not isinstance(k, int):
            raise TypeError("only integer powers")
        if k < 0:
            return (GaussianRational(1) / self) ** (-k)
        out, base = GaussianRational(1), self
        while k:
            if k & 1:
                out = out * base
            base = base * base
            k >>= 1
        return out

    def conjugate(self) -> "GaussianRational":
        return GaussianRational(self.re, -self.im)

    def norm(self) -> Fraction:
        """Squared modulus, an exact rational."""
        return self.re * self.re + self.im * self.im

    def is_real(self) -> bool:
        return self.im == 0

    # -- comparisons / conversion -----------------------------------------
    def __eq__(self, other):
        if isinstance(other, (float, complex)):
            raise ModeError("cannot compare exact and floating scalars")
        o = self._coerce(other)
        if o is NotImplemented:
            return o
        return self.re == o.re and self.im == o.im

    def __hash__(self):
        return hash((self.re, self.im))

    def __bool__(self):
        return bool(self.re) or bool(self.im)

    def __complex__(self):
        return complex(float(self.re), float(self.im))

    def __repr__(self):
        return f"GaussianRational({str(self.re)!r}, {str(self.im)!r})"

    def __str__(self):
        if self.im == 0:
            return str(self.re)
        if self.re == 0:
            return f"{self.im}*i"
        sign = "+" if self.im > 0 else "-"
        return f"{self.re}{sign}{abs(self.im)}*i"


ZERO = GaussianRational(0)
ONE = GaussianRational(1)
I = GaussianRational(0, 1)


def is_exact(x) -> bool:
    return isinstance(x, GaussianRational)


def mode_of(x) -> Mode:
    if isinstance(x, GaussianRational):
        return Mode.EXACT
    if isinstance(x, (float, complex, int)):
        return Mode.FLOAT
    raise TypeError(f"not a scalar: {x!r}")


def check_same_mode(*values) -> Mode:
    """Return the shared mode of ``values`` or raise :class:`ModeError`."""
    modes = {mode_of(v) for v in values}
    if len(modes) > 1:
        raise ModeError("mixed exact and floating scalars")
    return modes.pop() if modes else Mode.FLOAT


def to_exact(x) -> GaussianRational:
    """Lift an integer, Fraction, or GaussianRational into Q(i)."""
    if isinstance(x, GaussianRational):
        return x
    if isinstance(x, (int, Rational)) and not isinstance(x, bool):
        return GaussianRational(x)
    raise ModeError(f"cannot treat {x!r} as an exact scalar")


def conj(x):
    if isinstance(x, GaussianRational):
        return x.conjugate()
    return complex(x).conjugate()


def gaussian_gcd(a: tuple[int, int], b: tuple[int, int]) -> tuple[int, int]:
    """gcd in Z[i] of ``a = a0 + a1 i`` and ``b``, via Euclid with rounding."""
    while b != (0, 0):
        n = b[0] * b[0] + b[1] * b[1]
        # a * conj(b)
        pr = a[0] * b[0] + a[1] * b[1]
        pi = a[1] * b[0] - a[0] * b[1]
        qr = _round_div(pr, n)
        qi = _round_div(pi, n)
        r = (a[0] - (qr * b[0] - qi * b[1]), a[1] - (qr * b[1] + qi * b[0]))
        a, b = b, r
    return a


def _round_div(p: int, n: int) -> int:
    # nearest integer to p/n
    return (2 * p + n) // (2 * n)


def sqrt_norm_witness(value: Fraction, max_bits: int = 96):
    """Find ``s`` in Q(i) with ``|s|**2 == value`` (``value > 0``), or None.

    Exists iff ``numerator * denominator`` is a sum of two integer squares.
    Integers above ``max_bits`` bits are not factored and return None.
    """
    value = Fraction(value)
    if value <= 0:
        raise InvalidInput("need a positive rational")
    p, q = value.numerator, value.denominator
    r = math.isqrt(p), math.isqrt(q)
    if r[0] ** 2 == p and r[1] ** 2 == q:
        return GaussianRational(Fraction(r[0], r[1]))
    n = p * q
    if n.bit_length() > max_bits:
        return None
    from sympy.solvers.diophantine.diophantine import sum_of_squares

    for a, b in sum_of_squares(n, 2, zeros=True):
        return GaussianRational(Fraction(a, q), Fraction(b, q))
    return None
