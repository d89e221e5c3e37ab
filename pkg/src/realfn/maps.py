"""Rational maps of the Riemann sphere as coprime pairs of binary forms."""

from __future__ import annotations

from typing import Sequence

import numpy as np

from .errors import InvalidInput, ModeError
from .numkernel import (DEFAULT_TOL, BinaryForm, Mode, SpherePoint,
                        divide_forms, gcd_forms, wronskian_forms)
from .numkernel.forms import eval_form_xz


class RationalMap:
    """``f = [P : Q]`` with ``P``, ``Q`` forms of one degree and no common root.

    A common factor is divided out on construction (exact gcd, or the
    approximate gcd at ``tol`` in float mode), so ``degree`` is the
    topological degree of the map.
    """

    __slots__ = ("P", "Q")

    def __init__(self, P: BinaryForm, Q: BinaryForm, *, tol: float = DEFAULT_TOL,
                 reduce: bool = True):
        if P.mode is not Q.mode:
            raise ModeError("numerator and denominator in different modes")
        if P.degree != Q.degree:
            raise InvalidInput("numerator and denominator need one declared degree")
        if P.is_zero() and Q.is_zero():
            raise InvalidInput("both forms are zero")
        if reduce and P.degree > 0:
            g = gcd_forms(P, Q, tol)
            if g.degree > 0:
                P, Q = divide_forms(P, g), divide_forms(Q, g)
        self.P, self.Q = P, Q

    @classmethod
    def from_coeffs(cls, num: Sequence, den: Sequence, mode: Mode | None = None,
                    **kw) -> "RationalMap":
        """Map from ascending coefficient lists; the shorter list is padded."""
        n = max(len(num), len(den))
        num = list(num) + [0] * (n - len(num))
        den = list(den) + [0] * (n - len(den))
        if mode is None:
            mode = Mode.FLOAT if any(isinstance(c, (float, complex)) for c in num + den) else Mode.EXACT
        return cls(BinaryForm(num, mode), BinaryForm(den, mode), **kw)

    @classmethod
    def polynomial(cls, coeffs: Sequence, mode: Mode | None = None) -> "RationalMap":
        """``z -> sum coeffs[k] z**k`` (pole of full order at infinity)."""
        d = len(coeffs) - 1
        return cls.from_coeffs(list(coeffs), [1] + [0] * d, mode)

    @property
    def degree(self) -> int:
        return self.P.degree

    @property
    def mode(self) -> Mode:
        return self.P.mode

    @property
    def is_exact(self) -> bool:
        return self.P.is_exact

    def vector(self) -> np.ndarray:
        return np.concatenate([self.P.array(), self.Q.array()])

    def to_float(self) -> "RationalMap":
        return RationalMap(self.P.to_float(), self.Q.to_float(), reduce=False)

    def __call__(self, p: SpherePoint) -> SpherePoint:
        if p.mode is not self.mode:
            raise ModeError("map and point in different modes")
        return SpherePoint(eval_form_xz(self.P, p.X, p.Z), eval_form_xz(self.Q, p.X, p.Z))

    def post_compose(self, a, b, c, d) -> "RationalMap":
        """``[aP + bQ : cP + dQ]``, i.e. the matrix ``(a, b; c, d)`` after ``f``."""
        return RationalMap(self.P.scale(a) + self.Q.scale(b),
                           self.P.scale(c) + self.Q.scale(d), reduce=False)

    def wronskian(self) -> BinaryForm:
        return wronskian(self)

    def pencil(self, v: SpherePoint) -> BinaryForm:
        """``beta P - alpha Q`` for ``v = [alpha:beta]``; its zeros are ``f^-1(v)``."""
        if v.mode is not self.mode:
            raise ModeError("map and value in different modes")
        return self.P.scale(v.Z) - self.Q.scale(v.X)

    def __repr__(self):
        return f"RationalMap(P={list(self.P.coeffs)!r}, Q={list(self.Q.coeffs)!r})"


def wronskian(f: RationalMap) -> BinaryForm:
    """``P_X Q_Z - P_Z Q_X``: degree ``2d - 2``, vanishing to order ``ord_p - 1``
    at every critical point ``p``."""
    if f.degree < 1:
        raise InvalidInput("the Wronskian of a constant map is undefined")
    return wronskian_forms(f.P, f.Q)
