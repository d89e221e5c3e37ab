"""Binary forms over Q(i) or over double-precision complex numbers.

A form of degree ``d`` is stored as ``d + 1`` coefficients, index ``k``
multiplying ``X**k * Z**(d - k)``. Root ``[x:1]`` is the affine value ``x``;
``[1:0]`` is infinity.
"""

from __future__ import annotations

from fractions import Fraction
from math import lcm
from typing import Iterable, Sequence

import numpy as np

from ..errors import InvalidInput, ModeError
from . import numeric
from .scalar import (DEFAULT_TOL, ONE, ZERO, GaussianRational, Mode,
                     gaussian_gcd, to_exact)


def _infer_mode(coeffs) -> Mode:
    exact = [isinstance(c, (GaussianRational, Fraction)) for c in coeffs]
    floats = [isinstance(c, (float, complex, np.floating, np.complexfloating))
              for c in coeffs]
    if any(exact) and any(floats):
        raise ModeError("coefficients mix exact and floating scalars")
    return Mode.FLOAT if any(floats) else Mode.EXACT


class BinaryForm:
    """Homogeneous polynomial in ``(X, Z)`` with a declared degree."""

    __slots__ = ("_c", "mode")

    def __init__(self, coeffs: Iterable, mode: Mode | None = None):
        coeffs = list(coeffs)
        if not coeffs:
            raise InvalidInput("a binary form needs at least one coefficient")
        mode = mode or _infer_mode(coeffs)
        if mode is Mode.EXACT:
            self._c = tuple(to_exact(c) for c in coeffs)
        else:
            if any(isinstance(c, GaussianRational) for c in coeffs):
                raise ModeError("exact coefficient given to a floating form")
            arr = np.array([complex(c) for c in coeffs], dtype=complex)
            arr.flags.writeable = False
            self._c = arr
        self.mode = mode

    # -- construction helpers ---------------------------------------------
    @classmethod
    def zero(cls, degree: int, mode: Mode = Mode.EXACT) -> "BinaryForm":
        return cls([0] * (degree + 1), mode)

    @classmethod
    def constant(cls, value, mode: Mode | None = None) -> "BinaryForm":
        return cls([value], mode)

    @classmethod
    def monomial(cls, kx: int, kz: int, mode: Mode = Mode.EXACT) -> "BinaryForm":
        c = [0] * (kx + kz + 1)
        c[kx] = 1
        return cls(c, mode)

    @classmethod
    def linear(cls, a, b, mode: Mode | None = None) -> "BinaryForm":
        """The form ``a X + b Z``."""
        return cls([b, a], mode)

    # -- basic accessors --------------------------------------------------
    @property
    def degree(self) -> int:
        return len(self._c) - 1

    @property
    def coeffs(self) -> tuple:
        return tuple(self._c)

    @property
    def is_exact(self) -> bool:
        return self.mode is Mode.EXACT

    def array(self) -> np.ndarray:
        """Coefficients as a complex array (exact values are rounded)."""
        if self.is_exact:
            return np.array([complex(c) for c in self._c], dtype=complex)
        return np.array(self._c)

    def to_float(self) -> "BinaryForm":
        return self if not self.is_exact else BinaryForm(self.array(), Mode.FLOAT)

    def is_zero(self, tol: float = 0.0) -> bool:
        if self.is_exact:
            return not any(self._c)
        return bool(np.all(np.abs(self._c) <= tol))

    def norm(self) -> float:
        return float(np.linalg.norm(self.array()))

    def infinity_multiplicity(self) -> int:
        """Order of vanishing at ``[1:0]`` (exact forms)."""
        k = self.degree
        while k >= 0 and not self._c[k]:
            k -= 1
        return self.degree - k if k >= 0 else self.degree

    def __repr__(self):
        return f"BinaryForm({list(self.coeffs)!r}, {self.mode.value})"

    def __eq__(self, other):
        if not isinstance(other, BinaryForm):
            return NotImplemented
        if self.mode is not other.mode:
            raise ModeError("comparing exact and floating forms")
        if self.degree != other.degree:
            return False
        if self.is_exact:
            return self._c == other._c
        return bool(np.array_equal(self._c, other._c))

    __hash__ = None

    def _check(self, other: "BinaryForm"):
        if self.mode is not other.mode:
            raise ModeError("mixed exact and floating forms")

    # -- arithmetic -------------------------------------------------------
    def __add__(self, other: "BinaryForm") -> "BinaryForm":
        self._check(other)
        if self.degree != other.degree:
            raise InvalidInput("adding forms of different degrees")
        if self.is_exact:
            return BinaryForm([a + b for a, b in zip(self._c, other._c)], Mode.EXACT)
        return BinaryForm(self._c + other._c, Mode.FLOAT)

    def __neg__(self) -> "BinaryForm":
        return self.scale(-1)

    def __sub__(self, other: "BinaryForm") -> "BinaryForm":
        return self + (-other)

    def __mul__(self, other):
        if isinstance(other, BinaryForm):
            self._check(other)
            if self.is_exact:
                return BinaryForm(_pmul(self._c, other._c), Mode.EXACT)
            return BinaryForm(np.convolve(self._c, other._c), Mode.FLOAT)
        return self.scale(other)

    __rmul__ = __mul__

    def __pow__(self, k: int) -> "BinaryForm":
        out = BinaryForm.constant(1, self.mode)
        for _ in range(k):
            out = out * self
        return out

    def scale(self, s) -> "BinaryForm":
        if self.is_exact:
            s = to_exact(s)
            return BinaryForm([s * c for c in self._c], Mode.EXACT)
        if isinstance(s, GaussianRational):
            raise ModeError("exact scalar times floating form")
        return BinaryForm(complex(s) * self._c, Mode.FLOAT)

    def conj(self) -> "BinaryForm":
        if self.is_exact:
            return BinaryForm([c.conjugate() for c in self._c], Mode.EXACT)
        return BinaryForm(np.conj(self._c), Mode.FLOAT)

    def d_dx(self) -> "BinaryForm":
        d = self.degree
        if d == 0:
            raise InvalidInput("derivative of a degree-0 form")
        return BinaryForm([k * self._c[k] for k in range(1, d + 1)], self.mode)

    def d_dz(self) -> "BinaryForm":
        d = self.degree
        if d == 0:
            raise InvalidInput("derivative of a degree-0 form")
        return BinaryForm([(d - k) * self._c[k] for k in range(d)], self.mode)

    def substitute(self, a, b, c, d) -> "BinaryForm":
        """``F(a X + b Z, c X + d Z)``."""
        if not self.is_exact:
            return BinaryForm(numeric.substitute(self.array(), a, b, c, d), Mode.FLOAT)
        l1 = BinaryForm.linear(to_exact(a), to_exact(b), Mode.EXACT)
        l2 = BinaryForm.linear(to_exact(c), to_exact(d), Mode.EXACT)
        return compose_forms(self, l1, l2)

    def swap_antipodal(self) -> "BinaryForm":
        """``F(-Z, X)``; combined with :meth:`conj` it transports across the antipodal map."""
        d = self.degree
        out = [None] * (d + 1)
        for k, c in enumerate(self._c):
            out[d - k] = -c if k % 2 else c
        return BinaryForm(out, self.mode)

    def __call__(self, X, Z):
        return eval_form_xz(self, X, Z)

    def normalized(self) -> "BinaryForm":
        if self.is_exact:
            return BinaryForm(_normalize_exact(self._c), Mode.EXACT)
        c = self.array()
        i = int(np.argmax(np.abs(c)))
        if c[i] == 0:
            return self
        return BinaryForm(c / c[i], Mode.FLOAT)

    def dehomogenize(self) -> list:
        """Coefficients of ``F(x, 1)`` with trailing zeros removed (exact)."""
        return _trim(list(self._c))


# ---------------------------------------------------------------------------
# exact univariate helpers (ascending coefficient lists, [] is zero)
# ---------------------------------------------------------------------------

def _trim(p: list) -> list:
    while p and not p[-1]:
        p.pop()
    return p


def _pmul(a: Sequence, b: Sequence) -> list:
    if not a or not b:
        return []
    out = [ZERO] * (len(a) + len(b) - 1)
    for i, x in enumerate(a):
        if not x:
            continue
        for j, y in enumerate(b):
            out[i + j] = out[i + j] + x * y
    return out


def _psub(a: Sequence, b: Sequence) -> list:
    n = max(len(a), len(b))
    return _trim([(a[i] if i < len(a) else ZERO) - (b[i] if i < len(b) else ZERO)
                  for i in range(n)])


def _pdivmod(a: Sequence, b: Sequence) -> tuple[list, list]:
    a, b = _trim(list(a)), _trim(list(b))
    if not b:
        raise ZeroDivisionError("polynomial division by zero")
    if len(a) < len(b):
        return [], a
    inv = ONE / b[-1]
    q = [ZERO] * (len(a) - len(b) + 1)
    r = list(a)
    for i in range(len(a) - len(b), -1, -1):
        coef = r[i + len(b) - 1] * inv
        q[i] = coef
        if coef:
            for j, y in enumerate(b):
                r[i + j] = r[i + j] - coef * y
    return _trim(q), _trim(r[:len(b) - 1])


def _monic(p: list) -> list:
    if not p:
        return p
    inv = ONE / p[-1]
    return [c * inv for c in p]


def _pgcd(a: Sequence, b: Sequence) -> list:
    a, b = _trim(list(a)), _trim(list(b))
    while b:
        _, r = _pdivmod(a, b)
        a, b = b, _monic(r)
    return _monic(a)


def _pderiv(p: Sequence) -> list:
    return _trim([k * p[k] for k in range(1, len(p))])


def _yun(f: list) -> list[tuple[list, int]]:
    """Yun's square-free decomposition of a nonconstant univariate polynomial."""
    out = []
    fp = _pderiv(f)
    a = _pgcd(f, fp)
    b, _ = _pdivmod(f, a)
    c, _ = _pdivmod(fp, a)
    d = _psub(c, _pderiv(b))
    k = 1
    while len(b) > 1:
        a = _pgcd(b, d)
        if len(a) > 1:
            out.append((a, k))
        b, _ = _pdivmod(b, a)
        c, _ = _pdivmod(d, a)
        d = _psub(c, _pderiv(b))
        k += 1
    return out


def _homogenize(p: list, degree: int) -> BinaryForm:
    return BinaryForm(list(p) + [ZERO] * (degree + 1 - len(p)), Mode.EXACT)


def _normalize_exact(coeffs: Sequence[GaussianRational]) -> list:
    """Primitive Gaussian-integer representative, leading coefficient in
    the quadrant ``re > 0, im >= 0``."""
    if not any(coeffs):
        return list(coeffs)
    den = 1
    for c in coeffs:
        den = lcm(den, c.re.denominator, c.im.denominator)
    ints = [(int(c.re * den), int(c.im * den)) for c in coeffs]
    g = (0, 0)
    for z in ints:
        if z != (0, 0):
            g = gaussian_gcd(g, z) if g != (0, 0) else z
    gn = g[0] * g[0] + g[1] * g[1]
    out = []
    for x, y in ints:
        # (x + iy) * conj(g) / |g|^2
        out.append(((x * g[0] + y * g[1]) // gn, (y * g[0] - x * g[1]) // gn))
    lead = next(z for z in reversed(out) if z != (0, 0))
    for _ in range(4):
        if lead[0] > 0 and lead[1] >= 0:
            break
        # multiply everything by -i: (x + iy)(-i) = y - ix
        out = [(y, -x) for x, y in out]
        lead = (lead[1], -lead[0])
    return [GaussianRational(x, y) for x, y in out]


def compose_forms(V: BinaryForm, A: BinaryForm, B: BinaryForm) -> BinaryForm:
    """``V(A, B)``: substitute forms of equal degree for ``(X, Z)``."""
    V._check(A)
    A._check(B)
    if A.degree != B.degree:
        raise InvalidInput("substituted forms must share a degree")
    m = V.degree
    powA = [BinaryForm.constant(1, V.mode)]
    powB = [BinaryForm.constant(1, V.mode)]
    for _ in range(m):
        powA.append(powA[-1] * A)
        powB.append(powB[-1] * B)
    out = BinaryForm.zero(m * A.degree, V.mode)
    for k, v in enumerate(V.coeffs):
        if (v if V.is_exact else v != 0):
            out = out + (powA[k] * powB[m - k]).scale(v)
    return out


def eval_form_xz(F: BinaryForm, X, Z):
    if F.is_exact:
        if not isinstance(X, GaussianRational) or not isinstance(Z, GaussianRational):
            if isinstance(X, (float, complex)) or isinstance(Z, (float, complex)):
                raise ModeError("evaluating an exact form at a floating point")
            X, Z = to_exact(X), to_exact(Z)
        d = F.degree
        total = ZERO
        xp = ONE
        zpows = [ONE]
        for _ in range(d):
            zpows.append(zpows[-1] * Z)
        for k, c in enumerate(F.coeffs):
            if c:
                total = total + c * xp * zpows[d - k]
            xp = xp * X
        return total
    if isinstance(X, GaussianRational) or isinstance(Z, GaussianRational):
        raise ModeError("evaluating a floating form at an exact point")
    return numeric.evaluate(F.array(), complex(X), complex(Z))


def eval_form(F: BinaryForm, p) -> GaussianRational | complex:
    """Value of ``F`` at the stored representative of sphere point ``p``."""
    if F.mode is not p.mode:
        raise ModeError("form and point in different modes")
    return eval_form_xz(F, p.X, p.Z)


# ---------------------------------------------------------------------------
# gcd, square-free decomposition, resultant
# ---------------------------------------------------------------------------

def _split_infinity(F: BinaryForm) -> tuple[int, list]:
    m = F.infinity_multiplicity()
    return m, F.dehomogenize()


def gcd_forms(A: BinaryForm, B: BinaryForm, tol: float = DEFAULT_TOL) -> BinaryForm:
    """Normalized greatest common divisor of two forms.

    Exact: content 1 with leading coefficient in the first quadrant. Float:
    approximate gcd whose largest coefficient is 1.
    """
    A._check(B)
    if A.is_zero() and B.is_zero():
        raise InvalidInput("gcd of two zero forms")
    if A.is_exact:
        if A.is_zero():
            return B.normalized()
        if B.is_zero():
            return A.normalized()
        ma, a = _split_infinity(A)
        mb, b = _split_infinity(B)
        g = _pgcd(a, b)
        m = min(ma, mb)
        G = _homogenize(g, len(g) - 1 + m)
        return G.normalized()
    return BinaryForm(numeric.approx_gcd(A.array(), B.array(), tol), Mode.FLOAT).normalized()


def divide_forms(A: BinaryForm, G: BinaryForm) -> BinaryForm:
    """Quotient ``A / G`` (exact division, or least squares for floats)."""
    A._check(G)
    if A.is_exact:
        mg, g = _split_infinity(G)
        ma, a = _split_infinity(A)
        if mg > ma:
            raise InvalidInput("divisor does not divide")
        q, r = _pdivmod(a, g)
        if r:
            raise InvalidInput("divisor does not divide")
        return _homogenize(q, A.degree - G.degree)
    return BinaryForm(numeric.divide(A.array(), G.array()), Mode.FLOAT)


def squarefree_decomposition(F: BinaryForm, tol: float = DEFAULT_TOL) -> list[tuple[BinaryForm, int]]:
    """Pairwise coprime square-free ``(G_k, k)`` with ``F ~ prod G_k**k``.

    Exponents strictly increase; constant factors are dropped.
    """
    if F.is_zero():
        raise InvalidInput("square-free decomposition of the zero form")
    if F.degree == 0:
        return []
    if not F.is_exact:
        return [(BinaryForm(g, Mode.FLOAT).normalized(), k)
                for g, k in numeric.squarefree_chain(F.array(), tol)]
    m, f = _split_infinity(F)
    parts = {k: _homogenize(g, len(g) - 1) for g, k in _yun(f)} if len(f) > 1 else {}
    if m:
        zf = BinaryForm.monomial(0, 1)
        parts[m] = parts[m] * zf if m in parts else zf
    return [(parts[k].normalized(), k) for k in sorted(parts)]


def squarefree_part(F: BinaryForm, tol: float = DEFAULT_TOL) -> BinaryForm:
    out = BinaryForm.constant(1, F.mode)
    for G, _ in squarefree_decomposition(F, tol):
        out = out * G
    return out


def _exact_det(rows: list[list[GaussianRational]]) -> GaussianRational:
    n = len(rows)
    M = [list(r) for r in rows]
    det = ONE
    for col in range(n):
        piv = next((r for r in range(col, n) if M[r][col]), None)
        if piv is None:
            return ZERO
        if piv != col:
            M[col], M[piv] = M[piv], M[col]
            det = -det
        p = M[col][col]
        det = det * p
        inv = ONE / p
        for r in range(col + 1, n):
            f = M[r][col] * inv
            if f:
                for c in range(col, n):
                    M[r][c] = M[r][c] - f * M[col][c]
    return det


def resultant(A: BinaryForm, B: BinaryForm):
    """Homogeneous resultant (Sylvester determinant at the declared degrees).

    Zero exactly when ``A`` and ``B`` share a projective root, including a
    common root at infinity.
    """
    A._check(B)
    if A.is_zero() or B.is_zero():
        raise InvalidInput("resultant with a zero form")
    if A.is_exact:
        if A.degree + B.degree == 0:
            return ONE
        return _exact_det(numeric.sylvester_matrix(list(A.coeffs), list(B.coeffs)))
    return numeric.sylvester_det(A.array(), B.array())


def wronskian_forms(P: BinaryForm, Q: BinaryForm) -> BinaryForm:
    """``P_X Q_Z - P_Z Q_X``, a form of degree ``2d - 2``."""
    return P.d_dx() * Q.d_dz() - P.d_dz() * Q.d_dx()


def proportional(A: BinaryForm, B: BinaryForm, tol: float = DEFAULT_TOL) -> bool:
    """Whether two forms of equal degree differ by a nonzero scalar."""
    A._check(B)
    if A.degree != B.degree:
        return False
    if A.is_exact:
        return A.normalized() == B.normalized()
    return vector_residual(A.array(), B.array()) < tol


def vector_residual(u: np.ndarray, v: np.ndarray) -> float:
    """Relative distance from ``u`` to the complex line through ``v``.

    Symmetric in exact arithmetic (sine of the angle between the lines).
    """
    nu, nv = np.linalg.norm(u), np.linalg.norm(v)
    if nu == 0 or nv == 0:
        return 0.0 if nu == nv else 1.0
    u = u / nu
    v = v / nv
    return float(np.linalg.norm(u - np.vdot(v, u) * v))
