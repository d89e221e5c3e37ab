"""Sphere points, Möbius transformations and the two real structures of the sphere."""

from __future__ import annotations

import enum

import numpy as np

from .errors import InvalidInput, ModeError
from .maps import RationalMap
from .numkernel import (DEFAULT_TOL, BinaryForm, GaussianRational, Mode,
                        SpherePoint, chordal_distance, vector_residual)
from .numkernel.scalar import conj, to_exact

# float entries below this (after unit Frobenius scaling) count as zero when
# choosing the entry that fixes the phase
_PHASE_EPS = 1e-12


class Mobius:
    """``[X:Z] -> [aX + bZ : cX + dZ]``, identified up to a nonzero scalar.

    Stored normalized: exact matrices have first nonzero entry (row-major)
    equal to 1; float matrices have Frobenius norm 1 and first nonzero entry
    real and positive.
    """

    __slots__ = ("a", "b", "c", "d", "mode")

    def __init__(self, a, b, c, d, *, tol: float = DEFAULT_TOL):
        entries = [a, b, c, d]
        floatish = any(isinstance(e, (float, complex)) for e in entries)
        if floatish and any(isinstance(e, GaussianRational) for e in entries):
            raise ModeError("Möbius entries mix exact and floating scalars")
        if floatish:
            m = np.array(entries, dtype=complex)
            scale = np.max(np.abs(m))
            if scale == 0 or abs(m[0] * m[3] - m[1] * m[2]) <= tol * scale ** 2:
                raise InvalidInput("singular Möbius matrix")
            m = m / np.linalg.norm(m)
            k = next(i for i, e in enumerate(m) if abs(e) > _PHASE_EPS)
            m = m * (abs(m[k]) / m[k])
            m[k] = abs(m[k])
            self.a, self.b, self.c, self.d = (complex(e) for e in m)
            self.mode = Mode.FLOAT
        else:
            e = [to_exact(x) for x in entries]
            if not (e[0] * e[3] - e[1] * e[2]):
                raise InvalidInput("singular Möbius matrix")
            lead = next(x for x in e if x)
            self.a, self.b, self.c, self.d = (x / lead for x in e)
            self.mode = Mode.EXACT

    @classmethod
    def identity(cls, mode: Mode = Mode.EXACT) -> "Mobius":
        return cls(1, 0, 0, 1) if mode is Mode.EXACT else cls(1.0, 0.0, 0.0, 1.0)

    @classmethod
    def from_matrix(cls, M, **kw) -> "Mobius":
        return cls(M[0][0], M[0][1], M[1][0], M[1][1], **kw)

    @property
    def is_exact(self) -> bool:
        return self.mode is Mode.EXACT

    def entries(self) -> tuple:
        return (self.a, self.b, self.c, self.d)

    def matrix(self) -> np.ndarray:
        return np.array([[complex(self.a), complex(self.b)],
                         [complex(self.c), complex(self.d)]])

    def to_float(self) -> "Mobius":
        if not self.is_exact:
            return self
        return Mobius(*(complex(e) for e in self.entries()))

    def det(self):
        return self.a * self.d - self.b * self.c

    def __call__(self, p: SpherePoint) -> SpherePoint:
        return apply_mobius(self, p)

    def __matmul__(self, other: "Mobius") -> "Mobius":
        return compose(self, other)

    def __eq__(self, other):
        if not isinstance(other, Mobius):
            return NotImplemented
        if self.mode is not other.mode:
            raise ModeError("comparing exact and floating Möbius maps")
        return self.entries() == other.entries()

    def __hash__(self):
        return hash(self.entries())

    def is_close(self, other: "Mobius", tol: float = DEFAULT_TOL) -> bool:
        """Projective equality (exact) or matrix residual below ``tol`` (float)."""
        if self.is_exact and other.is_exact:
            return self == other
        u = np.array([complex(e) for e in self.entries()])
        v = np.array([complex(e) for e in other.entries()])
        return vector_residual(u, v) < tol

    def __repr__(self):
        def fmt(e):
            return str(e) if isinstance(e, GaussianRational) else f"{e:.6g}"
        return "Mobius(" + ", ".join(fmt(e) for e in self.entries()) + ")"


def apply_mobius(g: Mobius, p: SpherePoint) -> SpherePoint:
    if g.mode is not p.mode:
        raise ModeError("Möbius map and point in different modes")
    return SpherePoint(g.a * p.X + g.b * p.Z, g.c * p.X + g.d * p.Z)


def compose(g: Mobius, h: Mobius) -> Mobius:
    """``g o h`` (matrix product ``G H``)."""
    if g.mode is not h.mode:
        raise ModeError("composing exact and floating Möbius maps")
    return Mobius(g.a * h.a + g.b * h.c, g.a * h.b + g.b * h.d,
                  g.c * h.a + g.d * h.c, g.c * h.b + g.d * h.d)


def inverse(g: Mobius) -> Mobius:
    return Mobius(g.d, -g.b, -g.c, g.a)


def conjugate_mobius(g: Mobius) -> Mobius:
    """Entrywise complex conjugate."""
    return Mobius(*(conj(e) for e in g.entries()))


def apply_to_map(g: Mobius, f: RationalMap) -> RationalMap:
    """``g o f``."""
    if g.mode is not f.mode:
        raise ModeError("Möbius map and rational map in different modes")
    return f.post_compose(g.a, g.b, g.c, g.d)


class Involution(enum.Enum):
    """Antiholomorphic involutions of the sphere, up to conjugacy.

    ``CONJ`` fixes the circle R u {inf}; ``ANTIPODAL`` ``[X:Z] -> [-conj Z : conj X]``
    has no fixed points.
    """

    CONJ = "conj"
    ANTIPODAL = "antipodal"

    def __call__(self, p: SpherePoint) -> SpherePoint:
        return apply_involution(self, p)

    def transport_form(self, F: BinaryForm) -> BinaryForm:
        """The form whose zero divisor is the image of ``div F`` under ``self``."""
        if self is Involution.CONJ:
            return F.conj()
        return F.conj().swap_antipodal()


def apply_involution(tau: Involution, p: SpherePoint) -> SpherePoint:
    if tau is Involution.CONJ:
        return SpherePoint(conj(p.X), conj(p.Z))
    return SpherePoint(-conj(p.Z), conj(p.X))


def is_fixed(tau: Involution, p: SpherePoint, tol: float = DEFAULT_TOL) -> bool:
    q = apply_involution(tau, p)
    if p.is_exact:
        return p == q
    return chordal_distance(p, q) < tol


def mobius_from_three_pairs(src, dst, *, tol: float = DEFAULT_TOL) -> Mobius:
    """The unique Möbius map with ``src[i] -> dst[i]``.

    Each triple is first sent to the normal form ``(inf, 0, 1)``; writing the
    middle point as a combination of the outer two fixes the column scales.
    """
    src, dst = list(src), list(dst)
    if len(src) != 3 or len(dst) != 3:
        raise InvalidInput("need exactly three source and three target points")
    modes = {p.mode for p in src + dst}
    if len(modes) > 1:
        raise ModeError("mixed exact and floating points")
    A = _normal_form_matrix(src, tol)
    B = _normal_form_matrix(dst, tol)
    return compose(B, inverse(A))


def _normal_form_matrix(pts, tol) -> Mobius:
    p1, p2, p3 = pts
    exact = p1.is_exact
    for i in range(3):
        for j in range(i + 1, 3):
            same = (pts[i] == pts[j]) if exact else chordal_distance(pts[i], pts[j]) <= 10 * tol
            if same:
                raise InvalidInput("repeated point in a triple")
    # solve p2 = mu * p3 + nu * p1 for the column scales
    det = p3.X * p1.Z - p1.X * p3.Z
    mu = (p2.X * p1.Z - p1.X * p2.Z) / det
    nu = (p3.X * p2.Z - p2.X * p3.Z) / det
    # columns: image of [1:0] is p3, image of [0:1] is p1, image of [1:1] is p2
    return Mobius(mu * p3.X, nu * p1.X, mu * p3.Z, nu * p1.Z, tol=tol * 1e-3)


def map_residual(f1: RationalMap, f2: RationalMap) -> float:
    """Distance between the coefficient lines of two maps (0 when proportional)."""
    if f1.degree != f2.degree:
        return 1.0
    return vector_residual(f1.vector(), f2.vector())


def maps_equal_up_to_scale(f1: RationalMap, f2: RationalMap, tol: float = DEFAULT_TOL) -> bool:
    """Whether ``(P1, Q1)`` and ``(P2, Q2)`` differ by one common scalar."""
    if f1.mode is not f2.mode:
        raise ModeError("comparing exact and floating maps")
    if f1.degree != f2.degree:
        return False
    if f1.is_exact:
        u = list(f1.P.coeffs) + list(f1.Q.coeffs)
        v = list(f2.P.coeffs) + list(f2.Q.coeffs)
        i = next(k for k, x in enumerate(u) if x)
        if not v[i]:
            return False
        return all(x * v[i] == y * u[i] for x, y in zip(u, v))
    return map_residual(f1, f2) < tol


J = Mobius(0, -1, 1, 0)
"""``w -> -1/w``."""

__all__ = [
    "SpherePoint", "Mobius", "Involution", "J", "chordal_distance",
    "apply_involution", "apply_mobius", "apply_to_map", "compose", "inverse",
    "conjugate_mobius", "is_fixed", "mobius_from_three_pairs",
    "maps_equal_up_to_scale", "map_residual",
]
