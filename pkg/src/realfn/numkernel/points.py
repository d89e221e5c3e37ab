"""Points of the Riemann sphere in homogeneous coordinates."""

from __future__ import annotations

import cmath
import math
from fractions import Fraction

import numpy as np

from ..errors import InvalidInput, ModeError
from .scalar import ONE, ZERO, GaussianRational, Mode, to_exact

_TWO_PI = 2.0 * math.pi
# float points this close to infinity (chordally) are snapped onto it
_INF_SNAP = 1e-14


class SpherePoint:
    """``[X:Z]`` on the Riemann sphere, stored in a canonical representative.

    Exact points are scaled to ``Z = 1`` (or ``[1:0]``), so structural
    equality is projective equality. Float points have unit Euclidean norm
    with ``Z`` (or ``X`` at infinity) real and positive.
    """

    __slots__ = ("X", "Z", "mode")

    def __init__(self, X, Z):
        exactish = [isinstance(v, (GaussianRational, Fraction)) for v in (X, Z)]
        floatish = [isinstance(v, (float, complex)) for v in (X, Z)]
        if any(exactish) and any(floatish):
            raise ModeError("point coordinates mix exact and floating scalars")
        mode = Mode.FLOAT if any(floatish) else Mode.EXACT
        if mode is Mode.EXACT:
            X, Z = to_exact(X), to_exact(Z)
            if not X and not Z:
                raise InvalidInput("[0:0] is not a point")
            if Z:
                X, Z = X / Z, ONE
            else:
                X, Z = ONE, ZERO
        else:
            X, Z = complex(X), complex(Z)
            n = math.hypot(abs(X), abs(Z))
            if n == 0 or not math.isfinite(n):
                raise InvalidInput("[0:0] is not a point")
            ref = Z if Z != 0 else X
            phase = ref.conjugate() / abs(ref)
            X, Z = X * phase / n, Z * phase / n
            if abs(Z) < _INF_SNAP:
                X, Z = 1 + 0j, 0j
            else:
                Z = complex(Z.real, 0.0)
        self.X, self.Z, self.mode = X, Z, mode

    @classmethod
    def from_affine(cls, z, mode: Mode | None = None) -> "SpherePoint":
        """Point ``[z:1]``; ``None`` or an infinite float gives ``[1:0]``."""
        if z is None or (isinstance(z, (float, complex)) and cmath.isinf(z)):
            return cls.infinity(mode or Mode.FLOAT)
        if isinstance(z, (float, complex)) or mode is Mode.FLOAT:
            return cls(complex(z), 1 + 0j)
        return cls(to_exact(z), ONE)

    @classmethod
    def infinity(cls, mode: Mode = Mode.EXACT) -> "SpherePoint":
        return cls(ONE, ZERO) if mode is Mode.EXACT else cls(1 + 0j, 0j)

    @classmethod
    def from_vector(cls, v) -> "SpherePoint":
        return cls(complex(v[0]), complex(v[1]))

    @property
    def is_exact(self) -> bool:
        return self.mode is Mode.EXACT

    @property
    def is_infinity(self) -> bool:
        return not self.Z if self.is_exact else self.Z == 0

    def affine(self) -> complex:
        """``X/Z`` as a complex number, ``inf`` at infinity."""
        if self.is_exact:
            return complex("inf") if not self.Z else complex(self.X / self.Z)
        if self.Z == 0:
            return complex("inf")
        return self.X / self.Z

    def vector(self) -> np.ndarray:
        return np.array([complex(self.X), complex(self.Z)], dtype=complex)

    def to_float(self) -> "SpherePoint":
        return self if not self.is_exact else SpherePoint(complex(self.X), complex(self.Z))

    def sort_key(self) -> tuple:
        """Total order: modulus of the affine value, then argument; infinity last."""
        z = self.affine()
        if cmath.isinf(z):
            return (1, 0.0, 0.0)
        r = abs(z)
        a = cmath.phase(z) % _TWO_PI if r else 0.0
        if a > _TWO_PI - 1e-9:
            a = 0.0
        return (0, round(r, 9), round(a, 9))

    def __eq__(self, other):
        if not isinstance(other, SpherePoint):
            return NotImplemented
        if self.mode is not other.mode:
            raise ModeError("comparing exact and floating points")
        return self.X == other.X and self.Z == other.Z

    def __hash__(self):
        return hash((self.X, self.Z))

    def __repr__(self):
        if self.is_exact:
            return "SpherePoint(inf)" if not self.Z else f"SpherePoint({self.X})"
        z = self.affine()
        return f"SpherePoint({z:.6g})" if not cmath.isinf(z) else "SpherePoint(inf)"


def chordal_distance(p: SpherePoint, q: SpherePoint) -> float:
    """``2 |X_p Z_q - X_q Z_p| / (|p| |q|)``: a metric on the sphere, diameter 2."""
    if p.mode is not q.mode:
        raise ModeError("chordal distance between exact and floating points")
    u, v = p.vector(), q.vector()
    num = abs(u[0] * v[1] - v[0] * u[1])
    return float(min(2.0, 2.0 * num / (np.linalg.norm(u) * np.linalg.norm(v))))


__all__ = ["SpherePoint", "chordal_distance", "GaussianRational"]
