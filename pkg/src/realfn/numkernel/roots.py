"""Projective roots of binary forms, with multiplicities.

Float mode decides every multiplicity twice: once from the approximate
square-free decomposition and once by clustering the raw output of a
simultaneous-iteration solver around the distinct roots. Disagreement is a
:class:`NumericalFailure`, never a guess.
"""

from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction

import numpy as np
from numpy.polynomial import polynomial as npoly

from ..errors import InvalidInput, NumericalFailure
from . import numeric
from .forms import BinaryForm, eval_form_xz, squarefree_decomposition
from .points import SpherePoint
from .scalar import DEFAULT_TOL, ONE, ZERO, GaussianRational


@dataclass(frozen=True)
class RootEntry:
    point: SpherePoint
    multiplicity: int
    approximate: bool = False


def roots_with_multiplicities(F: BinaryForm, tol: float = DEFAULT_TOL) -> list[RootEntry]:
    """All projective roots of ``F``; multiplicities sum to ``F.degree``.

    Exact forms: roots at ``0`` and infinity and linear factors are exact,
    other roots of the square-free factors are refined in floating point and
    kept exact only when a small-denominator rounding verifies exactly.
    """
    if F.is_zero():
        raise InvalidInput("roots of the zero form")
    if F.degree == 0:
        return []
    if F.is_exact:
        out = _exact_roots(F, tol)
    else:
        out = _float_roots(F, tol)
    return sorted(out, key=lambda e: e.point.sort_key())


# ---------------------------------------------------------------------------
# float mode
# ---------------------------------------------------------------------------

def _refine(Fr: np.ndarray, w: complex, k: int) -> complex:
    """Newton on the ``(k-1)``-th derivative, where a ``k``-fold root is simple."""
    target = npoly.polyder(Fr, k - 1) if k > 1 else Fr
    return numeric.newton_polish(target, w, steps=6)


def _float_roots(F: BinaryForm, tol: float) -> list[RootEntry]:
    c = F.array()
    d = F.degree
    factors = numeric.squarefree_chain(c, tol)
    U = numeric.best_chart(c)
    Fr = numeric.rotate(c, U)

    distinct, mults = [], []
    for g, k in factors:
        gr = numeric.rotate(g, U)
        for w in numeric.poly_roots(gr):
            w = numeric.newton_polish(gr, complex(w))
            distinct.append(_refine(Fr, w, k))
            mults.append(k)
    if sum(mults) != d:
        raise NumericalFailure(f"square-free factors account for {sum(mults)} of {d} roots")
    distinct = np.array(distinct, dtype=complex)

    raw = numeric.aberth(Fr, numeric.poly_roots(Fr))
    if len(distinct) == 1:
        counts = [len(raw)]
    else:
        D = numeric.affine_chordal(raw[:, None], distinct[None, :])
        order = np.sort(D, axis=1)
        if np.any(order[:, 1] < 2.0 * order[:, 0]):
            raise NumericalFailure("a computed root is equidistant from two distinct roots")
        counts = np.bincount(np.argmin(D, axis=1), minlength=len(distinct)).tolist()
    if counts != mults:
        raise NumericalFailure(
            f"cluster sizes {counts} disagree with square-free exponents {mults}")

    radius = tol * np.maximum(1.0, np.abs(distinct))
    for i in range(len(distinct)):
        for j in range(i + 1, len(distinct)):
            sep = numeric.affine_chordal(distinct[i], distinct[j])
            if sep <= min(radius[i], radius[j]):
                raise NumericalFailure("distinct roots closer than the clustering radius")

    out = []
    for w, k in zip(distinct, mults):
        v = U @ np.array([w, 1.0])
        out.append(RootEntry(SpherePoint.from_vector(v), int(k)))
    return out


# ---------------------------------------------------------------------------
# exact mode
# ---------------------------------------------------------------------------

def _snap(w: complex, max_den: int = 10 ** 6) -> GaussianRational:
    return GaussianRational(Fraction(w.real).limit_denominator(max_den),
                            Fraction(w.imag).limit_denominator(max_den))


def _exact_roots(F: BinaryForm, tol: float) -> list[RootEntry]:
    out = []
    for G, k in squarefree_decomposition(F):
        if G.infinity_multiplicity():
            out.append(RootEntry(SpherePoint(ONE, ZERO), k))
        f = G.dehomogenize()
        if not f[0]:
            out.append(RootEntry(SpherePoint(ZERO, ONE), k))
            f = f[1:]
        if len(f) == 2:
            out.append(RootEntry(SpherePoint(-f[0], f[1]), k))
            continue
        if len(f) <= 1:
            continue
        fa = np.array([complex(c) for c in f])
        fa = fa / np.max(np.abs(fa))
        for w in numeric.poly_roots(fa):
            w = numeric.newton_polish(fa, complex(w))
            s = _snap(w)
            if not eval_form_xz(G, s, ONE):
                out.append(RootEntry(SpherePoint(s, ONE), k))
            else:
                out.append(RootEntry(SpherePoint(w, 1 + 0j), k, approximate=True))
    return out
