"""Fibers, critical values and the divisor of the preimage of the critical values."""

from __future__ import annotations

from dataclasses import dataclass
from typing import Iterable

import numpy as np
from scipy.optimize import linear_sum_assignment

from .errors import InvalidInput, NumericalFailure
from .geometry import Involution, apply_involution
from .maps import RationalMap, wronskian
from .numkernel import (DEFAULT_TOL, BinaryForm, Mode, SpherePoint,
                        chordal_distance, compose_forms, proportional,
                        resultant, roots_with_multiplicities, squarefree_part)
from .numkernel.forms import _pmul
from .numkernel.scalar import ONE, ZERO, to_exact

MATCH_FACTOR = 100
"""Stability matching radius, in units of ``tol``."""


@dataclass(frozen=True)
class Divisor:
    """Finite sum of distinct sphere points with positive multiplicities.

    Entries are kept in the canonical order of :meth:`SpherePoint.sort_key`.
    """

    entries: tuple[tuple[SpherePoint, int], ...] = ()

    @classmethod
    def from_entries(cls, entries: Iterable[tuple[SpherePoint, int]]) -> "Divisor":
        entries = [(p, int(k)) for p, k in entries]
        if any(k <= 0 for _, k in entries):
            raise InvalidInput("divisor multiplicities must be positive")
        return cls(tuple(sorted(entries, key=lambda e: e[0].sort_key())))

    @property
    def degree(self) -> int:
        return sum(k for _, k in self.entries)

    @property
    def support(self) -> list[SpherePoint]:
        return [p for p, _ in self.entries]

    @property
    def multiplicities(self) -> list[int]:
        return [k for _, k in self.entries]

    def __len__(self):
        return len(self.entries)

    def __iter__(self):
        return iter(self.entries)

    def __add__(self, other: "Divisor") -> "Divisor":
        return Divisor.from_entries(self.entries + other.entries)

    def image(self, tau: Involution) -> "Divisor":
        return Divisor.from_entries((apply_involution(tau, p), k) for p, k in self.entries)

    def to_float(self) -> "Divisor":
        return Divisor(tuple((p.to_float(), k) for p, k in self.entries))


@dataclass(frozen=True)
class StabilityWitness:
    """Either a perfect matching ``(i, j)`` with ``tau(p_i) = p_j`` or one failing index."""

    matching: tuple[tuple[int, int], ...] | None = None
    failure: int | None = None

    @property
    def stable(self) -> bool:
        return self.failure is None


def _divisor_of_form(F: BinaryForm, tol: float) -> Divisor:
    return Divisor.from_entries((e.point, e.multiplicity)
                                for e in roots_with_multiplicities(F, tol))


def preimage_divisor(f: RationalMap, v: SpherePoint, tol: float = DEFAULT_TOL) -> Divisor:
    """Zero divisor of ``beta P - alpha Q`` for ``v = [alpha:beta]``; degree ``deg f``."""
    if f.degree < 1:
        raise InvalidInput("fibers of a constant map")
    if f.is_exact and not v.is_exact:
        f = f.to_float()
    return _divisor_of_form(f.pencil(v), tol)


@dataclass(frozen=True)
class CriticalValue:
    value: SpherePoint
    points: tuple[SpherePoint, ...]
    # largest Wronskian multiplicity among the critical points over this value
    order: int


def _critical_data(f: RationalMap, tol: float) -> list[CriticalValue]:
    if f.degree < 1:
        raise InvalidInput("critical values of a constant map")
    if f.degree == 1:
        return []
    roots = roots_with_multiplicities(wronskian(f), tol)
    radius = MATCH_FACTOR * tol
    groups: list[list] = []
    for e in roots:
        g = f if (e.point.is_exact or not f.is_exact) else f.to_float()
        val = g(e.point)
        for grp in groups:
            if val.is_exact and grp[0].is_exact:
                hit = val == grp[0]
            else:
                hit = chordal_distance(val.to_float(), grp[0].to_float()) < radius
            if hit:
                grp[1].append(e.point)
                if e.multiplicity > grp[2]:
                    grp[0], grp[2] = val, e.multiplicity
                break
        else:
            groups.append([val, [e.point], e.multiplicity])
    out = [CriticalValue(v, tuple(pts), k) for v, pts, k in groups]
    return sorted(out, key=lambda c: c.value.sort_key())


def critical_values(f: RationalMap, tol: float = DEFAULT_TOL) -> list[SpherePoint]:
    """Distinct images of the Wronskian roots; empty exactly when ``deg f == 1``.

    Values closer than the matching radius are merged, keeping the one coming
    from the critical point of highest order.
    """
    return [c.value for c in _critical_data(f, tol)]


def sigma_divisor(f: RationalMap, tol: float = DEFAULT_TOL, *,
                  support: str = "preimage") -> Divisor:
    """``sum ord_p * p`` over the full preimage of the critical values.

    ``support="critical"`` restricts the sum to critical points (the
    alternative reading, kept for experiments). Exact maps are routed through
    :func:`sigma_form_exact`, whose zero divisor is the same sum.
    """
    if support not in ("preimage", "critical"):
        raise InvalidInput(f"unknown support {support!r}")
    if f.degree <= 1:
        return Divisor()
    if f.is_exact:
        D = _divisor_of_form(sigma_form_exact(f), tol)
    else:
        D = Divisor()
        for cv in _critical_data(f, tol):
            D = D + preimage_divisor(f, cv.value, tol)
    if support == "critical":
        D = Divisor.from_entries((p, k) for p, k in D if k > 1)
    return D


def critical_value_form(f: RationalMap) -> BinaryForm:
    """``V(alpha, beta) = Res_(X,Z)(beta P - alpha Q, W)``, exact.

    ``V`` is a form of degree ``2d - 2`` in the value coordinates vanishing
    exactly at the critical values. It is recovered by interpolation from
    exact resultants at ``2d - 1`` rational values ``[t:1]``.
    """
    if not f.is_exact:
        raise InvalidInput("critical_value_form needs an exact map")
    W = wronskian(f)
    n = W.degree
    ts = list(range(n + 1))
    vals = []
    for t in ts:
        pencil = f.P - f.Q.scale(t)
        vals.append(resultant(pencil, W))
    coeffs = _interpolate(ts, vals)
    return BinaryForm(coeffs + [0] * (n + 1 - len(coeffs)), Mode.EXACT)


def _interpolate(xs, ys) -> list:
    """Ascending coefficients of the Lagrange interpolant (exact)."""
    n = len(xs)
    out = [ZERO] * n
    for i in range(n):
        basis = [ONE]
        denom = ONE
        for j in range(n):
            if j != i:
                basis = _pmul(basis, [to_exact(-xs[j]), ONE])
                denom = denom * (xs[i] - xs[j])
        scale = ys[i] / denom
        for k, b in enumerate(basis):
            out[k] = out[k] + scale * b
    return out


def sigma_form_exact(f: RationalMap) -> BinaryForm:
    """Exact form ``T`` with zero divisor equal to the sigma divisor of ``f``.

    ``T = Res_(alpha, beta)(V_sf, beta P - alpha Q)`` with ``V_sf`` the
    square-free critical-value form. The pencil is linear in ``(alpha,
    beta)`` with root ``[P:Q]``, so the resultant is ``V_sf(P, Q)`` up to sign,
    which is what is computed. Degree-1 maps give the constant form 1.
    """
    if not f.is_exact:
        raise InvalidInput("sigma_form_exact needs an exact map")
    if f.degree < 1:
        raise InvalidInput("sigma divisor of a constant map")
    if f.degree == 1:
        return BinaryForm.constant(1, Mode.EXACT)
    V = squarefree_part(critical_value_form(f))
    return compose_forms(V, f.P, f.Q).normalized()


def form_is_tau_stable(T: BinaryForm, tau: Involution, tol: float = DEFAULT_TOL) -> bool:
    """Whether the zero divisor of ``T`` is invariant under ``tau``."""
    return proportional(T, tau.transport_form(T), tol)


def is_tau_stable(D: Divisor, tau: Involution, tol: float = DEFAULT_TOL) -> StabilityWitness:
    """Match each ``tau(p_i)`` to an entry ``p_j`` of equal multiplicity.

    Uses an optimal assignment on chordal distances so the witness does not
    depend on entry order beyond the canonical sort; the failure witness is
    the first entry (canonical order) without an admissible partner.
    """
    n = len(D)
    if n == 0:
        return StabilityWitness(matching=())
    pts = [p.to_float() for p in D.support]
    mult = D.multiplicities
    radius = MATCH_FACTOR * tol
    images = [apply_involution(tau, p) for p in pts]
    dist = np.array([[chordal_distance(images[i], pts[j]) for j in range(n)]
                     for i in range(n)])
    admissible = (dist < radius) & (np.array(mult)[:, None] == np.array(mult)[None, :])
    for i in range(n):
        cand = np.sort(dist[i][admissible[i]])
        if len(cand) == 0:
            return StabilityWitness(failure=i)
        if len(cand) > 1 and cand[1] < 2 * cand[0]:
            raise NumericalFailure(f"entry {i} has two indistinguishable partners")
    cost = np.where(admissible, dist, 4.0 + dist)
    rows, cols = linear_sum_assignment(cost)
    for i, j in zip(rows, cols):
        if not admissible[i, j]:
            return StabilityWitness(failure=int(i))
    return StabilityWitness(matching=tuple((int(i), int(j)) for i, j in zip(rows, cols)))


def branch_pairing(values: list[SpherePoint], tau: Involution,
                   tol: float = DEFAULT_TOL) -> list[int] | None:
    """Index pairing ``i -> j`` with ``tau(v_i) = v_j`` on the critical values.

    Returns None when some value has no partner.
    """
    out = []
    for v in values:
        w = apply_involution(tau, v.to_float())
        d = [chordal_distance(w, u.to_float()) for u in values]
        j = int(np.argmin(d)) if d else -1
        if j < 0 or d[j] >= MATCH_FACTOR * tol:
            return None
        out.append(j)
    return out
