"""Deciding whether a rational map is equivalent to a real or pseudoreal one.

Two independent routes are run and compared. The divisor route checks that
the sigma divisor is stable under the involution. The constructive route
transports ``f`` across the involution, recovers the Möbius factor ``m`` with
``transport(f) = m o f``, and solves ``conj(g) m = g`` (or its twisted form)
for a certificate ``g``.
"""

from __future__ import annotations

import enum
import math
from dataclasses import dataclass, field

import numpy as np

from .divisor import (Divisor, StabilityWitness, form_is_tau_stable,
                      is_tau_stable, sigma_divisor, sigma_form_exact)
from .divisor import _divisor_of_form
from .errors import ConsistencyError, InvalidInput, NumericalFailure
from .geometry import (J, Involution, Mobius, apply_to_map, chordal_distance,
                       map_residual, maps_equal_up_to_scale,
                       mobius_from_three_pairs)
from .maps import RationalMap, wronskian
from .numkernel import (DEFAULT_TOL, GaussianRational, Mode, SpherePoint,
                        vector_residual)
from .numkernel.forms import eval_form_xz
from .numkernel.scalar import sqrt_norm_witness

DESCENT_TOL_FACTOR = 1000
"""Slack (in units of ``tol``) for the consistency check on ``conj(M) M``."""
VERIFY_TOL_FACTOR = 100
"""A certificate whose verification residual exceeds this many ``tol`` is rejected."""
MAX_DESCENT_TRIES = 32
_PROBE_SEPARATIONS = (0.5, 0.1, None)


class VerdictKind(enum.Enum):
    REAL = "real"
    PSEUDOREAL = "pseudoreal"
    NOT_EQUIVALENT = "not_equivalent"


@dataclass
class Verdict:
    kind: VerdictKind
    g: Mobius | None = None
    witness: StabilityWitness | None = None
    sigma: Divisor = field(default_factory=Divisor)
    residual: float | None = None
    lambda_sign: int | None = None

    @property
    def equivalent(self) -> bool:
        return self.kind is not VerdictKind.NOT_EQUIVALENT


@dataclass(frozen=True)
class Descent:
    kind: str  # "real", "pseudoreal" or "inconsistent"
    g: Mobius | None = None
    lambda_sign: int | None = None


# ---------------------------------------------------------------------------
# transport and Möbius factor
# ---------------------------------------------------------------------------

def conj_transport(f: RationalMap, tau: Involution) -> RationalMap:
    """The holomorphic map ``p -> conj(f(tau p))``; an involution on maps."""
    return RationalMap(tau.transport_form(f.P), tau.transport_form(f.Q), reduce=False)


def _float_probes(rng: np.random.Generator, n: int = 64) -> list[SpherePoint]:
    golden = math.pi * (3.0 - math.sqrt(5.0))
    offset = float(rng.random())
    pts = []
    for i in range(n):
        x3 = 1.0 - 2.0 * ((i + offset) % n + 0.5) / n
        r = math.sqrt(max(0.0, 1.0 - x3 * x3))
        th = golden * i + 2 * math.pi * offset
        x1, x2 = r * math.cos(th), r * math.sin(th)
        if x3 < 0:
            pts.append(SpherePoint(complex(x1, x2), complex(1.0 - x3)))
        else:
            pts.append(SpherePoint(complex(1.0 + x3), complex(x1, -x2)))
    return pts


def _exact_probes(bound: int = 4) -> list[SpherePoint]:
    pts = [(a, b) for a in range(-bound, bound + 1) for b in range(-bound, bound + 1)]
    pts.sort(key=lambda z: (z[0] ** 2 + z[1] ** 2, z))
    out = [SpherePoint(GaussianRational(a, b), GaussianRational(1)) for a, b in pts]
    out.insert(3, SpherePoint.infinity(Mode.EXACT))
    return out


def _pick_probes(f: RationalMap, F: RationalMap, tol: float, rng) -> tuple[list, list, list]:
    W = wronskian(f) if f.degree >= 2 else None
    cands = _exact_probes() if f.is_exact else _float_probes(rng)
    wnorm = W.norm() if W is not None else 1.0
    for sep in _PROBE_SEPARATIONS:
        src, fv, Fv = [], [], []
        for p in cands:
            if W is not None:
                wv = eval_form_xz(W, p.X, p.Z)
                if (not wv) if f.is_exact else abs(wv) < 10 * tol * wnorm:
                    continue
            a, b = f(p), F(p)
            if f.is_exact and sep is not None:
                a_f, b_f = a.to_float(), b.to_float()
                if any(chordal_distance(a_f, x.to_float()) < sep or
                       chordal_distance(b_f, y.to_float()) < sep for x, y in zip(fv, Fv)):
                    continue
            elif f.is_exact:
                if any(a == x or b == y for x, y in zip(fv, Fv)):
                    continue
            else:
                lim = sep if sep is not None else 10 * tol
                if any(chordal_distance(a, x) < lim or chordal_distance(b, y) < lim
                       for x, y in zip(fv, Fv)):
                    continue
            src.append(p)
            fv.append(a)
            Fv.append(b)
            if len(src) == 3:
                return src, fv, Fv
    raise NumericalFailure("could not find three admissible probe points")


def _polish(m: Mobius, f: RationalMap, F: RationalMap) -> Mobius:
    """One least-squares pass on the entries of ``m`` so that ``m o f ~ F``."""
    P, Q = f.P.array(), f.Q.array()
    n = len(P)
    A = np.zeros((2 * n, 4), dtype=complex)
    A[:n, 0], A[:n, 1] = P, Q
    A[n:, 2], A[n:, 3] = P, Q
    for _ in range(2):
        v = apply_to_map(m, f).vector()
        u = F.vector()
        s = np.vdot(u, v) / np.vdot(u, u)
        x, *_ = np.linalg.lstsq(A, s * u, rcond=None)
        try:
            m = Mobius(*(complex(e) for e in x))
        except InvalidInput:
            break
    return m


def mobius_factor(f: RationalMap, F: RationalMap, tol: float = DEFAULT_TOL,
                  seed: int | np.random.Generator = 0) -> Mobius | None:
    """The Möbius ``m`` with ``F = m o f``, or None when there is none.

    ``m`` is pinned down by three probe points whose ``f``-values are distinct
    and which avoid the critical points, then accepted only if ``m o f``
    reproduces ``F`` coefficient-wise (exactly, or within ``tol``).
    """
    if f.mode is not F.mode:
        raise InvalidInput("maps in different modes")
    if f.degree != F.degree:
        return None
    if f.degree < 1:
        raise InvalidInput("mobius_factor needs nonconstant maps")
    rng = np.random.default_rng(seed)
    src, fv, Fv = _pick_probes(f, F, tol, rng)
    try:
        m = mobius_from_three_pairs(fv, Fv, tol=tol)
    except InvalidInput:
        return None
    if not f.is_exact:
        m = _polish(m, f, F)
    return m if maps_equal_up_to_scale(apply_to_map(m, f), F, tol) else None


# ---------------------------------------------------------------------------
# descent in the Möbius group
# ---------------------------------------------------------------------------

def _exact_matrix(m: Mobius):
    return [[m.a, m.b], [m.c, m.d]]


def _mm(A, B):
    return [[A[0][0] * B[0][0] + A[0][1] * B[1][0], A[0][0] * B[0][1] + A[0][1] * B[1][1]],
            [A[1][0] * B[0][0] + A[1][1] * B[1][0], A[1][0] * B[0][1] + A[1][1] * B[1][1]]]


def _mconj(A):
    return [[x.conjugate() for x in row] for row in A]


def _madd(A, B):
    return [[A[i][j] + B[i][j] for j in range(2)] for i in range(2)]


_J_EXACT = [[GaussianRational(0), GaussianRational(-1)], [GaussianRational(1), GaussianRational(0)]]
_J_FLOAT = np.array([[0, -1], [1, 0]], dtype=complex)


def _twisted(G, M, sign: int, exact: bool):
    """``conj(G) M`` (real class) or ``J^-1 conj(G) M`` (pseudoreal class)."""
    if exact:
        out = _mm(_mconj(G), M)
        if sign < 0:
            out = _mm([[GaussianRational(0), GaussianRational(1)],
                       [GaussianRational(-1), GaussianRational(0)]], out)
        return out
    out = np.conj(G) @ M
    return -_J_FLOAT @ out if sign < 0 else out


def _admissible(G, M, sign: int, exact: bool, tol: float) -> bool:
    T = _twisted(G, M, sign, exact)
    if exact:
        u = [x for row in G for x in row]
        v = [x for row in T for x in row]
        i = next(k for k, x in enumerate(u) if x)
        return bool(v[i]) and all(x * v[i] == y * u[i] for x, y in zip(u, v))
    return vector_residual(T.ravel(), np.asarray(G).ravel()) < tol


def descent_solve(m: Mobius, tau: Involution, tol: float = DEFAULT_TOL,
                  seed: int | np.random.Generator = 0) -> Descent:
    """Solve for ``g`` with ``conj(g) m = g`` or ``conj(g) m = J g``.

    ``conj(M) M`` must be a real scalar ``lambda`` times the identity.
    After rescaling to ``conj(M) M = sign(lambda) I``, ``G = X + conj(X) M``
    solves the first equation and ``G = X + J conj(X) M`` the second, for any
    ``X`` making ``G`` invertible. The identity is tried before random ``X``.
    """
    rng = np.random.default_rng(seed)
    if m.is_exact:
        M = _exact_matrix(m)
        N = _mm(_mconj(M), M)
        lam = N[0][0]
        if N[0][1] or N[1][0] or N[1][1] != lam or not lam.is_real() or not lam:
            return Descent("inconsistent")
        sign = 1 if lam.re > 0 else -1
        s = sqrt_norm_witness(abs(lam.re))
        if s is not None:
            Ms = [[x / s for x in row] for row in M]
            g = _exact_certificate(Ms, sign, rng)
            if g is not None:
                return Descent("real" if sign > 0 else "pseudoreal", g, sign)
        M = m.matrix()
    else:
        M = m.matrix()
    N = np.conj(M) @ M
    lam = np.trace(N) / 2
    dtol = DESCENT_TOL_FACTOR * tol
    if (np.linalg.norm(N - lam * np.eye(2)) > dtol * np.linalg.norm(N)
            or abs(lam.imag) > dtol * abs(lam) or lam == 0):
        return Descent("inconsistent")
    sign = 1 if lam.real > 0 else -1
    Ms = M / math.sqrt(abs(lam.real))
    g = _float_certificate(Ms, sign, rng, dtol)
    if g is None:
        raise NumericalFailure("no invertible descent solution after retries")
    return Descent("real" if sign > 0 else "pseudoreal", g, sign)


def _exact_certificate(Ms, sign, rng) -> Mobius | None:
    I2 = [[GaussianRational(1), GaussianRational(0)], [GaussianRational(0), GaussianRational(1)]]
    if _admissible(I2, Ms, sign, True, 0.0):
        return Mobius.identity(Mode.EXACT)
    for _ in range(MAX_DESCENT_TRIES):
        ints = rng.integers(-3, 4, size=8)
        X = [[GaussianRational(int(ints[0]), int(ints[1])), GaussianRational(int(ints[2]), int(ints[3]))],
             [GaussianRational(int(ints[4]), int(ints[5])), GaussianRational(int(ints[6]), int(ints[7]))]]
        XM = _mm(_mconj(X), Ms)
        G = _madd(X, XM if sign > 0 else _mm(_J_EXACT, XM))
        if G[0][0] * G[1][1] - G[0][1] * G[1][0]:
            return Mobius.from_matrix(G)
    return None


def _float_certificate(Ms, sign, rng, dtol) -> Mobius | None:
    if _admissible(np.eye(2, dtype=complex), Ms, sign, False, dtol):
        return Mobius.identity(Mode.FLOAT)
    for _ in range(MAX_DESCENT_TRIES):
        X = rng.standard_normal((2, 2)) + 1j * rng.standard_normal((2, 2))
        XM = np.conj(X) @ Ms
        G = X + (XM if sign > 0 else _J_FLOAT @ XM)
        if abs(np.linalg.det(G)) > 1e-3 * np.linalg.norm(G) ** 2:
            return Mobius.from_matrix(G)
    return None


# ---------------------------------------------------------------------------
# criterion, verdict, verification
# ---------------------------------------------------------------------------

def _criterion(f: RationalMap, tau: Involution, tol: float):
    if f.degree <= 1:
        return True, StabilityWitness(matching=()), Divisor()
    if f.is_exact:
        T = sigma_form_exact(f)
        stable = form_is_tau_stable(T, tau)
        D = _divisor_of_form(T, tol)
        w = is_tau_stable(D, tau, tol)
        if w.stable != stable:
            raise NumericalFailure("exact stability and root matching disagree")
        return stable, w, D
    D = sigma_divisor(f, tol)
    w = is_tau_stable(D, tau, tol)
    return w.stable, w, D


def divisor_criterion(f: RationalMap, tau: Involution,
                      tol: float = DEFAULT_TOL) -> tuple[bool, StabilityWitness]:
    """Whether ``tau`` maps the sigma divisor of ``f`` to itself.

    Exact maps decide this without roots, by comparing the sigma form with
    its transport; the witness still comes from matching its roots.
    """
    stable, w, _ = _criterion(f, tau, tol)
    return stable, w


def _constant_verdict(f: RationalMap) -> Verdict:
    alpha, beta = f.P.coeffs[0], f.Q.coeffs[0]
    if beta:
        g = Mobius(beta, -alpha, 0 * beta, beta)
    else:
        one = alpha / alpha
        g = Mobius(0 * one, one, one, 0 * one)
    return Verdict(VerdictKind.REAL, g=g, witness=StabilityWitness(matching=()))


def reality_test(f: RationalMap, tau: Involution, tol: float = DEFAULT_TOL,
                 seed: int = 0) -> Verdict:
    """Classify ``f`` as real, pseudoreal or not equivalent to either.

    Raises :class:`ConsistencyError` when the divisor route and the
    constructive route disagree, or when a pseudoreal class appears for the
    involution with real points.
    """
    if f.degree == 0:
        v = _constant_verdict(f)
        v.residual = verify_verdict(f, tau, v)
        return v
    rng = np.random.default_rng(seed)
    stable, witness, D = _criterion(f, tau, tol)

    F = conj_transport(f, tau)
    m = mobius_factor(f, F, tol, rng)
    descent = descent_solve(m, tau, tol, rng) if m is not None else None
    constructed = descent is not None and descent.kind != "inconsistent"

    if constructed != stable:
        raise ConsistencyError(
            f"divisor criterion says {'stable' if stable else 'unstable'} but the "
            f"constructive route {'succeeded' if constructed else 'failed'}")
    if not constructed:
        return Verdict(VerdictKind.NOT_EQUIVALENT, witness=witness, sigma=D)
    if tau is Involution.CONJ and descent.kind == "pseudoreal":
        raise ConsistencyError("pseudoreal class for an involution with fixed points")
    kind = VerdictKind.REAL if descent.kind == "real" else VerdictKind.PSEUDOREAL
    v = Verdict(kind, g=descent.g, witness=witness, sigma=D, lambda_sign=descent.lambda_sign)
    v.residual = verify_verdict(f, tau, v)
    if v.residual > VERIFY_TOL_FACTOR * tol:
        raise NumericalFailure(f"certificate residual {v.residual:.3g} too large")
    return v


def verify_verdict(f: RationalMap, tau: Involution, v: Verdict) -> float:
    """Residual of the defining identity for the certificate in ``v``.

    Real: ``transport(g o f) = g o f``; pseudoreal: ``transport(g o f) = J o g o f``.
    Zero in exact arithmetic when the identity holds; infinite for a verdict
    without a certificate.
    """
    if v.g is None or v.kind is VerdictKind.NOT_EQUIVALENT:
        return math.inf
    g = v.g
    if f.is_exact and not g.is_exact:
        f = f.to_float()
    elif g.is_exact and not f.is_exact:
        g = g.to_float()
    h = apply_to_map(g, f)
    lhs = conj_transport(h, tau)
    if v.kind is VerdictKind.PSEUDOREAL:
        rhs = apply_to_map(J if h.is_exact else J.to_float(), h)
    else:
        rhs = h
    if h.is_exact:
        return 0.0 if maps_equal_up_to_scale(lhs, rhs) else map_residual(lhs, rhs)
    return map_residual(lhs, rhs)
