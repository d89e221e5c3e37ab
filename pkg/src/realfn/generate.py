"""Random test instances with known answers.

Seeds of a known class are post-composed with a random Möbius map ``h``;
the scrambled map is in the same class, and ``h`` is kept as ground truth.
"""

from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction

import numpy as np

from .errors import InvalidInput
from .geometry import Involution, Mobius, apply_to_map
from .maps import RationalMap
from .numkernel import BinaryForm, GaussianRational, Mode, numeric

# float seeds are redrawn until the Sylvester matrix of (P, Q) is at least
# this well conditioned, so that random instances stay far from degenerate
MIN_SYLVESTER_GAP = 1e-3
INT_RANGE = 5


@dataclass
class Scrambled:
    f: RationalMap
    tau: Involution
    kind: str  # "real", "pseudoreal" or "perturbed"
    seed_map: RationalMap
    h: Mobius


def _rng(seed) -> np.random.Generator:
    return seed if isinstance(seed, np.random.Generator) else np.random.default_rng(seed)


def _gauss_int(rng, real: bool = False) -> GaussianRational:
    a = int(rng.integers(-INT_RANGE, INT_RANGE + 1))
    b = 0 if real else int(rng.integers(-INT_RANGE, INT_RANGE + 1))
    return GaussianRational(a, b)


def random_mobius(seed, mode: Mode = Mode.FLOAT) -> Mobius:
    rng = _rng(seed)
    while True:
        if mode is Mode.EXACT:
            e = [_gauss_int(rng) for _ in range(4)]
            if e[0] * e[3] - e[1] * e[2]:
                return Mobius(*e)
        else:
            m = rng.standard_normal(4) + 1j * rng.standard_normal(4)
            # keep h well conditioned
            s = np.linalg.svd(m.reshape(2, 2), compute_uv=False)
            if s[1] > 0.1 * s[0]:
                return Mobius(*(complex(x) for x in m))


def _well_separated(P: BinaryForm, Q: BinaryForm) -> bool:
    S = np.array(numeric.sylvester_matrix(P.array(), Q.array()), dtype=complex)
    s = np.linalg.svd(S, compute_uv=False)
    return s[-1] > MIN_SYLVESTER_GAP * s[0]


def _draw_pair(rng, degree: int, mode: Mode, draw) -> tuple[BinaryForm, BinaryForm]:
    for _ in range(1000):
        P = BinaryForm(draw(degree + 1), mode)
        Q = BinaryForm(draw(degree + 1), mode)
        if P.is_zero() or Q.is_zero():
            continue
        f = RationalMap(P, Q)
        if f.degree != degree:
            continue
        if degree == 0 or _well_separated(P.to_float(), Q.to_float()):
            return P, Q
    raise InvalidInput("could not draw a coprime pair")  # pragma: no cover


def random_real_map(seed, degree: int, tau: Involution = Involution.CONJ,
                    mode: Mode = Mode.FLOAT) -> RationalMap:
    """A random map fixed by transport along ``tau``.

    For conjugation the coefficients are real. For the antipodal map the
    degree must be even, and ``P = R + T R`` with ``T`` the antipodal
    transport on forms, which is an involution in even degree.
    """
    rng = _rng(seed)
    if degree < 0:
        raise InvalidInput("degree must be nonnegative")
    if tau is Involution.ANTIPODAL and degree % 2:
        raise InvalidInput("maps real for the antipodal involution have even degree")

    def draw(n):
        if mode is Mode.EXACT:
            return [_gauss_int(rng, real=tau is Involution.CONJ) for _ in range(n)]
        if tau is Involution.CONJ:
            return [complex(x) for x in rng.standard_normal(n)]
        return [complex(x) for x in rng.standard_normal(n) + 1j * rng.standard_normal(n)]

    if tau is Involution.CONJ:
        P, Q = _draw_pair(rng, degree, mode, draw)
        return RationalMap(P, Q)

    def symmetrize(n):
        R = BinaryForm(draw(n), mode)
        return list((R + tau.transport_form(R)).coeffs)
    P, Q = _draw_pair(rng, degree, mode, symmetrize)
    return RationalMap(P, Q)


def pseudoreal_seed(seed, degree: int, mode: Mode = Mode.FLOAT) -> RationalMap:
    """``g0 o z^d`` with odd ``d`` and ``g0 = (a, b; -conj b, conj a)``.

    ``z^d`` is pseudoreal for the antipodal map when ``d`` is odd, and the
    matrices ``g0`` commute with that map, so the composite stays pseudoreal.
    """
    if degree < 1 or degree % 2 == 0:
        raise InvalidInput("pseudoreal seeds need odd degree")
    rng = _rng(seed)
    while True:
        if mode is Mode.EXACT:
            a, b = _gauss_int(rng), _gauss_int(rng)
        else:
            a, b = (complex(*rng.standard_normal(2)) for _ in range(2))
        if a.conjugate() * a + b.conjugate() * b:
            break
    zd = RationalMap.polynomial([0] * degree + [1], mode)
    g0 = Mobius(a, b, -b.conjugate(), a.conjugate())
    return apply_to_map(g0, zd)


def perturb(f: RationalMap, noise: float, seed) -> RationalMap:
    """Relative complex Gaussian noise on every coefficient.

    Exact maps get the noise rounded to a multiple of ``1e-6`` and stay exact.
    """
    rng = _rng(seed)
    v = f.to_float().vector()
    n = len(v) // 2
    eps = noise * np.linalg.norm(v) * (rng.standard_normal(2 * n) + 1j * rng.standard_normal(2 * n))
    if f.is_exact:
        coeffs = list(f.P.coeffs) + list(f.Q.coeffs)
        new = [c + GaussianRational(Fraction(round(e.real * 10**6), 10**6),
                                    Fraction(round(e.imag * 10**6), 10**6))
               for c, e in zip(coeffs, eps)]
    else:
        new = list(v + eps)
    return RationalMap(BinaryForm(new[:n], f.mode), BinaryForm(new[n:], f.mode))


def scramble(seed, degree: int, tau: Involution, kind: str,
             mode: Mode = Mode.FLOAT, noise: float = 1e-3) -> Scrambled:
    """``h o f0`` for a seed ``f0`` of the requested class.

    ``kind="perturbed"`` adds coefficient noise to a scrambled real map (or,
    for the antipodal map in odd degree, a pseudoreal one), which for degree
    at least 2 leaves the class with probability one.
    """
    rng = _rng(seed)
    if kind == "perturbed" and degree < 2:
        raise InvalidInput("every map of degree at most 1 is equivalent to a real one")
    odd_antipodal = tau is Involution.ANTIPODAL and degree % 2 == 1
    if kind == "pseudoreal" or (kind == "perturbed" and odd_antipodal):
        if tau is not Involution.ANTIPODAL:
            raise InvalidInput("pseudoreal instances exist only for the antipodal involution")
        f0 = pseudoreal_seed(rng, degree, mode)
    elif kind in ("real", "perturbed"):
        f0 = random_real_map(rng, degree, tau, mode)
    else:
        raise InvalidInput(f"unknown class {kind!r}")
    h = random_mobius(rng, mode)
    f = apply_to_map(h, f0)
    if kind == "perturbed":
        f = perturb(f, noise, rng)
    return Scrambled(f, tau, kind, f0, h)
