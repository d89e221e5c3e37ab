"""Floating-point primitives on coefficient arrays of binary forms.

Arrays are ascending: entry ``k`` multiplies ``X**k * Z**(d-k)``. A product
of forms is therefore a plain convolution, and setting ``Z = 1`` gives the
ascending coefficient array of the dehomogenized polynomial.
"""

from __future__ import annotations

import math

import numpy as np
from numpy.polynomial import polynomial as npoly

from ..errors import InvalidInput, NumericalFailure

_EPS = np.finfo(float).eps


def conv_matrix(a: np.ndarray, ncols: int) -> np.ndarray:
    """Matrix ``C`` with ``C @ u == np.convolve(a, u)`` for ``len(u) == ncols``."""
    a = np.asarray(a, dtype=complex)
    C = np.zeros((len(a) + ncols - 1, ncols), dtype=complex)
    for j in range(ncols):
        C[j:j + len(a), j] = a
    return C


def deriv_x(c: np.ndarray) -> np.ndarray:
    d = len(c) - 1
    if d == 0:
        return np.zeros(0, dtype=complex)
    return np.arange(1, d + 1) * c[1:]


def deriv_z(c: np.ndarray) -> np.ndarray:
    d = len(c) - 1
    if d == 0:
        return np.zeros(0, dtype=complex)
    return (d - np.arange(d)) * c[:-1]


def substitute(c: np.ndarray, a, b, cc, dd) -> np.ndarray:
    """Coefficients of ``F(a X + b Z, cc X + dd Z)``."""
    c = np.asarray(c, dtype=complex)
    d = len(c) - 1
    lin1 = np.array([b, a], dtype=complex)
    lin2 = np.array([dd, cc], dtype=complex)
    pow1 = [np.ones(1, dtype=complex)]
    pow2 = [np.ones(1, dtype=complex)]
    for _ in range(d):
        pow1.append(np.convolve(pow1[-1], lin1))
        pow2.append(np.convolve(pow2[-1], lin2))
    out = np.zeros(d + 1, dtype=complex)
    for k in range(d + 1):
        if c[k] != 0:
            out += c[k] * np.convolve(pow1[k], pow2[d - k])
    return out


def evaluate(c: np.ndarray, X: complex, Z: complex) -> complex:
    d = len(c) - 1
    k = np.arange(d + 1)
    return complex(np.sum(c * (X ** k) * (Z ** (d - k))))


def divide(a: np.ndarray, g: np.ndarray) -> np.ndarray:
    """Least-squares quotient ``q`` with ``a ~ g * q``."""
    nq = len(a) - len(g) + 1
    if nq < 1:
        raise NumericalFailure("divisor has larger degree than dividend")
    q, *_ = np.linalg.lstsq(conv_matrix(g, nq), a, rcond=None)
    return q


def approx_gcd(a: np.ndarray, b: np.ndarray, tol: float) -> np.ndarray:
    """Approximate gcd of two binary forms given by coefficient arrays.

    The degree is the numerical nullity of the homogeneous Sylvester matrix
    (singular values below ``tol`` times the largest); cofactors come from
    the null vector of the matching subresultant matrix and the gcd from a
    joint least-squares solve. Works projectively, so a common root at
    infinity needs no special treatment.
    """
    a = np.asarray(a, dtype=complex)
    b = np.asarray(b, dtype=complex)
    na = np.linalg.norm(a) if len(a) else 0.0
    nb = np.linalg.norm(b) if len(b) else 0.0
    scale = max(na, nb)
    if scale == 0.0:
        raise InvalidInput("gcd of two zero forms")
    if na <= tol * scale:
        return b / nb
    if nb <= tol * scale:
        return a / na
    a = a / na
    b = b / nb
    m, n = len(a) - 1, len(b) - 1
    if m == 0 or n == 0:
        return np.ones(1, dtype=complex)
    S = np.hstack([conv_matrix(b, m), conv_matrix(a, n)])
    s = np.linalg.svd(S, compute_uv=False)
    k = min(int(np.sum(s <= tol * s[0])), m, n)
    if k == 0:
        return np.ones(1, dtype=complex)
    C = np.hstack([conv_matrix(b, m - k + 1), -conv_matrix(a, n - k + 1)])
    _, _, vh = np.linalg.svd(C)
    z = vh[-1].conj()
    u, v = z[:m - k + 1], z[m - k + 1:]
    A = np.vstack([conv_matrix(u, k + 1), conv_matrix(v, k + 1)])
    g, *_ = np.linalg.lstsq(A, np.concatenate([a, b]), rcond=None)
    return g / np.linalg.norm(g)


def squarefree_chain(c: np.ndarray, tol: float) -> list[tuple[np.ndarray, int]]:
    """Square-free factors ``[(G_k, k)]`` of a form, by repeated approximate gcd.

    ``F_j = gcd(dF_{j-1}/dX, dF_{j-1}/dZ)`` strips one power from every
    repeated linear factor (Euler's identity makes the pair of partials
    equivalent to ``F`` and ``F'``). Quotients of consecutive terms give the
    radicals, and quotients of consecutive radicals the factors.
    """
    c = np.asarray(c, dtype=complex)
    chain = [c / np.linalg.norm(c)]
    while len(chain[-1]) > 1:
        h = chain[-1]
        chain.append(approx_gcd(deriv_x(h), deriv_z(h), tol))
    degs = [len(h) - 1 for h in chain]
    drops = [degs[j - 1] - degs[j] for j in range(1, len(degs))]
    if any(drops[j] < drops[j + 1] for j in range(len(drops) - 1)):
        raise NumericalFailure(f"inconsistent square-free degree sequence {degs}")
    radicals = [divide(chain[j - 1], chain[j]) for j in range(1, len(chain))]
    radicals.append(np.ones(1, dtype=complex))
    out = []
    for j in range(len(radicals) - 1):
        if len(radicals[j]) > len(radicals[j + 1]):
            g = divide(radicals[j], radicals[j + 1])
            out.append((g / np.linalg.norm(g), j + 1))
    return out


def _fibonacci_charts(n: int = 24) -> np.ndarray:
    golden = math.pi * (3.0 - math.sqrt(5.0))
    pts = []
    for i in range(n):
        x3 = 1.0 - 2.0 * (i + 0.5) / n
        r = math.sqrt(max(0.0, 1.0 - x3 * x3))
        x1, x2 = r * math.cos(golden * i), r * math.sin(golden * i)
        if x3 < 0:
            v = np.array([x1 + 1j * x2, 1.0 - x3])
        else:
            v = np.array([1.0 + x3, x1 - 1j * x2])
        pts.append(v / np.linalg.norm(v))
    return np.array(pts)


_CHARTS = _fibonacci_charts()


def best_chart(c: np.ndarray) -> np.ndarray:
    """Unitary ``U`` whose image of infinity maximizes ``|F|`` on a fixed grid.

    Substituting ``U`` leaves the leading coefficient equal to that maximum,
    so every root of the rotated polynomial stays in a bounded disc.
    """
    d = len(c) - 1
    vals = [abs(evaluate(c, p[0], p[1])) for p in _CHARTS]
    a, b = _CHARTS[int(np.argmax(vals))] if d > 0 else _CHARTS[0]
    return np.array([[a, -np.conj(b)], [b, np.conj(a)]])


def rotate(c: np.ndarray, U: np.ndarray) -> np.ndarray:
    return substitute(c, U[0, 0], U[0, 1], U[1, 0], U[1, 1])


def affine_chordal(w1, w2):
    """Chordal distance between finite affine coordinates (broadcasts)."""
    return 2.0 * np.abs(w1 - w2) / np.sqrt((1 + np.abs(w1) ** 2) * (1 + np.abs(w2) ** 2))


def aberth(p: np.ndarray, z0: np.ndarray, maxiter: int = 80) -> np.ndarray:
    """Aberth-Ehrlich simultaneous iteration from starting values ``z0``."""
    z = np.array(z0, dtype=complex)
    n = len(z)
    if n <= 1:
        return z
    dp = npoly.polyder(p)
    for _ in range(maxiter):
        pv = npoly.polyval(z, p)
        dv = npoly.polyval(z, dp)
        with np.errstate(divide="ignore", invalid="ignore"):
            ratio = np.where(dv != 0, pv / dv, 0)
            diff = z[:, None] - z[None, :]
            np.fill_diagonal(diff, np.inf)
            s = np.sum(1.0 / diff, axis=1)
            w = ratio / (1 - ratio * s)
        if not np.all(np.isfinite(w)):
            return np.array(z0, dtype=complex)
        z = z - w
        if np.max(np.abs(w)) <= 4 * _EPS * max(1.0, np.max(np.abs(z))):
            break
    return z


def newton_polish(p: np.ndarray, z: complex, steps: int = 8) -> complex:
    """Newton on ``p`` from ``z``, keeping only steps that lower ``|p|``."""
    dp = npoly.polyder(p)
    best, fbest = z, abs(npoly.polyval(z, p))
    for _ in range(steps):
        dv = npoly.polyval(best, dp)
        if dv == 0 or fbest == 0:
            break
        cand = best - npoly.polyval(best, p) / dv
        fc = abs(npoly.polyval(cand, p))
        if not fc < fbest:
            break
        best, fbest = cand, fc
    return complex(best)


def poly_roots(p: np.ndarray) -> np.ndarray:
    """Companion-matrix roots of an ascending polynomial with nonzero top."""
    if len(p) <= 1:
        return np.zeros(0, dtype=complex)
    return npoly.polyroots(p).astype(complex)


def sylvester_matrix(a, b) -> list:
    """Textbook Sylvester matrix (descending coefficients, declared degrees)."""
    m, n = len(a) - 1, len(b) - 1
    size = m + n
    zero = a[0] * 0 if len(a) else 0
    rows = []
    for i in range(n):
        row = [zero] * size
        row[i:i + m + 1] = list(a[::-1])
        rows.append(row)
    for i in range(m):
        row = [zero] * size
        row[i:i + n + 1] = list(b[::-1])
        rows.append(row)
    return rows


def sylvester_det(a: np.ndarray, b: np.ndarray) -> complex:
    m, n = len(a) - 1, len(b) - 1
    if m + n == 0:
        return 1.0 + 0j
    M = np.array(sylvester_matrix(np.asarray(a, complex), np.asarray(b, complex)), dtype=complex)
    return complex(np.linalg.det(M))
