"""Acceptance criteria 1-8, each reported as one PASS/FAIL line."""

import cmath
import os
import subprocess
import sys
import time

import numpy as np
import pytest
from scipy.optimize import linear_sum_assignment

from realfn import (Constellation, Involution, Mode, SpherePoint, VerdictKind, block_closure,
                    chordal_distance, divisor_criterion, genus, preimage_divisor,
                    quotient_constellation, reality_test, sigma_divisor, validate,
                    verify_verdict, wronskian)
from realfn.cli import _selfcheck_case
from realfn.divisor import _divisor_of_form, critical_values, sigma_form_exact
from realfn.generate import scramble
from realfn.geometry import apply_to_map
from realfn.numkernel import DEFAULT_TOL, I
from realfn.serialize import Instance, dumps, instance_to_json

from conftest import poly, report_criterion, z3m3iz, z3m3z

TOL = DEFAULT_TOL
CONJ, ANTI = Involution.CONJ, Involution.ANTIPODAL
EXPECTED = {"real": VerdictKind.REAL, "pseudoreal": VerdictKind.PSEUDOREAL,
            "perturbed": VerdictKind.NOT_EQUIVALENT}


def _run(f, tau):
    stable, _ = divisor_criterion(f, tau, TOL)
    return stable, reality_test(f, tau, TOL)


@pytest.fixture(scope="module")
def suite1():
    """200 float instances per involution, degrees 1-6, mixed classes."""
    out = []
    t0 = time.perf_counter()
    for t, tau in enumerate(Involution):
        for i in range(200):
            rng = np.random.default_rng([2026, t, i])
            kind, d = _selfcheck_case(rng, tau, i, 6)
            s = scramble(rng, d, tau, kind)
            stable, v = _run(s.f, tau)
            out.append((s, stable, v))
    return out, time.perf_counter() - t0


@pytest.fixture(scope="module")
def suite2():
    out = []
    for i in range(100):
        rng = np.random.default_rng([2, i])
        s = scramble(rng, int(rng.integers(1, 7)), CONJ, "real")
        out.append((s, reality_test(s.f, CONJ, TOL)))
    return out


@pytest.fixture(scope="module")
def suite3():
    out = []
    for i in range(50):
        rng = np.random.default_rng([3, i])
        s = scramble(rng, [1, 3, 5][i % 3], ANTI, "pseudoreal")
        out.append((s, reality_test(s.f, ANTI, TOL)))
    return out


@pytest.fixture(scope="module")
def suite5():
    out = []
    for i in range(30):
        rng = np.random.default_rng([5, i])
        tau = CONJ if i % 2 == 0 else ANTI
        kind, d = _selfcheck_case(rng, tau, i // 2, 4)
        out.append(scramble(rng, d, tau, kind, Mode.EXACT))
    return out


def test_criterion_1_oracle_equivalence(suite1):
    results, elapsed = suite1
    agree = sum(stable == v.equivalent for _, stable, v in results)
    right = sum(v.kind is EXPECTED[s.kind] for s, _, v in results)
    n = len(results)
    ok = agree == n and right == n and elapsed < 60
    assert report_criterion(1, ok, f"{agree}/{n} criterion/construction agreement, "
                                   f"{right}/{n} match ground truth, {elapsed:.1f} s (< 60 s)")


def test_criterion_2_real_scrambles(suite2):
    res = [verify_verdict(s.f, CONJ, v) for s, v in suite2 if v.kind is VerdictKind.REAL]
    ok = len(res) == 100 and max(res) < 1e-8
    assert report_criterion(2, ok, f"{len(res)}/100 real, max residual {max(res):.2e} (< 1e-8)")


def test_criterion_3_pseudoreal_scrambles(suite1, suite2, suite3, suite5):
    res = [verify_verdict(s.f, ANTI, v) for s, v in suite3 if v.kind is VerdictKind.PSEUDOREAL]
    conj_verdicts = [v for s, _, v in suite1[0] if s.tau is CONJ] + [v for _, v in suite2]
    conj_verdicts += [reality_test(s.f, CONJ, TOL) for s in suite5 if s.tau is CONJ]
    conj_verdicts += [reality_test(f, CONJ, TOL) for f in (z3m3z(), z3m3iz(), poly([0, 0, I]))]
    bad = sum(v.kind is VerdictKind.PSEUDOREAL for v in conj_verdicts)
    ok = len(res) == 50 and max(res) < 1e-8 and bad == 0
    assert report_criterion(3, ok, f"{len(res)}/50 pseudoreal, max residual {max(res):.2e} "
                                   f"(< 1e-8); {bad} pseudoreal verdicts in "
                                   f"{len(conj_verdicts)} conj runs")


def test_criterion_4_riemann_hurwitz(suite1, suite2, suite3):
    maps = [s.f for s, _, _ in suite1[0]] + [s.f for s, _ in suite2] + [s.f for s, _ in suite3]
    failures = 0
    rng = np.random.default_rng(4)
    for f in maps:
        d = f.degree
        ram = sum(k - 1 for _, k in sigma_divisor(f, TOL))
        fibers = [preimage_divisor(f, v, TOL) for v in critical_values(f, TOL)]
        fibers.append(preimage_divisor(f, SpherePoint.from_affine(complex(*rng.standard_normal(2))),
                                       TOL))
        if wronskian(f).degree != 2 * d - 2 or ram != 2 * d - 2 or \
                any(D.degree != d for D in fibers):
            failures += 1
    ok = failures == 0
    assert report_criterion(4, ok, f"{len(maps) - failures}/{len(maps)} instances satisfy "
                                   "deg W = 2d-2, sum(ord-1) = 2d-2, fiber degree d")


def _divisors_match(A, B, radius):
    if sorted(A.multiplicities) != sorted(B.multiplicities):
        return False
    if len(A) == 0:
        return True
    cost = np.array([[chordal_distance(p.to_float(), q.to_float()) for q in B.support]
                     for p in A.support])
    rows, cols = linear_sum_assignment(cost)
    return all(cost[i, j] < radius and A.multiplicities[i] == B.multiplicities[j]
               for i, j in zip(rows, cols))


def test_criterion_5_exact_float_agreement(suite5):
    div_ok = cls_ok = 0
    for s in suite5:
        fe, ff = s.f, s.f.to_float()
        De = _divisor_of_form(sigma_form_exact(fe), TOL) if fe.degree > 1 else sigma_divisor(fe)
        Df = sigma_divisor(ff, TOL)
        div_ok += _divisors_match(De, Df, 100 * TOL)
        cls_ok += reality_test(fe, s.tau, TOL).kind is reality_test(ff, s.tau, TOL).kind
    ok = div_ok == cls_ok == len(suite5)
    assert report_criterion(5, ok, f"{div_ok}/30 divisors match within {100 * TOL:g}, "
                                   f"{cls_ok}/30 identical verdict classes")


def test_criterion_6_known_answers():
    checks = []
    e8 = SpherePoint.from_affine(cmath.exp(1j * cmath.pi / 4))
    for mode in (Mode.FLOAT, Mode.EXACT):
        v = reality_test(z3m3z(mode), CONJ)
        checks.append(v.kind is VerdictKind.REAL)
        f = poly([0, 0, I if mode is Mode.EXACT else 1j], mode)
        v = reality_test(f, CONJ)
        hf = apply_to_map(v.g, f)
        coeffs = [complex(c) for c in list(hf.P.coeffs) + list(hf.Q.coeffs)]
        lead = next(c for c in coeffs if abs(c) > 1e-12)
        checks.append(v.kind is VerdictKind.REAL and
                      max(abs((c / lead).imag) for c in coeffs) < 1e-12)
        v = reality_test(z3m3iz(mode), CONJ)
        err = chordal_distance(v.sigma.support[v.witness.failure].to_float(), e8) \
            if v.kind is VerdictKind.NOT_EQUIVALENT else 2.0
        checks.append(v.kind is VerdictKind.NOT_EQUIVALENT and err < 1e-6)
        v = reality_test(poly([0, 1], mode), ANTI)
        checks.append(v.kind is VerdictKind.PSEUDOREAL)
    ok = all(checks)
    assert report_criterion(6, ok, f"{sum(checks)}/{len(checks)} known answers (both modes); "
                                   f"z^3-3iz witness chordal error {err:.1e} (< 1e-6)")


def test_criterion_7_monodromy():
    z2 = Constellation.from_cycles(2, [[[1, 2]], [[1, 2]]])
    z3 = Constellation.from_cycles(3, [[[1, 2]], [[2, 3]], [[1, 3, 2]]])
    torus = Constellation.from_cycles(2, [[[1, 2]]] * 4)
    z4 = Constellation.from_cycles(4, [[[1, 2, 3, 4]], [[1, 4, 3, 2]]])
    for c in (z2, z3, torus, z4):
        validate(c)
    B = block_closure(z4, 1, [[1, 1]])
    q = quotient_constellation(z4, B)
    ok = (genus(z2), genus(z3), genus(torus)) == (0, 0, 1) and \
        B.blocks == ((1, 3), (2, 4)) and q == z2 and z4.degree == B.block_size * q.degree == 4
    assert report_criterion(7, ok, f"genera {genus(z2)},{genus(z3)},{genus(torus)}; "
                                   f"blocks {[list(b) for b in B.blocks]}; quotient {q.cycles()}; "
                                   f"{z4.degree} = {B.block_size} x {q.degree}")


def test_criterion_8_determinism(tmp_path):
    instances = [
        Instance(scramble(8, 4, CONJ, "real").f, CONJ, Mode.FLOAT, TOL, 8),
        Instance(scramble(9, 3, ANTI, "pseudoreal").f, ANTI, Mode.FLOAT, TOL, 9),
        Instance(scramble(10, 4, ANTI, "perturbed").f, ANTI, Mode.FLOAT, TOL, 10),
        Instance(scramble(11, 3, ANTI, "pseudoreal", Mode.EXACT).f, ANTI, Mode.EXACT, TOL, 11),
    ]
    identical = 0
    for k, inst in enumerate(instances):
        path = tmp_path / f"inst{k}.json"
        path.write_text(dumps(instance_to_json(inst)))
        outputs = []
        for hashseed in ("0", "1", "12345"):
            env = dict(os.environ, PYTHONHASHSEED=hashseed)
            res = subprocess.run([sys.executable, "-m", "realfn", "test", str(path)],
                                 capture_output=True, env=env, check=True)
            outputs.append(res.stdout)
        identical += len(set(outputs)) == 1
    ok = identical == len(instances)
    assert report_criterion(8, ok, f"{identical}/{len(instances)} instances give byte-identical "
                                   "verdict files over 3 runs")
