from fractions import Fraction

import pytest
from hypothesis import given, settings, strategies as st

from realfn.errors import InvalidInput, ModeError
from realfn.numkernel import (BinaryForm, GaussianRational, Mode, SpherePoint, eval_form,
                              gcd_forms, proportional, resultant, roots_with_multiplicities,
                              squarefree_decomposition)
from realfn.numkernel.scalar import sqrt_norm_witness

X = BinaryForm.linear(1, 0)
Z = BinaryForm.linear(0, 1)


def as_mode(F, mode):
    return F if mode is Mode.EXACT else F.to_float()


def test_gaussian_rational_arithmetic():
    a = GaussianRational(1, 2)
    b = GaussianRational(Fraction(1, 3), -1)
    assert (a * b) / b == a
    assert a.conjugate() * a == GaussianRational(5)
    assert complex(a - b) == pytest.approx(complex(1 - 1 / 3, 3))
    assert str(GaussianRational(Fraction(1, 2), -1))


def test_eval_form_examples():
    assert eval_form(X * X, SpherePoint(0, 1)) == 0
    assert eval_form(X * X + Z * Z, SpherePoint(1, 1)) == 2
    assert eval_form(X * Z, SpherePoint.infinity()) == 0


def test_eval_form_mode_mismatch():
    with pytest.raises(ModeError):
        eval_form(X * X, SpherePoint(0.0, 1.0))


def test_gcd_examples():
    assert proportional(gcd_forms(X * X * Z, X * Z * Z), X * Z)
    assert gcd_forms(X * X + Z * Z, X - Z).degree == 0
    g = gcd_forms((X - Z) ** 2 * (X + Z), (X - Z) * (X + Z.scale(2)))
    assert proportional(g, X - Z)
    with pytest.raises(InvalidInput):
        gcd_forms(BinaryForm.zero(2), BinaryForm.zero(1))


def test_gcd_float():
    A = ((X - Z) ** 2 * (X + Z)).to_float()
    B = ((X - Z) * (X + Z.scale(2))).to_float()
    assert proportional(gcd_forms(A, B), (X - Z).to_float(), 1e-9)


def test_squarefree_examples(mode):
    out = squarefree_decomposition(as_mode(X * X * Z, mode))
    assert [k for _, k in out] == [1, 2]
    assert proportional(out[0][0], as_mode(Z, mode), 1e-9)
    assert proportional(out[1][0], as_mode(X, mode), 1e-9)

    F = X * X + Z * Z
    assert [k for _, k in squarefree_decomposition(as_mode(F, mode))] == [1]

    out = squarefree_decomposition(as_mode((X - Z) ** 2 * (X + Z) ** 3, mode))
    assert [k for _, k in out] == [2, 3]
    assert proportional(out[0][0], as_mode(X - Z, mode), 1e-9)
    assert proportional(out[1][0], as_mode(X + Z, mode), 1e-9)


def test_resultant_examples():
    a, b, c, d = 2, 3, 5, 7
    assert resultant(BinaryForm.linear(a, b), BinaryForm.linear(c, d)) == a * d - b * c
    assert resultant(X * X, Z * Z) == 1
    assert resultant(X - Z, X * X + Z * Z) == 2
    with pytest.raises(InvalidInput):
        resultant(BinaryForm.zero(1), X)


def test_resultant_float_matches_exact():
    A, B = (X - Z) * (X + Z.scale(3)), X * X + Z * Z
    assert complex(resultant(A.to_float(), B.to_float())) == pytest.approx(complex(resultant(A, B)))


def _summary(roots):
    return [(None if e.point.is_infinity else e.point.affine(), e.multiplicity) for e in roots]


def test_roots_examples(mode):
    r = _summary(roots_with_multiplicities(as_mode(X * X * Z, mode)))
    assert r[0][1] == 2 and abs(r[0][0]) < 1e-12
    assert r[1] == (None, 1)

    r = _summary(roots_with_multiplicities(as_mode(X * X + Z * Z, mode)))
    assert sorted((round(z.imag), k) for z, k in r) == [(-1, 1), (1, 1)]

    F = X ** 3 - (X * Z * Z).scale(3) + (Z ** 3).scale(2)
    r = _summary(roots_with_multiplicities(as_mode(F, mode)))
    assert [k for _, k in r] == [2, 1]
    assert r[0][0] == pytest.approx(1, abs=1e-9)
    assert r[1][0] == pytest.approx(-2, abs=1e-9)


def test_exact_roots_are_exact():
    F = (X - Z) ** 2 * (X + Z.scale(2))
    roots = roots_with_multiplicities(F)
    assert all(e.point.is_exact and not e.approximate for e in roots)
    assert roots[0].point == SpherePoint(1, 1)


def test_irrational_exact_roots_flagged():
    roots = roots_with_multiplicities(X * X - (Z * Z).scale(2))
    assert all(e.approximate for e in roots)
    assert sorted(abs(e.point.affine()) for e in roots) == pytest.approx([2 ** 0.5] * 2)


def test_zero_form_rejected():
    with pytest.raises(InvalidInput):
        roots_with_multiplicities(BinaryForm.zero(3))


def test_points_and_modes():
    p = SpherePoint(GaussianRational(2), GaussianRational(4))
    assert p == SpherePoint(1, 2)
    q = SpherePoint(2.0, 4.0)
    assert q.affine() == pytest.approx(0.5)
    with pytest.raises(ModeError):
        _ = p == q
    with pytest.raises(InvalidInput):
        SpherePoint(0, 0)


def test_sqrt_norm_witness():
    s = sqrt_norm_witness(Fraction(25, 4))
    assert s.norm() == Fraction(25, 4)
    assert sqrt_norm_witness(Fraction(3)) is None


roots_st = st.lists(st.tuples(st.integers(-4, 4), st.integers(-4, 4)), min_size=1, max_size=4)


@settings(max_examples=40, deadline=None)
@given(roots_st, st.lists(st.integers(1, 3), min_size=4, max_size=4))
def test_roots_recover_multiplicities(rts, mults):
    """A product of distinct linear factors with multiplicities comes back intact."""
    rts = sorted(set(rts))
    F = BinaryForm.constant(1)
    for (a, b), k in zip(rts, mults):
        F = F * (X - Z.scale(GaussianRational(a, b))) ** k
    expected = sorted(((a, b), k) for (a, b), k in zip(rts, mults))
    for mode in (Mode.EXACT, Mode.FLOAT):
        got = roots_with_multiplicities(as_mode(F, mode))
        assert sum(e.multiplicity for e in got) == F.degree
        got = sorted(((round(e.point.affine().real), round(e.point.affine().imag)), e.multiplicity)
                     for e in got)
        assert got == expected
