import itertools

import pytest
from hypothesis import given, settings, strategies as st

from realfn import (BlockSystem, Constellation, Intransitive, Involution, NonIdentityProduct,
                    Passport, block_closure, divisor_criterion, genus, passport_stability,
                    quotient_constellation, validate)
from realfn.divisor import branch_pairing, critical_values
from realfn.errors import InvalidInput
from realfn.monodromy import (compose_perms, evaluate_word, invert_perm, is_block_system,
                              perm_to_cycles, schreier_generators)

from conftest import poly, z3m3iz, z3m3z

Z2 = Constellation.from_cycles(2, [[[1, 2]], [[1, 2]]])
Z4 = Constellation.from_cycles(4, [[[1, 2, 3, 4]], [[1, 4, 3, 2]]])
# z^3 - 3z over the values (-2, 2, inf)
Z3M3Z = Constellation.from_cycles(3, [[[1, 2]], [[2, 3]], [[1, 3, 2]]])


def test_validate_examples():
    validate(Z2)
    with pytest.raises(NonIdentityProduct):
        validate(Constellation.from_cycles(2, [[[1, 2]], []]))
    with pytest.raises(Intransitive):
        validate(Constellation.from_cycles(4, [[[1, 2]], [[1, 2]], [[3, 4]], [[3, 4]]]))


def test_genus_examples():
    assert genus(Z2) == 0
    assert genus(Constellation.from_cycles(2, [[[1, 2]]] * 4)) == 1
    assert genus(Z3M3Z) == 0
    assert Z3M3Z.passport().types == ((2, 1), (2, 1), (3,))


def test_z3m3z_triples_all_genus_zero():
    # every triple with cycle types [2,1],[2,1],[3] and identity product
    transp = [((1, 2),), ((1, 3),), ((2, 3),)]
    found = 0
    for a, b in itertools.product(transp, repeat=2):
        s1 = Constellation.from_cycles(3, [a]).sigma[0]
        s2 = Constellation.from_cycles(3, [b]).sigma[0]
        s3 = invert_perm(compose_perms(s1, s2))
        c = Constellation(3, (s1, s2, s3))
        if c.passport().types != ((2, 1), (2, 1), (3,)):
            continue
        found += 1
        assert genus(c) == 0
    assert found == 6


def test_bad_cycles():
    with pytest.raises(InvalidInput):
        Constellation.from_cycles(2, [[[1, 3]]])
    with pytest.raises(InvalidInput):
        Constellation.from_cycles(3, [[[1, 2], [2, 3]]])


def test_passport_examples():
    assert passport_stability(Z2, [2, 1])
    assert passport_stability(Passport.from_lists([[2, 1], [2, 1], [3]]), [2, 1, 3])
    assert not passport_stability(Passport.from_lists([[2, 1], [3], [2, 1]]), [2, 1, 3])
    with pytest.raises(InvalidInput):
        passport_stability(Z3M3Z, [2, 3, 1])


def test_passport_agrees_with_divisor_criterion():
    conj = Involution.CONJ
    for f, c in [(poly([0, 0, 1]), Z2), (z3m3z(), Z3M3Z)]:
        pairing = branch_pairing(critical_values(f), conj)
        assert pairing is not None
        assert passport_stability(c, [j + 1 for j in pairing]) == divisor_criterion(f, conj)[0]
    # the critical values 2 e^{-i pi/4}, 2 e^{3i pi/4} of z^3 - 3iz are not
    # swapped by conjugation, so there is no pairing to test
    assert branch_pairing(critical_values(z3m3iz()), conj) is None
    assert not divisor_criterion(z3m3iz(), conj)[0]


def test_block_examples():
    B = block_closure(Z4, 1, [[1, 1]])
    assert B.blocks == ((1, 3), (2, 4))
    q = quotient_constellation(Z4, B)
    assert q.cycles() == [[[1, 2]], [[1, 2]]]
    assert Z4.degree == B.block_size * q.degree == 2 * 2

    single = block_closure(Z4, 1, [])
    assert single.blocks == ((1,), (2,), (3,), (4,))
    assert quotient_constellation(Z4, single) == Z4

    full = block_closure(Z4, 1, [[1]])
    assert full.blocks == ((1, 2, 3, 4),)
    q = quotient_constellation(Z4, full)
    assert q.degree == 1 and genus(q) == 0


def test_word_errors():
    with pytest.raises(InvalidInput):
        block_closure(Z4, 1, [[3]])
    with pytest.raises(InvalidInput):
        block_closure(Z4, 1, [[0]])
    with pytest.raises(InvalidInput):
        block_closure(Z4, 1, [["a"]])
    with pytest.raises(InvalidInput):
        block_closure(Z4, 5, [])
    assert evaluate_word(Z4, [1, -1]) == tuple(range(4))


def test_quotient_rejects_non_blocks():
    with pytest.raises(InvalidInput):
        quotient_constellation(Z4, BlockSystem(((1, 2), (3, 4))))
    assert not is_block_system(Z4, BlockSystem(((1, 1), (2, 4))))


def test_schreier_generators_fix_base():
    c = Constellation.from_cycles(4, [[[1, 2]], [[2, 3, 4]], [[1, 4, 3, 2]]])
    validate(c)
    gens = schreier_generators(c, 0)
    assert gens and all(g[0] == 0 for g in gens)


@st.composite
def constellations(draw):
    n = draw(st.integers(1, 6))
    k = draw(st.integers(1, 3))
    sigma = [tuple(draw(st.permutations(range(n)))) for _ in range(k)]
    prod = tuple(range(n))
    for s in sigma:
        prod = compose_perms(prod, s)
    sigma.append(invert_perm(prod))
    c = Constellation(n, tuple(sigma))
    try:
        validate(c)
    except Intransitive:
        from hypothesis import assume
        assume(False)
    return c


@settings(max_examples=60, deadline=None)
@given(constellations(), st.data())
def test_block_closure_properties(c, data):
    base = data.draw(st.integers(1, c.degree))
    words = data.draw(st.lists(st.lists(st.sampled_from(
        [j for j in range(-c.branch_count, c.branch_count + 1) if j]), max_size=4), max_size=2))
    B = block_closure(c, base, words)
    assert is_block_system(c, B)
    assert any(base in b for b in B.blocks)
    q = quotient_constellation(c, B)
    assert c.degree == B.block_size * q.degree
    assert genus(q) >= 0 and genus(c) >= 0
    assert passport_stability(c, list(range(1, c.branch_count + 1)))
    for s in c.sigma:
        assert sorted(x for cyc in perm_to_cycles(s, fixed=True) for x in cyc) == \
            list(range(1, c.degree + 1))
