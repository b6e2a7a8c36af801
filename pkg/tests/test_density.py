import random
from fractions import Fraction

import pytest

from virasoro.density import (
    DensityVector,
    ad_direct,
    ad_symbolic,
    appc_determinant,
    density_apply,
    evaluate_ad,
    ff_product,
    primary_obstruction,
    singular_element,
    spin_range,
)
from virasoro.scalars import BiPoly, UniPoly
from virasoro.verma import PBWVector

HALF = Fraction(1, 2)
MU = UniPoly.gen("mu")


def test_density_action_examples():
    w = DensityVector.basis(3, Fraction(2), Fraction(5))
    got = density_apply(0, w)
    assert got.as_dict() == {3: -8}
    w = DensityVector.basis(0, Fraction(1), Fraction(0))
    got = density_apply(-1, w)
    assert got.as_dict() == {-1: 1}


def test_density_is_a_witt_representation():
    rng = random.Random(77)
    lam, mu = Fraction(2, 3), Fraction(-1, 5)
    terms = tuple((rng.randint(-3, 3), Fraction(rng.randint(1, 5))) for _ in range(3))
    w = DensityVector(terms, lam, mu)
    for m in range(-3, 4):
        for n in range(-3, 4):
            lhs_terms = {}
            a = density_apply(m, density_apply(n, w))
            b = density_apply(n, density_apply(m, w))
            lhs = {k: a.as_dict().get(k, 0) - b.as_dict().get(k, 0) for k in set(a.as_dict()) | set(b.as_dict())}
            rhs = {k: (m - n) * v for k, v in density_apply(m + n, w).as_dict().items()}
            lhs = {k: v for k, v in lhs.items() if v}
            rhs = {k: v for k, v in rhs.items() if v}
            assert lhs == rhs, (m, n)


def test_singular_element_is_normalised():
    for two_j in (0, 1, 2, 3):
        j = Fraction(two_j, 2)
        p = singular_element(j)
        d = two_j + 1
        assert p.level() == d
        assert p.coeff((1,) * d) == 1


def test_ad_j0():
    lam, mu = BiPoly.gens(("lam", "mu"))
    assert ad_symbolic(0) == lam - mu


def test_ad_half_cases():
    assert ad_direct(HALF, 0, MU) == MU * MU
    assert ad_direct(HALF, 1, MU) == MU * (MU - 2)
    assert ff_product("a", HALF, None, MU) == MU * MU
    assert ff_product("b", HALF, None, MU) == MU * (MU - 2)
    assert ff_product("c", HALF, 1, MU) == MU * (MU - 2)


def test_case_c_interpolates_a_and_b():
    for two_j in (0, 1, 2, 3):
        j = Fraction(two_j, 2)
        assert ff_product("c", j, 0, MU) == ff_product("a", j, None, MU)
        assert ff_product("c", j, 1, MU) == ff_product("b", j, None, MU)


def test_case_d_squares():
    rng = random.Random(99)
    for two_j in (0, 1, 2, 3):
        j = Fraction(two_j, 2)
        for _ in range(5):
            lam = Fraction(rng.randint(-9, 9), rng.randint(1, 7))
            mu = Fraction(rng.randint(-9, 9), rng.randint(1, 7))
            assert ad_direct(j, lam, mu) ** 2 == ff_product("d", j, lam, mu)


def test_mu_top_coefficient():
    for two_j in (0, 1, 2, 3, 4):
        j = Fraction(two_j, 2)
        d = two_j + 1
        sym = ad_symbolic(j)
        assert sym.terms.get((0, d)) == Fraction(-1) ** d


def test_appc_determinant_matches_direct():
    for two_j in (0, 1, 2, 3):
        j = Fraction(two_j, 2)
        for p in (0, 1):
            assert appc_determinant(j, p, MU) == ad_direct(j, p * p, MU)
    # sampled points away from the symbolic check
    for mu in (Fraction(0), Fraction(1), Fraction(7, 3)):
        for two_j in (1, 2, 3):
            j = Fraction(two_j, 2)
            assert appc_determinant(j, 1, mu) == ad_direct(j, 1, mu)


def test_evaluate_ad_rejects_inhomogeneous_support():
    # a non-normalised operator that moves v_0 to the wrong depth
    bad = PBWVector({(1,): 1, (2, 1): 1})
    with pytest.raises(ValueError):
        bad.level()


def test_primary_obstruction():
    # generic target weight: no primary field, product of ((t-1)^2 - h)
    h = UniPoly.gen("h")
    got = primary_obstruction(HALF, 0, h)
    expect = UniPoly.const(1, "h")
    for t in spin_range(HALF):
        expect = expect * ((t - 1) ** 2 - h)
    assert got == expect
    # the chain weight (j+1)^2 kills the obstruction
    for two_j in (0, 1, 2):
        j = Fraction(two_j, 2)
        assert primary_obstruction(j, 0, (j + 1) ** 2) == 0
    # j = 0 directly: a_1(1, h) = 1 - h
    assert primary_obstruction(0, 0, h) == 1 - h


def test_spin_range():
    assert spin_range(HALF) == [-HALF, HALF]
    assert spin_range(1) == [-1, 0, 1]
