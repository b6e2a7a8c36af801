from fractions import Fraction

import pytest

from virasoro.scalars import RatFunc, UniPoly
from virasoro.singular import (
    SpinModule,
    bdiz_singular,
    c1_chain_levels,
    check_singular,
    curve_params_at,
    curve_singular,
    discrete_chain_levels,
    singular_chain,
    singular_kernel,
    specialize_curve_vector,
)
from virasoro.verma import PBWVector, VermaParams

HALF = Fraction(1, 2)


def test_kernel_examples():
    found = singular_kernel(VermaParams.rational(1, Fraction(1, 4)), 2)
    assert len(found) == 1
    assert found[0].vector == PBWVector({(1, 1): 1, (2,): -1})

    found = singular_kernel(VermaParams.rational(1, 0), 1)
    assert len(found) == 1
    assert found[0].vector == PBWVector.monomial((1,))

    generic = VermaParams.rational(2, 5)
    for level in (1, 2, 3, 4):
        assert singular_kernel(generic, level) == []


def test_spin_module_relations():
    for two_j in (1, 2, 3, 4):
        spin = SpinModule(two_j)
        E, F, H = spin.matrix_E(), spin.matrix_F(), spin.matrix_H()
        dim = two_j + 1
        for i in range(dim):
            for j in range(dim):
                ef = sum(E[i][k] * F[k][j] for k in range(dim))
                fe = sum(F[i][k] * E[k][j] for k in range(dim))
                want = 2 * H[i][j]
                assert ef - fe == want
        # E^{2j} maps the lowest vector to ((2j)!)^2 times the highest
        from math import factorial

        assert spin.e_power_factor(0, two_j) == Fraction(factorial(two_j)) ** 2


def test_bdiz_small_spins():
    t = UniPoly.gen("t")
    assert bdiz_singular(0) == PBWVector.monomial((1,))
    b_half = bdiz_singular(HALF)
    assert b_half.coeff((1, 1)) == 1
    assert b_half.coeff((2,)) == -t
    b_one = bdiz_singular(1)
    assert b_one.coeff((1, 1, 1)) == 1
    # top coefficient: magnitude ((2j)!)^2 = 4 at t^2 on L_{-3}
    top = b_one.coeff((3,))
    assert top.coeffs[2] == 4
    # the constant term in t is exactly L_{-1}^3
    for part, coeff in b_one.terms.items():
        const = coeff.coeffs[0] if coeff.coeffs else 0
        assert (const == 1) == (part == (1, 1, 1))
        assert const == 0 or part == (1, 1, 1)


@pytest.mark.parametrize("two_j", [1, 2, 3, 4])
def test_bdiz_is_singular_at_sample_points(two_j):
    j = Fraction(two_j, 2)
    vec = bdiz_singular(j)
    for t_val in (Fraction(1), Fraction(2), Fraction(-1, 3)):
        params = curve_params_at(t_val, j=j)
        sp = specialize_curve_vector(vec, t_val)
        ok, cert = check_singular(sp, params)
        assert ok, (j, t_val, cert)


def test_check_singular_counterexample_and_vacuum():
    params = VermaParams.rational(1, Fraction(1, 4))
    ok, (r1, r2) = check_singular(PBWVector.monomial((2,)), params)
    assert not ok
    assert r1 == PBWVector({(1,): 3})
    ok, _ = check_singular(PBWVector.vacuum(), params)
    assert ok


def test_curve_matches_bdiz_for_first_column():
    for r in (1, 2, 3):
        j = Fraction(r - 1, 2)
        chain = bdiz_singular(j).map_coeffs(
            lambda c: RatFunc.from_poly(c) if isinstance(c, UniPoly) else RatFunc.const(c, "t")
        )
        assert curve_singular(r, 1) == chain


def test_curve_11_is_lowering_generator():
    assert curve_singular(1, 1) == PBWVector.monomial((1,)).map_coeffs(
        lambda c: RatFunc.const(c, "t")
    )


def test_curve_22_specialisation_matches_kernel():
    vec = curve_singular(2, 2)
    point = Fraction(4, 3)  # lands on (c, h) = (1/2, 1/16)
    params = curve_params_at(point, rs=(2, 2))
    assert params == VermaParams.rational(Fraction(1, 2), Fraction(1, 16))
    sp = specialize_curve_vector(vec, point)
    found = singular_kernel(params, 4)
    assert len(found) == 1 and found[0].vector == sp
    assert check_singular(sp, params)[0]


def test_curve_coefficients_clear_to_polynomials():
    # denominators along the curve are powers of t only
    vec = curve_singular(2, 2)
    for coeff in vec.terms.values():
        if isinstance(coeff, RatFunc):
            den = coeff.den
            assert all(c == 0 for c in den.coeffs[:-1]), den.render()


def test_uniqueness_of_kernels():
    cases = [
        (VermaParams.rational(1, Fraction(1, 4)), 2),
        (VermaParams.rational(1, 0), 1),
        (VermaParams.rational(Fraction(1, 2), Fraction(1, 16)), 2),
        (VermaParams.rational(Fraction(1, 2), Fraction(1, 16)), 4),
        (VermaParams.rational(Fraction(1, 2), 0), 1),
        (VermaParams.rational(Fraction(1, 2), 0), 6),
        (VermaParams.rational(1, 1), 3),
    ]
    for params, level in cases:
        assert len(singular_kernel(params, level)) == 1, (params, level)


def test_chain_levels():
    assert c1_chain_levels(0, 2) == [1, 4]
    assert c1_chain_levels(HALF, 2) == [2, 6]
    assert discrete_chain_levels(3, 1, 1, 36) == [1, 6, 20, 35]
    assert discrete_chain_levels(3, 2, 2, 31) == [2, 4, 24, 30]


def test_singular_chain_c1():
    chain = singular_chain("c1", 2, j=0)
    assert [v.level for v in chain] == [1, 4]
    for sv in chain:
        assert check_singular(sv.vector, sv.params)[0]
    assert singular_chain("c1", 0, j=0) == []


def test_singular_chain_discrete():
    chain = singular_chain("discrete", 2, m=3, r=1, s=1, max_level=8)
    assert [v.level for v in chain] == [1, 6]
    for sv in chain:
        assert check_singular(sv.vector, sv.params)[0]


def test_chain_product_matches_kernel_vectors():
    from virasoro.singular import chain_product_vector

    for two_j in (0, 1):
        j = Fraction(two_j, 2)
        params = VermaParams.rational(1, j * j)
        for depth in (1, 2):
            vec = chain_product_vector(j, depth)
            level = int((j + depth) ** 2 - j * j)
            assert vec.level() == level
            assert check_singular(vec, params)[0]
            kernel = singular_kernel(params, level)[0].vector
            lead = vec.coeff((1,) * level)
            assert lead != 0
            assert vec.scale(1 / lead) == kernel


def _test_chains(ops):
    chains = []
    c1 = ops.zero()
    c1[0] = PBWVector.vacuum()
    chains.append(ops.lift(c1))
    c2 = ops.zero()
    c2[-1] = PBWVector({(1,): Fraction(2), (): Fraction(1)})
    chains.append(ops.lift(c2))
    c3 = ops.zero()
    c3[0] = PBWVector.monomial((2,))
    c3[-1] = PBWVector.monomial((1, 1))
    chains.append(ops.lift(c3))
    return chains


def test_spin_chain_witt_brackets_any_parameters():
    from virasoro.singular import SpinChainOps
    from virasoro.scalars import RatFunc

    params = VermaParams(RatFunc.const(Fraction(7, 3), "t"), RatFunc.const(Fraction(5, 2), "t"))
    for two_j in (1, 2):
        ops = SpinChainOps(two_j, params)
        for chain in _test_chains(ops):
            for p in range(0, 3):
                for q in range(0, 3):
                    got = ops.bracket(p, q, chain)
                    want = ops.scale(ops.ladder(p + q, chain), RatFunc.const(p - q, "t"))
                    assert all(x == y for x, y in zip(got, want)), (two_j, p, q)


def test_spin_chain_ladder_law_at_curve_charge():
    # [ladder(p), N] = sum_q (p+1+q) (-t)^q E^q ladder(p-1-q) whenever
    # the central charge is c(t); the weight is free
    from virasoro.singular import SpinChainOps
    from virasoro.scalars import RatFunc
    from virasoro.verma import c_curve, h_pq_curve

    t = RatFunc.gen("t")
    for two_j, weight in ((1, h_pq_curve(2, 1)), (2, h_pq_curve(3, 1)),
                          (3, RatFunc.const(Fraction(5, 2), "t"))):
        params = VermaParams(c_curve(), weight)
        ops = SpinChainOps(two_j, params)
        for chain in _test_chains(ops):
            for p in range(0, 4):
                got = ops.bracket(p, -1, chain)
                want = ops.zero()
                for q in range(0, p + two_j + 2):
                    term = ops.ladder(p - 1 - q, chain)
                    for _ in range(q):
                        term = ops.E(term)
                    want = ops.add(want, ops.scale(term, RatFunc.const(p + 1 + q, "t") * (-t) ** q))
                assert all(x == y for x, y in zip(got, want)), (two_j, p)
