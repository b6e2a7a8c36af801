import itertools
import random
from fractions import Fraction

import pytest

from virasoro.combinat import num_partitions, partitions_of
from virasoro.scalars import BiPoly
from virasoro.verma import (
    PBWVector,
    VermaParams,
    apply_L,
    c_curve,
    central_charge,
    gram_matrix,
    h_pq,
    h_pq_curve,
    irreducible_dims,
    kac_det_direct,
    kac_det_product_sym,
    kac_det_ratio,
    pbw_left_multiply,
    phi_rs,
    shapovalov_pair,
)

SYM = VermaParams.symbolic()


def rand_vector(rng, level, ring="rational"):
    parts = partitions_of(level)
    terms = {}
    for p in parts:
        if rng.random() < 0.6:
            terms[p] = Fraction(rng.randint(-5, 5), rng.randint(1, 3))
    return PBWVector(terms)


def test_apply_L_examples():
    c, h = BiPoly.gens()
    assert apply_L(1, PBWVector.monomial((1,)), SYM) == PBWVector({(): 2 * h})
    assert apply_L(1, PBWVector.monomial((2,)), SYM) == PBWVector({(1,): 3})
    v = PBWVector.monomial((2, 1))
    assert apply_L(0, v, SYM) == PBWVector({(2, 1): h + 3})


def test_left_multiply_normal_orders():
    got = pbw_left_multiply(1, PBWVector.monomial((2, 2)))
    assert got == PBWVector({(2, 2, 1): 1, (3, 2): 2, (5,): 1})


def test_jacobi_identity_on_random_vectors():
    rng = random.Random(31)
    for level in (2, 3, 5):
        v = rand_vector(rng, level)
        for m, n in itertools.product(range(-3, 4), repeat=2):
            lhs = apply_L(m, apply_L(n, v, SYM), SYM) - apply_L(n, apply_L(m, v, SYM), SYM)
            rhs = apply_L(m + n, v, SYM).scale(Fraction(m - n))
            if m + n == 0:
                central = SYM.c * Fraction(m**3 - m, 12)
                rhs = rhs.add_into(v.scale(central))
            assert lhs == rhs, (m, n)


def test_adjoint_symmetry():
    # <L_{-k} v, w> = <v, L_k w> on random vectors at symbolic (c, h)
    rng = random.Random(32)
    for level in (3, 4, 5):
        v = rand_vector(rng, level)
        w = rand_vector(rng, level + 2)
        for k in (1, 2):
            left = _pair(pbw_left_multiply(k, v), w)
            right = _pair(v, apply_L(k, w, SYM))
            assert left == right, (level, k)


def _pair(a: PBWVector, b: PBWVector):
    total = Fraction(0)
    for part, coeff in a.terms.items():
        total = total + coeff * shapovalov_pair(part, b, SYM)
    return total


def test_gram_levels_0_1_2():
    c, h = BiPoly.gens()
    assert gram_matrix(0, SYM).entries == ((BiPoly.const(1),),)
    assert gram_matrix(1, SYM).entries == ((2 * h,),)
    g = gram_matrix(2, SYM)
    assert g.entry((1, 1), (1, 1)) == 4 * h * (2 * h + 1)
    assert g.entry((1, 1), (2,)) == 6 * h
    assert g.entry((2,), (2,)) == 4 * h + c * Fraction(1, 2)


def test_kac_det_examples():
    c, h = BiPoly.gens()
    assert kac_det_direct(1, SYM) == 2 * h
    det2 = kac_det_direct(2, SYM)
    assert det2 == 2 * h * (16 * h * h + 2 * (c - 5) * h + c)
    # c = 0 specialisation (the triviality bound at vanishing charge)
    at_c0 = det2.specialize(BiPoly.const(0), h)
    assert at_c0 == 4 * h * h * (8 * h - 5)


def test_kac_product_level_1_and_2():
    c, h = BiPoly.gens()
    assert kac_det_product_sym(1) == h
    # level 2: phi_11^P(1) * phi_21^P(0); ratio to the direct form is 32
    ratio = kac_det_ratio(2)
    assert ratio.is_constant() and ratio.constant_value() == 32


@pytest.mark.parametrize("level", [1, 2, 3, 4])
def test_kac_ratio_constant(level):
    ratio = kac_det_ratio(level)
    assert ratio.is_constant()
    assert ratio.constant_value() != 0


def test_c1_kac_factors():
    # at c = 1 the quadratic factors collapse to (h - (r-s)^2/4)^2
    c, h = BiPoly.gens()
    for r, s in ((2, 1), (3, 1), (3, 2)):
        quarter = Fraction((r - s) ** 2, 4)
        assert phi_rs(r, s).specialize(BiPoly.const(1), h) == (h - quarter) * (h - quarter)


def test_h_pq_values():
    assert h_pq(1, 1, 3) == 0
    assert h_pq(2, 1, 3) == Fraction(1, 2)
    assert h_pq(2, 2, 3) == Fraction(1, 16)
    assert central_charge(3) == Fraction(1, 2)
    assert central_charge(2) == 0


def test_h_pq_curve_matches_display():
    # (2j+1, 1) curve: h(t) = (j^2+j) t - j
    for two_j in (0, 1, 2, 3):
        j = Fraction(two_j, 2)
        r = two_j + 1
        curve = h_pq_curve(r, 1)
        t_val = Fraction(7, 3)
        assert curve(t_val) == (j * j + j) * t_val - j
    # every curve satisfies its defining polynomial identically
    for r, s in ((2, 2), (3, 2), (4, 1)):
        h = h_pq_curve(r, s)
        assert phi_rs(r, s).specialize(c_curve(), h).is_zero()


def test_curve_point_m3():
    # t = 4/3 lands on the (m = 3) discrete series
    assert c_curve()(Fraction(4, 3)) == Fraction(1, 2)
    assert h_pq_curve(2, 2)(Fraction(4, 3)) == Fraction(1, 16)


def test_irreducible_dims_examples():
    assert irreducible_dims(VermaParams.rational(1, 0), 4) == [1, 0, 1, 1, 2]
    generic = irreducible_dims(VermaParams.rational(2, 1), 5)
    assert generic == [num_partitions(n) for n in range(6)]
    ising = irreducible_dims(
        VermaParams.rational(Fraction(1, 2), Fraction(1, 16)), 4
    )
    assert ising == [1, 1, 1, 2, 2]


def test_irreducible_dims_needs_rational_params():
    with pytest.raises(ValueError):
        irreducible_dims(SYM, 2)


def test_pbw_vector_json():
    v = PBWVector({(3, 1): Fraction(5, 2), (2, 2): -1})
    assert v.to_json() == {"level": 4, "terms": {"[3,1]": "5/2", "[2,2]": "-1"}}
    assert v.level() == 4


def test_rank_oracle_j_three_halves():
    from virasoro.jantzen import c1_character_closed

    dims = irreducible_dims(VermaParams.rational(1, Fraction(9, 4)), 9)
    closed = c1_character_closed(Fraction(3, 2), 9)
    assert [Fraction(d) for d in dims] == list(closed.coeffs)


def test_c1_product_exponent_bookkeeping():
    # at c = 1 the product form collapses to
    # prod over ordered pairs (p, q), pq <= N of (h - (p-q)^2/4)^P(N-pq)
    c, h = BiPoly.gens()
    for n in (1, 2, 3, 4):
        product = kac_det_product_sym(n).specialize(BiPoly.const(1), h)
        expect = BiPoly.const(1)
        for p in range(1, n + 1):
            for q in range(1, n + 1):
                if p * q > n:
                    continue
                factor = h - Fraction((p - q) ** 2, 4)
                expect = expect * factor ** num_partitions(n - p * q)
        assert product == expect, n


def test_norms_at_general_spacing():
    # the norm table behind the c = 0 triviality bound, any spacing n:
    # |L_{-2n} xi|^2 = 4nh (at c = 0), |L_{-n}^2 xi|^2 = 4n^2 h(2h + n),
    # (L_{-2n} xi, L_{-n}^2 xi) = 6n^2 h, det = 4n^3 h^2 (8h - 5n)
    c, h = BiPoly.gens()
    zero_c = BiPoly.const(0)
    for n in (1, 2, 3):
        g = gram_matrix(2 * n, SYM)
        sq = g.entry((n, n), (n, n)).specialize(zero_c, h)
        single = g.entry((2 * n,), (2 * n,)).specialize(zero_c, h)
        cross = g.entry((2 * n,), (n, n)).specialize(zero_c, h)
        assert sq == 4 * n * n * h * (2 * h + n)
        assert single == 4 * n * h
        assert cross == 6 * n * n * h
        det = single * sq - cross * cross
        assert det == 4 * n**3 * h * h * (8 * h - 5 * n)
