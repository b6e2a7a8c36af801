import itertools
import random
from fractions import Fraction

import pytest

from virasoro.fock import (
    E_apply,
    F_apply,
    FermionState,
    FockBasis,
    FockVector,
    H_apply,
    K_apply,
    PairBasis,
    PairVector,
    V_apply,
    apply_e,
    apply_e_star,
    boson_apply,
    fermion_apply,
    level1_character_closed,
    lprime_apply,
    lprime_zero_bilinear,
    multiplicity_character_closed,
    psi_mode,
    shift_apply,
    sugawara_apply,
    two_factor_trace,
    two_factor_trace_closed,
    vacuum,
    vertex_mode,
    vertex_mode_range,
)
from virasoro.fock_checks import run_suites

HALF = Fraction(1, 2)


def test_wedge_examples():
    om = vacuum(0)
    assert apply_e(0, om) is None
    sign, st = apply_e(-1, om)
    assert sign == 1 and st == FermionState(-1, ())
    assert st.energy == HALF and st.charge == 1
    sign, st = apply_e_star(0, om)
    assert sign == 1 and st == FermionState(1, ())
    assert st.energy == HALF and st.charge == -1
    assert vacuum(3).energy == Fraction(9, 2)


def test_state_bookkeeping_roundtrip():
    rng = random.Random(8)
    for st in FockBasis(5):
        occ = st.occupied_prefix()
        assert occ == sorted(occ)
        assert all(occ[i] < occ[i + 1] for i in range(len(occ) - 1))
        assert st.energy == Fraction(st.sector**2, 2) + sum(st.lam)
        assert lprime_zero_bilinear(st) == st.energy


def test_car_relations():
    rng = random.Random(9)
    basis = FockBasis(4)
    for st in rng.sample(basis.states, 10):
        v = FockVector.basis(st)
        for m, n in itertools.product(range(-3, 4), repeat=2):
            anti = fermion_apply("e", m, fermion_apply("e*", n, v)) + fermion_apply(
                "e*", n, fermion_apply("e", m, v)
            )
            assert anti == (v if m == n else FockVector.zero())
            ee = fermion_apply("e", m, fermion_apply("e", n, v)) + fermion_apply(
                "e", n, fermion_apply("e", m, v)
            )
            assert ee.is_zero()


def test_boson_bracket_and_charge():
    basis = FockBasis(4)
    rng = random.Random(10)
    for st in rng.sample(basis.states, 8):
        v = FockVector.basis(st)
        assert boson_apply(0, v) == v.scale(st.charge)
        for m, n in itertools.product((-2, -1, 1, 2), repeat=2):
            comm = boson_apply(m, boson_apply(n, v)) - boson_apply(n, boson_apply(m, v))
            assert comm == (v.scale(m) if m + n == 0 else FockVector.zero())


def test_lprime_eigenvalues_on_vacua():
    for k in range(-3, 4):
        v = FockVector.basis(vacuum(k))
        assert lprime_apply(0, v) == v.scale(Fraction(k * k, 2))


def test_fermion_boson_virasoro_agree():
    basis = FockBasis(4)
    rng = random.Random(11)
    for st in rng.sample(basis.states, 8):
        v = FockVector.basis(st)
        for k in range(-2, 3):
            assert lprime_apply(k, v) == sugawara_apply(k, v), (st, k)


def test_shift_relations():
    basis = FockBasis(3)
    assert shift_apply(1, FockVector.basis(vacuum(0))) == FockVector.basis(vacuum(1))
    for st in basis:
        v = FockVector.basis(st)
        got = shift_apply(1, boson_apply(0, shift_apply(-1, v))) - boson_apply(0, v)
        assert got == v  # U a_0 U* = a_0 + 1
        got = shift_apply(1, lprime_apply(0, shift_apply(-1, v)))
        want = lprime_apply(0, v) + boson_apply(0, v) + v.scale(HALF)
        assert got == want  # U L_0 U* = L_0 + a_0 + 1/2


def test_example1_modes():
    basis = FockBasis(3)
    for st in basis:
        v = FockVector.basis(st)
        for n in range(-4, vertex_mode_range(1, st) + 1):
            assert vertex_mode(1, n, v) == fermion_apply("e", n - 1, v)
        for n in range(-4, vertex_mode_range(-1, st) + 1):
            assert vertex_mode(-1, n, v) == fermion_apply("e*", -n, v)


def test_vertex_vacuum_anchor():
    # z^{-qm} Phi_m(z) (charge-q vacuum)|_{z=0} = charge-(q+m) vacuum
    for q in (-2, -1, 0, 1, 2):
        vq = FockVector.basis(FermionState(-q, ()))
        for m in (-2, -1, 1, 2):
            lowest = vertex_mode(m, -q * m, vq)
            assert lowest == FockVector.basis(FermionState(-(q + m), ()))
            assert vertex_mode(m, -q * m + 1, vq).is_zero()


def test_fubini_veneziano_m0_trivial():
    # Phi_0 is the identity at mode 0 and vanishes elsewhere
    basis = FockBasis(3)
    for st in basis:
        v = FockVector.basis(st)
        assert vertex_mode(0, 0, v) == v
        assert vertex_mode(0, 1, v).is_zero()


def test_fubini_veneziano_sample():
    basis = FockBasis(3)
    for st in list(basis)[:12]:
        v = FockVector.basis(st)
        for m, k in ((1, 1), (2, -1), (-1, 2)):
            hi = vertex_mode_range(m, st)
            for n in range(-3, hi + abs(k) + 1):
                lhs = lprime_apply(k, vertex_mode(m, n, v)) - vertex_mode(
                    m, n, lprime_apply(k, v)
                )
                coeff = Fraction(-(n + k)) + Fraction(m * m * (k + 1), 2)
                assert lhs == vertex_mode(m, n + k, v).scale(coeff), (st, m, k, n)


def test_two_factor_anchors():
    om2 = PairVector.basis(vacuum(0), vacuum(0))
    plus = FermionState(-1, ())   # charge +1 vacuum
    minus = FermionState(1, ())   # charge -1 vacuum
    assert psi_mode(1, 0, om2) == PairVector.basis(plus, minus)
    assert E_apply(-1, om2) == PairVector.basis(plus, minus)
    assert psi_mode(-1, 0, om2) == PairVector.basis(minus, plus)
    assert F_apply(-1, om2) == PairVector.basis(minus, plus).scale(-1)


def test_level_one_bracket():
    pb = PairBasis(Fraction(5, 2))
    for st in list(pb)[:20]:
        v = PairVector({st: Fraction(1)})
        lhs = E_apply(1, F_apply(-1, v)) - F_apply(-1, E_apply(1, v))
        assert lhs == H_apply(0, v).scale(2) + v
        for m, n in itertools.product((-1, 0, 1), repeat=2):
            hk = H_apply(m, K_apply(n, v)) - K_apply(n, H_apply(m, v))
            assert hk.is_zero()


def test_example2_signed_dictionary():
    pb = PairBasis(2)
    for st in pb:
        v = PairVector({st: Fraction(1)})
        for n in range(-3, 3):
            assert E_apply(n, v) == psi_mode(1, n + 1, v)
            assert F_apply(n, v) == psi_mode(-1, n + 1, v).scale(-1)


def test_V_conjugation():
    pb = PairBasis(2)
    for st in pb:
        v = PairVector({st: Fraction(1)})
        assert V_apply(V_apply(v, 1), -1) == v
        for n in (-2, -1, 0, 1):
            assert V_apply(E_apply(n, V_apply(v, -1)), 1) == E_apply(n + 2, v)
            assert V_apply(F_apply(n, V_apply(v, -1)), 1) == F_apply(n - 2, v)


def test_theta_decomposition_to_order_two():
    trace = two_factor_trace(2)
    assert trace  # nonempty window
    for (zx, en), count in trace.items():
        assert count == two_factor_trace_closed(zx, en), (zx, en)


def test_level1_character_coefficients():
    # q^1 band structure of the integer-spin character: 1 + zeta^2 + zeta^-2
    x0 = level1_character_closed(0, 2, 4)
    got = {band: series.coeff(int(1 - series.lead)) for band, series in x0.items() if series.lead <= 1}
    assert got == {-2: 1, 0: 1, 2: 1}
    # q^{1/4} coefficient of the half-integer-spin character: zeta + 1/zeta
    xh = level1_character_closed(HALF, 2, 4)
    got = {band: series.coeff(0) for band, series in xh.items() if series.lead == Fraction(1, 4)}
    assert got == {-1: 1, 1: 1}


def test_multiplicity_character():
    psi0 = multiplicity_character_closed(0, 6)
    # 1 + 2q + ... : m = 0 once, m = +-1 twice from q^1
    assert psi0.coeff(0) == 1
    assert psi0.coeff(1) == 1 + 2
    psih = multiplicity_character_closed(HALF, 6)
    assert psih.lead == Fraction(1, 4)
    assert psih.coeff(0) == 2


def test_suite_runner_smoke():
    reports = run_suites(2, names=["car", "grading"], pair_emax=2)
    assert all(r["ok"] for r in reports)
    with pytest.raises(ValueError):
        run_suites(2, names=["nope"])


def test_mode_matrix_assembly_and_grading():
    from virasoro.fock import FockBasis, bilinear, shift_U, vertex_mode_matrix

    basis = FockBasis(3)
    for mm in (
        bilinear("a", 1, basis),
        bilinear("a", -2, basis),
        bilinear("L'", 2, basis),
        bilinear("L", -1, basis),
        vertex_mode_matrix(1, 0, basis),
        vertex_mode_matrix(-1, 2, basis),
        shift_U(1, basis),
        shift_U(-2, basis),
    ):
        assert mm.grading_consistent(basis), mm.label
    # L and L' assemble to the same matrix
    assert bilinear("L", 1, basis).entries == bilinear("L'", 1, basis).entries
    with pytest.raises(ValueError):
        bilinear("nope", 0, basis)


def test_two_factor_checks_and_level1_characters():
    from virasoro.fock_checks import level1_characters, two_factor_checks

    reports = two_factor_checks(2)
    assert [r["name"] for r in reports] == [
        "example2", "level1-brackets", "psi-boson", "theta"
    ]
    assert all(r["ok"] for r in reports)
    rep = level1_characters(Fraction(5, 2))
    assert rep["ok"]
    assert rep["integer_spin_bands"][0]["coeffs"][0] == "1"
    assert rep["half_spin_bands"][1]["leading_exponent"] == "1/4"


def test_psi_boson_realisation_matches_graded_product():
    from virasoro.fock import psi_mode_b

    pb = PairBasis(2)
    for st in pb:
        v = PairVector({st: Fraction(1)})
        for m in (1, -1, 2):
            for n in range(-2, 3):
                assert psi_mode(m, n, v) == psi_mode_b(m, n, v), (st, m, n)


def test_equation_of_motion_suite():
    from virasoro.fock_checks import check_equation_of_motion

    report = check_equation_of_motion()
    assert report["ok"] and report["checked"] >= 20


def test_b_sugawara_bracket():
    from virasoro.fock import b_sugawara_apply

    pb = PairBasis(2)
    for st in list(pb)[:8]:
        v = PairVector({st: Fraction(1)})
        for m, n in itertools.product((-2, -1, 0, 1, 2), repeat=2):
            lhs = b_sugawara_apply(m, b_sugawara_apply(n, v)) - b_sugawara_apply(
                n, b_sugawara_apply(m, v)
            )
            rhs = b_sugawara_apply(m + n, v).scale(Fraction(m - n))
            if m + n == 0:
                rhs = rhs + v.scale(Fraction(m**3 - m, 12))
            assert lhs == rhs, (st, m, n)
