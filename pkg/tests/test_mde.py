from fractions import Fraction

import pytest

from vvmf3.mde import (
    build_mde,
    component_series,
    derived_basis,
    indicial_phi,
    lambda_n,
    minimal_vector,
    ode_residual,
    phi_j,
)
from vvmf3.qseries import QExpansion
from vvmf3.reps import validate_triple
from conftest import (
    oracle_coefficients,
    oracle_g_series,
    oracle_phi,
    oracle_phi_j,
    sample_triples,
)

ANCHOR = validate_triple(1, 2, 4, 7)
UNBOUNDED = validate_triple(1, 3, 7, 11)


def test_integer_parameters_anchor():
    sys = build_mde(ANCHOR, 2)
    assert (sys.x0, sys.x4, sys.x6) == (14, -140, 680)
    assert sys.alpha4 == Fraction(-5, 252)
    assert sys.alpha6 == Fraction(85, 74088)
    sys11 = build_mde(UNBOUNDED, 0)
    assert (sys11.x0, sys11.x4, sys11.x6) == (22, -860, 8680)


def test_g_series_match_oracle():
    for t in (ANCHOR, UNBOUNDED, validate_triple(0, 1, 2, 3)):
        sys = build_mde(t, 15)
        g0, g1, g2 = oracle_g_series(t, 15)
        assert list(sys.G0) == g0
        assert list(sys.G1) == g1
        assert list(sys.G2) == g2


def test_structural_divisibility_sampled():
    for t in sample_triples(60, 400):
        sys = build_mde(t, 0)
        assert sys.x0 % 2 == 0 and sys.x4 % 4 == 0 and sys.x6 % 8 == 0
        if t.N % 3 == 0:
            assert sys.x0 % 3 == 0 and sys.x4 % 3 == 0 and sys.x6 % 9 == 0
        # 3 | x4 exactly when 3 | N.
        assert (sys.x4 % 3 == 0) == (t.N % 3 == 0)


def test_indicial_roots_and_cubic():
    for t in (ANCHOR, UNBOUNDED, validate_triple(2, 3, 7, 8)):
        sys = build_mde(t, 0)
        for e in t.exponents:
            assert indicial_phi(sys, e) == 0
        # Monic cubic: phi(lam) - prod(lam - r_i) vanishes identically.
        for lam in (Fraction(1, 2), Fraction(5), Fraction(-3, 7)):
            prod = (lam - t.exponents[0]) * (lam - t.exponents[1]) * (lam - t.exponents[2])
            assert indicial_phi(sys, lam) == prod


def test_phi_identities_vs_oracle():
    t = ANCHOR
    sys = build_mde(t, 10)
    gj = oracle_g_series(t, 10)
    for lam in (Fraction(1, 7), Fraction(8, 7), Fraction(3, 2)):
        assert indicial_phi(sys, lam) == oracle_phi(gj, lam)
        for j in range(1, 11):
            assert phi_j(sys, j, lam) == oracle_phi_j(gj, j, lam)
    with pytest.raises(ValueError):
        phi_j(sys, 0, Fraction(1))
    with pytest.raises(ValueError):
        phi_j(sys, 11, Fraction(1))


def test_lambda_n_positive_and_consistent():
    for t in sample_triples(25, 300):
        sys = build_mde(t, 0)
        for lead in (t.A, t.B, t.C):
            r = Fraction(lead, t.N)
            for n in range(1, 12):
                lam = lambda_n(t, lead, n)
                assert lam > 0
                assert Fraction(t.N**2) * indicial_phi(sys, r + n) == n * lam
    with pytest.raises(ValueError):
        lambda_n(ANCHOR, 1, 0)
    with pytest.raises(ValueError):
        lambda_n(ANCHOR, 3, 1)


def test_component_series_matches_naive_oracle():
    for t in (ANCHOR, UNBOUNDED, validate_triple(0, 3, 5, 8), validate_triple(1, 4, 10, 15)):
        sys = build_mde(t, 25)
        for lead in (t.A, t.B, t.C):
            fast = component_series(sys, lead)
            slow = oracle_coefficients(t, lead, 25)
            assert list(fast.coeffs) == slow, (t, lead)
            assert fast.exponent == Fraction(lead, t.N)


def test_minimal_vector_layout():
    sys = build_mde(ANCHOR, 8)
    mv = minimal_vector(sys)
    assert [c.exponent for c in mv.components] == list(ANCHOR.exponents)
    assert all(c.coeffs[0] == 1 for c in mv.components)
    short = minimal_vector(sys, 3)
    assert all(c.order == 3 for c in short.components)
    with pytest.raises(ValueError):
        minimal_vector(sys, 9)


def test_ode_residual_zero_on_solutions():
    sys = build_mde(UNBOUNDED, 40)
    for comp in minimal_vector(sys).components:
        res = ode_residual(sys, comp)
        assert all(c == 0 for c in res.coeffs)


def test_ode_residual_detects_perturbation():
    sys = build_mde(ANCHOR, 10)
    comp = component_series(sys, 1)
    coeffs = list(comp.coeffs)
    coeffs[1] += 1
    res = ode_residual(sys, QExpansion(comp.exponent, coeffs))
    # First nonzero residual coefficient sits at the perturbed index and
    # equals phi(r + 1) times the perturbation.
    assert res.coeffs[0] == 0
    assert res.coeffs[1] == indicial_phi(sys, Fraction(1, 7) + 1) == Fraction(24, 49)
    assert any(c != 0 for c in res.coeffs[2:])


def test_derived_basis_anchor():
    sys = build_mde(ANCHOR, 6)
    basis = derived_basis(sys, minimal_vector(sys))
    assert basis.determinant == Fraction(6, 343)
    assert basis.vandermonde == Fraction(6, 343)
    k0 = ANCHOR.k0
    for i, r in enumerate(ANCHOR.exponents):
        expected_row = (
            Fraction(1),
            r - Fraction(k0, 12),
            (r - Fraction(k0, 12)) * (r - Fraction(k0 + 2, 12)),
        )
        assert basis.matrix[i] == expected_row
    # Derived components keep the exponent and shift the weight.
    assert [f.exponent for f in basis.first] == list(ANCHOR.exponents)
    assert [f.exponent for f in basis.second] == list(ANCHOR.exponents)


def test_derived_basis_determinant_sampled():
    for t in sample_triples(12, 200):
        sys = build_mde(t, 2)
        basis = derived_basis(sys, minimal_vector(sys))
        r = t.exponents
        assert basis.determinant == (r[1] - r[0]) * (r[2] - r[0]) * (r[2] - r[1])
        assert basis.determinant != 0


def test_build_mde_validation():
    with pytest.raises(ValueError):
        build_mde(ANCHOR, -1)
    sys = build_mde(ANCHOR, 5)
    with pytest.raises(ValueError):
        component_series(sys, 1, 6)
    with pytest.raises(ValueError):
        component_series(sys, 5)


def test_system_json_dict():
    sys = build_mde(ANCHOR, 3)
    data = sys.to_json_dict()
    assert data["x0"] == 14 and data["x4"] == -140 and data["x6"] == 680
    assert data["alpha4"] == "-5/252"
    assert data["g2"]["coeffs"][0] == "2"
    assert data["triple"]["k0"] == 2
