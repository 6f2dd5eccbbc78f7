import json
from fractions import Fraction

import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from vvmf3.qseries import (
    QExpansion,
    eisenstein,
    modular_derivative,
    modular_derivative_iterate,
    pqr_series,
    series_arith,
)
from conftest import oracle_eisenstein


def _series(exponent, coeffs):
    return QExpansion(Fraction(*exponent), [Fraction(c) for c in coeffs])


def test_constructor_validates_exponent_range():
    QExpansion(0, [1])
    QExpansion(Fraction(6, 7), [1])
    with pytest.raises(ValueError):
        QExpansion(1, [1])
    with pytest.raises(ValueError):
        QExpansion(Fraction(-1, 7), [1])
    with pytest.raises(ValueError):
        QExpansion(0, [])


def test_coefficient_and_truncate():
    f = _series((1, 3), [1, 2, 3])
    assert f.order == 2
    assert f.coefficient(1) == 2
    with pytest.raises(ValueError):
        f.coefficient(3)
    g = f.truncate(1)
    assert g.coeffs == (1, 2) and g.exponent == f.exponent
    with pytest.raises(ValueError):
        f.truncate(5)


def test_addition_requires_matching_exponents():
    f = _series((1, 3), [1, 2, 3])
    g = _series((1, 3), [5, 0, -1, 9])
    assert (f + g).coeffs == (6, 2, 2)
    with pytest.raises(ValueError):
        f + _series((2, 3), [1])


def test_multiplication_truncates_to_min_order():
    f = _series((0, 1), [1, 1])
    g = _series((0, 1), [1, -1, 7])
    assert (f * g).coeffs == (1, 0)


def test_multiplication_exponent_wraparound():
    # q^(2/3) * q^(2/3) = q^(4/3) = q^(1/3) * q: coefficients shift one slot.
    f = _series((2, 3), [1, 5])
    h = f * f
    assert h.exponent == Fraction(1, 3)
    assert h.coeffs == (0, 1, 10)
    assert h.order == 2


def test_scale():
    f = _series((1, 7), [1, -3])
    assert f.scale(Fraction(2, 5)).coeffs == (Fraction(2, 5), Fraction(-6, 5))


def test_series_arith_dispatch():
    f = _series((0, 1), [1, 2])
    g = _series((0, 1), [3, 4])
    assert series_arith("add", f, g) == f + g
    assert series_arith("mul", f, g) == f * g
    assert series_arith("scale", f, Fraction(3)) == f.scale(3)
    with pytest.raises(ValueError):
        series_arith("div", f, g)


def test_eisenstein_matches_oracle():
    for k in (2, 4, 6, 8, 10, 12):
        assert list(eisenstein(k, 30).coeffs) == oracle_eisenstein(k, 30)
    with pytest.raises(ValueError):
        eisenstein(3, 5)
    with pytest.raises(ValueError):
        eisenstein(0, 5)


def test_pqr_normalization():
    p, q, r = pqr_series(8)
    e2, e4, e6 = eisenstein(2, 8), eisenstein(4, 8), eisenstein(6, 8)
    assert p == e2.scale(Fraction(-1, 12))
    assert q == e4.scale(Fraction(1, 144))
    assert r == e6.scale(Fraction(-1, 432))


def test_ramanujan_identities():
    # theta P = Q - P^2 and theta Q = R - 4 P Q in the scaled variables.
    T = 20
    p, q, r = pqr_series(T)
    theta_p = QExpansion(0, [n * c for n, c in enumerate(p.coeffs)])
    theta_q = QExpansion(0, [n * c for n, c in enumerate(q.coeffs)])
    assert theta_p == q + (p * p).scale(-1)
    assert theta_q == r + (p * q).scale(-4)


def test_discriminant_cusp_form():
    # (E4^3 - E6^2) / 1728 = q - 24 q^2 + 252 q^3 - 1472 q^4 + ...
    T = 6
    e4, e6 = eisenstein(4, T), eisenstein(6, T)
    delta = (e4 * e4 * e4 + (e6 * e6).scale(-1)).scale(Fraction(1, 1728))
    assert delta.coeffs[:5] == (0, 1, -24, 252, -1472)


def test_modular_derivative_classical_identities():
    T = 15
    e4, e6 = eisenstein(4, T), eisenstein(6, T)
    # D_4 E4 = -E6/3 and D_6 E6 = -E4^2/2.
    assert modular_derivative(e4, 4) == e6.scale(Fraction(-1, 3))
    assert modular_derivative(e6, 6) == (e4 * e4).scale(Fraction(-1, 2))


def test_modular_derivative_fractional_exponent():
    # D_k q^r = (r - k/12) q^r on a one-term series.
    f = QExpansion(Fraction(1, 7), [Fraction(1)], )
    g = modular_derivative(f, 2)
    assert g.exponent == f.exponent
    assert g.coeffs[0] == Fraction(1, 7) - Fraction(2, 12)


def test_modular_derivative_iterate():
    T = 10
    e4 = eisenstein(4, T)
    once = modular_derivative(e4, 4)
    twice = modular_derivative(once, 6)
    assert modular_derivative_iterate(e4, 4, 2) == twice
    assert modular_derivative_iterate(e4, 4, 0) == e4
    with pytest.raises(ValueError):
        modular_derivative_iterate(e4, 4, -1)


def test_json_round_trip():
    f = _series((2, 7), [1, Fraction(-40, 33), 0])
    data = f.to_json_dict()
    assert data == {"exponent": "2/7", "coeffs": ["1", "-40/33", "0"], "order": 2}
    assert QExpansion.from_json_dict(json.loads(json.dumps(data))) == f
    with pytest.raises(ValueError):
        QExpansion.from_json_dict({"exponent": "0", "coeffs": ["1"], "order": 5})


@st.composite
def small_series(draw):
    coeffs = draw(
        st.lists(
            st.fractions(min_value=Fraction(-50), max_value=Fraction(50)),
            min_size=1,
            max_size=6,
        )
    )
    return QExpansion(0, coeffs)


@given(small_series(), small_series(), small_series())
@settings(max_examples=100)
def test_ring_axioms_at_integral_exponent(f, g, h):
    T = min(f.order, g.order, h.order)
    f, g, h = f.truncate(T), g.truncate(T), h.truncate(T)
    assert f * g == g * f
    assert (f * g) * h == f * (g * h)
    assert f * (g + h) == f * g + f * h


@given(small_series(), st.integers(min_value=-6, max_value=6))
@settings(max_examples=60)
def test_derivative_is_a_weight_k_derivation(f, k):
    # D_{2k}(f * g) = (D_k f) * g + f * (D_k g) with weights adding.
    g = f.scale(Fraction(1, 3))
    lhs = modular_derivative(f * g, 2 * k)
    rhs = modular_derivative(f, k) * g + f * modular_derivative(g, k)
    assert lhs == rhs
