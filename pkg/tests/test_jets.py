"""Truncated Taylor jets: arithmetic recurrences against analytic derivatives.

Derivative towers are validated level by level: derivative(j) of a jet of
order j is compared against a central difference of derivative(j-1) taken
from a fresh lower-order jet, so each level is one O(h^2) step away from an
exactly computed quantity instead of compounding difference noise.
"""

import numpy as np
import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from poincare_hardy import Bump
from poincare_hardy.jets import Jet, constant, cosh_jet, coth, coth_jet, sinh_jet, variable

from _oracles import central_diff


def test_variable_jet():
    r = np.array([0.5, 1.0, 2.0])
    j = variable(r, 3)
    assert np.array_equal(j.value(), r)
    assert np.array_equal(j.derivative(1), np.ones(3))
    assert np.array_equal(j.derivative(2), np.zeros(3))
    assert j.order == 3


def test_constant_jet():
    c = constant(2.5, (4,), 2)
    assert np.all(c.value() == 2.5)
    assert np.all(c.derivative(1) == 0.0)


def test_exp_jet_matches_closed_form():
    r = np.linspace(0.1, 3.0, 17)
    j = (variable(r, 5) * -2.0).exp()
    for k in range(6):
        np.testing.assert_allclose(j.derivative(k), (-2.0) ** k * np.exp(-2.0 * r), rtol=1e-13)


def test_sinh_cosh_jets():
    r = np.linspace(0.1, 4.0, 23)
    s, c = sinh_jet(r, 4), cosh_jet(r, 4)
    np.testing.assert_allclose(s.value(), np.sinh(r), rtol=1e-14)
    np.testing.assert_allclose(s.derivative(1), np.cosh(r), rtol=1e-14)
    np.testing.assert_allclose(s.derivative(2), np.sinh(r), rtol=1e-14)
    np.testing.assert_allclose(c.derivative(1), np.sinh(r), rtol=1e-14)
    np.testing.assert_allclose(c.derivative(3), np.sinh(r), rtol=1e-14)


def test_product_rule():
    r = np.linspace(0.2, 2.0, 9)
    p = sinh_jet(r, 3) * variable(r, 3)
    # (r sinh r)' = sinh r + r cosh r, '' = 2 cosh r + r sinh r
    np.testing.assert_allclose(p.derivative(1), np.sinh(r) + r * np.cosh(r), rtol=1e-13)
    np.testing.assert_allclose(p.derivative(2), 2.0 * np.cosh(r) + r * np.sinh(r), rtol=1e-13)


def test_reciprocal_inverts():
    r = np.linspace(0.3, 3.0, 11)
    j = cosh_jet(r, 4)
    one = j * j.reciprocal()
    np.testing.assert_allclose(one.value(), 1.0, rtol=1e-14)
    for k in range(1, 5):
        np.testing.assert_allclose(one.derivative(k), 0.0, atol=1e-10)


def test_power_jet():
    r = np.linspace(0.5, 2.0, 7)
    j = sinh_jet(r, 2).power(2.0)
    np.testing.assert_allclose(j.value(), np.sinh(r) ** 2, rtol=1e-13)
    np.testing.assert_allclose(j.derivative(1), 2.0 * np.sinh(r) * np.cosh(r), rtol=1e-13)


def test_truncate_drops_tail():
    r = np.linspace(0.5, 2.0, 7)
    j = sinh_jet(r, 5).truncate(2)
    assert j.order == 2
    np.testing.assert_allclose(j.derivative(2), np.sinh(r), rtol=1e-14)


def test_coth_jet_matches_ratio():
    r = np.linspace(0.2, 5.0, 31)
    j = coth_jet(r, 3)
    np.testing.assert_allclose(j.value(), 1.0 / np.tanh(r), rtol=1e-13)
    # coth' = 1 - coth^2
    np.testing.assert_allclose(j.derivative(1), 1.0 - (1.0 / np.tanh(r)) ** 2, rtol=1e-11, atol=1e-13)


def test_coth_series_switch_is_seamless():
    below, above = 0.9999e-3, 1.0001e-3
    for r in (below, above):
        got = coth(np.array([r]))[0]
        want = 1.0 / np.tanh(r)
        assert abs(got - want) / want < 1e-13
    # deep series regime against the Laurent expansion 1/r + r/3 - r^3/45
    r = np.array([1e-6])
    np.testing.assert_allclose(coth(r), 1.0 / r + r / 3.0 - r**3 / 45.0, rtol=1e-15)


@pytest.mark.parametrize("level", [1, 2, 3, 4, 5])
def test_bump_jet_levels_match_finite_differences(level):
    u = Bump(2.0, 1.0, 1)
    r = np.linspace(1.2, 2.8, 25)

    def lower(x):
        return u.jet(x, level - 1).derivative(level - 1)

    fd = central_diff(lower, r)
    exact = u.jet(r, level).derivative(level)
    scale = np.max(np.abs(exact))
    assert np.max(np.abs(fd - exact)) / scale < 1e-5


@settings(max_examples=40, deadline=None)
@given(
    st.lists(st.floats(-2.0, 2.0), min_size=3, max_size=5),
    st.lists(st.floats(-2.0, 2.0), min_size=3, max_size=5),
)
def test_product_rule_random_polynomials(pc, qc):
    r = np.linspace(-1.0, 1.0, 5)
    rj = variable(r, 4)

    def poly(coeffs):
        out = constant(coeffs[0], r.shape, 4)
        for c in coeffs[1:]:
            out = out * rj + c
        return out

    p, q = poly(pc), poly(qc)
    prod = p * q
    lhs = prod.derivative(1)
    rhs = p.derivative(1) * q.value() + p.value() * q.derivative(1)
    np.testing.assert_allclose(lhs, rhs, rtol=1e-12, atol=1e-12)


def test_jet_shapes_broadcast():
    r = np.linspace(0.5, 1.5, 6).reshape(2, 3)
    j = sinh_jet(r, 2)
    assert j.shape == (2, 3)
    assert j.value().shape == (2, 3)
