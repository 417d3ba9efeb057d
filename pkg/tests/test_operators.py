"""Radial operators: Laplacian towers against closed forms and differences."""

import numpy as np
import pytest

from poincare_hardy import Bump, ExpDecay, QuadratureSpec
from poincare_hardy.operators import (
    grad_norm_sq,
    gradk_sq_values,
    iterated_laplace,
    iterated_laplace_jet,
    laplace_radial,
    mode_operator,
    radial_table,
    to_v_transform,
)
from poincare_hardy.quadrature import build_grid

from _oracles import central_diff


def test_laplace_of_exponential_closed_form():
    # Lap e^{-ar} = (a^2 - (N-1) a coth r) e^{-ar}
    a, N = 2.0, 5
    u = ExpDecay(a)
    r = np.linspace(0.5, 4.0, 17)
    want = (a * a - (N - 1) * a / np.tanh(r)) * np.exp(-a * r)
    np.testing.assert_allclose(laplace_radial(u, N, r).value(), want, rtol=1e-12)


def test_laplace_matches_difference_quotients():
    u, N = Bump(2.0, 1.0, 0), 7
    r = np.linspace(1.3, 2.7, 13)
    first = central_diff(u, r)
    second = central_diff(lambda x: u.jet(x, 1).derivative(1), r)
    want = second + (N - 1) / np.tanh(r) * first
    got = laplace_radial(u, N, r).value()
    assert np.max(np.abs(got - want)) / np.max(np.abs(got)) < 1e-7


def test_iterated_laplace_composes():
    u, N = Bump(2.0, 1.0, 1), 5
    r = np.linspace(1.2, 2.8, 9)
    once = laplace_radial(u, N, r, order=2)
    twice_direct = iterated_laplace(u, N, 2, r)
    # apply the Laplacian to the jet of Lap u by the same closed form
    from poincare_hardy.operators import coth_jet_at, laplace_of_jet

    twice_composed = laplace_of_jet(once, coth_jet_at(r, 2), N).value()
    np.testing.assert_allclose(twice_direct, twice_composed, rtol=1e-12)


def test_grad_norm_sq():
    u = Bump(2.0, 1.0, 0)
    r = np.linspace(1.2, 2.8, 9)
    np.testing.assert_allclose(grad_norm_sq(u, r), u.jet(r, 1).derivative(1) ** 2, rtol=1e-15)


def test_mode_operator_small_r_finite():
    u, N = Bump(0.5, 0.5, 0), 5
    r = np.array([1e-5, 1e-3, 0.1, 0.4])
    vals = mode_operator(u, 2, N, r)
    assert np.all(np.isfinite(vals))


def test_mode_operator_n0_is_laplacian():
    u, N = Bump(2.0, 1.0, 0), 5
    r = np.linspace(1.2, 2.8, 9)
    np.testing.assert_allclose(mode_operator(u, 0, N, r), laplace_radial(u, N, r).value(), rtol=1e-12)


def test_to_v_transform_values_and_derivative():
    u, N = Bump(2.0, 1.0, 0), 5
    r = np.linspace(1.2, 2.8, 9)
    w = to_v_transform(u, N, r, 1)
    np.testing.assert_allclose(w.value(), np.sinh(r) ** 2.0 * u(r), rtol=1e-13)
    fd = central_diff(lambda x: to_v_transform(u, N, x, 0).value(), r)
    scale = np.max(np.abs(w.derivative(1)))
    assert np.max(np.abs(w.derivative(1) - fd)) / scale < 1e-6


def test_gradk_sq_parity_dispatch():
    u, N = Bump(2.0, 1.0, 0), 5
    spec = QuadratureSpec()
    table = radial_table(u, N, spec, 4.0, 0, 2)
    r = table.grid.nodes
    np.testing.assert_allclose(gradk_sq_values(table, 0), u(r) ** 2, rtol=1e-13)
    np.testing.assert_allclose(gradk_sq_values(table, 1), grad_norm_sq(u, r), rtol=1e-13)
    np.testing.assert_allclose(
        gradk_sq_values(table, 2), laplace_radial(u, N, r).value() ** 2, rtol=1e-12
    )
    np.testing.assert_allclose(
        gradk_sq_values(table, 3),
        iterated_laplace_jet(u, N, 1, r, order=1).derivative(1) ** 2,
        rtol=1e-12,
    )
    with pytest.raises(ValueError):
        gradk_sq_values(table, 6)


def test_radial_table_is_cached():
    u, spec = Bump(2.0, 1.0, 0), QuadratureSpec()
    t1 = radial_table(u, 5, spec, 4.0, 1, 1)
    t2 = radial_table(u, 5, spec, 4.0, 1, 1)
    assert t1 is t2
    t3 = radial_table(u, 5, spec, 4.0, 2, 1)
    assert t3 is not t1


def test_radial_table_levels_requested():
    u = Bump(2.0, 1.0, 0)
    grid = build_grid(QuadratureSpec(), 4.0)
    from poincare_hardy.operators import RadialTable

    table = RadialTable(u, 5, grid, 2)
    np.testing.assert_allclose(table.values(2), iterated_laplace(u, 5, 2, grid.nodes), rtol=1e-11)
