"""Radial differential operators on hyperbolic space, via jet arithmetic.

For a radial function u(r) in geodesic polar coordinates the Laplacian is
u'' + (N-1) coth(r) u'; iterating it and taking one more derivative covers
every |grad^k u|^2 integrand: (Lap^m u)^2 for k = 2m and ((Lap^m u)')^2 for
k = 2m+1.  ``RadialTable`` evaluates the whole tower once per test function
and grid so the verifier's many integrals share one pipeline.
"""

from __future__ import annotations

import functools

import numpy as np

from .constants import lambda_n
from .jets import Jet, cosh_jet, coth, sinh_jet
from .profiles import RadialProfile
from .quadrature import Grid, QuadratureSpec, build_grid

__all__ = [
    "laplace_of_jet",
    "laplace_radial",
    "iterated_laplace",
    "iterated_laplace_jet",
    "grad_norm_sq",
    "gradk_sq_values",
    "mode_operator",
    "to_v_transform",
    "RadialTable",
    "radial_table",
]


def laplace_of_jet(ujet: Jet, coth_full: Jet, N: int) -> Jet:
    """Jet of u'' + (N-1) coth(r) u', two orders shorter than the input."""
    q = ujet.order - 2
    if q < 0:
        raise ValueError("need jet order >= 2 to apply the Laplacian")
    second = ujet.shift().shift()
    first = ujet.shift().truncate(q)
    return second + coth_full.truncate(q) * first * float(N - 1)


def laplace_radial(u: RadialProfile, N: int, r: np.ndarray, order: int = 0) -> Jet:
    """Jet of the hyperbolic Laplacian of a radial profile at the points r."""
    r = np.asarray(r, dtype=float)
    ujet = u.jet(r, order + 2)
    return laplace_of_jet(ujet, coth_jet_at(r, order + 2), N)


def coth_jet_at(r: np.ndarray, order: int) -> Jet:
    return cosh_jet(r, order) / sinh_jet(r, order)


def iterated_laplace_jet(u: RadialProfile, N: int, m: int, r: np.ndarray, order: int = 0) -> Jet:
    """Jet of Lap^m u at the points r."""
    r = np.asarray(r, dtype=float)
    total = order + 2 * m
    jet = u.jet(r, total)
    cj = coth_jet_at(r, total)
    for _ in range(m):
        jet = laplace_of_jet(jet, cj, N)
    return jet


def iterated_laplace(u: RadialProfile, N: int, m: int, r: np.ndarray) -> np.ndarray:
    """Values of Lap^m u at the points r."""
    return iterated_laplace_jet(u, N, m, r, order=0).value()


def grad_norm_sq(u: RadialProfile, r: np.ndarray) -> np.ndarray:
    """|grad u|^2 = (u')^2 for a radial function."""
    r = np.asarray(r, dtype=float)
    return u.jet(r, 1).derivative(1) ** 2


def mode_operator(d: RadialProfile, n: int, N: int, r: np.ndarray, series_coth_below: float = 1e-3) -> np.ndarray:
    """Values of d'' + (N-1) coth(r) d' - lambda_n d / sinh^2 r."""
    r = np.asarray(r, dtype=float)
    jet = d.jet(r, 2)
    lam = float(lambda_n(n, N))
    return (
        jet.derivative(2)
        + (N - 1) * coth(r, series_coth_below) * jet.derivative(1)
        - lam * jet.value() / np.sinh(r) ** 2
    )


def to_v_transform(u: RadialProfile, N: int, r: np.ndarray, order: int) -> Jet:
    """Jet of v = sinh^{(N-1)/2}(r) * u(r), the substitution that flattens the measure."""
    r = np.asarray(r, dtype=float)
    return sinh_jet(r, order).power((N - 1) / 2.0) * u.jet(r, order)


class RadialTable:
    """Values and first derivatives of u, Lap u, ..., Lap^levels u on a grid."""

    def __init__(self, u: RadialProfile, N: int, grid: Grid, levels: int):
        order = 2 * levels + 2
        r = grid.nodes
        cj = coth_jet_at(r, order)
        tower = [u.jet(r, order)]
        for _ in range(levels):
            tower.append(laplace_of_jet(tower[-1], cj, N))
        self.u = u
        self.N = N
        self.grid = grid
        self.levels = levels
        self._tower = tower

    def values(self, level: int) -> np.ndarray:
        """Lap^level u at the nodes."""
        return self._tower[level].value()

    def deriv(self, level: int) -> np.ndarray:
        """(Lap^level u)' at the nodes."""
        return self._tower[level].derivative(1)


def gradk_sq_values(table: RadialTable, k: int) -> np.ndarray:
    """|grad^k u|^2 at the nodes: (Lap^m u)^2 for k = 2m, ((Lap^m u)')^2 for k = 2m+1."""
    m, odd = divmod(k, 2)
    if m > table.levels:
        raise ValueError(f"table holds {table.levels} Laplacian levels, order {k} needs {m}")
    return (table.deriv(m) if odd else table.values(m)) ** 2


@functools.lru_cache(maxsize=8)
def radial_table(
    u: RadialProfile, N: int, spec: QuadratureSpec, r_max: float, refine: int, levels: int
) -> RadialTable:
    """Cached table so margin families over the same test function share jets."""
    return RadialTable(u, N, build_grid(spec, r_max, refine), levels)
