"""Fourth-order inequalities transplanted to the upper half-space model.

Points are (x, y) with x in R^{N-1}, y > 0, hyperbolic metric delta/y^2 and
volume element y^{-N} dx dy.  Test functions are separable products
v = phi(rho) psi(y) with rho = |x|, so every integral reduces to a
two-dimensional tensor quadrature carrying the flat factor rho^{N-2}; the
area of the unit (N-2)-sphere is omitted throughout, which rescales both
sides of every inequality identically.  The geodesic distance to the point
(0, 1) weights the sharpened remainder terms.
"""

from __future__ import annotations

import functools
from dataclasses import dataclass

import numpy as np

from .constants import halfspace_constants
from .errors import HypothesisError
from .profiles import RadialProfile, load_halfspace_suite
from .reports import IdentityResidualReport, MarginReport

__all__ = [
    "HalfspacePoint",
    "geodesic_distance",
    "SeparableTestFunction",
    "halfspace_suite",
    "PlaneQuadratureSpec",
    "PlaneGrid",
    "build_plane_grid",
    "converge_plane_terms",
    "euclid_laplacian_separable",
    "margin_halfspace",
    "margin_hardy_mazya",
    "check_pf1",
    "check_pf2",
]


@dataclass(frozen=True)
class HalfspacePoint:
    """A point of the upper half-space, reduced to (|x|, y)."""

    rho: float
    y: float

    def __post_init__(self):
        if self.y <= 0:
            raise HypothesisError(f"requires y > 0, got y={self.y}")


def _distance_values(rho, y):
    rho = np.asarray(rho, dtype=float)
    y = np.asarray(y, dtype=float)
    return np.arccosh(1.0 + ((y - 1.0) ** 2 + rho**2) / (2.0 * y))


def geodesic_distance(p: HalfspacePoint) -> float:
    """Hyperbolic distance from p to (0, 1): arcosh(1 + ((y-1)^2 + rho^2)/(2y))."""
    return float(_distance_values(p.rho, p.y))


@dataclass(frozen=True)
class SeparableTestFunction:
    """v(x, y) = phi(|x|) psi(y) with compactly supported smooth factors."""

    phi: RadialProfile
    psi: RadialProfile

    def __post_init__(self):
        if self.phi.support is None or self.psi.support is None:
            raise ValueError("separable members need compactly supported factors")
        if self.psi.support[0] <= 0:
            raise ValueError("psi must be supported away from y = 0")

    @property
    def id(self) -> str:
        return f"{self.phi.id}|{self.psi.id}"

    @property
    def box(self) -> tuple[float, float, float]:
        """(rho_hi, y_lo, y_hi) bounding the support."""
        return (self.phi.support[1], self.psi.support[0], self.psi.support[1])


def halfspace_suite(name: str = "standard") -> tuple[SeparableTestFunction, ...]:
    return tuple(SeparableTestFunction(phi, psi) for phi, psi in load_halfspace_suite(name))


@dataclass(frozen=True)
class PlaneQuadratureSpec:
    """Tensor Gauss-Legendre policy for the (rho, y) plane."""

    panels: int = 8
    nodes_per_panel: int = 32
    rel_tol: float = 1e-9
    abs_tol: float = 1e-30
    max_doublings: int = 2


@functools.lru_cache(maxsize=None)
def _gauss(n: int) -> tuple[np.ndarray, np.ndarray]:
    return np.polynomial.legendre.leggauss(n)


def _axis(lo: float, hi: float, panels: int, nodes: int) -> tuple[np.ndarray, np.ndarray]:
    breaks = np.linspace(lo, hi, panels + 1)
    x, w = _gauss(nodes)
    half = 0.5 * np.diff(breaks)
    mid = 0.5 * (breaks[1:] + breaks[:-1])
    return (mid[:, None] + half[:, None] * x[None, :]).ravel(), (half[:, None] * w[None, :]).ravel()


class PlaneGrid:
    """Tensor rule on [0, rho_hi] x [y_lo, y_hi]; values are (n_rho, n_y) arrays."""

    __slots__ = ("rho", "wr", "y", "wy", "refine")

    def __init__(self, rho, wr, y, wy, refine):
        self.rho = rho
        self.wr = wr
        self.y = y
        self.wy = wy
        self.refine = refine

    def integrate(self, values: np.ndarray) -> float:
        return float(self.wr @ values @ self.wy)


def build_plane_grid(spec: PlaneQuadratureSpec, box: tuple[float, float, float], refine: int = 0) -> PlaneGrid:
    rho_hi, y_lo, y_hi = box
    panels = spec.panels * (1 << refine)
    rho, wr = _axis(0.0, rho_hi, panels, spec.nodes_per_panel)
    y, wy = _axis(y_lo, y_hi, panels, spec.nodes_per_panel)
    return PlaneGrid(rho, wr, y, wy, refine)


def converge_plane_terms(fn, spec: PlaneQuadratureSpec, box):
    """Plane analog of the radial doubling loop; same (values, errors) contract."""
    prev = fn(build_plane_grid(spec, box, 0))
    errors = {key: float("inf") for key in prev}
    for refine in range(1, spec.max_doublings + 1):
        cur = fn(build_plane_grid(spec, box, refine))
        errors = {key: max(abs(cur[key] - prev[key]), float(np.spacing(abs(cur[key])))) for key in cur}
        prev = cur
        scale = max((abs(v) for v in cur.values()), default=0.0)
        if all(e <= spec.rel_tol * scale + spec.abs_tol for e in errors.values()):
            break
    return prev, errors


def euclid_laplacian_separable(v: SeparableTestFunction, N: int, rho: np.ndarray, y: np.ndarray) -> np.ndarray:
    """Flat Laplacian of phi(rho) psi(y) on the tensor grid.

    (phi'' + (N-2) phi'/rho) psi + phi psi''; the x-part is the radial
    Laplacian in R^{N-1}.
    """
    pj = v.phi.jet(np.asarray(rho, dtype=float), 2)
    qj = v.psi.jet(np.asarray(y, dtype=float), 2)
    lap_x = pj.derivative(2) + (N - 2) * pj.derivative(1) / np.asarray(rho, dtype=float)
    return np.multiply.outer(lap_x, qj.value()) + np.multiply.outer(pj.value(), qj.derivative(2))


class _PlaneTable:
    """Separable jets expanded to the tensor grid, shared by all integrands."""

    def __init__(self, v: SeparableTestFunction, N: int, grid: PlaneGrid):
        self.grid = grid
        pj = v.phi.jet(grid.rho, 2)
        qj = v.psi.jet(grid.y, 2)
        outer = np.multiply.outer
        self.v = outer(pj.value(), qj.value())
        self.v_rho = outer(pj.derivative(1), qj.value())
        self.v_y = outer(pj.value(), qj.derivative(1))
        self.v_yy = outer(pj.value(), qj.derivative(2))
        lap_x = pj.derivative(2) + (N - 2) * pj.derivative(1) / grid.rho
        self.lap_x_v = outer(lap_x, qj.value())
        self.lap = self.lap_x_v + self.v_yy
        self.grad_sq = self.v_rho**2 + self.v_y**2
        self.rho_pow = grid.rho ** (N - 2)
        self.ymesh = np.broadcast_to(grid.y, self.v.shape)
        self.dist = _distance_values(grid.rho[:, None], grid.y[None, :])

    def integrate(self, values: np.ndarray) -> float:
        return self.grid.integrate(values * self.rho_pow[:, None])


def _plane_raw(v, N, spec, integrands):
    def fn(grid):
        table = _PlaneTable(v, N, grid)
        return {key: table.integrate(make(table)) for key, make in integrands.items()}

    return converge_plane_terms(fn, spec, v.box)


def margin_halfspace(
    which: str,
    v: SeparableTestFunction,
    N: int,
    spec: PlaneQuadratureSpec | None = None,
    tol: float = 1e-7,
) -> MarginReport:
    """Margin of one of the two sharpened fourth-order half-space inequalities.

    "rellich1": int y^2 (Lap v)^2 + c_grad |grad v|^2 dx dy bounds the
    v^2/y^2 term plus distance-sharpened remainders v^2/(y^2 d^2) and
    v^2/(y^2 d^4).  "rellich2": int (Lap v)^2 + c_grad |grad v|^2/y^2 dx dy
    bounds v^2/y^4 with remainders v^2/(y^4 d^2), v^2/(y^4 d^4).
    """
    consts = halfspace_constants(which, N)
    spec = spec or PlaneQuadratureSpec()
    if which == "rellich1":
        integrands = {
            "lap2_y2": lambda t: t.ymesh**2 * t.lap**2,
            "grad": lambda t: t.grad_sq,
            "y2": lambda t: t.v**2 / t.ymesh**2,
            "d2": lambda t: t.v**2 / (t.ymesh**2 * t.dist**2),
            "d4": lambda t: t.v**2 / (t.ymesh**2 * t.dist**4),
        }
        coef = {
            "lap2_y2": 1,
            "grad": consts["grad"],
            "y2": -consts["y2"],
            "d2": -consts["d2"],
            "d4": -consts["d4"],
        }
    else:
        integrands = {
            "lap2": lambda t: t.lap**2,
            "grad_y2": lambda t: t.grad_sq / t.ymesh**2,
            "y4": lambda t: t.v**2 / t.ymesh**4,
            "d2": lambda t: t.v**2 / (t.ymesh**4 * t.dist**2),
            "d4": lambda t: t.v**2 / (t.ymesh**4 * t.dist**4),
        }
        coef = {
            "lap2": 1,
            "grad_y2": consts["grad"],
            "y4": -consts["y4"],
            "d2": -consts["d2"],
            "d4": -consts["d4"],
        }
    vals, errs = _plane_raw(v, N, spec, integrands)
    signed = {key: float(c) * vals[key] for key, c in coef.items()}
    noise = float(sum(abs(float(c)) * errs[key] for key, c in coef.items()))
    return MarginReport(case=f"halfspace_{which}", function_id=v.id, N=N, terms=signed, noise=noise, tol=tol)


def margin_hardy_mazya(
    v: SeparableTestFunction, N: int, spec: PlaneQuadratureSpec | None = None, tol: float = 1e-7
) -> MarginReport:
    """int |grad v|^2 dx dy >= (1/4) int v^2/y^2 dx dy on the half-space."""
    spec = spec or PlaneQuadratureSpec()
    integrands = {"grad": lambda t: t.grad_sq, "y2": lambda t: t.v**2 / t.ymesh**2}
    vals, errs = _plane_raw(v, N, spec, integrands)
    signed = {"grad": vals["grad"], "y2": -0.25 * vals["y2"]}
    noise = float(errs["grad"] + 0.25 * errs["y2"])
    return MarginReport(case="hardy_mazya", function_id=v.id, N=N, terms=signed, noise=noise, tol=tol)


def check_pf1(
    v: SeparableTestFunction,
    alpha: float,
    N: int,
    spec: PlaneQuadratureSpec | None = None,
    tol: float = 1e-8,
) -> IdentityResidualReport:
    """Energy transplantation for u = y^alpha v, as an integral identity.

    int y^{2-N} |grad(y^alpha v)|^2 dx dy equals
    int y^{2 alpha + 2 - N} |grad v|^2 dx dy
    + alpha (N - 1 - alpha) int y^{2 alpha - N} v^2 dx dy.
    The left side is evaluated by differentiating y^alpha v directly.
    """
    spec = spec or PlaneQuadratureSpec()

    def fn(grid):
        table = _PlaneTable(v, N, grid)
        ym = table.ymesh
        u_rho = ym**alpha * table.v_rho
        u_y = alpha * ym ** (alpha - 1.0) * table.v + ym**alpha * table.v_y
        return {
            "lhs": table.integrate(ym ** (2.0 - N) * (u_rho**2 + u_y**2)),
            "grad_v": table.integrate(ym ** (2.0 * alpha + 2.0 - N) * table.grad_sq),
            "v2": table.integrate(ym ** (2.0 * alpha - N) * table.v**2),
        }

    vals, _ = converge_plane_terms(fn, spec, v.box)
    lhs = vals["lhs"]
    rhs = vals["grad_v"] + alpha * (N - 1.0 - alpha) * vals["v2"]
    max_abs = abs(lhs - rhs)
    scale = max(abs(lhs), abs(rhs))
    return IdentityResidualReport(
        identity="pf1",
        function_id=v.id,
        N=N,
        n=None,
        max_abs_residual=max_abs,
        max_rel_residual=max_abs / scale if scale > 0 else 0.0,
        tol=tol,
        details={"alpha": alpha, "lhs": lhs, "rhs": rhs},
    )


def _cheb(lo: float, hi: float, count: int, margin: float = 0.01) -> np.ndarray:
    span = hi - lo
    lo2, hi2 = lo + margin * span, hi - margin * span
    j = np.arange(count)
    x = np.cos((2 * j + 1) * np.pi / (2 * count))
    return 0.5 * (lo2 + hi2) + 0.5 * (hi2 - lo2) * x


def check_pf2(
    v: SeparableTestFunction, alpha: float, N: int, tol: float = 1e-8, counts: tuple[int, int] = (10, 5)
) -> IdentityResidualReport:
    """Laplacian transplantation for u = y^alpha v, pointwise on a sample grid.

    y^2 Lap u - (N-2) y u_y equals
    y^{alpha+2} Lap v + (2 alpha - (N-2)) y^{alpha+1} v_y
    + alpha (alpha - (N-1)) y^alpha v.
    The middle power alpha+1 is forced: both sides scale the same way in y
    only with it, and the pointwise residual confirms the exponent.  The
    residual of the variant with middle power alpha is reported in details.
    """
    rho_hi, y_lo, y_hi = v.box
    rho = _cheb(0.0, rho_hi, counts[0])
    y = _cheb(y_lo, y_hi, counts[1])
    pj = v.phi.jet(rho, 2)
    qj = v.psi.jet(y, 2)
    outer = np.multiply.outer
    vv = outer(pj.value(), qj.value())
    v_y = outer(pj.value(), qj.derivative(1))
    v_yy = outer(pj.value(), qj.derivative(2))
    lap_x = outer(pj.derivative(2) + (N - 2) * pj.derivative(1) / rho, qj.value())
    ym = y[None, :]

    # left side from derivatives of u = y^alpha v itself
    u_y = alpha * ym ** (alpha - 1.0) * vv + ym**alpha * v_y
    u_yy = (
        alpha * (alpha - 1.0) * ym ** (alpha - 2.0) * vv
        + 2.0 * alpha * ym ** (alpha - 1.0) * v_y
        + ym**alpha * v_yy
    )
    lap_u = ym**alpha * lap_x + u_yy
    lhs = ym**2 * lap_u - (N - 2) * ym * u_y

    lap_v = lap_x + v_yy
    rhs = (
        ym ** (alpha + 2.0) * lap_v
        + (2.0 * alpha - (N - 2)) * ym ** (alpha + 1.0) * v_y
        + alpha * (alpha - (N - 1.0)) * ym**alpha * vv
    )
    rhs_flat_mid = (
        ym ** (alpha + 2.0) * lap_v
        + (2.0 * alpha - (N - 2)) * ym**alpha * v_y
        + alpha * (alpha - (N - 1.0)) * ym**alpha * vv
    )
    max_abs = float(np.max(np.abs(lhs - rhs)))
    scale = float(max(np.max(np.abs(lhs)), np.max(np.abs(rhs))))
    flat_abs = float(np.max(np.abs(lhs - rhs_flat_mid)))
    return IdentityResidualReport(
        identity="pf2",
        function_id=v.id,
        N=N,
        n=None,
        max_abs_residual=max_abs,
        max_rel_residual=max_abs / scale if scale > 0 else 0.0,
        tol=tol,
        details={"alpha": alpha, "flat_middle_max_rel": flat_abs / scale if scale > 0 else 0.0},
    )
