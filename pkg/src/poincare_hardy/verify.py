"""Numerical margin certificates for the radial inequalities.

Each margin function evaluates every integral of one inequality on one test
function, with left-hand terms entering positively and right-hand terms
negatively, and returns a MarginReport whose verdict demands the margin be
nonnegative up to tol * scale with quadrature noise below the same gate.
Noise is estimated from panel doubling, so a report can fail either because
the inequality is violated or because the integrals cannot be trusted at the
requested tolerance.
"""

from __future__ import annotations

from fractions import Fraction as F

import numpy as np

from .constants import (
    CaseSpec,
    chain_replay,
    thm21_constants,
    poincare_constant,
    yang_constants,
)
from .errors import HypothesisError
from .profiles import Bump, Cutoff, RadialProfile
from .operators import gradk_sq_values, radial_table
from .quadrature import QuadratureSpec, converge_terms, log_sinh, measure_values
from .reports import MarginReport

__all__ = [
    "margin_poincare_hardy",
    "margin_rellich",
    "margin_thm21",
    "margin_yang",
    "margin_general",
    "sharpness_probe",
]


def _support_r_max(u: RadialProfile) -> float:
    if u.support is None:
        raise ValueError("margin checks need a compactly supported test function")
    return u.support[1] + 1.0


def _assemble(case, u, N, vals, errs, coef, tol) -> MarginReport:
    signed = {name: float(c) * vals[name] for name, c in coef.items()}
    noise = float(sum(abs(float(c)) * errs[name] for name, c in coef.items()))
    return MarginReport(case=case, function_id=u.id, N=N, terms=signed, noise=noise, tol=tol)


def _raw_terms(u, N, spec, r_max, levels, needs):
    """Converged raw integrals named by (laplacian level or weight) keys."""

    def fn(grid):
        table = radial_table(u, N, spec, r_max, grid.refine, levels)
        r = grid.nodes
        mu = measure_values("hyperbolic", r, N)
        out = {}
        for key, (kind, arg) in needs.items():
            if kind == "gradk":
                values = gradk_sq_values(table, arg) * mu
            elif kind == "u2w":
                u2 = table.values(0) ** 2
                values = u2 * mu if arg == 0 else u2 * _inv_weight(arg, r) * mu
            elif kind == "lap2w":
                values = table.values(1) ** 2 * _inv_weight(arg, r) * mu
            else:
                raise ValueError(f"unknown raw term kind {kind!r}")
            out[key] = grid.integrate(values)
        return out

    return converge_terms(fn, spec, r_max)


def _inv_weight(arg, r):
    if isinstance(arg, str):
        if arg == "sinh2":
            return np.sinh(r) ** -2.0
        if arg == "sinh4":
            return np.sinh(r) ** -4.0
        raise ValueError(f"unknown weight {arg!r}")
    return r ** -float(arg)


def margin_poincare_hardy(u: RadialProfile, N: int, spec: QuadratureSpec | None = None, tol: float = 1e-8) -> MarginReport:
    """int |grad u|^2 >= ((N-1)/2)^2 int u^2 + (1/4) int u^2/r^2, hyperbolic measure."""
    if N <= 2:
        raise HypothesisError(f"requires N > 2, got N={N}")
    spec = spec or QuadratureSpec()
    r_max = _support_r_max(u)
    needs = {"grad": ("gradk", 1), "poincare": ("u2w", 0), "r2": ("u2w", 2)}
    vals, errs = _raw_terms(u, N, spec, r_max, 0, needs)
    coef = {"grad": 1, "poincare": -F(N - 1, 2) ** 2, "r2": -F(1, 4)}
    return _assemble("poincare", u, N, vals, errs, coef, tol)


def margin_rellich(u: RadialProfile, N: int, spec: QuadratureSpec | None = None, tol: float = 1e-8) -> MarginReport:
    """int (Lap u)^2 >= ((N-1)/2)^4 int u^2 + ((N-1)^2/8) int u^2/r^2 + (9/16) int u^2/r^4."""
    if N <= 4:
        raise HypothesisError(f"requires N > 4, got N={N}")
    spec = spec or QuadratureSpec()
    r_max = _support_r_max(u)
    needs = {"lap2": ("gradk", 2), "poincare": ("u2w", 0), "r2": ("u2w", 2), "r4": ("u2w", 4)}
    vals, errs = _raw_terms(u, N, spec, r_max, 1, needs)
    coef = {"lap2": 1, "poincare": -F(N - 1, 2) ** 4, "r2": -F((N - 1) ** 2, 8), "r4": -F(9, 16)}
    return _assemble("rellich", u, N, vals, errs, coef, tol)


def margin_thm21(u: RadialProfile, N: int, spec: QuadratureSpec | None = None, tol: float = 1e-8) -> MarginReport:
    """The second-order versus first-order inequality with its four remainders.

    int (Lap u)^2 >= ((N-1)/2)^2 int |grad u|^2 + c_r2 int u^2/r^2
    + c_r4 int u^2/r^4 + c_sinh2 int u^2/sinh^2 + c_sinh4 int u^2/sinh^4.
    """
    consts = thm21_constants(N)
    spec = spec or QuadratureSpec()
    r_max = _support_r_max(u)
    needs = {
        "lap2": ("gradk", 2),
        "grad": ("gradk", 1),
        "r2": ("u2w", 2),
        "r4": ("u2w", 4),
        "sinh2": ("u2w", "sinh2"),
        "sinh4": ("u2w", "sinh4"),
    }
    vals, errs = _raw_terms(u, N, spec, r_max, 1, needs)
    coef = {
        "lap2": 1,
        "grad": -F(N - 1, 2) ** 2,
        "r2": -consts["c_r2"],
        "r4": -consts["c_r4"],
        "sinh2": -consts["c_sinh2"],
        "sinh4": -consts["c_sinh4"],
    }
    return _assemble("thm21", u, N, vals, errs, coef, tol)


def margin_yang(u: RadialProfile, N: int, beta: int = 0, spec: QuadratureSpec | None = None, tol: float = 1e-8) -> MarginReport:
    """The fourth-order weighted step: int (Lap u)^2/r^beta against its three remainders."""
    w = yang_constants(beta, N)
    spec = spec or QuadratureSpec()
    r_max = _support_r_max(u)
    needs = {
        "lap2_rb": ("lap2w", beta),
        "rb4": ("u2w", beta + 4),
        "rb2": ("u2w", beta + 2),
        "rb0": ("u2w", beta),
    }
    vals, errs = _raw_terms(u, N, spec, r_max, 1, needs)
    coef = {"lap2_rb": 1, "rb4": -w["w4"], "rb2": -w["w2"], "rb0": -w["w0"]}
    return _assemble(f"yang_b{beta}", u, N, vals, errs, coef, tol)


def margin_general(case: CaseSpec, u: RadialProfile, spec: QuadratureSpec | None = None, tol: float = 1e-8) -> MarginReport:
    """int |grad^k u|^2 against the order-l term and the full remainder chain.

    Numerical margins are supported for k <= 4; the singular weights and jet
    orders beyond that stop paying for themselves on a desk machine.
    """
    if case.k > 4:
        raise ValueError("numerical margins support k <= 4; exact constants have no such cap")
    spec = spec or QuadratureSpec()
    r_max = _support_r_max(u)
    chain = chain_replay(case)
    needs = {"gradk": ("gradk", case.k), "gradl": ("gradk", case.l)}
    for i in range(1, case.k + 1):
        needs[f"r{2 * i}"] = ("u2w", 2 * i)
    vals, errs = _raw_terms(u, case.N, spec, r_max, case.k // 2, needs)
    coef = {"gradk": 1, "gradl": -poincare_constant(case)}
    for i, c in enumerate(chain, start=1):
        coef[f"r{2 * i}"] = -c
    return _assemble(f"general_k{case.k}_l{case.l}", u, case.N, vals, errs, coef, tol)


_SHARPNESS_RATES = (1.25, 1.15, 1.08, 1.04, 1.02, 1.008, 1.001)
_SHARPNESS_CENTERS = (4.0, 6.0, 8.0, 12.0, 16.0)


def sharpness_probe(case: str, N: int = 5, params=None, spec: QuadratureSpec | None = None) -> list[dict]:
    """Quotient tables showing a constant being approached from above.

    "poincare_k1": for decay rates a just above (N-1)/2, the Rayleigh
    quotient int (u')^2 dv / int u^2 dv of u = exp(-a r) * cutoff approaches
    ((N-1)/2)^2 = a^2 + O(eps); rows are (param=a, quotient).  The cutoff
    radius grows like 8/(2a-(N-1)), capped to [20, 2000], so the integrand is
    fused as exp(-2 a r + (N-1) log sinh r) to stay inside double range.

    "thm21_r2": for unit-width bumps centered at growing c, the quotient of
    the second-order margin against its 1/r^2 remainder term stays >= 1 and
    approaches the sharp constant from above; rows are (param=c, quotient).
    """
    spec = spec or QuadratureSpec()
    if case == "poincare_k1":
        if N <= 2:
            raise HypothesisError(f"requires N > 2, got N={N}")
        rates = params if params is not None else [(N - 1) / 2.0 * f for f in _SHARPNESS_RATES]
        rows = []
        for a in rates:
            eps = 2.0 * a - (N - 1)
            if eps <= 0:
                raise HypothesisError(f"decay rate {a} is not above (N-1)/2 = {(N - 1) / 2}")
            r_cut = float(np.clip(8.0 / eps, 20.0, 2000.0))
            chi = Cutoff(r_cut / 2.0, r_cut)

            def fn(grid, a=a, chi=chi):
                r = grid.nodes
                env = np.exp(-2.0 * a * r + (N - 1) * log_sinh(r))
                jet = chi.jet(r, 1)
                c, dc = jet.value(), jet.derivative(1)
                return {
                    "num": grid.integrate((dc - a * c) ** 2 * env),
                    "den": grid.integrate(c**2 * env),
                }

            vals, _ = converge_terms(fn, spec, r_cut)
            rows.append({"param": a, "quotient": vals["num"] / vals["den"]})
        return rows
    if case == "thm21_r2":
        thm21_constants(N)  # enforces N > 4 before any integration
        centers = params if params is not None else list(_SHARPNESS_CENTERS)
        target = float(F((N - 1) ** 2, 16))
        pc = float(F(N - 1, 2) ** 2)
        rows = []
        for c in centers:
            u = Bump(float(c), 1.0)
            r_max = _support_r_max(u)
            needs = {"lap2": ("gradk", 2), "grad": ("gradk", 1), "r2": ("u2w", 2)}
            vals, _ = _raw_terms(u, N, spec, r_max, 1, needs)
            rows.append({"param": float(c), "quotient": (vals["lap2"] - pc * vals["grad"]) / (target * vals["r2"])})
        return rows
    raise ValueError(f"unknown sharpness case {case!r}")
