"""Typed result records for margin and identity checks, with serialization.

A margin report stores the signed term contributions of one inequality on one
test function: left-hand-side integrals enter positively, right-hand-side
ones negatively, so the margin is just the sum.  The verdict demands both a
nonnegative margin (up to tol * scale) and a quadrature noise estimate small
enough to trust that sign.  All serialization is deterministic: sorted keys,
no timestamps, rationals carried as exact numerator/denominator strings.
"""

from __future__ import annotations

import csv
import io
import json
from dataclasses import dataclass, field
from fractions import Fraction

__all__ = [
    "MarginReport",
    "IdentityResidualReport",
    "encode_fraction",
    "margin_csv_rows",
    "identity_csv_rows",
    "dumps_json",
    "dumps_csv",
]


def encode_fraction(x: Fraction) -> dict:
    """Exact rational as strings plus a float approximation for reading."""
    return {"num": str(x.numerator), "den": str(x.denominator), "decimal": float(x)}


@dataclass(frozen=True)
class MarginReport:
    """Signed term contributions of one inequality on one test function."""

    case: str
    function_id: str
    N: int | None
    terms: dict[str, float]
    noise: float
    tol: float

    @property
    def margin(self) -> float:
        return float(sum(self.terms.values()))

    @property
    def lhs(self) -> float:
        return float(sum(v for v in self.terms.values() if v > 0))

    @property
    def rhs(self) -> float:
        return -float(sum(v for v in self.terms.values() if v < 0))

    @property
    def scale(self) -> float:
        return self.lhs + self.rhs

    @property
    def verdict(self) -> bool:
        gate = self.tol * self.scale
        return self.margin >= -gate and self.noise <= gate

    def to_dict(self) -> dict:
        return {
            "kind": "margin",
            "case": self.case,
            "function_id": self.function_id,
            "N": self.N,
            "terms": dict(sorted(self.terms.items())),
            "noise": self.noise,
            "tol": self.tol,
            "margin": self.margin,
            "lhs": self.lhs,
            "rhs": self.rhs,
            "scale": self.scale,
            "verdict": self.verdict,
        }

    @classmethod
    def from_dict(cls, d: dict) -> "MarginReport":
        return cls(
            case=d["case"],
            function_id=d["function_id"],
            N=d["N"],
            terms=dict(d["terms"]),
            noise=d["noise"],
            tol=d["tol"],
        )


@dataclass(frozen=True)
class IdentityResidualReport:
    """Residuals of one pointwise or integral identity on one test function.

    ``max_rel_residual`` is the largest |lhs - rhs| divided by the largest
    magnitude either side attains on the sample grid, so critical points of
    the two sides do not blow up the measure.
    """

    identity: str
    function_id: str
    N: int
    n: int | None
    max_abs_residual: float
    max_rel_residual: float
    tol: float
    details: dict[str, float] = field(default_factory=dict)

    @property
    def verdict(self) -> bool:
        return self.max_rel_residual <= self.tol

    def to_dict(self) -> dict:
        return {
            "kind": "identity",
            "identity": self.identity,
            "function_id": self.function_id,
            "N": self.N,
            "n": self.n,
            "max_abs_residual": self.max_abs_residual,
            "max_rel_residual": self.max_rel_residual,
            "tol": self.tol,
            "details": dict(sorted(self.details.items())),
            "verdict": self.verdict,
        }

    @classmethod
    def from_dict(cls, d: dict) -> "IdentityResidualReport":
        return cls(
            identity=d["identity"],
            function_id=d["function_id"],
            N=d["N"],
            n=d["n"],
            max_abs_residual=d["max_abs_residual"],
            max_rel_residual=d["max_rel_residual"],
            tol=d["tol"],
            details=dict(d["details"]),
        )


def margin_csv_rows(report: MarginReport) -> list[tuple[str, str, str, str, str]]:
    """Long-format rows (case, N, function_id, term_name, value)."""
    n_str = "" if report.N is None else str(report.N)
    rows = [
        (report.case, n_str, report.function_id, name, repr(value))
        for name, value in sorted(report.terms.items())
    ]
    for name, value in [
        ("lhs", report.lhs),
        ("rhs", report.rhs),
        ("margin", report.margin),
        ("scale", report.scale),
        ("noise", report.noise),
        ("verdict", float(report.verdict)),
    ]:
        rows.append((report.case, n_str, report.function_id, name, repr(value)))
    return rows


def identity_csv_rows(report: IdentityResidualReport) -> list[tuple[str, str, str, str, str]]:
    n_str = str(report.N)
    label = report.identity if report.n is None else f"{report.identity}_n{report.n}"
    rows = [
        (label, n_str, report.function_id, name, repr(value))
        for name, value in sorted(report.details.items())
    ]
    for name, value in [
        ("max_abs_residual", report.max_abs_residual),
        ("max_rel_residual", report.max_rel_residual),
        ("verdict", float(report.verdict)),
    ]:
        rows.append((label, n_str, report.function_id, name, repr(value)))
    return rows


def dumps_json(payload: dict) -> str:
    """Canonical JSON: sorted keys, two-space indent, trailing newline."""
    return json.dumps(payload, sort_keys=True, indent=2, allow_nan=False) + "\n"


def dumps_csv(rows: list[tuple], header: tuple[str, ...]) -> str:
    buf = io.StringIO()
    writer = csv.writer(buf, lineterminator="\n")
    writer.writerow(header)
    writer.writerows(rows)
    return buf.getvalue()
