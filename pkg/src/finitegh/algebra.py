"""Scaling identities, the ultrametric inequality and stabilizer probe curves.

The ``check_*`` functions run exact searches and raise
:class:`~finitegh.errors.IdentityViolation` when a theorem-backed relation
fails, since that can only mean a solver defect.
"""

from __future__ import annotations

import csv
import io
from dataclasses import dataclass
from fractions import Fraction
from pathlib import Path
from typing import Iterable, Optional

from .constructions import FamilySpec
from .errors import IdentityViolation, SearchIncomplete
from .rationals import RationalLike, format_rational, parse_rational
from .search import GHResult, gh_exact, gh_lower_bound, gh_upper_bound_greedy
from .spaces import FiniteMetricSpace, diameter, scale


def dist_to_point(X: FiniteMetricSpace) -> Fraction:
    """Distance to the one-point space, ``diam X / 2``; no search needed."""
    return diameter(X) / 2


@dataclass(frozen=True)
class IdentityReport:
    name: str
    lhs: Fraction
    rhs: Fraction
    relation: str  # "==" or "<="
    holds: bool


def _exact(X: FiniteMetricSpace, Y: FiniteMetricSpace, budget: Optional[int], deterministic: bool) -> GHResult:
    res = gh_exact(X, Y, budget=budget, deterministic=deterministic)
    if not res.is_exact:
        raise SearchIncomplete(
            f"budget exhausted: {format_rational(res.lower)} <= d_GH <= {format_rational(res.upper)}", res
        )
    return res


def _finish(report: IdentityReport) -> IdentityReport:
    if not report.holds:
        raise IdentityViolation(
            f"{report.name}: {format_rational(report.lhs)} {report.relation} {format_rational(report.rhs)} fails",
            report,
        )
    return report


def check_scaling_identity(
    X: FiniteMetricSpace,
    lam: RationalLike,
    mu: RationalLike,
    budget: Optional[int] = None,
    deterministic: bool = False,
) -> IdentityReport:
    """``d_GH(lam X, mu X) == |lam - mu| * diam X / 2``."""
    lam, mu = parse_rational(lam), parse_rational(mu)
    lhs = _exact(scale(X, lam), scale(X, mu), budget, deterministic).value
    rhs = abs(lam - mu) * dist_to_point(X)
    return _finish(IdentityReport("scaling identity", lhs, rhs, "==", lhs == rhs))


def check_homogeneity(
    X: FiniteMetricSpace,
    Y: FiniteMetricSpace,
    lam: RationalLike,
    budget: Optional[int] = None,
    deterministic: bool = False,
) -> IdentityReport:
    """``d_GH(lam X, lam Y) == lam * d_GH(X, Y)`` for ``lam > 0``."""
    lam = parse_rational(lam)
    if lam <= 0:
        raise ValueError("homogeneity needs a positive factor")
    lhs = _exact(scale(X, lam), scale(Y, lam), budget, deterministic).value
    rhs = lam * _exact(X, Y, budget, deterministic).value
    return _finish(IdentityReport("homogeneity", lhs, rhs, "==", lhs == rhs))


def check_ultrametric(
    X1: FiniteMetricSpace,
    X2: FiniteMetricSpace,
    budget: Optional[int] = None,
    deterministic: bool = False,
) -> IdentityReport:
    """``d_GH(X1, X2) <= max(diam X1, diam X2) / 2``."""
    lhs = _exact(X1, X2, budget, deterministic).value
    rhs = max(dist_to_point(X1), dist_to_point(X2))
    return _finish(IdentityReport("ultrametric inequality", lhs, rhs, "<=", lhs <= rhs))


@dataclass(frozen=True)
class ProbePoint:
    lam: Fraction
    lower: Fraction
    upper: Fraction


def stabilizer_probe(
    family: FamilySpec | FiniteMetricSpace,
    lambda_grid: Iterable[RationalLike],
    restarts: int = 8,
) -> list[ProbePoint]:
    """Certified bounds on ``d_GH(X, lam X)`` along a grid of factors.

    Lower bounds come from the diameter gap, upper bounds from greedy search;
    neither is claimed exact. Points come back sorted by factor.
    """
    X = family.build() if isinstance(family, FamilySpec) else family
    lams = sorted({parse_rational(v) for v in lambda_grid})
    out = []
    for lam in lams:
        if lam <= 0:
            raise ValueError(f"scale factors must be positive, got {lam}")
        Y = scale(X, lam)
        lower = gh_lower_bound(X, Y)
        upper, _ = gh_upper_bound_greedy(X, Y, restarts)
        out.append(ProbePoint(lam, lower, upper))
    return out


def parse_lambda_grid(text: str) -> list[Fraction]:
    """``START:END:STEP`` with rational parts; END is included when hit exactly."""
    parts = text.split(":")
    if len(parts) != 3:
        raise ValueError(f"expected START:END:STEP, got {text!r}")
    start, end, step = (parse_rational(p) for p in parts)
    if step <= 0:
        raise ValueError("step must be positive")
    if end < start:
        raise ValueError("END must not be below START")
    out = []
    v = start
    while v <= end:
        out.append(v)
        v += step
    return out


def probe_csv(points: Iterable[ProbePoint]) -> str:
    buf = io.StringIO()
    w = csv.writer(buf, lineterminator="\n")
    w.writerow(["lambda", "lower", "upper"])
    for p in sorted(points, key=lambda p: p.lam):
        w.writerow([format_rational(p.lam), format_rational(p.lower), format_rational(p.upper)])
    return buf.getvalue()


def write_probe_csv(points: Iterable[ProbePoint], path: str | Path) -> None:
    Path(path).write_text(probe_csv(points), encoding="utf-8")
