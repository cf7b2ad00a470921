"""One-shot verification suite over every finite-scale claim the package covers."""

from __future__ import annotations

import json
import random
from dataclasses import dataclass, field
from fractions import Fraction
from typing import Callable, Optional

from .algebra import check_homogeneity, check_scaling_identity, check_ultrametric
from .constructions import (
    gapped_segment,
    geometric,
    integer_segment_realization,
    integers,
    line_space,
    random_metric,
    rtilde_grid,
    rtilde_line_realization,
    segment_grid,
)
from .errors import IdentityViolation, SearchIncomplete
from .rationals import RationalLike, format_rational, parse_rational
from .search import Correspondence, distortion, gh_exact, image_diameter
from .spaces import FiniteMetricSpace, Realization, hausdorff_in_ambient, one_point, simplex, simplex_extend

SEED = 1729
PASS, FAIL, INFO = "pass", "fail", "informational"

# Exact values from the function-pair brute force (scripts/pin_regressions.py).
# Keyed by (family, N, h); "rtilde" is d_GH(integers(N), rtilde_grid(N, h)) and
# "gapped" is d_GH(segment_grid(N, h), gapped_segment(N, 0, 1, h)).
PINNED: dict[tuple[str, int, str], Fraction] = {
    ("rtilde", 2, "1"): Fraction(1, 2),
    ("rtilde", 2, "1/2"): Fraction(1, 2),
    ("rtilde", 3, "1"): Fraction(1, 2),
    ("gapped", 2, "1"): Fraction(1, 2),
    ("gapped", 2, "1/2"): Fraction(3, 4),
    ("gapped", 3, "1"): Fraction(1, 2),
}

TRUNCATION_NOTE = (
    "The bound |R~, Z| >= 2/3 holds for the unbounded line and the gap bound |R, X| >= d "
    "uses connectedness of the unbounded line; truncated grids approach these bounds but "
    "need not attain them, so the computed value is checked only against its pinned constant."
)


@dataclass
class Check:
    id: str
    name: str
    claim: str
    verdict: str
    values: dict = field(default_factory=dict)
    cases: list = field(default_factory=list)

    def as_dict(self) -> dict:
        return {
            "id": self.id,
            "name": self.name,
            "claim": self.claim,
            "verdict": self.verdict,
            "values": self.values,
            "cases": self.cases,
        }


@dataclass
class VerifyReport:
    checks: list[Check]
    metadata: dict

    @property
    def failed(self) -> bool:
        return any(c.verdict == FAIL for c in self.checks)

    def summary(self) -> dict:
        out = {PASS: 0, FAIL: 0, INFO: 0}
        for c in self.checks:
            out[c.verdict] += 1
        return out

    def as_dict(self) -> dict:
        return {
            "metadata": self.metadata,
            "checks": [c.as_dict() for c in sorted(self.checks, key=lambda c: c.id)],
            "summary": self.summary(),
        }

    def to_json(self) -> str:
        return json.dumps(self.as_dict(), indent=2, ensure_ascii=False) + "\n"

    def to_text(self) -> str:
        width = max(len(c.name) for c in self.checks)
        lines = []
        for c in sorted(self.checks, key=lambda c: c.id):
            vals = "; ".join(f"{k}: {v}" for k, v in c.values.items())
            lines.append(f"({c.id}) {c.name:<{width}}  {c.verdict.upper():<13}  {vals}")
        s = self.summary()
        lines.append(f"{s[PASS]} pass, {s[FAIL]} fail, {s[INFO]} informational")
        return "\n".join(lines) + "\n"


def _r(q: Fraction) -> str:
    return format_rational(q)


def _pairs(R: Correspondence) -> list[list[int]]:
    return [list(p) for p in R.sorted_pairs()]


# --- fixed suites ---------------------------------------------------------


def _suite_spaces(rng: random.Random) -> list[FiniteMetricSpace]:
    fixed = [
        one_point(),
        line_space([0, 1]),
        line_space([0, 1, 3]),
        simplex(3),
        integers(1),
        geometric(2, 1),
    ]
    return fixed + [random_metric(rng, rng.randint(3, 5)) for _ in range(4)]


_SCALING_FACTORS = [
    ("3", "1"), ("2", "1/2"), ("0", "5/2"), ("7/3", "7/3"), ("1", "0"),
    ("3/2", "2/3"), ("4", "1"), ("1/3", "5/6"), ("2", "3"), ("5/4", "1/4"),
]
_HOMOGENEITY_FACTORS = ["4", "1", "5/3", "2", "1/2", "3", "7/5", "2/3", "6", "5/2"]


def _run_case(fn: Callable, *args, **kw) -> tuple[bool, dict]:
    try:
        rep = fn(*args, **kw)
        return True, {"lhs": _r(rep.lhs), "rhs": _r(rep.rhs), "relation": rep.relation}
    except IdentityViolation as exc:
        rep = exc.report
        return False, {"lhs": _r(rep.lhs), "rhs": _r(rep.rhs), "relation": rep.relation}
    except SearchIncomplete as exc:
        res = exc.result
        return False, {"budget_exhausted": True, "lower": _r(res.lower), "upper": _r(res.upper)}


def _aggregate(id_: str, name: str, claim: str, cases: list[tuple[bool, dict]]) -> Check:
    ok = all(c[0] for c in cases)
    values = {"cases": str(len(cases)), "holding": str(sum(c[0] for c in cases))}
    return Check(id_, name, claim, PASS if ok else FAIL, values, [c[1] for c in cases])


def verify_paper(
    N: int = 2,
    h: RationalLike = Fraction(1, 2),
    budget: Optional[int] = None,
    deterministic: bool = False,
    seed: int = SEED,
) -> VerifyReport:
    h = parse_rational(h)
    rng = random.Random(seed)
    kw = {"budget": budget, "deterministic": deterministic}
    checks: list[Check] = []

    spaces = _suite_spaces(rng)

    # (a) scaling identity
    cases = []
    for X, (lam, mu) in zip(spaces, _SCALING_FACTORS):
        ok, info = _run_case(check_scaling_identity, X, lam, mu, **kw)
        cases.append((ok, {"points": str(X.n), "lambda": lam, "mu": mu, **info}))
    checks.append(_aggregate(
        "a", "scaling identity", "|lam X, mu X| = |lam - mu| * diam X / 2 for bounded X", cases))

    # (b) homogeneity
    partners = spaces[1:] + spaces[:1]
    cases = []
    for X, Y, lam in zip(spaces, partners, _HOMOGENEITY_FACTORS):
        ok, info = _run_case(check_homogeneity, X, Y, lam, **kw)
        cases.append((ok, {"points": f"{X.n}x{Y.n}", "lambda": lam, **info}))
    checks.append(_aggregate("b", "homogeneity", "|lam X, lam Y| = lam |X, Y|", cases))

    # (c) ultrametric inequality
    cases = []
    for k in range(10):
        X1 = random_metric(rng, rng.randint(1, 5))
        X2 = spaces[k] if k % 2 else random_metric(rng, rng.randint(1, 5))
        ok, info = _run_case(check_ultrametric, X1, X2, **kw)
        cases.append((ok, {"points": f"{X1.n}x{X2.n}", **info}))
    checks.append(_aggregate(
        "c", "ultrametric inequality",
        "|X1, X2| <= max(|X1, pt|, |X2, pt|) for bounded X1, X2", cases))

    # (d) integers inside the segment
    real = integer_segment_realization(N, h)
    value = hausdorff_in_ambient(real)
    half = Fraction(1, 2)
    exact_half = (half / h).denominator == 1
    ok = value == half if exact_half else value <= half
    checks.append(Check(
        "d", "integers within 1/2 of the line",
        "embedding Z in R is a realization with Hausdorff distance 1/2",
        PASS if ok else FAIL,
        {"hausdorff": _r(value), "relation": "==" if exact_half else "<=", "expected": "1/2"},
    ))

    # (e) R-tilde against the shifted line in the L1 plane
    real = rtilde_line_realization(N, h)
    value = hausdorff_in_ambient(real)
    checks.append(Check(
        "e", "R-tilde within 1/2 of the line",
        "R-tilde and the line y = 1/2 in the L1 plane are at Hausdorff distance 1/2",
        PASS if value == half else FAIL,
        {"hausdorff": _r(value), "relation": "==", "expected": "1/2", "ambient_points": str(real.ambient.n)},
    ))

    # (f) image diameter bounded by distortion
    holding, total = 0, 50
    worst_case = None
    for _ in range(total):
        X = random_metric(rng, rng.randint(1, 6))
        Y = random_metric(rng, rng.randint(1, 6))
        R = random_correspondence(rng, X.n, Y.n)
        dis = distortion(X, Y, R)
        diam = max(image_diameter(X, Y, R, i) for i in range(X.n))
        if diam <= dis:
            holding += 1
        elif worst_case is None:
            worst_case = {"image_diameter": _r(diam), "distortion": _r(dis)}
    checks.append(Check(
        "f", "image diameter <= distortion",
        "for every correspondence R and point x, diam R(x) <= dis R",
        PASS if holding == total else FAIL,
        {"cases": str(total), "holding": str(holding)},
        [worst_case] if worst_case else [],
    ))

    # (g) simplex extension stays in a 1-neighborhood
    cases = []
    for k in range(10):
        X = random_metric(rng, rng.randint(1, 6))
        m = (1, 3, 7)[k % 3]
        base = rng.randrange(X.n)
        ok, hd = simplex_neighborhood(X, base, m)
        cases.append((ok, {"points": str(X.n), "base": str(base), "m": str(m), "hausdorff": _r(hd)}))
    checks.append(_aggregate(
        "g", "simplex extension 1-neighborhood",
        "X extended by a unit simplex is a metric space lying in the closed 1-neighborhood of X", cases))

    # (h), (i) truncations of statements about the unbounded line
    checks.append(_pinned_check(
        "h", "rtilde", N, h, integers(N), lambda: rtilde_grid(N, h),
        "|Z, R-tilde| for integers(N) against rtilde_grid(N, h); the unbounded value is >= 2/3", kw))
    checks.append(_pinned_check(
        "i", "gapped", N, h, segment_grid(N, h), lambda: gapped_segment(N, 0, 1, h),
        "|R, X| for segment_grid(N, h) against the same grid with (-1, 1) removed; the unbounded value is >= 1",
        kw))

    metadata = {
        "n": N,
        "h": _r(h),
        "budget": budget,
        "deterministic": deterministic,
        "seed": seed,
    }
    return VerifyReport(checks, metadata)


def _pinned_check(id_, family, N, h, X, make_Y, claim, kw) -> Check:
    name = {"rtilde": "truncated |Z, R-tilde|", "gapped": "truncated gap lemma"}[family]
    try:
        Y = make_Y()
    except ValueError as exc:
        return Check(id_, name, claim, INFO, {"skipped": str(exc)}, [{"note": TRUNCATION_NOTE}])
    res = gh_exact(X, Y, **kw)
    pinned = PINNED.get((family, N, _r(h)))
    values = {"points": f"{X.n}x{Y.n}"}
    case = {"note": TRUNCATION_NOTE, "witness": _pairs(res.witness)}
    if not res.is_exact:
        values.update({"lower": _r(res.lower), "upper": _r(res.upper), "budget_exhausted": True})
        return Check(id_, name, claim, FAIL, values, [case])
    values["computed"] = _r(res.value)
    values["pinned"] = _r(pinned) if pinned is not None else "none"
    verdict = INFO if pinned is None or pinned == res.value else FAIL
    return Check(id_, name, claim, verdict, values, [case])


def random_correspondence(rng: random.Random, n: int, m: int) -> Correspondence:
    """Random relation, then patched so both sides are covered."""
    pairs = {(i, j) for i in range(n) for j in range(m) if rng.random() < 0.3}
    for i in range(n):
        if not any(a == i for a, _ in pairs):
            pairs.add((i, rng.randrange(m)))
    for j in range(m):
        if not any(b == j for _, b in pairs):
            pairs.add((rng.randrange(n), j))
    return Correspondence(pairs)


def simplex_neighborhood(X: FiniteMetricSpace, base: int, m: int) -> tuple[bool, Fraction]:
    """Extend ``X`` and measure how far the whole space is from the copy of ``X``."""
    ext = simplex_extend(X, base, m)
    real = Realization(ext, tuple(range(X.n)), tuple(range(ext.n)))
    hd = hausdorff_in_ambient(real)
    return hd <= 1, hd
