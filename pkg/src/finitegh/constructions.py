"""Finite truncations of the example spaces: integers, grids, R-tilde, powers."""

from __future__ import annotations

import random
from dataclasses import dataclass, field
from fractions import Fraction
from typing import Callable, Sequence

from .errors import GapOutOfRange, StepDoesNotDivide
from .rationals import RationalLike, format_rational, parse_rational
from .spaces import FiniteMetricSpace, Realization, validate


def line_space(points: Sequence[Fraction], labels: Sequence[str] | None = None) -> FiniteMetricSpace:
    """Points of the real line with ``|a - b|`` distances."""
    pts = [parse_rational(p) for p in points]
    if labels is None:
        labels = [format_rational(p) for p in pts]
    return validate(labels, [[abs(a - b) for b in pts] for a in pts])


def _grid_points(N: int, h: Fraction) -> list[Fraction]:
    if N < 1:
        raise ValueError("N must be a positive integer")
    if h <= 0:
        raise StepDoesNotDivide(f"step must be positive, got {h}")
    steps = Fraction(2 * N) / h
    if steps.denominator != 1:
        raise StepDoesNotDivide(f"step {format_rational(h)} does not divide {2 * N}")
    return [-N + k * h for k in range(int(steps) + 1)]


def integers(N: int) -> FiniteMetricSpace:
    if N < 1:
        raise ValueError("N must be a positive integer")
    return line_space([Fraction(k) for k in range(-N, N + 1)])


def segment_grid(N: int, h: RationalLike) -> FiniteMetricSpace:
    """``{-N, -N+h, ..., N}``: the finite stand-in for the real line."""
    return line_space(_grid_points(N, parse_rational(h)))


RTILDE_LABEL = "t"


def rtilde_grid(N: int, h: RationalLike) -> FiniteMetricSpace:
    """Segment grid plus one point ``t`` above 0, measured in the L1 plane metric.

    ``d(t, x) = |x| + 1``. The extra point is the last index.
    """
    pts = _grid_points(N, parse_rational(h))
    labels = [format_rational(p) for p in pts] + [RTILDE_LABEL]
    rows = [[abs(a - b) for b in pts] + [abs(a) + 1] for a in pts]
    rows.append([abs(b) + 1 for b in pts] + [Fraction(0)])
    return validate(labels, rows)


def geometric(p: int, N: int) -> FiniteMetricSpace:
    """``{p**n : |n| <= N}`` on the line."""
    if p < 2 or N < 1:
        raise ValueError("need p >= 2 and N >= 1")
    return line_space([Fraction(p) ** n for n in range(-N, N + 1)])


PHI_FUNCTIONS: dict[str, Callable[[int], int]] = {
    "square": lambda n: n * n,
    "exp2": lambda n: 2**n,
}


def phi_powers(q: RationalLike, N: int, phi: str = "square") -> FiniteMetricSpace:
    """``{q**phi(n) : 1 <= n <= N}``; ``phi`` is ``"square"`` (n**2) or ``"exp2"`` (2**n)."""
    base = parse_rational(q)
    if base <= 1:
        raise ValueError("q must exceed 1")
    if N < 1:
        raise ValueError("N must be a positive integer")
    try:
        fn = PHI_FUNCTIONS[phi]
    except KeyError:
        raise ValueError(f"unknown exponent family {phi!r}; choose from {sorted(PHI_FUNCTIONS)}") from None
    return line_space([base ** fn(n) for n in range(1, N + 1)])


def gapped_segment(N: int, a: RationalLike, d: RationalLike, h: RationalLike) -> FiniteMetricSpace:
    """Segment grid with every point strictly inside ``(a - d, a + d)`` removed."""
    a, d = parse_rational(a), parse_rational(d)
    pts = _grid_points(N, parse_rational(h))
    if d <= 0 or not (-N < a - d and a + d < N):
        raise GapOutOfRange(f"[{format_rational(a - d)}, {format_rational(a + d)}] must lie inside ({-N}, {N})")
    return line_space([x for x in pts if not (a - d < x < a + d)])


# --- realizations ---------------------------------------------------------


def integer_segment_realization(N: int, h: RationalLike) -> Realization:
    """Integers and grid points of ``[-N, N]`` inside one line."""
    grid = _grid_points(N, parse_rational(h))
    pts = sorted(set(grid) | {Fraction(k) for k in range(-N, N + 1)})
    ambient = line_space(pts)
    ints = [i for i, x in enumerate(pts) if x.denominator == 1]
    on_grid = set(grid)
    seg = [i for i, x in enumerate(pts) if x in on_grid]
    return Realization(ambient, tuple(ints), tuple(seg))


def rtilde_line_realization(N: int, h: RationalLike) -> Realization:
    """R-tilde and the line ``y = 1/2`` inside the L1 plane, both sampled on the grid.

    Subset A is the grid on ``y = 0`` plus ``(0, 1)``; subset B is the grid on
    ``y = 1/2``.
    """
    grid = _grid_points(N, parse_rational(h))
    half = Fraction(1, 2)
    pts = [(x, Fraction(0)) for x in grid] + [(Fraction(0), Fraction(1))] + [(x, half) for x in grid]
    labels = [f"({format_rational(x)},{format_rational(y)})" for x, y in pts]
    rows = [[abs(x1 - x2) + abs(y1 - y2) for x2, y2 in pts] for x1, y1 in pts]
    ambient = validate(labels, rows)
    k = len(grid)
    return Realization(ambient, tuple(range(k + 1)), tuple(range(k + 1, 2 * k + 1)))


# --- family specs ---------------------------------------------------------

FAMILIES = ("integers", "segment", "rtilde", "geometric", "phi", "gapped")

_REQUIRED = {
    "integers": ("n",),
    "segment": ("n", "h"),
    "rtilde": ("n", "h"),
    "geometric": ("p", "n"),
    "phi": ("q", "n"),
    "gapped": ("n", "a", "d", "h"),
}


@dataclass(frozen=True)
class FamilySpec:
    """A named construction plus its parameters (``n``, ``h``, ``p``, ``q``, ``a``, ``d``, ``phi``)."""

    kind: str
    params: dict = field(default_factory=dict)

    def __post_init__(self) -> None:
        if self.kind not in FAMILIES:
            raise ValueError(f"unknown family {self.kind!r}; choose from {', '.join(FAMILIES)}")
        missing = [k for k in _REQUIRED[self.kind] if self.params.get(k) is None]
        if missing:
            raise ValueError(f"family {self.kind!r} needs parameters: {', '.join(missing)}")

    def build(self) -> FiniteMetricSpace:
        p = self.params
        if self.kind == "integers":
            return integers(int(p["n"]))
        if self.kind == "segment":
            return segment_grid(int(p["n"]), p["h"])
        if self.kind == "rtilde":
            return rtilde_grid(int(p["n"]), p["h"])
        if self.kind == "geometric":
            return geometric(int(p["p"]), int(p["n"]))
        if self.kind == "phi":
            return phi_powers(p["q"], int(p["n"]), p.get("phi") or "square")
        return gapped_segment(int(p["n"]), p["a"], p["d"], p["h"])


# --- random spaces --------------------------------------------------------


def random_metric(rng: random.Random, n: int, max_den: int = 6, max_weight: int = 4) -> FiniteMetricSpace:
    """Shortest-path metric of a complete graph with random positive edge weights.

    One denominator ``q <= max_den`` is drawn per space and every weight is a
    multiple of ``1/q``, so every distance keeps a denominator dividing ``q``.
    """
    q = rng.randint(1, max_den)
    d = [[Fraction(0)] * n for _ in range(n)]
    for i in range(n):
        for j in range(i + 1, n):
            w = Fraction(rng.randint(1, max_weight * q), q)
            d[i][j] = d[j][i] = w
    for k in range(n):
        for i in range(n):
            for j in range(n):
                if d[i][k] + d[k][j] < d[i][j]:
                    d[i][j] = d[i][k] + d[k][j]
    return validate([f"x{i}" for i in range(n)], d)
