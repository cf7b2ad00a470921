"""Finite metric spaces with exact rational distances."""

from __future__ import annotations

import json
from dataclasses import dataclass
from fractions import Fraction
from pathlib import Path
from typing import Iterable, Sequence

from .errors import IndexOutOfRange, MetricError, NegativeScale, Violation
from .rationals import RationalLike, parse_rational, to_json_value


def metric_violations(labels: Sequence[str], matrix: Sequence[Sequence[Fraction]]) -> list[Violation]:
    """Every metric axiom the matrix breaks. An empty list means valid."""
    n = len(matrix)
    if n == 0:
        return [Violation("Empty")]
    if any(len(row) != n for row in matrix):
        return [Violation("NonSquare")]
    if len(labels) != n:
        return [Violation("LabelCountMismatch", (len(labels), n))]

    out: list[Violation] = []
    seen: dict[str, int] = {}
    for i, lab in enumerate(labels):
        if lab in seen:
            out.append(Violation("DuplicateLabel", (seen[lab], i)))
        else:
            seen[lab] = i
    for i in range(n):
        if matrix[i][i] != 0:
            out.append(Violation("NonzeroDiagonalAt", (i,)))
    for i in range(n):
        for j in range(i + 1, n):
            if matrix[i][j] != matrix[j][i]:
                out.append(Violation("AsymmetricAt", (i, j)))
            if matrix[i][j] <= 0 or matrix[j][i] <= 0:
                out.append(Violation("NonpositiveOffDiagonalAt", (i, j)))
    for i in range(n):
        row_i = matrix[i]
        for j in range(n):
            dij = row_i[j]
            row_j = matrix[j]
            for k in range(n):
                if row_i[k] > dij + row_j[k]:
                    out.append(Violation("TriangleViolationAt", (i, j, k)))
    return out


@dataclass(frozen=True)
class FiniteMetricSpace:
    """Labeled points with a full symmetric matrix of exact distances.

    Construction validates the metric axioms and raises :class:`MetricError`
    listing every violation. Instances are immutable.
    """

    labels: tuple[str, ...]
    dist: tuple[tuple[Fraction, ...], ...]

    def __post_init__(self) -> None:
        labels = tuple(str(lab) for lab in self.labels)
        dist = tuple(tuple(parse_rational(v) for v in row) for row in self.dist)
        object.__setattr__(self, "labels", labels)
        object.__setattr__(self, "dist", dist)
        problems = metric_violations(labels, dist)
        if problems:
            raise MetricError(problems)

    def __len__(self) -> int:
        return len(self.labels)

    @property
    def n(self) -> int:
        return len(self.labels)

    def d(self, i: int, j: int) -> Fraction:
        return self.dist[i][j]

    def diameter(self) -> Fraction:
        return diameter(self)

    def eccentricity(self, i: int) -> Fraction:
        return max(self.dist[i])

    def subspace(self, indices: Iterable[int]) -> "FiniteMetricSpace":
        idx = list(indices)
        for i in idx:
            _check_index(self, i)
        return FiniteMetricSpace(
            tuple(self.labels[i] for i in idx),
            tuple(tuple(self.dist[i][j] for j in idx) for i in idx),
        )


def validate(labels: Sequence[str], matrix: Sequence[Sequence[RationalLike]]) -> FiniteMetricSpace:
    rows = [[parse_rational(v) for v in row] for row in matrix]
    return FiniteMetricSpace(tuple(labels), tuple(tuple(r) for r in rows))


def _check_index(X: FiniteMetricSpace, i: int) -> None:
    if not isinstance(i, int) or not 0 <= i < X.n:
        raise IndexOutOfRange(f"index {i} out of range for a {X.n}-point space")


def diameter(X: FiniteMetricSpace) -> Fraction:
    return max((max(row) for row in X.dist), default=Fraction(0))


def one_point(label: str = "*") -> FiniteMetricSpace:
    return FiniteMetricSpace((label,), ((Fraction(0),),))


def simplex(m: int) -> FiniteMetricSpace:
    """``m`` points pairwise at distance 1."""
    if m < 1:
        raise ValueError("simplex needs at least one point")
    one, zero = Fraction(1), Fraction(0)
    return FiniteMetricSpace(
        tuple(f"s{i + 1}" for i in range(m)),
        tuple(tuple(zero if i == j else one for j in range(m)) for i in range(m)),
    )


def scale(X: FiniteMetricSpace, factor: RationalLike) -> FiniteMetricSpace:
    """Multiply every distance by ``factor``; ``factor == 0`` collapses to a point."""
    lam = parse_rational(factor)
    if lam < 0:
        raise NegativeScale(f"scale factor must be non-negative, got {lam}")
    if lam == 0:
        return one_point()
    return FiniteMetricSpace(X.labels, tuple(tuple(v * lam for v in row) for row in X.dist))


def _fresh_labels(taken: set[str], count: int) -> list[str]:
    out = []
    k = 1
    while len(out) < count:
        lab = f"s{k}"
        while lab in taken:
            lab = "_" + lab
        taken.add(lab)
        out.append(lab)
        k += 1
    return out


def simplex_extend(X: FiniteMetricSpace, base: int, m: int) -> FiniteMetricSpace:
    """Glue an ``m``-point unit simplex onto ``X`` at point ``base``.

    A new point sits at distance ``d(x, base) + 1`` from every old point ``x``.
    The old points are listed first, in their original order.
    """
    _check_index(X, base)
    if m < 1:
        raise ValueError("need at least one simplex point")
    n = X.n
    new_labels = _fresh_labels(set(X.labels), m)
    to_base = [X.dist[i][base] + 1 for i in range(n)]
    rows = []
    for i in range(n):
        rows.append(tuple(X.dist[i]) + tuple(to_base[i] for _ in range(m)))
    for s in range(m):
        rows.append(tuple(to_base) + tuple(Fraction(0) if s == t else Fraction(1) for t in range(m)))
    return FiniteMetricSpace(X.labels + tuple(new_labels), tuple(rows))


@dataclass(frozen=True)
class Realization:
    """Two marked subsets of a common ambient space."""

    ambient: FiniteMetricSpace
    subset_a: tuple[int, ...]
    subset_b: tuple[int, ...]

    def __post_init__(self) -> None:
        a = tuple(sorted(set(self.subset_a)))
        b = tuple(sorted(set(self.subset_b)))
        if not a or not b:
            raise ValueError("both subsets must be nonempty")
        for i in a + b:
            _check_index(self.ambient, i)
        object.__setattr__(self, "subset_a", a)
        object.__setattr__(self, "subset_b", b)


def hausdorff_in_ambient(r: Realization) -> Fraction:
    d = r.ambient.dist
    a_to_b = max(min(d[a][b] for b in r.subset_b) for a in r.subset_a)
    b_to_a = max(min(d[a][b] for a in r.subset_a) for b in r.subset_b)
    return max(a_to_b, b_to_a)


# --- canonical JSON -------------------------------------------------------


def space_to_dict(X: FiniteMetricSpace) -> dict:
    return {
        "labels": list(X.labels),
        "matrix": [[to_json_value(v) for v in row] for row in X.dist],
    }


def dumps_space(X: FiniteMetricSpace) -> str:
    """Canonical compact JSON: keys ``labels`` then ``matrix``, no spaces."""
    return json.dumps(space_to_dict(X), separators=(",", ":"), ensure_ascii=False)


def space_from_dict(obj: dict) -> FiniteMetricSpace:
    if not isinstance(obj, dict) or "labels" not in obj or "matrix" not in obj:
        raise ValueError('space JSON needs "labels" and "matrix"')
    labels = obj["labels"]
    matrix = obj["matrix"]
    if not isinstance(labels, list) or not all(isinstance(x, str) for x in labels):
        raise ValueError('"labels" must be an array of strings')
    if not isinstance(matrix, list) or not all(isinstance(row, list) for row in matrix):
        raise ValueError('"matrix" must be an array of arrays')
    for row in matrix:
        for v in row:
            if isinstance(v, bool) or not isinstance(v, (int, str)):
                raise ValueError(f"matrix entries must be integers or 'p/q' strings, got {v!r}")
    return validate(labels, matrix)


def loads_space(text: str) -> FiniteMetricSpace:
    return space_from_dict(json.loads(text))


def load_space(path: str | Path) -> FiniteMetricSpace:
    return loads_space(Path(path).read_text(encoding="utf-8"))


def save_space(X: FiniteMetricSpace, path: str | Path) -> None:
    Path(path).write_text(dumps_space(X) + "\n", encoding="utf-8")
