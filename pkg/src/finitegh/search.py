"""Correspondences, distortion and exact Gromov-Hausdorff search.

Exact work happens on integer matrices: both distance matrices are multiplied
by the common denominator of all their entries, the search runs on machine
integers, and the result is divided back at the end. Nothing is rounded.
"""

from __future__ import annotations

import random
from dataclasses import dataclass, field
from fractions import Fraction
from itertools import product
from typing import Iterable, Optional, Sequence

import numpy as np

from .errors import IndexOutOfRange, NotSurjectiveOnLeft, NotSurjectiveOnRight, TooLargeForOracle
from .rationals import common_denominator
from .spaces import FiniteMetricSpace, diameter

ORACLE_MAX_POINTS = 4
GREEDY_RESTARTS = 8


@dataclass(frozen=True)
class Correspondence:
    """A relation between point indices of two spaces, stored as index pairs."""

    pairs: frozenset[tuple[int, int]]

    def __init__(self, pairs: Iterable[tuple[int, int]]):
        object.__setattr__(self, "pairs", frozenset((int(i), int(j)) for i, j in pairs))

    @classmethod
    def from_functions(cls, f: Sequence[int], g: Sequence[int] | dict[int, int] = ()) -> "Correspondence":
        """``graph(f)`` together with the transposed graph of ``g``.

        ``g`` may be a full list ``g[y] = x`` or a dict defined on some ``y`` only.
        """
        pairs = {(x, y) for x, y in enumerate(f)}
        items = g.items() if isinstance(g, dict) else enumerate(g)
        pairs |= {(x, y) for y, x in items}
        return cls(pairs)

    @classmethod
    def identity(cls, n: int) -> "Correspondence":
        return cls((i, i) for i in range(n))

    @classmethod
    def full(cls, n: int, m: int) -> "Correspondence":
        return cls(product(range(n), range(m)))

    def image(self, i: int) -> list[int]:
        return sorted(j for a, j in self.pairs if a == i)

    def preimage(self, j: int) -> list[int]:
        return sorted(a for a, b in self.pairs if b == j)

    def sorted_pairs(self) -> list[tuple[int, int]]:
        return sorted(self.pairs)

    def check(self, n: int, m: int) -> None:
        for i, j in self.pairs:
            if not (0 <= i < n and 0 <= j < m):
                raise IndexOutOfRange(f"pair ({i}, {j}) outside {n}x{m}")
        left = {i for i, _ in self.pairs}
        right = {j for _, j in self.pairs}
        if len(left) != n:
            missing = sorted(set(range(n)) - left)
            raise NotSurjectiveOnLeft(f"left points never related: {missing}")
        if len(right) != m:
            missing = sorted(set(range(m)) - right)
            raise NotSurjectiveOnRight(f"right points never related: {missing}")


@dataclass(frozen=True)
class GHResult:
    """Outcome of an exact search.

    ``status`` is ``"exact"`` when ``value`` is the true distance, and
    ``"lower_upper"`` when the budget ran out; then ``lower <= d_GH <= upper``,
    ``value == upper`` and the witness certifies ``upper``.
    """

    value: Fraction
    witness: Correspondence
    status: str = "exact"
    lower: Optional[Fraction] = None
    upper: Optional[Fraction] = None
    nodes: int = field(default=0, compare=False)

    def __post_init__(self) -> None:
        if self.lower is None:
            object.__setattr__(self, "lower", self.value)
        if self.upper is None:
            object.__setattr__(self, "upper", self.value)

    @property
    def is_exact(self) -> bool:
        return self.status == "exact"


def distortion(X: FiniteMetricSpace, Y: FiniteMetricSpace, R: Correspondence) -> Fraction:
    R.check(X.n, Y.n)
    pairs = R.sorted_pairs()
    worst = Fraction(0)
    for k, (x, y) in enumerate(pairs):
        dx, dy = X.dist[x], Y.dist[y]
        for x2, y2 in pairs[k + 1:]:
            gap = abs(dx[x2] - dy[y2])
            if gap > worst:
                worst = gap
    return worst


def image_diameter(X: FiniteMetricSpace, Y: FiniteMetricSpace, R: Correspondence, i: int) -> Fraction:
    """Diameter in ``Y`` of the set of points related to ``X``-point ``i``."""
    R.check(X.n, Y.n)
    if not 0 <= i < X.n:
        raise IndexOutOfRange(f"index {i} out of range for a {X.n}-point space")
    img = R.image(i)
    return max((Y.dist[a][b] for a in img for b in img), default=Fraction(0))


def gh_lower_bound(X: FiniteMetricSpace, Y: FiniteMetricSpace) -> Fraction:
    return abs(diameter(X) - diameter(Y)) / 2


# --- integer scaling ------------------------------------------------------


def _int_array(rows: list[list[int]]) -> np.ndarray:
    big = max((abs(v) for row in rows for v in row), default=0)
    # Differences of two entries must also fit.
    if 2 * big < 2**62:
        return np.array(rows, dtype=np.int64)
    return np.array(rows, dtype=object)


def integer_matrices(X: FiniteMetricSpace, Y: FiniteMetricSpace) -> tuple[int, np.ndarray, np.ndarray]:
    """``(s, s*dX, s*dY)`` with ``s`` the least common denominator of all entries."""
    s = common_denominator(v for Z in (X, Y) for row in Z.dist for v in row)
    dx = _int_array([[int(v * s) for v in row] for row in X.dist])
    dy = _int_array([[int(v * s) for v in row] for row in Y.dist])
    if dx.dtype != dy.dtype:
        dx, dy = dx.astype(object), dy.astype(object)
    return s, dx, dy


# --- exhaustive oracle ----------------------------------------------------


def gh_oracle(X: FiniteMetricSpace, Y: FiniteMetricSpace) -> GHResult:
    """Minimum distortion over every relation surjective on both sides.

    All ``2**(n*m)`` relations are enumerated, so both sides are capped at
    four points. Relations are bitmasks over the pairs ``(i, j)`` at bit
    ``i*m + j``; distortion and coverage of every mask are built by adding
    one bit at a time. Ties go to the smallest mask.
    """
    n, m = X.n, Y.n
    if n > ORACLE_MAX_POINTS or m > ORACLE_MAX_POINTS:
        raise TooLargeForOracle(
            f"oracle enumerates all relations and is capped at {ORACLE_MAX_POINTS} points per side, got {n}x{m}"
        )
    s, dx, dy = integer_matrices(X, Y)
    P = n * m
    pi = [p // m for p in range(P)]
    pj = [p % m for p in range(P)]
    cost = np.empty((P, P), dtype=dx.dtype)
    for p in range(P):
        for q in range(P):
            cost[p, q] = abs(dx[pi[p], pi[q]] - dy[pj[p], pj[q]])

    size = 1 << P
    dis = np.zeros(size, dtype=dx.dtype)
    # rowmax[p, mask] = max cost between pair p and the pairs in mask
    rowmax = np.zeros((P, size), dtype=dx.dtype)
    left = np.zeros(size, dtype=np.int64)
    right = np.zeros(size, dtype=np.int64)
    for b in range(P):
        lo, hi = 1 << b, 1 << (b + 1)
        dis[lo:hi] = np.maximum(dis[0:lo], rowmax[b, 0:lo])
        rowmax[:, lo:hi] = np.maximum(rowmax[:, 0:lo], cost[:, b][:, None])
        left[lo:hi] = left[0:lo] | (1 << pi[b])
        right[lo:hi] = right[0:lo] | (1 << pj[b])
    ok = (left == (1 << n) - 1) & (right == (1 << m) - 1)
    candidates = np.flatnonzero(ok)
    vals = dis[candidates]
    best = vals.min()
    mask = int(candidates[np.flatnonzero(vals == best)[0]])
    pairs = [(pi[p], pj[p]) for p in range(P) if mask >> p & 1]
    return GHResult(Fraction(int(best), 2 * s), Correspondence(pairs), "exact", nodes=size)


# --- greedy local search --------------------------------------------------


def _pair_cost(dx: np.ndarray, dy: np.ndarray, xs: np.ndarray, ys: np.ndarray) -> np.ndarray:
    return np.abs(dx[np.ix_(xs, xs)] - dy[np.ix_(ys, ys)])


def _objective(c: np.ndarray) -> tuple[int, int]:
    top = c.max()
    return top, int(np.count_nonzero(c == top))


def _local_search(dx: np.ndarray, dy: np.ndarray, f: list[int], g: list[int]) -> tuple[int, list[int], list[int]]:
    """First-improvement descent over single reassignments of ``f`` or ``g``.

    The objective is ``(distortion, number of pair-pairs attaining it)``,
    compared lexicographically; the count only breaks plateaus.
    """
    n, m = len(f), len(g)
    xs = np.array(list(range(n)) + list(g), dtype=np.int64)
    ys = np.array(list(f) + list(range(m)), dtype=np.int64)
    P = n + m
    c = _pair_cost(dx, dy, xs, ys)
    current = _objective(c)
    improved = True
    while improved and current[0] > 0:
        improved = False
        for k in range(P):
            masked = c.copy()
            masked[k, :] = 0
            masked[:, k] = 0
            rest_top = masked.max()
            rest_count = int(np.count_nonzero(masked == rest_top))
            if k < n:
                # move: f[k] -> y, pair (k, y)
                rows = np.abs(dx[k, xs][None, :] - dy[:, ys])
                options = range(m)
                same = ys[k]
            else:
                # move: g[k-n] -> x, pair (x, k-n)
                y = k - n
                rows = np.abs(dx[:, xs] - dy[y, ys][None, :])
                options = range(n)
                same = xs[k]
            rows[:, k] = 0
            row_top = rows.max(axis=1)
            for opt in options:
                if opt == same:
                    continue
                top = max(rest_top, row_top[opt])
                count = 2 * int(np.count_nonzero(rows[opt] == top))
                if rest_top == top:
                    count += rest_count
                if (top, count) < current:
                    if k < n:
                        ys[k] = opt
                    else:
                        xs[k] = opt
                    c[k, :] = rows[opt]
                    c[:, k] = rows[opt]
                    c[k, k] = 0
                    current = (top, count)
                    improved = True
                    break
            if improved:
                break
    return int(current[0]), [int(v) for v in ys[:n]], [int(v) for v in xs[n:]]


def _greedy_ints(dx: np.ndarray, dy: np.ndarray, restarts: int) -> tuple[int, list[int], list[int]]:
    n, m = dx.shape[0], dy.shape[0]
    best = None
    for r in range(restarts):
        if r == 0:
            f = [min(i, m - 1) for i in range(n)]
            g = [min(j, n - 1) for j in range(m)]
        else:
            rng = random.Random(r)
            f = [rng.randrange(m) for _ in range(n)]
            g = [rng.randrange(n) for _ in range(m)]
        found = _local_search(dx, dy, f, g)
        if best is None or found[0] < best[0]:
            best = found
        if best[0] == 0:
            break
    assert best is not None
    return best


def gh_upper_bound_greedy(
    X: FiniteMetricSpace, Y: FiniteMetricSpace, restarts: int = GREEDY_RESTARTS
) -> tuple[Fraction, Correspondence]:
    """Half the distortion of the best function pair found by local search.

    Restart 0 starts from the index-aligned assignment; restart ``r > 0``
    starts from a random one drawn with seed ``r``.
    """
    if restarts < 1:
        raise ValueError("restarts must be at least 1")
    s, dx, dy = integer_matrices(X, Y)
    dis, f, g = _greedy_ints(dx, dy, restarts)
    return Fraction(dis, 2 * s), Correspondence.from_functions(f, g)


# --- branch and bound -----------------------------------------------------


class _Node:
    __slots__ = ("f", "extra", "covered", "cost", "partial", "bound")

    def __init__(self, f, extra, covered, cost, partial, bound):
        self.f = f  # tuple of (x, y) placed in phase one, in placement order
        self.extra = extra  # tuple of (x, y) placed to cover leftover Y points
        self.covered = covered  # frozenset of covered Y indices
        self.cost = cost  # cost[x, y] = max gap of pair (x, y) against placed pairs
        self.partial = partial
        self.bound = bound


class _Search:
    """Depth-first branch and bound over ``graph(f)`` plus covers of the rest of ``Y``.

    Phase one fixes ``f(x)`` for every ``X`` point in ``x_order``; phase two
    picks a preimage for each ``Y`` point that ``f`` missed, in ``y_order``.
    Any correspondence contains such a relation, so nothing is lost.
    """

    def __init__(self, dx, dy, x_order, y_order, best_first: bool):
        self.dx, self.dy = dx, dy
        self.n, self.m = dx.shape[0], dy.shape[0]
        self.x_order = list(x_order)
        self.y_order = list(y_order)
        self.best_first = best_first
        # gap[a, b][x, y] = |dx[x, a] - dy[y, b]|
        self.gap = np.abs(dx[:, None, :, None] - dy[None, :, None, :]).transpose(2, 3, 0, 1)
        self.nodes = 0

    def _bound(self, cost, partial, depth, covered) -> int:
        b = partial
        if depth < self.n:
            pending_x = self.x_order[depth:]
            b = max(b, cost[pending_x, :].min(axis=1).max())
        pending_y = [y for y in range(self.m) if y not in covered]
        if pending_y:
            b = max(b, cost[:, pending_y].min(axis=0).max())
        return int(b)

    def root(self) -> _Node:
        cost = np.zeros((self.n, self.m), dtype=self.dx.dtype)
        return _Node((), (), frozenset(), cost, 0, self._bound(cost, 0, 0, frozenset()))

    def _child(self, node: _Node, x: int, y: int, phase_one: bool) -> _Node:
        partial = max(node.partial, int(node.cost[x, y]))
        cost = np.maximum(node.cost, self.gap[x, y])
        covered = node.covered | {y}
        f = node.f + ((x, y),) if phase_one else node.f
        extra = node.extra if phase_one else node.extra + ((x, y),)
        depth = len(f)
        return _Node(f, extra, covered, cost, partial, self._bound(cost, partial, depth, covered))

    def children(self, node: _Node, keep) -> list[_Node]:
        depth = len(node.f)
        if depth < self.n:
            x = self.x_order[depth]
            kids = [self._child(node, x, y, True) for y in range(self.m) if keep(node.cost[x, y])]
        else:
            y = next(y for y in self.y_order if y not in node.covered)
            kids = [self._child(node, x, y, False) for x in range(self.n) if keep(node.cost[x, y])]
        kids = [k for k in kids if keep(k.bound)]
        if self.best_first:
            kids.sort(key=lambda k: k.bound)
        return kids

    def is_leaf(self, node: _Node) -> bool:
        return len(node.f) == self.n and len(node.covered) == self.m

    def minimize(self, incumbent: int, floor: int, budget: Optional[int]):
        """Return ``(best, leaf or None, exhausted, open_bound)``."""
        best, best_leaf = incumbent, None
        stack = [self.root()]
        while stack:
            if best <= floor:
                stack.clear()
                break
            node = stack.pop()
            if node.bound >= best:
                continue
            if self.is_leaf(node):
                best, best_leaf = node.partial, node
                continue
            if budget is not None and self.nodes >= budget:
                stack.append(node)
                break
            self.nodes += 1
            kids = self.children(node, lambda v: v < best)
            stack.extend(reversed(kids))
        open_bounds = [nd.bound for nd in stack if nd.bound < best]
        exhausted = bool(open_bounds)
        return best, best_leaf, exhausted, min(open_bounds, default=best)

    def first_at_most(self, limit: int) -> Optional[_Node]:
        stack = [self.root()]
        while stack:
            node = stack.pop()
            if node.bound > limit:
                continue
            if self.is_leaf(node):
                return node
            self.nodes += 1
            stack.extend(reversed(self.children(node, lambda v: v <= limit)))
        return None


def _leaf_witness(node: _Node) -> Correspondence:
    return Correspondence(node.f + node.extra)


def _eccentricity_order(d: np.ndarray) -> list[int]:
    ecc = d.max(axis=1)
    return sorted(range(d.shape[0]), key=lambda i: (-ecc[i], i))


def canonical_witness(X: FiniteMetricSpace, Y: FiniteMetricSpace, value: Fraction) -> Correspondence:
    """Lexicographically smallest optimal relation ``graph(f)`` plus covers.

    Order: ``f`` as a tuple over ``X`` indices, then the chosen preimages of
    uncovered ``Y`` points in increasing ``Y`` index.
    """
    s, dx, dy = integer_matrices(X, Y)
    limit = value * 2 * s
    if limit.denominator != 1:
        raise ValueError("value is not attainable on these spaces")
    search = _Search(dx, dy, range(X.n), range(Y.n), best_first=False)
    leaf = search.first_at_most(int(limit))
    if leaf is None:
        raise ValueError(f"no correspondence attains {value}")
    return _leaf_witness(leaf)


def gh_exact(
    X: FiniteMetricSpace,
    Y: FiniteMetricSpace,
    budget: Optional[int] = None,
    deterministic: bool = False,
) -> GHResult:
    """Exact Gromov-Hausdorff distance by branch and bound.

    ``budget`` caps the number of expanded search nodes. When it runs out the
    result has status ``"lower_upper"`` with the best proven bounds. With
    ``deterministic`` the witness of an exact result is canonicalized.
    """
    s, dx, dy = integer_matrices(X, Y)
    floor = abs(int(dx.max()) - int(dy.max()))
    inc, f, g = _greedy_ints(dx, dy, GREEDY_RESTARTS)
    witness = Correspondence.from_functions(f, g)
    nodes = 0
    lower = floor
    if inc > floor:
        search = _Search(dx, dy, _eccentricity_order(dx), _eccentricity_order(dy), best_first=True)
        best, leaf, exhausted, open_bound = search.minimize(inc, floor, budget)
        nodes = search.nodes
        if leaf is not None:
            inc, witness = best, _leaf_witness(leaf)
        if exhausted:
            lower = max(floor, min(open_bound, inc))
            return GHResult(
                Fraction(inc, 2 * s),
                witness,
                "lower_upper",
                lower=Fraction(lower, 2 * s),
                upper=Fraction(inc, 2 * s),
                nodes=nodes,
            )
    value = Fraction(inc, 2 * s)
    if deterministic:
        witness = canonical_witness(X, Y, value)
    return GHResult(value, witness, "exact", nodes=nodes)
