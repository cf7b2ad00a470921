"""Exhaustive minimization over all function pairs ``f: X -> Y``, ``g: Y -> X``.

This shares no code with the branch and bound in :mod:`finitegh.search`
beyond integer scaling. The distortion of ``graph(f) ∪ graph(g)^T`` is the
largest of three terms: the distortion of ``f``, that of ``g``, and the cross
term ``max |dX(x, g(y)) - dY(f(x), y)|``. For each candidate value ``t`` in
increasing order, every ``f`` and every ``g`` with own distortion ``<= t`` is
kept and the cross term is checked for every surviving pair.
Feasible up to roughly ten million functions per side.
"""

from __future__ import annotations

from fractions import Fraction
from itertools import combinations

import numpy as np

from .search import Correspondence, integer_matrices
from .spaces import FiniteMetricSpace

CHUNK = 1 << 20


def _functions(n: int, m: int, idx: np.ndarray) -> np.ndarray:
    """Decode map numbers into maps ``range(n) -> range(m)`` (mixed radix, last digit fastest)."""
    idx = np.array(idx, dtype=np.int64)
    out = np.empty((idx.size, n), dtype=np.int64)
    for k in range(n - 1, -1, -1):
        out[:, k] = idx % m
        idx //= m
    return out


def _own_distortion(dsrc: np.ndarray, dtgt: np.ndarray) -> np.ndarray:
    """Distortion of every map from the source to the target space."""
    n, m = dsrc.shape[0], dtgt.shape[0]
    total = m**n
    out = np.empty(total, dtype=np.int64)
    for start in range(0, total, CHUNK):
        stop = min(total, start + CHUNK)
        f = _functions(n, m, np.arange(start, stop))
        worst = np.zeros(stop - start, dtype=np.int64)
        for a, b in combinations(range(n), 2):
            np.maximum(worst, np.abs(dsrc[a, b] - dtgt[f[:, a], f[:, b]]), out=worst)
        out[start:stop] = worst
    return out


def brute_force_gh(X: FiniteMetricSpace, Y: FiniteMetricSpace) -> tuple[Fraction, Correspondence]:
    s, dx, dy = integer_matrices(X, Y)
    if dx.dtype == object:
        raise ValueError("entries too large for the vectorized brute force")
    n, m = dx.shape[0], dy.shape[0]
    dis_f = _own_distortion(dx, dy)
    dis_g = _own_distortion(dy, dx)
    values = np.unique(np.abs(dx[:, :, None, None] - dy[None, None, :, :]))
    for t in values:
        fs = np.flatnonzero(dis_f <= t)
        gs = np.flatnonzero(dis_g <= t)
        if fs.size == 0 or gs.size == 0:
            continue
        F = _functions(n, m, fs)
        G = _functions(m, n, gs)
        # allowed[k, y, x2]: g(y) = x2 keeps the cross term <= t for every x, given f = F[k]
        fy = dy[F]  # (a, n, m): dY(f(x), y)
        gap = np.abs(dx[None, :, None, :] - fy[:, :, :, None])  # (a, x, y, x2)
        allowed = (gap <= t).all(axis=1)  # (a, y, x2)
        sigs, first = np.unique(allowed.reshape(len(F), -1), axis=0, return_index=True)
        for sig, k in zip(sigs, first):
            ok_y = sig.reshape(m, n)
            hit = ok_y[np.arange(m)[None, :], G].all(axis=1)
            if hit.any():
                g = G[int(np.flatnonzero(hit)[0])]
                f = F[int(k)]
                return Fraction(int(t), 2 * s), Correspondence.from_functions(f.tolist(), g.tolist())
    raise AssertionError("unreachable: every pair qualifies at the largest candidate value")
