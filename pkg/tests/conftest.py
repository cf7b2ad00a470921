from __future__ import annotations

import random
from fractions import Fraction
from itertools import product

from hypothesis import strategies as st

from finitegh.constructions import line_space, random_metric


def line(*pts):
    return line_space([Fraction(p) for p in pts])


def naive_gh(X, Y):
    """Half the least distortion over every relation, via plain itertools.

    Independent of every search in the package; only usable for about nine pairs.
    """
    cells = list(product(range(X.n), range(Y.n)))
    assert len(cells) <= 12, "too large for the naive enumerator"
    best = None
    for bits in product((0, 1), repeat=len(cells)):
        R = [c for c, b in zip(cells, bits) if b]
        if {i for i, _ in R} != set(range(X.n)) or {j for _, j in R} != set(range(Y.n)):
            continue
        dis = max(abs(X.dist[a][c] - Y.dist[b][d]) for a, b in R for c, d in R)
        if best is None or dis < best:
            best = dis
    return best / 2


@st.composite
def metric_spaces(draw, min_n=1, max_n=4, max_den=6):
    seed = draw(st.integers(0, 2**32 - 1))
    n = draw(st.integers(min_n, max_n))
    return random_metric(random.Random(seed), n, max_den=max_den)


ACCEPTANCE_LINES: list[str] = []


def pytest_terminal_summary(terminalreporter):
    if ACCEPTANCE_LINES:
        terminalreporter.section("acceptance criteria")
        for line in ACCEPTANCE_LINES:
            terminalreporter.write_line(line)
