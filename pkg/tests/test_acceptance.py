"""Exit criteria. Each test records one PASS/FAIL line, printed in the terminal summary."""

from __future__ import annotations

import random
import time
from contextlib import contextmanager
from fractions import Fraction

import pytest

from finitegh.algebra import check_ultrametric
from finitegh.bruteforce import brute_force_gh
from finitegh.cli import main
from finitegh.constructions import (
    gapped_segment,
    integer_segment_realization,
    integers,
    random_metric,
    rtilde_grid,
    rtilde_line_realization,
    segment_grid,
)
from finitegh.search import distortion, gh_exact, gh_lower_bound, gh_oracle, gh_upper_bound_greedy, image_diameter
from finitegh.spaces import Realization, diameter, hausdorff_in_ambient, metric_violations, one_point, simplex_extend
from finitegh.verify import TRUNCATION_NOTE, random_correspondence, verify_paper

from conftest import ACCEPTANCE_LINES

# Frozen from the function-pair brute force (scripts/pin_regressions.py).
Z2_RTILDE_2_1 = Fraction(1, 2)
SEG3_GAPPED3 = Fraction(1, 2)


@contextmanager
def criterion(number: int, title: str):
    try:
        yield
    except BaseException:
        ACCEPTANCE_LINES.append(f"[{number:2d}] FAIL  {title}")
        raise
    ACCEPTANCE_LINES.append(f"[{number:2d}] PASS  {title}")


def test_01_oracle_equivalence():
    with criterion(1, "gh_exact == gh_oracle on 200 random pairs (<= 4 points, denominators <= 6), < 2 min"):
        rng = random.Random(101)
        start = time.perf_counter()
        mismatches = []
        for k in range(200):
            X = random_metric(rng, rng.randint(1, 4), max_den=6)
            Y = random_metric(rng, rng.randint(1, 4), max_den=6)
            assert all(v.denominator <= 6 for Z in (X, Y) for row in Z.dist for v in row)
            a, b = gh_exact(X, Y), gh_oracle(X, Y)
            if not (a.is_exact and a.value == b.value):
                mismatches.append(k)
        elapsed = time.perf_counter() - start
        assert mismatches == []
        assert elapsed < 120, elapsed


def test_02_distance_to_point():
    with criterion(2, "|X, pt| = diam X / 2 via gh_exact on 50 random spaces (<= 6 points)"):
        rng = random.Random(202)
        for _ in range(50):
            X = random_metric(rng, rng.randint(1, 6))
            res = gh_exact(X, one_point())
            assert res.is_exact and res.value == diameter(X) / 2


def test_03_scaling_and_homogeneity():
    with criterion(3, "scaling identity and homogeneity hold exactly on verify suites (a), (b)"):
        checks = {c.id: c for c in verify_paper().checks}
        for cid in "ab":
            assert checks[cid].verdict == "pass"
            assert len(checks[cid].cases) == 10
            assert all(case["lhs"] == case["rhs"] and case["relation"] == "==" for case in checks[cid].cases)


def test_04_ultrametric():
    with criterion(4, "ultrametric inequality on 50 random pairs (<= 5 points)"):
        rng = random.Random(404)
        for _ in range(50):
            X1 = random_metric(rng, rng.randint(1, 5))
            X2 = random_metric(rng, rng.randint(1, 5))
            assert check_ultrametric(X1, X2).holds


def test_05_realizations():
    with criterion(5, "Hausdorff realizations (Z in grid, R-tilde vs shifted line) are exactly 1/2 at N=2, h=1/2"):
        h = Fraction(1, 2)
        assert hausdorff_in_ambient(integer_segment_realization(2, h)) == Fraction(1, 2)
        assert hausdorff_in_ambient(rtilde_line_realization(2, h)) == Fraction(1, 2)


def test_06_image_diameter():
    with criterion(6, "image_diameter <= distortion for 500 random correspondences (<= 6 points)"):
        rng = random.Random(606)
        for _ in range(500):
            X = random_metric(rng, rng.randint(1, 6))
            Y = random_metric(rng, rng.randint(1, 6))
            R = random_correspondence(rng, X.n, Y.n)
            dis = distortion(X, Y, R)
            for i in range(X.n):
                assert image_diameter(X, Y, R, i) <= dis


def test_07_simplex_extension():
    with criterion(7, "simplex extension of 20 random spaces, m in {1,3,7}: valid, Hausdorff <= 1"):
        rng = random.Random(707)
        for _ in range(20):
            X = random_metric(rng, rng.randint(1, 6))
            for m in (1, 3, 7):
                base = rng.randrange(X.n)
                E = simplex_extend(X, base, m)
                assert metric_violations(E.labels, E.dist) == []
                assert E.subspace(range(X.n)).dist == X.dist
                hd = hausdorff_in_ambient(Realization(E, tuple(range(X.n)), tuple(range(E.n))))
                assert hd <= 1
                if E.n <= 7:
                    assert gh_exact(X, E).value <= hd


def test_08_desk_scale_regressions():
    with criterion(8, "pinned truncation constants: brute force == solver; report states bounds are asymptotic"):
        cases = [
            (integers(2), rtilde_grid(2, 1), Z2_RTILDE_2_1),
            (segment_grid(3, 1), gapped_segment(3, 0, 1, 1), SEG3_GAPPED3),
        ]
        for X, Y, pinned in cases:
            assert brute_force_gh(X, Y)[0] == pinned
            assert gh_exact(X, Y).value == pinned
            assert gh_exact(X, Y, deterministic=True).value == pinned
        checks = {c.id: c for c in verify_paper(N=2, h=1).checks}
        for cid in "hi":
            assert checks[cid].verdict == "informational"
            assert checks[cid].cases[0]["note"] == TRUNCATION_NOTE
        assert "2/3" in TRUNCATION_NOTE and "unbounded" in TRUNCATION_NOTE
        assert "need not attain" in TRUNCATION_NOTE


def test_09_determinism(tmp_path, capsys):
    with criterion(9, "verify paper --deterministic twice yields byte-identical JSON"):
        a, b = tmp_path / "a.json", tmp_path / "b.json"
        assert main(["verify", "paper", "--deterministic", "--report", str(a)]) == 0
        assert main(["verify", "paper", "--deterministic", "--report", str(b)]) == 0
        capsys.readouterr()
        assert a.read_bytes() == b.read_bytes()


def test_10_bound_sandwich():
    with criterion(10, "gh_lower_bound <= gh_exact <= greedy upper bound on 100 random pairs (<= 5 points)"):
        rng = random.Random(1010)
        for _ in range(100):
            X = random_metric(rng, rng.randint(1, 5))
            Y = random_metric(rng, rng.randint(1, 5))
            exact = gh_exact(X, Y)
            assert exact.is_exact
            upper, witness = gh_upper_bound_greedy(X, Y, 8)
            assert gh_lower_bound(X, Y) <= exact.value <= upper
            assert distortion(X, Y, witness) == 2 * upper
