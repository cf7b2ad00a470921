import json
import random
from fractions import Fraction

from finitegh.search import distortion, image_diameter
from finitegh.spaces import one_point
from finitegh.verify import (
    PINNED,
    TRUNCATION_NOTE,
    random_correspondence,
    simplex_neighborhood,
    verify_paper,
)
from finitegh.algebra import check_scaling_identity


def by_id(report):
    return {c.id: c for c in report.checks}


def test_default_report():
    report = verify_paper(deterministic=True)
    checks = by_id(report)
    assert sorted(checks) == list("abcdefghi")
    for cid in "abcdefg":
        assert checks[cid].verdict == "pass", cid
    assert checks["d"].values["hausdorff"] == "1/2"
    assert checks["e"].values["hausdorff"] == "1/2"
    for cid in "hi":
        assert checks[cid].verdict == "informational"
        assert checks[cid].values["computed"] == checks[cid].values["pinned"]
        assert checks[cid].cases[0]["note"] == TRUNCATION_NOTE
    assert not report.failed
    assert report.summary() == {"pass": 7, "fail": 0, "informational": 2}


def test_report_is_reproducible():
    a = verify_paper(deterministic=True).to_json()
    b = verify_paper(deterministic=True).to_json()
    assert a == b
    data = json.loads(a)
    assert data["metadata"] == {"n": 2, "h": "1/2", "budget": None, "deterministic": True, "seed": 1729}


def test_other_parameters():
    report = verify_paper(N=2, h=1)
    checks = by_id(report)
    assert checks["d"].values["relation"] == "<="
    assert checks["d"].values["hausdorff"] == "0"
    assert checks["h"].values["computed"] == "1/2" == checks["h"].values["pinned"]
    assert not report.failed


def test_unpinned_parameters_are_informational():
    report = verify_paper(N=3, h=Fraction(1, 2))
    checks = by_id(report)
    assert checks["i"].values["pinned"] == "none"
    assert checks["i"].verdict == "informational"


def test_budget_exhaustion_turns_checks_red():
    report = verify_paper(budget=0)
    assert report.failed
    assert any(c.verdict == "fail" for c in report.checks)


def test_pinned_constants_agree_with_solver():
    from finitegh.constructions import gapped_segment, integers, rtilde_grid, segment_grid
    from finitegh.search import gh_exact

    for (family, N, h), value in PINNED.items():
        if family == "rtilde":
            X, Y = integers(N), rtilde_grid(N, h)
        else:
            X, Y = segment_grid(N, h), gapped_segment(N, 0, 1, h)
        assert gh_exact(X, Y).value == value


def test_helpers():
    rng = random.Random(0)
    R = random_correspondence(rng, 3, 4)
    R.check(3, 4)
    ok, hd = simplex_neighborhood(one_point(), 0, 3)
    assert ok and hd == 1


def test_scaling_with_point_is_zero_both_sides():
    for lam, mu in [(0, 0), (3, 1), (Fraction(1, 2), 7)]:
        r = check_scaling_identity(one_point(), lam, mu)
        assert r.lhs == r.rhs == 0
