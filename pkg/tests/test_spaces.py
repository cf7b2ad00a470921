import json
import random
from fractions import Fraction

import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from finitegh.errors import IndexOutOfRange, MetricError, NegativeScale, Violation
from finitegh.spaces import (
    Realization,
    diameter,
    dumps_space,
    hausdorff_in_ambient,
    load_space,
    loads_space,
    metric_violations,
    one_point,
    save_space,
    scale,
    simplex,
    simplex_extend,
    validate,
)

from conftest import line, metric_spaces


def kinds(exc):
    return [(v.kind, v.indices) for v in exc.value.violations]


def test_single_point_is_valid():
    X = validate(["a"], [[0]])
    assert X.n == 1 and diameter(X) == 0


def test_nonzero_diagonal_reported():
    with pytest.raises(MetricError) as exc:
        validate(["a", "b"], [[0, 1], [1, 2]])
    assert ("NonzeroDiagonalAt", (1,)) in kinds(exc)


def test_line_points_are_valid():
    X = validate(["a", "b", "c"], [[0, 1, 5], [1, 0, 4], [5, 4, 0]])
    assert diameter(X) == 5


def test_every_violation_is_listed():
    with pytest.raises(MetricError) as exc:
        validate(["a", "a", "c"], [[0, 1, 5], [2, 0, 1], [5, 1, 0]])
    found = kinds(exc)
    assert ("DuplicateLabel", (0, 1)) in found
    assert ("AsymmetricAt", (0, 1)) in found
    assert ("TriangleViolationAt", (0, 1, 2)) in found


@pytest.mark.parametrize(
    "labels, matrix, kind",
    [
        (["a", "b"], [[0, 1]], "NonSquare"),
        (["a"], [[0, 1], [1, 0]], "LabelCountMismatch"),
        ([], [], "Empty"),
        (["a", "b"], [[0, 0], [0, 0]], "NonpositiveOffDiagonalAt"),
        (["a", "b"], [[0, -1], [-1, 0]], "NonpositiveOffDiagonalAt"),
    ],
)
def test_structural_violations(labels, matrix, kind):
    with pytest.raises(MetricError) as exc:
        validate(labels, matrix)
    assert kind in [v.kind for v in exc.value.violations]


def test_violation_str():
    assert str(Violation("TriangleViolationAt", (0, 1, 2))) == "TriangleViolationAt(0, 1, 2)"


@given(metric_spaces(max_n=6))
def test_generated_spaces_pass_validation(X):
    assert metric_violations(X.labels, X.dist) == []


def test_diameter_examples():
    assert diameter(one_point()) == 0
    assert diameter(line(0, 1, 2)) == 2
    assert diameter(line(*range(-3, 4))) == 6


def test_scale_examples():
    assert scale(line(0, 1), 2).dist == ((0, 2), (2, 0))
    assert scale(one_point(), Fraction(7, 3)).dist == ((0,),)
    assert scale(line(0, 1, 3), 0).n == 1
    with pytest.raises(NegativeScale):
        scale(line(0, 1), -1)


@given(metric_spaces(min_n=2, max_n=5), st.fractions(min_value=0, max_value=10))
def test_diameter_scales_linearly(X, lam):
    assert diameter(scale(X, lam)) == lam * diameter(X)


@given(metric_spaces(max_n=5), st.fractions(min_value=Fraction(1, 100), max_value=10),
       st.fractions(min_value=Fraction(1, 100), max_value=10))
def test_scale_composes(X, lam, mu):
    assert scale(scale(X, lam), mu).dist == scale(X, lam * mu).dist


def test_simplex():
    S = simplex(3)
    assert all(S.dist[i][j] == (0 if i == j else 1) for i in range(3) for j in range(3))
    assert diameter(simplex(5)) == 1
    assert one_point().dist == ((0,),)


def test_simplex_extend_single_point():
    E = simplex_extend(one_point(), 0, 3)
    assert E.n == 4
    assert [E.dist[0][k] for k in (1, 2, 3)] == [1, 1, 1]
    assert E.dist[1][2] == E.dist[1][3] == E.dist[2][3] == 1


def test_simplex_extend_two_points():
    X = validate(["a", "b"], [[0, 3], [3, 0]])
    E = simplex_extend(X, 0, 2)
    assert E.labels == ("a", "b", "s1", "s2")
    assert E.dist[2][0] == 1 and E.dist[2][1] == 4 and E.dist[2][3] == 1


def test_simplex_extend_avoids_label_clash():
    X = validate(["s1", "x"], [[0, 1], [1, 0]])
    E = simplex_extend(X, 1, 2)
    assert len(set(E.labels)) == 4


def test_simplex_extend_index_check():
    with pytest.raises(IndexOutOfRange):
        simplex_extend(one_point(), 1, 2)


@settings(max_examples=60)
@given(metric_spaces(max_n=6), st.integers(0, 5), st.integers(1, 7))
def test_simplex_extension_is_metric_and_close(X, base, m):
    base %= X.n
    E = simplex_extend(X, base, m)  # construction validates
    r = Realization(E, tuple(range(X.n)), tuple(range(E.n)))
    assert hausdorff_in_ambient(r) <= 1


def test_hausdorff_examples():
    L = line(0, 1)
    assert hausdorff_in_ambient(Realization(L, (0, 1), (0, 1))) == 0
    assert hausdorff_in_ambient(Realization(L, (0,), (0, 1))) == 1
    grid = line(*[Fraction(k, 2) for k in range(-4, 5)])
    ints = tuple(i for i in range(9) if i % 2 == 0)
    assert hausdorff_in_ambient(Realization(grid, ints, tuple(range(9)))) == Fraction(1, 2)


def test_realization_rejects_bad_subsets():
    with pytest.raises(ValueError):
        Realization(line(0, 1), (), (0,))
    with pytest.raises(IndexOutOfRange):
        Realization(line(0, 1), (0, 2), (0,))


@given(metric_spaces(max_n=6), st.data())
def test_hausdorff_symmetric_and_zero_iff_equal(X, data):
    a = data.draw(st.sets(st.integers(0, X.n - 1), min_size=1))
    b = data.draw(st.sets(st.integers(0, X.n - 1), min_size=1))
    ab = hausdorff_in_ambient(Realization(X, tuple(a), tuple(b)))
    ba = hausdorff_in_ambient(Realization(X, tuple(b), tuple(a)))
    assert ab == ba
    assert (ab == 0) == (a == b)


def test_canonical_json():
    X = validate(["a", "b"], [[0, Fraction(1, 2)], [Fraction(1, 2), 0]])
    assert dumps_space(X) == '{"labels":["a","b"],"matrix":[[0,"1/2"],["1/2",0]]}'
    Y = validate(["a", "b"], [[0, 3], [3, 0]])
    assert dumps_space(Y) == '{"labels":["a","b"],"matrix":[[0,3],[3,0]]}'


@given(metric_spaces(max_n=5))
def test_json_round_trip(X):
    assert loads_space(dumps_space(X)) == X


def test_json_reader_normalizes_and_rejects():
    X = loads_space('{"labels":["a","b"],"matrix":[[0,"2/4"],["1/2",0]]}')
    assert X.dist[0][1] == Fraction(1, 2)
    for bad in ['{"labels":["a"]}', '{"labels":["a"],"matrix":[[0.0]]}', '{"labels":[1],"matrix":[[0]]}',
                '{"labels":["a"],"matrix":[[true]]}']:
        with pytest.raises(ValueError):
            loads_space(bad)


def test_file_round_trip(tmp_path):
    X = line(0, 1, 3)
    path = tmp_path / "x.json"
    save_space(X, path)
    assert load_space(path) == X
    assert json.loads(path.read_text())["labels"] == ["0", "1", "3"]


def test_subspace():
    X = line(0, 1, 3)
    assert X.subspace([0, 2]).dist == ((0, 3), (3, 0))
