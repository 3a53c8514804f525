import pickle
import random
from fractions import Fraction

import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from tropgeom.maxplus import (
    BOTTOM,
    PointSet,
    combine,
    format_scalar,
    leq,
    lift,
    lift_point,
    membership,
    point,
    principal_solution,
    project,
    scalar,
    unlift,
)
from tropgeom.oracles import membership_oracle

from _gen import no_all_bottom, rand_points

F = Fraction
SQUARE = [(0, 0), (0, 2), (2, 0)]


def test_bottom_absorbs_and_is_neutral():
    assert BOTTOM + F(3) is BOTTOM
    assert F(3) + BOTTOM is BOTTOM
    assert max(BOTTOM, F(-100)) == F(-100)
    assert BOTTOM < F(-10 ** 9)
    assert not BOTTOM > F(0)
    assert pickle.loads(pickle.dumps(BOTTOM)) is BOTTOM


@pytest.mark.parametrize("raw,expected", [("3", F(3)), ("-7/2", F(-7, 2)), ("-inf", BOTTOM), (2, F(2)), (0.5, F(1, 2))])
def test_scalar_parsing(raw, expected):
    assert scalar(raw) == expected


def test_scalar_rejects_garbage():
    with pytest.raises(ValueError):
        scalar("abc")
    with pytest.raises(TypeError):
        scalar(True)


def test_format_round_trip():
    for v in (F(-7, 2), F(0), BOTTOM, F(5)):
        assert scalar(format_scalar(v)) == v


def test_combine_identity():
    assert combine([(0, 0)], [0]).result == (0, 0)


def test_combine_square():
    assert combine(SQUARE, [0, -1, -1]).result == (1, 1)


def test_combine_bottom_coefficient_erases():
    assert combine([(0, 0), (5, 5)], [0, "-inf"]).result == (0, 0)


def test_combine_errors():
    with pytest.raises(ValueError):
        combine(SQUARE, [0, 0])
    with pytest.raises(ValueError):
        combine(SQUARE, [1, 0, 0])


def test_membership_square():
    comb = membership((1, 1), SQUARE)
    assert comb is not None and comb.lambdas == (0, -1, -1)
    assert membership((3, 3), SQUARE) is None


def test_membership_of_generator():
    comb = membership((0, 2), SQUARE)
    assert comb.lambdas[1] == 0
    assert comb.verify(PointSet.of(SQUARE))


def test_membership_errors():
    with pytest.raises(ValueError):
        membership((1,), SQUARE)
    with pytest.raises(ValueError):
        membership((1, 1), [])
    with pytest.raises(ValueError):
        membership((1, 1), [("-inf", "-inf"), (0, 0)])


def test_principal_solution_bottom_conventions():
    X = PointSet.of([(0, "-inf"), (1, 2)])
    assert principal_solution(point((3, "-inf")), X) == (3, BOTTOM)


def test_lift_examples():
    assert lift([(0,)]).points == ((0, 0),)
    assert lift([(1, "-inf")]).points == ((1, BOTTOM, 0),)
    X = PointSet.of([(1, 2), (3, "-inf")])
    assert unlift(lift(X)) == X


def test_project_examples():
    assert project((3, 3), SQUARE, "conic") == (3, 3)
    assert project((3, 3), SQUARE, "convex") == (2, 2)
    assert project((1, 1), SQUARE, "conic") == (1, 1)


def test_membership_agrees_with_pattern_oracle():
    rng = random.Random(11)
    checked = 0
    for _ in range(300):
        d = rng.randint(1, 3)
        X = rand_points(rng, rng.randint(1, 4), d, bottom=0.15, integer=True, spread=4)
        if not no_all_bottom(X):
            continue
        p = rand_points(rng, 1, d, bottom=0.1, integer=True, spread=4)[0]
        if rng.random() < 0.5:
            lams = [F(rng.randint(-3, 0)) for _ in X]
            lams[rng.randrange(len(X))] = F(0)
            p = combine(X, lams).result
        for mode in ("convex", "conic"):
            ours = membership(p, X, mode)
            ref = membership_oracle(p, X, mode)
            assert (ours is None) == (ref is None), (X, p, mode)
            checked += 1
    assert checked > 400


def test_lifting_equivalence():
    rng = random.Random(5)
    for _ in range(200):
        X = rand_points(rng, 3, 2, bottom=0.1, integer=True, spread=3)
        if not no_all_bottom(X):
            continue
        p = rand_points(rng, 1, 2, integer=True, spread=3)[0]
        convex = membership(p, X, "convex")
        conic = membership(lift_point(p), lift(X), "conic")
        assert (convex is not None) == (conic is not None and max(conic.lambdas) == 0)


coords = st.integers(-5, 5).map(F)


@settings(max_examples=60, deadline=None)
@given(st.lists(st.tuples(coords, coords), min_size=1, max_size=4), st.data())
def test_combine_then_membership_round_trip(pts, data):
    lams = data.draw(st.lists(st.integers(-4, 0).map(F), min_size=len(pts), max_size=len(pts)))
    lams[0] = F(0)
    comb = combine(pts, lams)
    assert membership(comb.result, pts) is not None


@settings(max_examples=60, deadline=None)
@given(st.lists(st.tuples(coords, coords), min_size=1, max_size=4), st.tuples(coords, coords), st.tuples(coords, coords))
def test_project_idempotent_and_monotone(pts, p, q):
    X = PointSet.of(pts)
    once = project(p, X)
    assert project(once, X) == once
    assert leq(once, point(p))
    hi = tuple(max(a, b) for a, b in zip(p, q))
    assert leq(project(p, X), project(hi, X))
