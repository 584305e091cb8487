import math

import pytest

from conftest import load
from infranil.nielsen import nielsen_number
from infranil.oracle import flat_fix_enumerate, torus_fix_count
from infranil.periodic import equivalence_classes
from infranil.exactmath import DomainError

EXAMPLES = ["klein3", "klein1", "z3", "z6", "torus2", "torus_identity", "klein_circle_singular"]


def test_torus_fix_count_examples():
    assert torus_fix_count([[2]], [0], 3) == 7
    assert torus_fix_count([[1]], [0], 1) == math.inf
    assert torus_fix_count([[1]], ["1/2"], 1) == 0
    assert torus_fix_count([[2, 1], [1, 1]], [0, 0], 1) == 1


def test_torus_fix_count_needs_integer_matrix():
    with pytest.raises(DomainError):
        torus_fix_count([["1/2"]], [0], 1)


def test_torus_fix_count_partial_translation():
    # x -> (x + 1/2, 2y): no fixed points; x -> (x, 2y) has a circle of them
    assert torus_fix_count([[1, 0], [0, 2]], ["1/2", 0], 1) == 0
    assert torus_fix_count([[1, 0], [0, 2]], [0, 0], 1) == math.inf


def test_klein_enumeration(klein3):
    g, f = klein3
    r = flat_fix_enumerate(g, f, 1, 3)
    assert r.count == 2
    assert {p.class_representative for p in r.points} == {0}
    assert {p.holonomy for p in r.points} == {0}
    assert r.infinite_classes == [1]


def test_torus_enumeration(torus2, torus_identity):
    assert flat_fix_enumerate(*torus2, 2).count == 3
    r = flat_fix_enumerate(*torus_identity, 1)
    assert r.count == 0 and r.infinite_classes == [0]


def test_window_validation(klein3):
    with pytest.raises(ValueError):
        flat_fix_enumerate(*klein3, 1, -1)
    with pytest.raises(ValueError):
        flat_fix_enumerate(*klein3, 0)


@pytest.mark.parametrize("name", EXAMPLES)
def test_points_satisfy_their_equation(name):
    g, f = load(name)
    for k in (1, 2):
        power = f.lift ** k
        for window in (2, None):
            for p in flat_fix_enumerate(g, f, k, window).points:
                assert (p.gamma * power).apply(p.lift) == p.lift
                assert g.contains(p.gamma)


@pytest.mark.parametrize("name", EXAMPLES)
def test_exhaustive_enumeration_matches_nielsen(name):
    """Affine maps carry one fixed point per essential class and none or a continuum otherwise."""
    g, f = load(name)
    for k in (1, 2, 3):
        r = flat_fix_enumerate(g, f, k, None)
        assert r.count == nielsen_number(g, f, k)
        per_class = {}
        for p in r.points:
            per_class[p.class_representative] = per_class.get(p.class_representative, 0) + 1
        for c in equivalence_classes(g, f, k):
            if c.essential:
                assert per_class.get(c.representative, 0) == c.n_a
                assert c.representative not in r.infinite_classes
            else:
                assert c.representative not in per_class


@pytest.mark.parametrize("name", ["klein3", "klein1", "z3", "z6", "torus2"])
def test_window_stability(name):
    g, f = load(name)
    small = flat_fix_enumerate(g, f, 1, 3)
    large = flat_fix_enumerate(g, f, 1, 5)
    assert [p.point for p in small.points] == [p.point for p in large.points]
    assert small.infinite_classes == large.infinite_classes


def test_torus_oracle_agrees_with_enumeration(torus2):
    g, f = torus2
    for k in range(1, 6):
        assert torus_fix_count(f.linear, f.translation, k) == flat_fix_enumerate(g, f, k, None).count
