import pytest

from conftest import load
from infranil.nielsen import (class_essential, class_nielsen, determinants, lefschetz, nielsen_number,
                              reidemeister_finite)
from infranil.periodic import equivalence_classes
from oracles import det_i_minus, nielsen_oracle

EXAMPLES = ["klein3", "klein1", "z3", "z6", "torus2", "torus_identity", "klein_circle_singular"]


def test_lefschetz_examples(klein3, torus2, torus_identity):
    assert lefschetz(*klein3, 1) == -2
    assert lefschetz(*torus2, 3) == -7
    assert lefschetz(*torus_identity, 1) == 0


def test_nielsen_examples(klein3, z6, z3):
    assert nielsen_number(*klein3, 1) == 2
    assert nielsen_number(*klein3, 2) == 8
    assert nielsen_number(*z6, 1) == 12
    assert nielsen_number(*z6, 2) == 96
    for n in (1, 3, 5, 7, 9, 11):
        assert nielsen_number(*z3, n) == 0


def test_reidemeister_finiteness(klein3, torus2, z6):
    assert not reidemeister_finite(*klein3, 1)
    assert all(reidemeister_finite(*torus2, n) for n in range(1, 8))
    assert not reidemeister_finite(*z6, 1)


def test_class_nielsen_examples(klein3, z6, z3):
    g, f = klein3
    assert class_essential(g, f, 1, 0) and class_nielsen(g, f, 1, 0) == 2
    g, f = z6
    a4 = g.labels.index("A^4")
    assert class_essential(g, f, 1, a4) and class_nielsen(g, f, 1, a4) == 4
    g, f = z3
    for n in (1, 3, 5):
        assert not class_essential(g, f, n, 0)
        assert class_nielsen(g, f, n, 0) == 0


def test_level_must_be_positive(klein3):
    with pytest.raises(ValueError):
        nielsen_number(*klein3, 0)


@pytest.mark.parametrize("name", EXAMPLES)
def test_against_sympy_oracle(name):
    g, f = load(name)
    for n in range(1, 7):
        dets = determinants(g, f, n)
        for a, value in zip(g.holonomy, dets):
            assert value == det_i_minus(a, f.linear, n)
        assert nielsen_number(g, f, n) == nielsen_oracle(g, f, n)


@pytest.mark.parametrize("name", EXAMPLES)
def test_class_counts_partition_n(name):
    g, f = load(name)
    for n in range(1, 9):
        classes = equivalence_classes(g, f, n)
        assert sum(c.n_a for c in classes) == nielsen_number(g, f, n)
        assert abs(lefschetz(g, f, n)) <= nielsen_number(g, f, n)
        if reidemeister_finite(g, f, n):
            assert all(c.essential for c in classes)
        for c in classes:
            assert class_nielsen(g, f, n, c.representative) == c.n_a
