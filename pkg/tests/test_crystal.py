import copy
import json
from fractions import Fraction

import pytest

from conftest import DATA, load
from infranil.crystal import (AffineElement, Lattice, SelfMapData, build_group, fsharp, fstar,
                              induced_phi_power, level_data, parse_input, validate_map_induces)
from infranil.errors import FsharpDataRequired, StructuralInvariantError, ValidationError
from infranil.exactmath import RatMatrix
from infranil.periodic import PeriodicEngine


def document(name):
    return json.loads((DATA / f"{name}.json").read_text())


def klein_with_map(linear, translation):
    doc = document("klein3")
    doc["map"] = {"translation": translation, "linear": linear}
    return parse_input(doc)


# -- affine elements ------------------------------------------------------------

def test_affine_composition_and_inverse():
    a = AffineElement((Fraction(1, 2), Fraction(1, 2)), RatMatrix([[1, 0], [0, -1]]))
    b = AffineElement.translation_by((0, 1))
    assert (a * b).translation == (Fraction(1, 2), Fraction(-1, 2))
    assert (a * a.inverse()).is_identity()
    assert a ** 2 == AffineElement((1, 0), RatMatrix.identity(2))
    assert a ** -1 == a.inverse()
    assert (a * b) * a == a * (b * a)
    assert a.apply((0, 0)) == (Fraction(1, 2), Fraction(1, 2))


def test_lattice_basics():
    lat = Lattice([(2, 0), (0, 1), (2, 1)])
    assert lat.contains((4, 3)) and not lat.contains((1, 0))
    assert lat.reduce((Fraction(5, 2), Fraction(-1, 3))) == (Fraction(1, 2), Fraction(2, 3))
    coeffs = lat.generator_coefficients((4, 3))
    assert coeffs is not None
    assert tuple(sum(c * g[i] for c, g in zip(coeffs, lat.generators)) for i in range(2)) == (4, 3)
    assert lat.relations  # three generators in rank two
    with pytest.raises(ValidationError):
        Lattice([(1, 0), (2, 0)])


# -- parsing the worked examples -----------------------------------------------------

def test_klein_parses_with_identity_phi(klein3):
    g, f = klein3
    assert g.order == 2
    assert g.holonomy[1] == RatMatrix([[1, 0], [0, -1]])
    assert g.labels == ("Id", "A")
    assert f.phi == (0, 1)
    assert f.fsharp_id == frozenset({0})


def test_torus_trivial_holonomy(torus2):
    g, f = torus2
    assert g.order == 1 and f.phi == (0,)


def test_z6_parses_with_identity_phi(z6):
    g, f = z6
    assert g.order == 6
    assert g.labels == ("Id", "A", "A^2", "A^3", "A^4", "A^5")
    assert f.phi == tuple(range(6))


def test_z3_phi_squares(z3):
    g, f = z3
    assert f.phi == (0, 2, 1)
    assert induced_phi_power(f, 2) == (0, 1, 2)
    assert induced_phi_power(f, 1) == f.phi


def test_z6_phi_powers_identity(z6):
    g, f = z6
    for k in range(1, 7):
        assert induced_phi_power(f, k) == tuple(range(6))


@pytest.mark.parametrize("name", ["klein3", "klein1", "z3", "z6", "torus2", "torus_identity",
                                  "klein_circle_singular"])
def test_group_axioms_and_phi_endomorphism(name):
    g, f = load(name)
    n = g.order
    mats = g.holonomy
    assert mats[0] == RatMatrix.identity(g.dimension)
    for a in range(n):
        assert g.mult[a][g.inv[a]] == 0 and g.mult[g.inv[a]][a] == 0
        for b in range(n):
            assert mats[g.mult[a][b]] == mats[a] @ mats[b]
            assert f.phi[g.mult[a][b]] == g.mult[f.phi[a]][f.phi[b]]
        assert g.lattice.is_invariant_under(mats[a])
    if f.invertible:
        for a in range(n):
            assert mats[f.phi[a]] @ f.linear == f.linear @ mats[a]


@pytest.mark.parametrize("name", ["klein3", "klein1", "z3", "z6", "torus2", "torus_identity",
                                  "klein_circle_singular"])
def test_examples_validate(name):
    g, f = load(name)
    report = validate_map_induces(g, f)
    assert report.ok, report.violations
    assert report.checks > 0


# -- validation failures --------------------------------------------------------------

def test_klein_diag_2_1_fails_with_residual():
    g, f = klein_with_map([["2", "0"], ["0", "1"]], ["0", "0"])
    report = validate_map_induces(g, f)
    assert not report.ok
    (v,) = report.violations
    assert v.generator == "A"
    assert v.residual == (Fraction(1, 2), Fraction(0))


def test_klein_diag_3_1_zero_translation_is_valid():
    # conjugating the glide reflection gives residual (1, 0), a lattice vector
    g, f = klein_with_map([["3", "0"], ["0", "1"]], ["0", "0"])
    assert validate_map_induces(g, f).ok


@pytest.mark.parametrize("linear,translation", [
    ([["2", "1"], ["-1", "3"]], ["0", "0"]),
    ([["0", "1"], ["1", "0"]], ["1", "-2"]),
    ([["-3", "0"], ["2", "2"]], ["5", "0"]),
])
def test_torus_integer_maps_validate(linear, translation):
    g, f = parse_input({"dimension": 2, "map": {"translation": translation, "linear": linear}})
    assert validate_map_induces(g, f).ok


def test_map_incompatible_with_group():
    with pytest.raises(ValidationError, match="map incompatible with group"):
        klein_with_map([["0", "1"], ["1", "0"]], ["0", "0"])


def test_singular_without_fstar_images():
    doc = document("klein_circle_singular")
    del doc["fstar_lattice_images"]
    with pytest.raises(FsharpDataRequired, match="f_# data required"):
        parse_input(doc)


def test_holonomy_bound():
    doc = document("z6")
    with pytest.raises(ValidationError, match="holonomy not finite within bound"):
        parse_input(doc, holonomy_bound=4)
    doc = {"dimension": 2, "holonomy_lifts": [{"linear": [["1", "1"], ["0", "1"]]}],
           "map": {"linear": "identity"}}
    with pytest.raises(ValidationError, match="holonomy not finite"):
        parse_input(doc, holonomy_bound=50)


@pytest.mark.parametrize("mutate,message", [
    (lambda d: d["map"].__setitem__("translation", ["1/0", "0"]), "malformed rational"),
    (lambda d: d["map"].__setitem__("linear", [["1"]]), "matrix"),
    (lambda d: d.__setitem__("dimension", 0), "dimension"),
    (lambda d: d.pop("map"), "missing map"),
    (lambda d: d["holonomy_lifts"][0].__setitem__("translation", ["0", "0"]), "torsion"),
    (lambda d: d["holonomy_lifts"][0].__setitem__("linear", [["2", "0"], ["0", "1"]]),
     "holonomy not finite"),
    (lambda d: d.__setitem__("lattice_generators", [{"translation": ["1", "0"]}]), "rank"),
])
def test_malformed_documents(mutate, message):
    doc = copy.deepcopy(document("klein3"))
    mutate(doc)
    with pytest.raises(ValidationError, match=message):
        parse_input(doc)


def test_invalid_json_text():
    with pytest.raises(ValidationError, match="invalid JSON"):
        parse_input("{not json")


def test_inconsistent_lifts():
    # A = -I of order 2 with a lift whose square is a non-lattice translation
    lift = AffineElement((Fraction(1, 3), 0), RatMatrix([[1, 0], [0, -1]]))
    with pytest.raises(ValidationError, match="inconsistent"):
        build_group(2, [lift])


def test_torsion_detected_exactly():
    # (1/2,0) lift of diag(1,-1) squares to (1,0): torsion-free (glide reflection)
    build_group(2, [AffineElement((Fraction(1, 2), 0), RatMatrix([[1, 0], [0, -1]]))])
    # (0,1/2) lift of the same matrix is a reflection after translating: torsion
    with pytest.raises(ValidationError, match="torsion"):
        build_group(2, [AffineElement((0, Fraction(1, 2)), RatMatrix([[1, 0], [0, -1]]))])


# -- f_*, f_# ------------------------------------------------------------------------------

def test_fsharp_invertible_is_singleton(z3, klein3):
    for g, f in (z3, klein3):
        for c in range(g.order):
            assert fsharp(g, f, c) == frozenset({f.phi[c]})
        assert fsharp(g, f, 0) == frozenset({0})


def test_singular_example_fsharp(singular):
    g, f = singular
    assert not f.invertible
    assert f.fsharp_id == frozenset({0, 1})
    assert f.phi == (0, 0)
    assert fsharp(g, f, 1) == frozenset({0, 1})
    for v, img in zip(g.lattice.generators, f.lattice_images):
        t = AffineElement.translation_by(v)
        assert fstar(g, f, t) == img
        assert img * f.lift == f.lift * t


def test_singular_level_data_is_level_one_data_iterated(singular):
    g, f = singular
    phi_2, fs_2 = level_data(g, f, 2)
    assert phi_2 == (0, 0)
    assert fs_2 == frozenset({0, 1})


def test_synthetic_z6_fsharp_subgroup(z6):
    """A singular-mode map on the Z6 group whose f_*(Id) set is generated by A^3.

    No genuine map has this data; the test only exercises the coset formula
    and shows the class engine refuses it.
    """
    g, f = z6
    a3 = g.labels.index("A^3")
    syn = SelfMapData(lift=f.lift, phi=f.phi, fsharp_id=g.subgroup([a3]), invertible=False)
    assert syn.fsharp_id == frozenset({0, a3})
    for c in range(6):
        assert fsharp(g, syn, c) == frozenset({c, g.mult[c][a3]})
    engine = PeriodicEngine(g, syn)
    engine._level_data[1] = (syn.phi, syn.fsharp_id)
    classes, _ = engine.partition(1)
    assert classes == ((0, 3), (1, 4), (2, 5))
    # det(I - A^i D) differs inside those pairs, which no valid map allows
    with pytest.raises(StructuralInvariantError, match="not constant"):
        engine._bare_classes(1)


def test_explicit_holonomy_images_are_checked(singular):
    doc = document("klein_circle_singular")
    doc["fstar_holonomy_images"] = [{"translation": ["0", "0", "0"], "linear": "identity"}]
    g, f = parse_input(doc)
    report = validate_map_induces(g, f)
    assert not report.ok
