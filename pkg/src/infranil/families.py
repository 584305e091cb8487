"""Random valid inputs for property testing.

Each generator returns a JSON-style document (as accepted by
:func:`crystal.parse_input`).  Candidates are drawn from families whose
compatibility conditions are known and then checked with the full
validator, so a returned document always describes a genuine map.
"""

from __future__ import annotations

import random
from fractions import Fraction
from typing import Callable

from .crystal import parse_input, validate_map_induces
from .errors import ValidationError
from .exactmath import RatMatrix

KLEIN_A = [[1, 0], [0, -1]]
Z3_A = [[-1, 1, 0], [-1, 0, 0], [0, 0, 1]]
Z6_A = [[1, -1, 0], [1, 0, 0], [0, 0, 1]]
SWAP = [[0, 1], [1, 0]]


def _s(x) -> str:
    return str(Fraction(x))


def _mat(rows) -> list:
    return [[_s(x) for x in row] for row in rows]


def _vec(values) -> list:
    return [_s(x) for x in values]


def _matmul(a, b):
    return [[sum(a[i][k] * b[k][j] for k in range(len(b))) for j in range(len(b[0]))]
            for i in range(len(a))]


def _det(rows) -> Fraction:
    return RatMatrix(rows).det()


def _small_rational(rng: random.Random) -> Fraction:
    return Fraction(rng.randint(-3, 3), rng.choice([1, 2, 3, 4]))


def _lattice_images(d_rows) -> list:
    """f_* on the standard lattice basis: e_i -> (D e_i, Id)."""
    m = len(d_rows)
    return [{"translation": _vec([d_rows[r][i] for r in range(m)]), "linear": "identity"}
            for i in range(m)]


def torus_document(rng: random.Random, max_dim: int = 3, allow_singular: bool = True) -> dict:
    m = rng.randint(1, max_dim)
    while True:
        d = [[rng.randint(-3, 3) for _ in range(m)] for _ in range(m)]
        if allow_singular or _det(d) != 0:
            break
    doc = {
        "dimension": m,
        "map": {"translation": _vec(_small_rational(rng) for _ in range(m)), "linear": _mat(d)},
    }
    if _det(d) == 0:
        doc["fstar_lattice_images"] = _lattice_images(d)
    return doc


def klein_document(rng: random.Random, allow_singular: bool = True) -> dict:
    """D = diag(k, l) with k odd and d = (d1, d2) where (l - 1)/2 + 2 d2 is an integer."""
    k = rng.choice([-5, -3, -1, 1, 3, 5])
    l = rng.choice([-3, -2, -1, 0, 1, 2, 3] if allow_singular else [-3, -2, -1, 1, 2, 3])
    d2 = (Fraction(1 - l, 4) + Fraction(rng.randint(-2, 2), 2))
    d1 = rng.choice([Fraction(0), Fraction(1, 3), Fraction(1, 2), Fraction(-1, 4)])
    doc = {
        "dimension": 2,
        "holonomy_lifts": [{"name": "A", "translation": ["1/2", "1/2"], "linear": _mat(KLEIN_A)}],
        "map": {"translation": _vec([d1, d2]), "linear": _mat([[k, 0], [0, l]])},
    }
    if l == 0:
        doc["fstar_lattice_images"] = _lattice_images([[k, 0], [0, 0]])
    return doc


def _rotation_family(rng: random.Random, a3, order: int, twist, twist_residue: int) -> dict:
    a2 = [row[:2] for row in a3[:2]]
    while True:
        x, y = rng.randint(-3, 3), rng.randint(-3, 3)
        m = [[x * (i == j) + y * a2[i][j] for j in range(2)] for i in range(2)]
        twisted = rng.random() < 0.5
        if twisted:
            m = _matmul(twist, m)
        if _det(m) != 0:
            break
    residue = twist_residue if twisted else 1
    c = residue + order * rng.randint(-1, 1)
    d = [[m[0][0], m[0][1], 0], [m[1][0], m[1][1], 0], [0, 0, c]]
    return {
        "dimension": 3,
        "holonomy_lifts": [{"name": "A", "translation": ["0", "0", _s(Fraction(1, order))],
                            "linear": _mat(a3)}],
        "map": {"translation": _vec([0, 0, _small_rational(rng)]), "linear": _mat(d)},
    }


def z3_document(rng: random.Random) -> dict:
    """D = block(M, c): M commuting with A and c = 1 mod 3, or M = S(xI + yA) and c = 2 mod 3."""
    return _rotation_family(rng, Z3_A, 3, SWAP, 2)


def z6_document(rng: random.Random) -> dict:
    """D = block(M, c): M commuting with A and c = 1 mod 6, or M = R(xI + yA) and c = 5 mod 6."""
    return _rotation_family(rng, Z6_A, 6, SWAP, 5)


FAMILIES: dict[str, Callable] = {
    "torus": torus_document,
    "klein": klein_document,
    "z3": z3_document,
    "z6": z6_document,
}


def random_valid_input(rng: random.Random, family: str = None, attempts: int = 200):
    """(document, group, map) for a random member of a family, fully validated."""
    names = sorted(FAMILIES)
    for _ in range(attempts):
        name = family or rng.choice(names)
        doc = FAMILIES[name](rng)
        try:
            g, f = parse_input(doc)
        except ValidationError:
            continue
        if validate_map_induces(g, f).ok:
            return doc, g, f
    raise RuntimeError(f"no valid input found in {attempts} attempts")
