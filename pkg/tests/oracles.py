"""Independent reference computations for the tests.

These deliberately avoid the package's arithmetic kernel: linear algebra
goes through sympy, and the periodic numbers come from closed formulas
rather than from the class recursion.
"""

from fractions import Fraction

import sympy


def sym(matrix):
    """sympy Matrix from a RatMatrix or nested lists."""
    rows = matrix.rows if hasattr(matrix, "rows") and not callable(matrix.rows) else matrix
    return sympy.Matrix([[sympy.Rational(Fraction(x).numerator, Fraction(x).denominator) for x in r]
                         for r in rows])


def det_i_minus(a, d, n):
    """det(I - A D^n) via sympy."""
    a, d = sym(a), sym(d)
    return sympy.Integer(1) * (sympy.eye(a.shape[0]) - a * d ** n).det()


def nielsen_oracle(group, fmap, n):
    """(1/#F) sum |det(I - A D^n)|, evaluated with sympy."""
    total = sum(abs(det_i_minus(a, fmap.linear, n)) for a in group.holonomy)
    value = total / len(group.holonomy)
    assert value == int(value)
    return int(value)


def element(group, label):
    return group.labels.index(label)


def det_term(group, fmap, label, n):
    """|det(I - A D^n)| / #F for the holonomy element named ``label``."""
    a = group.holonomy[element(group, label)]
    value = abs(det_i_minus(a, fmap.linear, n)) / len(group.holonomy)
    return sympy.Rational(value)


def naive_classes(group, fmap, k):
    """~f^k classes for invertible D straight from the definition.

    B ~ A iff B = C A phi^k(C)^-1 for some C, where phi^k(C) = D^k C D^-k is
    computed with sympy matrices and looked up by value.
    """
    d = sym(fmap.linear)
    dk, dk_inv = d ** k, (d ** k).inv()
    mats = [sym(a) for a in group.holonomy]
    index = {tuple(m): i for i, m in enumerate(mats)}
    phi = [index[tuple(dk * m * dk_inv)] for m in mats]
    owner = {}
    classes = []
    for a in range(len(mats)):
        if a in owner:
            continue
        members = {index[tuple(mats[c] * mats[a] * mats[phi[c]].inv())] for c in range(len(mats))}
        cls = tuple(sorted(members))
        for b in cls:
            owner[b] = len(classes)
        classes.append(cls)
    return classes


def moebius_oracle(n):
    return int(sympy.mobius(n))


def divisors_oracle(n):
    return sympy.divisors(n)
