"""Brute-force fixed point counts, independent of the averaging formulas.

On a torus the fixed points of x -> E x + e are the solutions of a linear
congruence, counted through the Smith normal form.  On a flat manifold every
fixed point lifts to a solution of gamma (e,E) x = x for some gamma in Gamma,
so solving those affine systems over a window of lattice translations and
identifying Gamma-translates enumerates Fix(f^k).
"""

from __future__ import annotations

import itertools
import math
from dataclasses import dataclass, field
from fractions import Fraction
from typing import Optional, Sequence, Union

from .crystal import AffineElement, CrystalGroup, SelfMapData
from .exactmath import DomainError, RatMatrix, smith_normal_form, solve, to_rational
from .periodic import class_of

Count = Union[int, float]


def _affine_power(d: Sequence, mat: RatMatrix, k: int) -> tuple[tuple, RatMatrix]:
    return tuple((AffineElement(tuple(d), mat) ** k).translation), mat ** k


def torus_fix_count(matrix, translation, k: int = 1) -> Count:
    """#Fix of the k-th iterate of x -> D x + d on R^m / Z^m; ``math.inf`` if infinite."""
    if k < 1:
        raise ValueError("k must be positive")
    mat = matrix if isinstance(matrix, RatMatrix) else RatMatrix(matrix)
    if not mat.is_integral():
        raise DomainError("torus maps need an integer linear part")
    d = tuple(to_rational(x) for x in translation)
    e, big_e = _affine_power(d, mat, k)
    m = mat.nrows
    lhs = (big_e - RatMatrix.identity(m)).int_rows()
    u, s, _ = smith_normal_form(lhs)
    # (E - I) x = -e mod Z^m becomes S y = -U e mod Z^m with y = V^-1 x
    rhs = [-sum(u[i][j] * e[j] for j in range(m)) for i in range(m)]
    count = 1
    free = False
    for i in range(m):
        if s[i][i]:
            count *= abs(s[i][i])
        elif Fraction(rhs[i]).denominator != 1:
            return 0
        else:
            free = True
    return math.inf if free else count


@dataclass(frozen=True)
class FixedPoint:
    point: tuple  # canonical representative of the Gamma-orbit
    lift: tuple  # the solution actually found
    gamma: AffineElement  # gamma with gamma (e,E)(lift) = lift
    holonomy: int  # index of the holonomy part of gamma
    class_representative: int  # smallest member of its ~f^k class


@dataclass
class FixEnumeration:
    k: int
    window: Optional[int]
    points: list = field(default_factory=list)
    infinite_classes: list = field(default_factory=list)  # class representatives

    @property
    def count(self) -> int:
        return len(self.points)


class _Canonicalizer:
    """Smallest lattice-reduced image of a point under the holonomy lifts.

    Works in lattice coordinates, where each lift acts by an integer matrix
    plus an offset and reduction is taking fractional parts.
    """

    def __init__(self, g: CrystalGroup):
        b, b_inv = g.lattice.basis, g.lattice.basis_inverse
        self.basis = b
        self.basis_inv = b_inv
        self.actions = [((b_inv @ a @ b).rows, b_inv.apply(t)) for a, t in zip(g.holonomy, g.lifts)]

    def __call__(self, x: tuple) -> tuple:
        y = self.basis_inv.apply(x)
        best = None
        for rows, off in self.actions:
            img = tuple(_frac(sum(r * c for r, c in zip(row, y)) + o) for row, o in zip(rows, off))
            if best is None or img < best:
                best = img
        return best

    def to_point(self, coords: tuple) -> tuple:
        return self.basis.apply(coords)


def _frac(q: Fraction) -> Fraction:
    return q - (q.numerator // q.denominator)


def _cell_solutions(mat: list, rhs: Sequence) -> Union[list, None]:
    """All y in [0,1)^m with mat y = rhs mod Z^m; None if infinitely many.

    Through the Smith normal form U mat V = S the congruence decouples into
    s_i z_i = (U rhs)_i mod 1 with z = V^-1 y.
    """
    m = len(mat)
    u, s, v = smith_normal_form(mat)
    b = [sum(u[i][j] * rhs[j] for j in range(m)) for i in range(m)]
    choices = []
    free = False
    for i in range(m):
        if s[i][i]:
            si = abs(s[i][i])
            sign = 1 if s[i][i] > 0 else -1
            choices.append([sign * (b[i] + j) / si for j in range(si)])
        elif Fraction(b[i]).denominator != 1:
            return []
        else:
            free = True
    if free:
        return None
    out = []
    for z in itertools.product(*choices):
        y = [sum(v[i][j] * z[j] for j in range(m)) for i in range(m)]
        out.append(tuple(Fraction(t) - math.floor(t) for t in y))
    return out


def _cell_solutions_box(mat: RatMatrix, rhs: Sequence) -> Union[list, None]:
    """Same as :func:`_cell_solutions` for a rational matrix.

    l = mat y - rhs ranges over a box when y runs over [0,1)^m; every integer
    l in it is tried.
    """
    m = mat.nrows
    ranges = []
    for i in range(m):
        lo = sum(min(mat[i, j], 0) for j in range(m)) - rhs[i]
        hi = sum(max(mat[i, j], 0) for j in range(m)) - rhs[i]
        ranges.append(range(math.floor(lo), math.ceil(hi) + 1))
    if not mat.is_invertible():
        for l in itertools.product(*ranges):
            if solve(mat, [x + y for x, y in zip(l, rhs)]) is not None:
                return None
        return []
    inv = mat.inverse()
    out = []
    for l in itertools.product(*ranges):
        y = inv.apply([x + y for x, y in zip(l, rhs)])
        if all(0 <= t < 1 for t in y):
            out.append(y)
    return out


def flat_fix_enumerate(g: CrystalGroup, f: SelfMapData, k: int = 1,
                       window: Optional[int] = 3) -> FixEnumeration:
    """Enumerate Fix(f^k) for the affine map by solving gamma (e,E) x = x.

    With an integer window, gamma runs over (t_A + l, A) with l having
    lattice coordinates in [-window, window]; each nonsingular system is
    solved and the solutions are identified modulo Gamma.  Cosets where
    I - A E is singular and some system is consistent carry infinitely many
    fixed points; they are reported by class, not enumerated.

    ``window=None`` instead solves, for each A, the congruence
    (I - A E) x = A e + t_A mod L over one unit cell, which reaches every
    fixed point without any search bound.
    """
    if k < 1:
        raise ValueError("k must be positive")
    if window is not None and (not isinstance(window, int) or window < 0):
        raise ValueError(f"window must be a non-negative integer or None, got {window!r}")
    e, big_e = _affine_power(f.translation, f.linear, k)
    m = g.dimension
    identity = RatMatrix.identity(m)
    basis, basis_inv = g.lattice.basis, g.lattice.basis_inverse
    result = FixEnumeration(k=k, window=window)
    seen = set()
    infinite = set()

    reduced_seen = set()
    canonical = _Canonicalizer(g)

    def record(idx, a, rep, x, base):
        reduced = g.lattice.reduce(x)
        if reduced in reduced_seen:
            return
        reduced_seen.add(reduced)
        key = canonical(x)
        if key in seen:
            return
        seen.add(key)
        key = canonical.to_point(key)
        lhs_x = (identity - a @ big_e).apply(x)
        l = tuple(p - q for p, q in zip(lhs_x, base))
        gamma = AffineElement(tuple(g.lifts[idx][i] + l[i] for i in range(m)), a)
        result.points.append(FixedPoint(point=key, lift=x, gamma=gamma,
                                        holonomy=idx, class_representative=rep))

    for idx, a in enumerate(g.holonomy):
        lhs = identity - a @ big_e
        base = tuple(x + y for x, y in zip(a.apply(e), g.lifts[idx]))
        rep = class_of(g, f, k, idx)[0]
        if window is None:
            mat = basis_inv @ lhs @ basis
            c = basis_inv.apply(base)
            if mat.is_integral():
                ys = _cell_solutions(mat.int_rows(), c)
            else:
                ys = _cell_solutions_box(mat, c)
            if ys is None:
                infinite.add(rep)
                continue
            for y in ys:
                record(idx, a, rep, basis.apply(y), base)
            continue
        singular = not lhs.is_invertible()
        inverse = None if singular else lhs.inverse()
        for coords in itertools.product(range(-window, window + 1), repeat=m):
            rhs = tuple(x + y for x, y in zip(base, basis.apply(coords)))
            if singular:
                if rep not in infinite and solve(lhs, rhs) is not None:
                    infinite.add(rep)
                continue
            record(idx, a, rep, inverse.apply(rhs), base)
    result.points.sort(key=lambda p: p.point)
    result.infinite_classes = sorted(infinite)
    return result
