"""Lefschetz, Nielsen and Reidemeister data of the iterates f^n.

All numbers come from averaging det(I - A D^n) over the holonomy group.
"""

from __future__ import annotations

from fractions import Fraction
from functools import lru_cache

from .crystal import CrystalGroup, SelfMapData
from .errors import ValidationError
from .exactmath import RatMatrix, det


def _check_level(n: int) -> None:
    if not isinstance(n, int) or n < 1:
        raise ValueError(f"iterate must be a positive integer, got {n!r}")


@lru_cache(maxsize=256)
def linear_power(f: SelfMapData, n: int) -> RatMatrix:
    if n == 1:
        return f.linear
    half = linear_power(f, n // 2)
    sq = half @ half
    return sq @ f.linear if n % 2 else sq


@lru_cache(maxsize=1024)
def determinants(g: CrystalGroup, f: SelfMapData, n: int) -> tuple[Fraction, ...]:
    """det(I - A D^n) for every A in F, indexed like ``g.holonomy``."""
    _check_level(n)
    dn = linear_power(f, n)
    identity = RatMatrix.identity(g.dimension)
    return tuple(det(identity - a @ dn) for a in g.holonomy)


def _as_integer(value: Fraction, what: str) -> int:
    if value.denominator != 1:
        raise ValidationError(f"{what} = {value} is not an integer; the group/map data is inconsistent")
    return int(value)


def lefschetz(g: CrystalGroup, f: SelfMapData, n: int = 1) -> int:
    """L(f^n) = (1/#F) sum_A det(I - A D^n)."""
    return _as_integer(sum(determinants(g, f, n), Fraction(0)) / g.order, f"L(f^{n})")


def nielsen_number(g: CrystalGroup, f: SelfMapData, n: int = 1) -> int:
    """N(f^n) = (1/#F) sum_A |det(I - A D^n)|."""
    return _as_integer(sum((abs(x) for x in determinants(g, f, n)), Fraction(0)) / g.order,
                       f"N(f^{n})")


def reidemeister_finite(g: CrystalGroup, f: SelfMapData, n: int = 1) -> bool:
    """R(f^n) is finite iff no det(I - A D^n) vanishes; then R(f^n) = N(f^n)."""
    return all(x != 0 for x in determinants(g, f, n))


def class_essential(g: CrystalGroup, f: SelfMapData, n: int, a: int) -> bool:
    """Fixed point classes above holonomy element ``a`` are essential iff
    det(I - A D^n) != 0."""
    return determinants(g, f, n)[a] != 0


def class_nielsen(g: CrystalGroup, f: SelfMapData, n: int, a: int) -> int:
    """N_A(f^n) = (#[A]_n / #F) |det(I - A D^n)|."""
    from .periodic import class_of

    members = class_of(g, f, n, a)
    return _as_integer(Fraction(len(members), g.order) * abs(determinants(g, f, n)[a]),
                       f"N_{g.labels[a]}(f^{n})")
