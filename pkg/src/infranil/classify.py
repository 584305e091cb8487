"""Map classification: semi-hyperbolicity, weak Jiang, NF = N profiles, Wecken dichotomy."""

from __future__ import annotations

from dataclasses import dataclass
from typing import Optional

from .crystal import CrystalGroup, SelfMapData
from .errors import StructuralInvariantError
from .exactmath import Polynomial, charpoly, charpoly_rational, cyclotomic, orders_with_small_totient
from .nielsen import determinants, nielsen_number
from .periodic import nf


@dataclass(frozen=True)
class SemiHyperbolicity:
    result: bool
    charpoly: Polynomial
    witness: Optional[Polynomial] = None
    order: Optional[int] = None

    def __bool__(self) -> bool:
        return self.result


def linear_charpoly(f: SelfMapData, group: Optional[CrystalGroup] = None) -> Polynomial:
    """Characteristic polynomial of D.

    In lattice coordinates D is an integer matrix for every map compatible
    with the group, so the integer routine normally applies; otherwise fall
    back to rational arithmetic.  Conjugation does not change the result.
    """
    d = f.linear
    if group is not None:
        d = group.lattice.basis_inverse @ d @ group.lattice.basis
    if d.is_integral():
        return charpoly(d)
    return charpoly_rational(d)


def is_semi_hyperbolic(f: SelfMapData, group: Optional[CrystalGroup] = None) -> SemiHyperbolicity:
    """True iff D has no eigenvalue that is a root of unity.

    Cyclotomic polynomials are irreducible, so Phi_k shares a factor with the
    characteristic polynomial exactly when it divides it.  A root of unity
    of order k has degree phi(k), which is at most the dimension.
    """
    p = linear_charpoly(f, group)
    for k in orders_with_small_totient(p.degree):
        phi_k = cyclotomic(k)
        if (p % phi_k).is_zero:
            return SemiHyperbolicity(False, p, phi_k, k)
    return SemiHyperbolicity(True, p)


def is_weakly_jiang(g: CrystalGroup, f: SelfMapData, n: int = 1) -> bool:
    """N(f^n) = 0 or N(f^n) = R(f^n): the determinants vanish all together or not at all."""
    zero = [x == 0 for x in determinants(g, f, n)]
    return all(zero) or not any(zero)


@dataclass(frozen=True)
class NFProfile:
    verdict: str  # "always-equal" | "differs-at" | "guaranteed-to-differ-beyond-bound"
    n0: Optional[int]
    reason: str
    rows: tuple  # (n, N(f^n), NF_n)


def nf_equals_n_profile(g: CrystalGroup, f: SelfMapData, n_max: int = 12) -> NFProfile:
    """Compare NF_n(f) with N(f^n) for n <= n_max.

    NF_n = N(f^n) for every n exactly when f is semi-hyperbolic or all
    N(f^n) vanish; otherwise some level must differ.
    """
    if n_max < 1:
        raise ValueError("n_max must be positive")
    rows = tuple((n, nielsen_number(g, f, n), nf(g, f, n)) for n in range(1, n_max + 1))
    semi = is_semi_hyperbolic(f, g)
    all_zero = all(row[1] == 0 for row in rows)
    if semi or all_zero:
        for n, big_n, big_nf in rows:
            if big_n != big_nf:
                raise StructuralInvariantError(
                    f"predicted NF_n = N(f^n) but NF_{n} = {big_nf} != N(f^{n}) = {big_n}")
        reason = "semi-hyperbolic" if semi else f"N(f^n) = 0 for all n <= {n_max}"
        return NFProfile("always-equal", None, reason, rows)
    for n, big_n, big_nf in rows:
        if big_nf > big_n:
            return NFProfile("differs-at", n, f"NF_{n} = {big_nf} > N(f^{n}) = {big_n}", rows)
    return NFProfile("guaranteed-to-differ-beyond-bound", None,
                     f"not semi-hyperbolic (root of unity of order {semi.order}) with some "
                     f"N(f^n) != 0, but NF_n = N(f^n) for all n <= {n_max}", rows)


def wecken_prediction(g: CrystalGroup, f: SelfMapData, n_max: int = 12) -> str:
    """Dichotomy for affine maps with some nonzero N(f^k).

    Such a map is Wecken at every level iff it is semi-hyperbolic.  Nonzero
    N(f^k) is searched for k <= n_max.
    """
    if all(nielsen_number(g, f, k) == 0 for k in range(1, n_max + 1)):
        return "all-nielsen-zero"
    if is_semi_hyperbolic(f, g):
        return "wecken-at-every-level"
    return "not-wecken-somewhere"
