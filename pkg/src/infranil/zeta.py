"""Truncated Nielsen and minimal dynamical zeta functions, with rationality probing."""

from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction
from typing import Optional

from .crystal import CrystalGroup, SelfMapData
from .exactmath import (DomainError, Polynomial, RatMatrix, RatSeries, render_polynomial,
                        series_exp_weighted, series_from_rational, solve)
from .nielsen import nielsen_number
from .periodic import nf


def nielsen_zeta(g: CrystalGroup, f: SelfMapData, order: int) -> RatSeries:
    """exp(sum_k N(f^k) z^k / k) up to z^order."""
    if order < 1:
        raise DomainError("order must be at least 1")
    return series_exp_weighted([nielsen_number(g, f, k) for k in range(1, order + 1)], order)


def minimal_zeta(g: CrystalGroup, f: SelfMapData, order: int) -> RatSeries:
    """exp(sum_k NF_k(f) z^k / k) up to z^order."""
    if order < 1:
        raise DomainError("order must be at least 1")
    return series_exp_weighted([nf(g, f, k) for k in range(1, order + 1)], order)


@dataclass(frozen=True)
class RationalForm:
    numerator: Polynomial
    denominator: Polynomial
    order: int  # re-expansion checked through z^order

    def __str__(self) -> str:
        num = render_polynomial(self.numerator, "z", ascending=True)
        den = render_polynomial(self.denominator, "z", ascending=True)
        if " " in num:
            num = f"({num})"
        if " " in den:
            den = f"({den})"
        return f"{num}/{den}, consistent to order {self.order}"


def _fit(c: tuple, p: int, q: int) -> Optional[tuple[Polynomial, Polynomial]]:
    """Numerator of degree <= p and denominator 1 + b_1 z + ... + b_q z^q.

    Coefficients z^{p+1} .. z^{p+q} of den * series must vanish, which is a
    q x q Hankel-type system for b.
    """
    def coef(n):
        return c[n] if 0 <= n < len(c) else Fraction(0)

    if p + q >= len(c):
        return None
    if q:
        rows = [[coef(n - j) for j in range(1, q + 1)] for n in range(p + 1, p + q + 1)]
        rhs = [-coef(n) for n in range(p + 1, p + q + 1)]
        b = solve(RatMatrix(rows), rhs)
        if b is None:
            return None
        den = (Fraction(1),) + tuple(b)
    else:
        den = (Fraction(1),)
    num = tuple(sum((den[j] * coef(n - j) for j in range(min(n, q) + 1)), Fraction(0))
                for n in range(p + 1))
    return Polynomial(num), Polynomial(den)


def probe_rationality(s: RatSeries, max_degree: int) -> Optional[RationalForm]:
    """Smallest P/Q with deg P, deg Q <= max_degree matching every coefficient of s.

    A hit is only evidence: it matches the series through its truncation order.
    """
    if max_degree < 0:
        raise DomainError("max_degree must be non-negative")
    if s.order < 2 * max_degree + 1:
        raise DomainError(f"series of order {s.order} cannot decide degree {max_degree}; "
                          f"need order >= {2 * max_degree + 1}")
    c = s.coefficients
    for total in range(2 * max_degree + 1):
        for q in range(min(total, max_degree) + 1):
            p = total - q
            if p > max_degree:
                continue
            fit = _fit(c, p, q)
            if fit is None:
                continue
            num, den = fit
            if series_from_rational(num, den, s.order).coefficients == c:
                return RationalForm(num, den, s.order)
    return None
