"""Exact rational and integer kernel.

Everything here works on :class:`fractions.Fraction` and Python ints, so no
value ever passes through floating point.  Matrices and polynomials are
immutable; every operation returns a new object.
"""

from __future__ import annotations

import math
from dataclasses import dataclass
from fractions import Fraction
from functools import lru_cache
from typing import Iterable, Sequence, Union

Rational = Fraction
Scalar = Union[int, Fraction]


class DimensionError(ValueError):
    """Operand shapes do not fit the operation."""


class DomainError(ValueError):
    """Argument outside the domain of the operation."""


def to_rational(value) -> Fraction:
    """Parse an int, Fraction or a string such as ``"-3/4"`` into a Fraction."""
    if isinstance(value, bool):
        raise DomainError(f"not a rational number: {value!r}")
    if isinstance(value, Fraction):
        return value
    if isinstance(value, int):
        return Fraction(value)
    if isinstance(value, str):
        text = value.strip()
        try:
            if "/" in text:
                num, den = text.split("/")
                q = Fraction(int(num), int(den))
            else:
                q = Fraction(int(text))
        except (ValueError, ZeroDivisionError):
            raise DomainError(f"malformed rational: {value!r}") from None
        return q
    raise DomainError(f"not a rational number: {value!r}")


def format_rational(q: Scalar) -> str:
    q = Fraction(q)
    return str(q.numerator) if q.denominator == 1 else f"{q.numerator}/{q.denominator}"


# ---------------------------------------------------------------------------
# matrices


class RatMatrix:
    """Dense immutable matrix of Fractions, stored row-major."""

    __slots__ = ("_rows", "_hash")

    def __init__(self, rows: Iterable[Iterable]):
        data = tuple(tuple(to_rational(x) for x in row) for row in rows)
        if data and any(len(r) != len(data[0]) for r in data):
            raise DimensionError("ragged matrix rows")
        self._rows = data
        self._hash = None

    @classmethod
    def identity(cls, n: int) -> "RatMatrix":
        return cls([[int(i == j) for j in range(n)] for i in range(n)])

    @classmethod
    def zeros(cls, rows: int, cols: int) -> "RatMatrix":
        return cls([[0] * cols for _ in range(rows)])

    @classmethod
    def diag(cls, entries: Sequence) -> "RatMatrix":
        n = len(entries)
        return cls([[entries[i] if i == j else 0 for j in range(n)] for i in range(n)])

    @classmethod
    def from_columns(cls, columns: Sequence[Sequence]) -> "RatMatrix":
        return cls(zip(*columns)) if columns else cls([])

    @property
    def rows(self) -> tuple:
        return self._rows

    @property
    def nrows(self) -> int:
        return len(self._rows)

    @property
    def ncols(self) -> int:
        return len(self._rows[0]) if self._rows else 0

    @property
    def shape(self) -> tuple[int, int]:
        return self.nrows, self.ncols

    @property
    def is_square(self) -> bool:
        return self.nrows == self.ncols

    def __getitem__(self, index):
        i, j = index
        return self._rows[i][j]

    def column(self, j: int) -> tuple:
        return tuple(r[j] for r in self._rows)

    def columns(self) -> list[tuple]:
        return [self.column(j) for j in range(self.ncols)]

    def __eq__(self, other) -> bool:
        return isinstance(other, RatMatrix) and self._rows == other._rows

    def __hash__(self) -> int:
        if self._hash is None:
            self._hash = hash(self._rows)
        return self._hash

    def __repr__(self) -> str:
        return f"RatMatrix({self.tolist()!r})"

    def tolist(self) -> list[list[str]]:
        return [[format_rational(x) for x in row] for row in self._rows]

    def __add__(self, other: "RatMatrix") -> "RatMatrix":
        if self.shape != other.shape:
            raise DimensionError(f"cannot add {self.shape} and {other.shape}")
        return RatMatrix([[a + b for a, b in zip(r, s)] for r, s in zip(self._rows, other._rows)])

    def __sub__(self, other: "RatMatrix") -> "RatMatrix":
        if self.shape != other.shape:
            raise DimensionError(f"cannot subtract {self.shape} and {other.shape}")
        return RatMatrix([[a - b for a, b in zip(r, s)] for r, s in zip(self._rows, other._rows)])

    def __neg__(self) -> "RatMatrix":
        return RatMatrix([[-a for a in r] for r in self._rows])

    def scale(self, c: Scalar) -> "RatMatrix":
        return RatMatrix([[c * a for a in r] for r in self._rows])

    def __matmul__(self, other: "RatMatrix") -> "RatMatrix":
        if self.ncols != other.nrows:
            raise DimensionError(f"cannot multiply {self.shape} by {other.shape}")
        cols = other.columns()
        return RatMatrix([[sum((a * b for a, b in zip(r, c)), Fraction(0)) for c in cols]
                          for r in self._rows])

    __mul__ = __matmul__

    def apply(self, vector: Sequence) -> tuple:
        """Matrix-vector product."""
        if len(vector) != self.ncols:
            raise DimensionError(f"cannot apply {self.shape} matrix to length {len(vector)}")
        return tuple(sum((a * b for a, b in zip(r, vector)), Fraction(0)) for r in self._rows)

    def __pow__(self, k: int) -> "RatMatrix":
        if not self.is_square:
            raise DimensionError("power of a non-square matrix")
        if k < 0:
            return self.inverse() ** (-k)
        result = RatMatrix.identity(self.nrows)
        base = self
        while k:
            if k & 1:
                result = result @ base
            base = base @ base
            k >>= 1
        return result

    def transpose(self) -> "RatMatrix":
        return RatMatrix(zip(*self._rows)) if self._rows else self

    def is_integral(self) -> bool:
        return all(x.denominator == 1 for r in self._rows for x in r)

    def int_rows(self) -> list[list[int]]:
        if not self.is_integral():
            raise DomainError("matrix has non-integer entries")
        return [[int(x) for x in r] for r in self._rows]

    def det(self) -> Fraction:
        return det(self)

    def inverse(self) -> "RatMatrix":
        inv = _gauss_jordan_inverse(self)
        if inv is None:
            raise DomainError("matrix is singular")
        return inv

    def is_invertible(self) -> bool:
        return det(self) != 0


def _gauss_jordan_inverse(m: RatMatrix):
    if not m.is_square:
        raise DimensionError("inverse of a non-square matrix")
    n = m.nrows
    work = [list(r) + [Fraction(int(i == j)) for j in range(n)] for i, r in enumerate(m.rows)]
    for col in range(n):
        pivot = next((r for r in range(col, n) if work[r][col] != 0), None)
        if pivot is None:
            return None
        work[col], work[pivot] = work[pivot], work[col]
        p = work[col][col]
        work[col] = [x / p for x in work[col]]
        for r in range(n):
            if r != col and work[r][col] != 0:
                c = work[r][col]
                work[r] = [x - c * y for x, y in zip(work[r], work[col])]
    return RatMatrix([r[n:] for r in work])


def _bareiss_int(rows: list[list[int]]) -> int:
    """Fraction-free Gaussian elimination; every division is exact."""
    a = [list(r) for r in rows]
    n = len(a)
    sign = 1
    prev = 1
    for k in range(n - 1):
        if a[k][k] == 0:
            swap = next((i for i in range(k + 1, n) if a[i][k] != 0), None)
            if swap is None:
                return 0
            a[k], a[swap] = a[swap], a[k]
            sign = -sign
        pivot = a[k][k]
        for i in range(k + 1, n):
            for j in range(k + 1, n):
                a[i][j] = (a[i][j] * pivot - a[i][k] * a[k][j]) // prev
            a[i][k] = 0
        prev = pivot
    return sign * a[n - 1][n - 1] if n else 1


def det(m: RatMatrix) -> Fraction:
    """Exact determinant.

    Each row is cleared of denominators first, then the integer matrix goes
    through Bareiss elimination, so intermediate values stay integral.
    """
    if not m.is_square:
        raise DimensionError(f"determinant of a non-square {m.shape} matrix")
    scale = 1
    rows = []
    for r in m.rows:
        den = math.lcm(*(x.denominator for x in r)) if r else 1
        scale *= den
        rows.append([int(x * den) for x in r])
    return Fraction(_bareiss_int(rows), scale)


def solve(a: RatMatrix, b: Sequence):
    """One exact solution of ``a x = b`` or None when the system is inconsistent.

    Free variables are set to zero.
    """
    if a.nrows != len(b):
        raise DimensionError("right-hand side length does not match matrix rows")
    n = a.ncols
    work = [list(r) + [to_rational(v)] for r, v in zip(a.rows, b)]
    pivots = []
    row = 0
    for col in range(n):
        pivot = next((r for r in range(row, len(work)) if work[r][col] != 0), None)
        if pivot is None:
            continue
        work[row], work[pivot] = work[pivot], work[row]
        p = work[row][col]
        work[row] = [x / p for x in work[row]]
        for r in range(len(work)):
            if r != row and work[r][col] != 0:
                c = work[r][col]
                work[r] = [x - c * y for x, y in zip(work[r], work[row])]
        pivots.append(col)
        row += 1
    if any(work[r][n] != 0 for r in range(row, len(work))):
        return None
    x = [Fraction(0)] * n
    for r, col in enumerate(pivots):
        x[col] = work[r][n]
    return tuple(x)


# ---------------------------------------------------------------------------
# polynomials


@dataclass(frozen=True)
class Polynomial:
    """Univariate polynomial, coefficients in ascending degree.

    Coefficients are ints or Fractions; trailing zeros are stripped so the
    zero polynomial has an empty coefficient tuple.
    """

    coefficients: tuple

    def __post_init__(self):
        coeffs = list(self.coefficients)
        while coeffs and coeffs[-1] == 0:
            coeffs.pop()
        norm = []
        for c in coeffs:
            c = Fraction(c)
            norm.append(int(c) if c.denominator == 1 else c)
        object.__setattr__(self, "coefficients", tuple(norm))

    @classmethod
    def x_power_minus_one(cls, m: int) -> "Polynomial":
        return cls((-1,) + (0,) * (m - 1) + (1,))

    @property
    def degree(self) -> int:
        return len(self.coefficients) - 1

    @property
    def is_zero(self) -> bool:
        return not self.coefficients

    @property
    def leading(self):
        return self.coefficients[-1] if self.coefficients else 0

    def is_integral(self) -> bool:
        return all(isinstance(c, int) for c in self.coefficients)

    def __call__(self, x):
        acc = 0
        for c in reversed(self.coefficients):
            acc = acc * x + c
        return acc

    def __add__(self, other: "Polynomial") -> "Polynomial":
        n = max(len(self.coefficients), len(other.coefficients))
        a = self.coefficients + (0,) * (n - len(self.coefficients))
        b = other.coefficients + (0,) * (n - len(other.coefficients))
        return Polynomial(tuple(x + y for x, y in zip(a, b)))

    def __neg__(self) -> "Polynomial":
        return Polynomial(tuple(-c for c in self.coefficients))

    def __sub__(self, other: "Polynomial") -> "Polynomial":
        return self + (-other)

    def __mul__(self, other: "Polynomial") -> "Polynomial":
        if self.is_zero or other.is_zero:
            return Polynomial(())
        out = [0] * (len(self.coefficients) + len(other.coefficients) - 1)
        for i, a in enumerate(self.coefficients):
            if a:
                for j, b in enumerate(other.coefficients):
                    out[i + j] += a * b
        return Polynomial(tuple(out))

    def divmod(self, divisor: "Polynomial") -> tuple["Polynomial", "Polynomial"]:
        """Long division over the rationals.

        With a monic divisor and integer dividend everything stays integral.
        """
        if divisor.is_zero:
            raise ZeroDivisionError("polynomial division by zero")
        rem = [Fraction(c) for c in self.coefficients]
        lead = Fraction(divisor.leading)
        dd = divisor.degree
        quot = [Fraction(0)] * max(len(rem) - dd, 0)
        for i in range(len(rem) - 1, dd - 1, -1):
            c = rem[i] / lead
            if c:
                quot[i - dd] = c
                for j, b in enumerate(divisor.coefficients):
                    rem[i - dd + j] -= c * b
        return Polynomial(tuple(quot)), Polynomial(tuple(rem[:dd]))

    def __floordiv__(self, other: "Polynomial") -> "Polynomial":
        return self.divmod(other)[0]

    def __mod__(self, other: "Polynomial") -> "Polynomial":
        return self.divmod(other)[1]

    def monic(self) -> "Polynomial":
        if self.is_zero:
            return self
        lead = Fraction(self.leading)
        return Polynomial(tuple(Fraction(c) / lead for c in self.coefficients))

    def __str__(self) -> str:
        return render_polynomial(self, "x")


def render_polynomial(p: Polynomial, var: str = "x", ascending: bool = False) -> str:
    """Human-readable rendering, highest degree first: ``x^2 - x + 1``.

    With ``ascending`` the constant term leads, as is usual for power series
    in z: ``1 - 2z``.
    """
    if p.is_zero:
        return "0"
    parts = []
    order = range(p.degree + 1) if ascending else range(p.degree, -1, -1)
    for k in order:
        c = Fraction(p.coefficients[k])
        if c == 0:
            continue
        sign = "-" if c < 0 else "+"
        mag = abs(c)
        if k == 0:
            body = format_rational(mag)
        else:
            mono = var if k == 1 else f"{var}^{k}"
            body = mono if mag == 1 else f"{format_rational(mag)}{mono}"
        parts.append((sign, body))
    first_sign, first_body = parts[0]
    out = ("-" if first_sign == "-" else "") + first_body
    for sign, body in parts[1:]:
        out += f" {sign} {body}"
    return out


def poly_gcd(a: Polynomial, b: Polynomial) -> Polynomial:
    """Monic gcd over the rationals (Euclid)."""
    while not b.is_zero:
        a, b = b, a % b
    return a.monic()


def charpoly_rational(m: RatMatrix) -> Polynomial:
    """det(xI - m) over the rationals, by Faddeev-LeVerrier."""
    if not m.is_square:
        raise DimensionError("characteristic polynomial of a non-square matrix")
    n = m.nrows
    coeffs = [Fraction(0)] * (n + 1)
    coeffs[n] = Fraction(1)
    identity = RatMatrix.identity(n)
    work = RatMatrix.zeros(n, n)
    for k in range(1, n + 1):
        work = m @ work + identity.scale(coeffs[n - k + 1])
        trace = sum((m @ work)[i, i] for i in range(n))
        coeffs[n - k] = -trace / k
    return Polynomial(tuple(coeffs))


def charpoly(m: RatMatrix) -> Polynomial:
    """Monic integer characteristic polynomial det(xI - m) of an integer matrix."""
    if not m.is_square:
        raise DimensionError("characteristic polynomial of a non-square matrix")
    if not m.is_integral():
        raise DomainError("charpoly requires integer entries; use charpoly_rational")
    p = charpoly_rational(m)
    assert p.is_integral(), "Faddeev-LeVerrier lost integrality"
    return p


@lru_cache(maxsize=None)
def cyclotomic(m: int) -> Polynomial:
    """The m-th cyclotomic polynomial, by exact division of x^m - 1."""
    if not isinstance(m, int) or m < 1:
        raise DomainError(f"cyclotomic index must be a positive integer, got {m!r}")
    p = Polynomial.x_power_minus_one(m)
    for d in divisors(m)[:-1]:
        q, r = p.divmod(cyclotomic(d))
        assert r.is_zero
        p = q
    return p


def totient(n: int) -> int:
    result = n
    for p in prime_factors(n):
        result -= result // p
    return result


def orders_with_small_totient(m: int) -> list[int]:
    """All k with phi(k) <= m.

    phi(k) >= sqrt(k/2) for every k, so scanning k <= 2 m^2 is exhaustive.
    """
    if m < 1:
        return []
    bound = 2 * m * m
    return [k for k in range(1, bound + 1) if totient(k) <= m]


# ---------------------------------------------------------------------------
# number theory


def _check_positive(n) -> None:
    if not isinstance(n, int) or isinstance(n, bool) or n < 1:
        raise DomainError(f"expected a positive integer, got {n!r}")


def prime_factors(n: int) -> list[int]:
    _check_positive(n)
    out = []
    p = 2
    while p * p <= n:
        if n % p == 0:
            out.append(p)
            while n % p == 0:
                n //= p
        p += 1
    if n > 1:
        out.append(n)
    return out


def divisors(n: int) -> list[int]:
    _check_positive(n)
    small, large = [], []
    d = 1
    while d * d <= n:
        if n % d == 0:
            small.append(d)
            if d * d != n:
                large.append(n // d)
        d += 1
    return small + large[::-1]


def moebius(n: int) -> int:
    _check_positive(n)
    result = 1
    p = 2
    while p * p <= n:
        if n % p == 0:
            n //= p
            if n % p == 0:
                return 0
            result = -result
        p += 1
    if n > 1:
        result = -result
    return result


# ---------------------------------------------------------------------------
# Smith normal form


def _int_identity(n: int) -> list[list[int]]:
    return [[int(i == j) for j in range(n)] for i in range(n)]


def smith_normal_form(m) -> tuple[list[list[int]], list[list[int]], list[list[int]]]:
    """Return (U, S, V) with U*m*V = S, U and V unimodular.

    S is diagonal with non-negative entries, each dividing the next.
    ``m`` is a list of integer rows or an integral RatMatrix.
    """
    a = m.int_rows() if isinstance(m, RatMatrix) else [[int(x) for x in r] for r in m]
    rows = len(a)
    cols = len(a[0]) if rows else 0
    u = _int_identity(rows)
    v = _int_identity(cols)

    def swap_rows(i, j):
        a[i], a[j] = a[j], a[i]
        u[i], u[j] = u[j], u[i]

    def swap_cols(i, j):
        for r in a:
            r[i], r[j] = r[j], r[i]
        for r in v:
            r[i], r[j] = r[j], r[i]

    def add_row(src, dst, c):  # row dst += c * row src
        a[dst] = [x + c * y for x, y in zip(a[dst], a[src])]
        u[dst] = [x + c * y for x, y in zip(u[dst], u[src])]

    def add_col(src, dst, c):
        for r in a:
            r[dst] += c * r[src]
        for r in v:
            r[dst] += c * r[src]

    t = 0
    while t < min(rows, cols):
        nonzero = [(abs(a[i][j]), i, j) for i in range(t, rows) for j in range(t, cols) if a[i][j]]
        if not nonzero:
            break
        _, pi, pj = min(nonzero)
        swap_rows(t, pi)
        swap_cols(t, pj)
        while True:
            clean = True
            for i in range(t + 1, rows):
                if a[i][t]:
                    add_row(t, i, -(a[i][t] // a[t][t]))
                    if a[i][t]:
                        clean = False
            for j in range(t + 1, cols):
                if a[t][j]:
                    add_col(t, j, -(a[t][j] // a[t][t]))
                    if a[t][j]:
                        clean = False
            if not clean:
                nonzero = [(abs(a[i][t]), i, t) for i in range(t, rows) if a[i][t]]
                nonzero += [(abs(a[t][j]), t, j) for j in range(t, cols) if a[t][j]]
                _, pi, pj = min(nonzero)
                swap_rows(t, pi)
                swap_cols(t, pj)
                continue
            # enforce divisibility of the remaining block by the pivot
            bad = next(((i, j) for i in range(t + 1, rows) for j in range(t + 1, cols)
                        if a[i][j] % a[t][t]), None)
            if bad is None:
                break
            add_row(bad[0], t, 1)
        if a[t][t] < 0:
            a[t] = [-x for x in a[t]]
            u[t] = [-x for x in u[t]]
        t += 1
    return u, a, v


def int_matmul(a: list[list[int]], b: list[list[int]]) -> list[list[int]]:
    return [[sum(x * y for x, y in zip(r, c)) for c in zip(*b)] for r in a]


def solve_integer(a: list[list[int]], b: Sequence[int]):
    """An integer solution x of ``a x = b`` or None if none exists."""
    u, s, v = smith_normal_form(a)
    rows = len(a)
    cols = len(a[0]) if rows else 0
    ub = [sum(x * y for x, y in zip(r, b)) for r in u]
    y = [0] * cols
    for i in range(rows):
        d = s[i][i] if i < cols else 0
        if d == 0:
            if ub[i] != 0:
                return None
        elif ub[i] % d:
            return None
        else:
            y[i] = ub[i] // d
    return [sum(x * w for x, w in zip(r, y)) for r in v]


# ---------------------------------------------------------------------------
# truncated power series


@dataclass(frozen=True)
class RatSeries:
    """Power series truncated at z^order; ``coefficients[k]`` is the z^k term."""

    coefficients: tuple

    def __post_init__(self):
        object.__setattr__(self, "coefficients", tuple(Fraction(c) for c in self.coefficients))
        if not self.coefficients:
            raise DomainError("a series needs at least the constant term")

    @property
    def order(self) -> int:
        return len(self.coefficients) - 1

    def is_integral(self) -> bool:
        return all(c.denominator == 1 for c in self.coefficients)

    def __getitem__(self, k: int) -> Fraction:
        return self.coefficients[k]

    def __str__(self) -> str:
        return "[" + ", ".join(format_rational(c) for c in self.coefficients) + "]"


def series_exp_weighted(a: Sequence, order: int) -> RatSeries:
    """Coefficients of exp(sum_{k>=1} a_k z^k / k) up to z^order.

    ``a[0]`` holds a_1.  Uses n c_n = sum_{k=1}^{n} a_k c_{n-k}.
    """
    if order < 0:
        raise DomainError("order must be non-negative")
    if len(a) < order:
        raise DomainError(f"need {order} weights, got {len(a)}")
    weights = [to_rational(x) for x in a[:order]]
    c = [Fraction(1)]
    for n in range(1, order + 1):
        c.append(sum((weights[k - 1] * c[n - k] for k in range(1, n + 1)), Fraction(0)) / n)
    return RatSeries(tuple(c))


def series_log_weighted(s: RatSeries) -> list[Fraction]:
    """Inverse of :func:`series_exp_weighted`: recover a_1..a_order."""
    if s[0] != 1:
        raise DomainError("constant term must be 1")
    c = s.coefficients
    a: list[Fraction] = []
    for n in range(1, s.order + 1):
        a.append(n * c[n] - sum((a[k - 1] * c[n - k] for k in range(1, n)), Fraction(0)))
    return a


def series_from_rational(num: Polynomial, den: Polynomial, order: int) -> RatSeries:
    """Taylor coefficients of num/den up to z^order (den(0) != 0)."""
    if den.is_zero or den.coefficients[0] == 0:
        raise DomainError("denominator must have a nonzero constant term")
    q = [Fraction(x) for x in den.coefficients]
    p = [Fraction(x) for x in num.coefficients]
    out = []
    for n in range(order + 1):
        acc = p[n] if n < len(p) else Fraction(0)
        acc -= sum((q[j] * out[n - j] for j in range(1, min(n, len(q) - 1) + 1)), Fraction(0))
        out.append(acc / q[0])
    return RatSeries(tuple(out))
