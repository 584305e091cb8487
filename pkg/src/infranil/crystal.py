"""Crystallographic groups, affine self-maps and the induced holonomy data.

A group is given by lattice translations plus one affine lift per holonomy
generator.  The holonomy group F is saturated from those generators and each
element gets a canonical lift whose translation is reduced modulo the
lattice, so Gamma is the disjoint union of the cosets (t_A + L, A).
"""

from __future__ import annotations

import json
import string
from dataclasses import dataclass, field
from fractions import Fraction
from typing import Mapping, Optional, Sequence

from .errors import FsharpDataRequired, ValidationError
from .exactmath import (
    DomainError,
    RatMatrix,
    format_rational,
    smith_normal_form,
    solve_integer,
    to_rational,
)

DEFAULT_HOLONOMY_BOUND = 10_000

Vector = tuple


def _vec(values) -> Vector:
    return tuple(to_rational(v) for v in values)


def _vadd(a, b) -> Vector:
    return tuple(x + y for x, y in zip(a, b))


def _vsub(a, b) -> Vector:
    return tuple(x - y for x, y in zip(a, b))


def format_vector(v) -> str:
    return "(" + ", ".join(format_rational(x) for x in v) + ")"


@dataclass(frozen=True)
class AffineElement:
    """The affine map x -> linear*x + translation."""

    translation: Vector
    linear: RatMatrix

    def __post_init__(self):
        object.__setattr__(self, "translation", _vec(self.translation))
        if not isinstance(self.linear, RatMatrix):
            object.__setattr__(self, "linear", RatMatrix(self.linear))
        m = len(self.translation)
        if self.linear.shape != (m, m):
            raise DomainError(
                f"linear part {self.linear.shape} does not match translation length {m}")

    @classmethod
    def identity(cls, m: int) -> "AffineElement":
        return cls((0,) * m, RatMatrix.identity(m))

    @classmethod
    def translation_by(cls, v) -> "AffineElement":
        return cls(v, RatMatrix.identity(len(v)))

    @property
    def dimension(self) -> int:
        return len(self.translation)

    def __mul__(self, other: "AffineElement") -> "AffineElement":
        return AffineElement(_vadd(self.translation, self.linear.apply(other.translation)),
                             self.linear @ other.linear)

    def inverse(self) -> "AffineElement":
        inv = self.linear.inverse()
        return AffineElement(tuple(-x for x in inv.apply(self.translation)), inv)

    def __pow__(self, k: int) -> "AffineElement":
        if k < 0:
            return self.inverse() ** (-k)
        result = AffineElement.identity(self.dimension)
        base = self
        while k:
            if k & 1:
                result = result * base
            base = base * base
            k >>= 1
        return result

    def apply(self, x) -> Vector:
        return _vadd(self.linear.apply(x), self.translation)

    def is_identity(self) -> bool:
        return self == AffineElement.identity(self.dimension)

    def __str__(self) -> str:
        return f"({format_vector(self.translation)}, {self.linear.tolist()})"


# ---------------------------------------------------------------------------
# lattices


class Lattice:
    """Full-rank lattice spanned by a list of rational generators."""

    def __init__(self, generators: Sequence[Sequence]):
        gens = [_vec(g) for g in generators]
        if not gens:
            raise ValidationError("lattice needs at least one generator")
        m = len(gens[0])
        if any(len(g) != m for g in gens):
            raise ValidationError("lattice generators have different lengths")
        self.generators = tuple(gens)
        self.dimension = m
        den = 1
        for g in gens:
            for x in g:
                den = den * x.denominator // _gcd(den, x.denominator)
        self._den = den
        # integer matrix whose columns are den * generators
        self._int = [[int(g[i] * den) for g in gens] for i in range(m)]
        u, s, v = smith_normal_form(self._int)
        rank = sum(1 for i in range(min(len(s), len(s[0]))) if s[i][i])
        if rank != m:
            raise ValidationError(f"lattice generators span rank {rank}, need {m}")
        u_inv = RatMatrix(u).inverse()
        cols = [[u_inv[r, i] * s[i][i] / den for r in range(m)] for i in range(m)]
        self.basis = RatMatrix.from_columns(cols)
        self.basis_inverse = self.basis.inverse()
        # integer relations among the generators: columns of V past the rank
        self.relations = tuple(tuple(v[r][j] for r in range(len(gens)))
                               for j in range(rank, len(gens)))

    def coords(self, v) -> Vector:
        return self.basis_inverse.apply(_vec(v))

    def contains(self, v) -> bool:
        return all(c.denominator == 1 for c in self.coords(v))

    def reduce(self, v) -> Vector:
        """Representative of v + L with basis coordinates in [0, 1)."""
        c = self.coords(v)
        frac = tuple(x - (x.numerator // x.denominator) for x in c)
        return self.basis.apply(frac)

    def generator_coefficients(self, v) -> Optional[list[int]]:
        """Integers c with sum c_i g_i = v, or None if v is not in L."""
        scaled = [x * self._den for x in _vec(v)]
        if any(x.denominator != 1 for x in scaled):
            return None
        return solve_integer(self._int, [int(x) for x in scaled])

    def is_invariant_under(self, a: RatMatrix) -> bool:
        """True when a maps L onto L."""
        conj = self.basis_inverse @ a @ self.basis
        return conj.is_integral() and abs(conj.det()) == 1


def _gcd(a: int, b: int) -> int:
    while b:
        a, b = b, a % b
    return abs(a)


# ---------------------------------------------------------------------------
# groups


def _generator_names(count: int, names) -> list[str]:
    if names is not None:
        return list(names)
    letters = string.ascii_uppercase
    return [letters[i] if i < 26 else f"G{i}" for i in range(count)]


def _word_label(word: Sequence[int], names: Sequence[str]) -> str:
    if not word:
        return "Id"
    parts = []
    i = 0
    while i < len(word):
        j = i
        while j < len(word) and word[j] == word[i]:
            j += 1
        run = j - i
        parts.append(names[word[i]] + (f"^{run}" if run > 1 else ""))
        i = j
    return "".join(parts) if all(len(n) == 1 for n in names) else "*".join(parts)


@dataclass(frozen=True, eq=False)
class CrystalGroup:
    """Crystallographic group Gamma = union over A in F of (t_A + L, A).

    ``holonomy[0]`` is the identity.  ``lifts[i]`` is the canonical
    translation of holonomy element i, reduced into the lattice's
    fundamental parallelepiped.
    """

    dimension: int
    lattice: Lattice
    holonomy: tuple
    lifts: tuple
    generator_lifts: tuple
    generator_indices: tuple
    generator_names: tuple
    words: tuple
    parents: tuple
    labels: tuple
    mult: tuple
    inv: tuple
    _index: dict = field(repr=False)

    @property
    def order(self) -> int:
        return len(self.holonomy)

    def index_of(self, matrix: RatMatrix) -> Optional[int]:
        return self._index.get(matrix)

    def lift(self, i: int) -> AffineElement:
        return AffineElement(self.lifts[i], self.holonomy[i])

    def power(self, i: int, k: int) -> int:
        result = 0
        for _ in range(k):
            result = self.mult[result][i]
        return result

    def element_order(self, i: int) -> int:
        r, cur = 1, i
        while cur != 0:
            cur = self.mult[cur][i]
            r += 1
        return r

    def residual(self, element: AffineElement) -> Optional[Vector]:
        """Translation offset of ``element`` from the canonical lift of its
        linear part; None if the linear part is not in F."""
        idx = self.index_of(element.linear)
        if idx is None:
            return None
        return _vsub(element.translation, self.lifts[idx])

    def contains(self, element: AffineElement) -> bool:
        r = self.residual(element)
        return r is not None and self.lattice.contains(r)

    def normal_form(self, element: AffineElement) -> tuple[Vector, int]:
        """Write element = (l, I) * lift(i); returns (l, i)."""
        idx = self.index_of(element.linear)
        if idx is None:
            raise ValidationError(f"linear part {element.linear.tolist()} is not in the holonomy group")
        l = _vsub(element.translation, self.lifts[idx])
        if not self.lattice.contains(l):
            raise ValidationError(f"element {element} is not in the group (residual {format_vector(l)})")
        return l, idx

    def subgroup(self, indices) -> frozenset:
        """Subgroup of F generated by the given element indices."""
        members = {0}
        frontier = [0]
        gens = list(indices)
        while frontier:
            nxt = []
            for x in frontier:
                for s in gens:
                    y = self.mult[x][s]
                    if y not in members:
                        members.add(y)
                        nxt.append(y)
            frontier = nxt
        return frozenset(members)


def build_group(dimension: int, holonomy_lifts: Sequence[AffineElement],
                lattice_generators: Optional[Sequence] = None,
                names: Optional[Sequence[str]] = None,
                bound: int = DEFAULT_HOLONOMY_BOUND) -> CrystalGroup:
    """Saturate the holonomy generators and validate the resulting group."""
    m = dimension
    if lattice_generators is None:
        lattice_generators = [[int(i == j) for j in range(m)] for i in range(m)]
    lattice = Lattice(lattice_generators)
    if lattice.dimension != m:
        raise ValidationError(f"lattice dimension {lattice.dimension} != {m}")
    gens = list(holonomy_lifts)
    for g in gens:
        if g.dimension != m:
            raise ValidationError(f"holonomy lift has dimension {g.dimension}, expected {m}")
        if g.linear.det() == 0:
            raise ValidationError(f"holonomy lift {g} has a singular linear part")
    gen_names = _generator_names(len(gens), names)

    identity = RatMatrix.identity(m)
    holonomy = [identity]
    lifts = [(Fraction(0),) * m]
    words: list[tuple] = [()]
    parents: list = [None]
    index = {identity: 0}
    cursor = 0
    while cursor < len(holonomy):
        cur = AffineElement(lifts[cursor], holonomy[cursor])
        for j, g in enumerate(gens):
            prod = cur * g
            k = index.get(prod.linear)
            if k is None:
                if len(holonomy) >= bound:
                    raise ValidationError(f"holonomy not finite within bound {bound}")
                index[prod.linear] = len(holonomy)
                holonomy.append(prod.linear)
                lifts.append(lattice.reduce(prod.translation))
                words.append(words[cursor] + (j,))
                parents.append((cursor, j))
            else:
                off = _vsub(prod.translation, lifts[k])
                if not lattice.contains(off):
                    raise ValidationError(
                        "lifts are inconsistent with the lattice: "
                        f"{_word_label(words[cursor] + (j,), gen_names)} differs from the lift of "
                        f"{_word_label(words[k], gen_names)} by the non-lattice vector {format_vector(off)}")
        cursor += 1

    for i, a in enumerate(holonomy):
        if not lattice.is_invariant_under(a):
            raise ValidationError(
                f"holonomy element {_word_label(words[i], gen_names)} does not preserve the lattice")

    n = len(holonomy)
    mult = []
    for a in holonomy:
        row = []
        for b in holonomy:
            k = index.get(a @ b)
            if k is None:  # pragma: no cover - saturation guarantees closure
                raise ValidationError("holonomy group is not closed under products")
            row.append(k)
        mult.append(tuple(row))
    inv = tuple(row.index(0) for row in mult)

    group = CrystalGroup(
        dimension=m,
        lattice=lattice,
        holonomy=tuple(holonomy),
        lifts=tuple(lifts),
        generator_lifts=tuple(gens),
        generator_indices=tuple(index[g.linear] for g in gens),
        generator_names=tuple(gen_names),
        words=tuple(words),
        parents=tuple(parents),
        labels=tuple(_word_label(w, gen_names) for w in words),
        mult=tuple(mult),
        inv=inv,
        _index=index,
    )
    _check_torsion_free(group)
    if n == 0:  # pragma: no cover
        raise ValidationError("empty holonomy group")
    return group


def _check_torsion_free(group: CrystalGroup) -> None:
    """Reject groups containing an element of finite order.

    (t, A) has order dividing r = ord(A) iff (I + A + ... + A^{r-1}) t = 0, so
    the coset (t_A + L, A) holds torsion iff N_A l = -N_A t_A is solvable
    for some lattice vector l.
    """
    lat = group.lattice
    m = group.dimension
    for i in range(1, group.order):
        a = group.holonomy[i]
        r = group.element_order(i)
        norm = RatMatrix.zeros(m, m)
        power = RatMatrix.identity(m)
        for _ in range(r):
            norm = norm + power
            power = power @ a
        lhs = norm @ lat.basis
        rhs = tuple(-x for x in norm.apply(group.lifts[i]))
        den = 1
        for x in [*(y for row in lhs.rows for y in row), *rhs]:
            den = den * x.denominator // _gcd(den, x.denominator)
        sol = solve_integer([[int(x * den) for x in row] for row in lhs.rows],
                            [int(x * den) for x in rhs])
        if sol is not None:
            raise ValidationError(
                f"group has torsion: an element with linear part {group.labels[i]} has finite order")


# ---------------------------------------------------------------------------
# self-maps


@dataclass(frozen=True, eq=False)
class SelfMapData:
    """Affine homotopy lift (d, D) with its induced data on F.

    ``phi[i]`` is the holonomy part of f_*(lift(i)); when D is invertible it
    is the unique B in F with B D = D A_i.  ``fsharp_id`` is f_#(Id).
    """

    lift: AffineElement
    phi: tuple
    fsharp_id: frozenset
    invertible: bool
    lattice_images: Optional[tuple] = None
    holonomy_generator_images: Optional[tuple] = None
    lift_images: Optional[tuple] = None

    @property
    def linear(self) -> RatMatrix:
        return self.lift.linear

    @property
    def translation(self) -> Vector:
        return self.lift.translation


def _conjugate(lift: AffineElement, lift_inv: AffineElement, g: AffineElement) -> AffineElement:
    return lift * g * lift_inv


def _image_candidates(group: CrystalGroup, lift: AffineElement, g: AffineElement) -> list[AffineElement]:
    """Elements h of Gamma with h * (d, D) = (d, D) * g."""
    target = lift * g
    out = []
    for i, b in enumerate(group.holonomy):
        if b @ lift.linear != target.linear:
            continue
        t = _vsub(target.translation, b.apply(lift.translation))
        h = AffineElement(t, b)
        if group.contains(h):
            out.append(h)
    return out


def build_map(group: CrystalGroup, lift: AffineElement,
              lattice_images: Optional[Sequence[AffineElement]] = None,
              holonomy_images: Optional[Sequence[AffineElement]] = None) -> SelfMapData:
    if lift.dimension != group.dimension:
        raise ValidationError(f"map has dimension {lift.dimension}, group has {group.dimension}")
    d_lin = lift.linear
    invertible = d_lin.det() != 0
    if lattice_images is not None:
        lattice_images = tuple(lattice_images)
        if len(lattice_images) != len(group.lattice.generators):
            raise ValidationError("fstar_lattice_images must match lattice_generators one to one")
    if holonomy_images is not None:
        holonomy_images = tuple(holonomy_images)
        if len(holonomy_images) != len(group.generator_lifts):
            raise ValidationError("fstar_holonomy_images must match holonomy_lifts one to one")

    if invertible:
        d_inv = d_lin.inverse()
        phi = []
        for i, a in enumerate(group.holonomy):
            k = group.index_of(d_lin @ a @ d_inv)
            if k is None:
                raise ValidationError(
                    f"map incompatible with group: D {group.labels[i]} D^-1 is not in the holonomy group")
            phi.append(k)
        return SelfMapData(lift=lift, phi=tuple(phi), fsharp_id=frozenset({0}), invertible=True,
                           lattice_images=lattice_images, holonomy_generator_images=holonomy_images)

    if lattice_images is None:
        raise FsharpDataRequired(
            "f_# data required: the linear part is singular, so fstar_lattice_images must be given")
    for img in lattice_images:
        if group.index_of(img.linear) is None:
            raise ValidationError(f"map incompatible with group: f_* image {img} has linear part outside F")
    if holonomy_images is None:
        derived = []
        for name, g in zip(group.generator_names, group.generator_lifts):
            cands = _image_candidates(group, lift, g)
            if not cands:
                raise ValidationError(f"map incompatible with group: no element of Gamma can be f_*({name})")
            if len({c.linear for c in cands}) > 1:
                raise FsharpDataRequired(
                    f"f_# data required: f_*({name}) is ambiguous; give fstar_holonomy_images")
            derived.append(cands[0])
        holonomy_images = tuple(derived)
    for img in holonomy_images:
        if group.index_of(img.linear) is None:
            raise ValidationError(f"map incompatible with group: f_* image {img} has linear part outside F")

    partial = SelfMapData(lift=lift, phi=(), fsharp_id=frozenset(), invertible=False,
                          lattice_images=lattice_images, holonomy_generator_images=holonomy_images)
    images = [AffineElement.identity(group.dimension)]
    for k in range(1, group.order):
        i, j = group.parents[k]
        prod = group.lift(i) * group.generator_lifts[j]
        l = _vsub(prod.translation, group.lifts[k])
        images.append(_lattice_image(group, partial, l).inverse() * images[i] * holonomy_images[j])
    phi = []
    for img in images:
        idx = group.index_of(img.linear)
        if idx is None:
            raise ValidationError("map incompatible with group: f_* leaves Gamma")
        phi.append(idx)
    fsharp_id = group.subgroup(group.index_of(img.linear) for img in lattice_images)
    return SelfMapData(lift=lift, phi=tuple(phi), fsharp_id=fsharp_id, invertible=False,
                       lattice_images=lattice_images, holonomy_generator_images=holonomy_images,
                       lift_images=tuple(images))


def _lattice_image(group: CrystalGroup, f: SelfMapData, v) -> AffineElement:
    coeffs = group.lattice.generator_coefficients(v)
    if coeffs is None:
        raise ValidationError(f"vector {format_vector(v)} is not in the lattice")
    out = AffineElement.identity(group.dimension)
    for c, img in zip(coeffs, f.lattice_images):
        if c:
            out = out * img ** c
    return out


def fstar(group: CrystalGroup, f: SelfMapData, element: AffineElement) -> AffineElement:
    """The induced endomorphism f_* of Gamma, f_*(g) (d,D) = (d,D) g."""
    if f.invertible:
        return f.lift * element * f.lift.inverse()
    l, idx = group.normal_form(element)
    return _lattice_image(group, f, l) * f.lift_images[idx]


def fstar_power(group: CrystalGroup, f: SelfMapData, element: AffineElement, k: int) -> AffineElement:
    if f.invertible:
        lk = f.lift ** k
        return lk * element * lk.inverse()
    for _ in range(k):
        element = fstar(group, f, element)
    return element


def induced_phi_power(f: SelfMapData, k: int) -> tuple:
    """The k-fold composite of the holonomy table phi."""
    if k < 1:
        raise DomainError("k must be positive")
    table = tuple(range(len(f.phi)))
    for _ in range(k):
        table = tuple(f.phi[i] for i in table)
    return table


def fsharp(group: CrystalGroup, f: SelfMapData, c: int) -> frozenset:
    """f_#(C) = phi(C) f_#(Id)."""
    return frozenset(group.mult[f.phi[c]][s] for s in f.fsharp_id)


def level_data(group: CrystalGroup, f: SelfMapData, k: int) -> tuple[tuple, frozenset]:
    """(phi_k, f^k_#(Id)) for the k-th iterate.

    phi_k[i] is the holonomy part of f_*^k(lift(i)).
    """
    if f.invertible:
        return induced_phi_power(f, k), frozenset({0})
    phi_k = tuple(group.index_of(fstar_power(group, f, group.lift(i), k).linear)
                  for i in range(group.order))
    gens = [group.index_of(fstar_power(group, f, AffineElement.translation_by(g), k).linear)
            for g in group.lattice.generators]
    return phi_k, group.subgroup(gens)


# ---------------------------------------------------------------------------
# validation of the map against the group


@dataclass(frozen=True)
class Violation:
    generator: str
    message: str
    residual: Optional[Vector] = None

    def to_dict(self) -> dict:
        return {"generator": self.generator, "message": self.message,
                "residual": None if self.residual is None else [format_rational(x) for x in self.residual]}


@dataclass
class ValidationReport:
    checks: int = 0
    violations: list = field(default_factory=list)

    @property
    def ok(self) -> bool:
        return not self.violations

    def add(self, generator: str, message: str, residual=None) -> None:
        self.violations.append(Violation(generator, message, residual))


def _group_generators(group: CrystalGroup) -> list[tuple[str, AffineElement]]:
    gens = [(f"t{i + 1}={format_vector(v)}", AffineElement.translation_by(v))
            for i, v in enumerate(group.lattice.generators)]
    gens += list(zip(group.generator_names, group.generator_lifts))
    return gens


def validate_map_induces(group: CrystalGroup, f: SelfMapData) -> ValidationReport:
    """Check that (d, D) induces a map on the quotient.

    Invertible D: every generator conjugated by (d, D) must land in Gamma.
    Singular D: the supplied f_* images must satisfy f_*(g)(d,D) = (d,D)g, lie
    in Gamma and respect the defining relations of Gamma.
    """
    report = ValidationReport()
    if f.invertible:
        lift_inv = f.lift.inverse()
        for name, g in _group_generators(group):
            report.checks += 1
            conj = _conjugate(f.lift, lift_inv, g)
            res = group.residual(conj)
            if res is None:
                report.add(name, "conjugate has linear part outside the holonomy group")
            elif not group.lattice.contains(res):
                report.add(name, "conjugate is not in the group; translation residual is off the lattice", res)
        if f.lattice_images is not None:
            for (name, g), img in zip(_group_generators(group), f.lattice_images):
                report.checks += 1
                if img != _conjugate(f.lift, lift_inv, g):
                    report.add(name, "supplied f_* image disagrees with conjugation by (d, D)")
        return report

    named = _group_generators(group)
    images = list(f.lattice_images) + list(f.holonomy_generator_images)
    for (name, g), img in zip(named, images):
        report.checks += 1
        if img * f.lift != f.lift * g:
            report.add(name, "f_*(g) (d,D) != (d,D) g")
        res = group.residual(img)
        if res is None:
            report.add(name, "f_* image has linear part outside the holonomy group")
        elif not group.lattice.contains(res):
            report.add(name, "f_* image is not in the group", res)
    if not report.ok:
        return report

    lat_imgs = f.lattice_images
    for a in range(len(lat_imgs)):
        for b in range(a + 1, len(lat_imgs)):
            report.checks += 1
            if lat_imgs[a] * lat_imgs[b] != lat_imgs[b] * lat_imgs[a]:
                report.add(f"t{a + 1},t{b + 1}", "images of lattice generators do not commute")
    for rel in group.lattice.relations:
        report.checks += 1
        prod = AffineElement.identity(group.dimension)
        for c, img in zip(rel, lat_imgs):
            if c:
                prod = prod * img ** c
        if not prod.is_identity():
            report.add("lattice relation", f"f_* does not kill the relation {list(rel)}")
    for j, (name, g) in enumerate(zip(group.generator_names, group.generator_lifts)):
        g_img = f.holonomy_generator_images[j]
        g_img_inv = g_img.inverse()
        for s, v in enumerate(group.lattice.generators):
            report.checks += 1
            conj = g.linear.apply(v)
            lhs = g_img * lat_imgs[s] * g_img_inv
            if lhs != _lattice_image(group, f, conj):
                report.add(name, f"f_* does not respect conjugation of lattice generator t{s + 1}")
        for i in range(group.order):
            report.checks += 1
            prod = group.lift(i) * g
            l, k = group.normal_form(prod)
            lhs = f.lift_images[i] * g_img
            rhs = _lattice_image(group, f, l) * f.lift_images[k]
            if lhs != rhs:
                report.add(name, f"f_* is not a homomorphism on lift({group.labels[i]}) * {name}")
    return report


# ---------------------------------------------------------------------------
# input documents


def _parse_matrix(value, m: int, what: str) -> RatMatrix:
    if value == "identity":
        return RatMatrix.identity(m)
    if not isinstance(value, list) or len(value) != m or any(
            not isinstance(r, list) or len(r) != m for r in value):
        raise ValidationError(f"{what}: expected an {m}x{m} matrix or \"identity\"")
    try:
        return RatMatrix(value)
    except DomainError as exc:
        raise ValidationError(f"{what}: {exc}") from None


def _parse_vector(value, m: int, what: str) -> Vector:
    if not isinstance(value, list) or len(value) != m:
        raise ValidationError(f"{what}: expected a list of {m} rationals")
    try:
        return _vec(value)
    except DomainError as exc:
        raise ValidationError(f"{what}: {exc}") from None


def _parse_affine(value, m: int, what: str) -> AffineElement:
    if not isinstance(value, Mapping):
        raise ValidationError(f"{what}: expected an object with translation and linear")
    t = _parse_vector(value.get("translation", [0] * m), m, f"{what}.translation")
    a = _parse_matrix(value.get("linear", "identity"), m, f"{what}.linear")
    return AffineElement(t, a)


def parse_input(document, holonomy_bound: int = DEFAULT_HOLONOMY_BOUND) -> tuple[CrystalGroup, SelfMapData]:
    """Build and validate a (group, map) pair from a JSON document.

    ``document`` may be JSON text or an already decoded mapping.
    """
    if isinstance(document, (str, bytes)):
        try:
            document = json.loads(document)
        except json.JSONDecodeError as exc:
            raise ValidationError(f"invalid JSON: {exc}") from None
    if not isinstance(document, Mapping):
        raise ValidationError("input must be a JSON object")
    m = document.get("dimension")
    if not isinstance(m, int) or isinstance(m, bool) or m < 1:
        raise ValidationError("dimension must be a positive integer")

    lattice = None
    if "lattice_generators" in document:
        lattice = []
        for i, g in enumerate(document["lattice_generators"]):
            el = _parse_affine(g, m, f"lattice_generators[{i}]")
            if el.linear != RatMatrix.identity(m):
                raise ValidationError(f"lattice_generators[{i}] must have identity linear part")
            lattice.append(el.translation)
    raw_lifts = document.get("holonomy_lifts", [])
    if not isinstance(raw_lifts, list):
        raise ValidationError("holonomy_lifts must be a list")
    lifts = [_parse_affine(g, m, f"holonomy_lifts[{i}]") for i, g in enumerate(raw_lifts)]
    names = None
    if any(isinstance(g, Mapping) and "name" in g for g in raw_lifts):
        names = [str(g.get("name", f"G{i}")) for i, g in enumerate(raw_lifts)]
    group = build_group(m, lifts, lattice, names=names, bound=holonomy_bound)

    if "map" not in document:
        raise ValidationError("missing map")
    lift = _parse_affine(document["map"], m, "map")
    lat_imgs = document.get("fstar_lattice_images")
    if lat_imgs is not None:
        lat_imgs = [_parse_affine(g, m, f"fstar_lattice_images[{i}]") for i, g in enumerate(lat_imgs)]
    hol_imgs = document.get("fstar_holonomy_images")
    if hol_imgs is not None:
        hol_imgs = [_parse_affine(g, m, f"fstar_holonomy_images[{i}]") for i, g in enumerate(hol_imgs)]
    fmap = build_map(group, lift, lat_imgs, hol_imgs)
    return group, fmap


def load_input(path, holonomy_bound: int = DEFAULT_HOLONOMY_BOUND) -> tuple[CrystalGroup, SelfMapData]:
    with open(path, encoding="utf-8") as fh:
        text = fh.read()
    return parse_input(text, holonomy_bound)
