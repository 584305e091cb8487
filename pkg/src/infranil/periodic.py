"""Periodic point invariants from ~f^k-equivalence classes on the holonomy group.

Fixed point classes of f^k sit above ~f^k-classes [A]_k of holonomy elements.
All classes above one [A]_k are simultaneously essential or not, boost the
same way, and there are N_A(f^k) essential ones.  Essential torality and
reducibility to the gcd make the essential classes at level k correspond
one to one with irreducible essential classes at levels d | k that boost
essentially to k.  So the number of irreducible essential classes above
each [A]_k follows from a recursion over divisors, without ever touching
individual Reidemeister orbits.
"""

from __future__ import annotations

import json
from dataclasses import dataclass, field, replace
from fractions import Fraction
from functools import lru_cache
from typing import Optional

from .crystal import AffineElement, CrystalGroup, SelfMapData, fstar_power, level_data
from .errors import BoostNotWellDefined, StructuralInvariantError
from .exactmath import divisors, moebius
from .nielsen import determinants, nielsen_number


@dataclass(frozen=True)
class EquivClass:
    level: int
    members: tuple
    essential: bool
    determinant: Fraction
    n_a: int
    ie: Optional[int] = None

    @property
    def representative(self) -> int:
        return self.members[0]


@dataclass(frozen=True)
class PeriodicReport:
    n: int
    divisors: tuple
    nielsen: dict
    classes: dict
    iib: int
    nf: dict
    np: dict


class PeriodicEngine:
    """Caches class tables, boosts and irreducible counts for one (g, f)."""

    def __init__(self, group: CrystalGroup, fmap: SelfMapData):
        self.g = group
        self.f = fmap
        self._level_data: dict = {}
        self._partition: dict = {}
        self._classes: dict = {}
        self._boosts: dict = {}
        self._fstar_holonomy: dict = {}

    # -- level tables ------------------------------------------------------

    def level_data(self, k: int):
        if k not in self._level_data:
            self._level_data[k] = level_data(self.g, self.f, k)
        return self._level_data[k]

    def partition(self, k: int) -> tuple:
        """~f^k-classes as sorted member tuples, ordered by smallest member."""
        if k in self._partition:
            return self._partition[k]
        g = self.g
        mult, inv = g.mult, g.inv
        phi_k, fs_id = self.level_data(k)
        # all right factors phi_k(C) s, then inverted: C A (phi_k(C) s)^-1
        twists = [(c, [inv[mult[phi_k[c]][s]] for s in fs_id]) for c in range(g.order)]
        owner = [None] * g.order
        classes = []
        for a in range(g.order):
            if owner[a] is not None:
                continue
            members = {a}
            frontier = [a]
            while frontier:
                nxt = []
                for x in frontier:
                    for c, rights in twists:
                        cx = mult[c][x]
                        for r in rights:
                            y = mult[cx][r]
                            if y not in members:
                                members.add(y)
                                nxt.append(y)
                frontier = nxt
            cls = tuple(sorted(members))
            for y in cls:
                if owner[y] is not None:
                    raise StructuralInvariantError(f"~f^{k} closure is not a partition")
                owner[y] = len(classes)
            classes.append(cls)
        self._partition[k] = (tuple(classes), tuple(owner))
        return self._partition[k]

    def class_index(self, k: int, a: int) -> int:
        return self.partition(k)[1][a]

    def _bare_classes(self, k: int) -> tuple:
        g = self.g
        dets = determinants(g, self.f, k)
        out = []
        for members in self.partition(k)[0]:
            value = dets[members[0]]
            if any(dets[b] != value for b in members):
                raise StructuralInvariantError(
                    f"det(I - A D^{k}) is not constant on the class of {g.labels[members[0]]}")
            n_a = Fraction(len(members), g.order) * abs(value)
            if n_a.denominator != 1:
                raise StructuralInvariantError(
                    f"N_A(f^{k}) = {n_a} for A = {g.labels[members[0]]} is not an integer")
            out.append(EquivClass(level=k, members=members, essential=value != 0,
                                  determinant=value, n_a=int(n_a)))
        return tuple(out)

    # -- boosting ----------------------------------------------------------

    def _holonomy_of_fstar(self, element_key, element: AffineElement, j: int) -> int:
        key = (element_key, j)
        if key not in self._fstar_holonomy:
            img = fstar_power(self.g, self.f, element, j)
            self._fstar_holonomy[key] = self.g.index_of(img.linear)
        return self._fstar_holonomy[key]

    def boost_set(self, k: int, a: int, n: int) -> frozenset:
        """Holonomy parts of (a,A) f_*^k(a,A) ... f_*^{n-k}(a,A) over all lifts (a,A)."""
        if n % k:
            raise ValueError(f"level {k} does not divide {n}")
        g = self.g
        mult = g.mult
        q = n // k
        if self.f.invertible:
            phi_k = self.level_data(k)[0]
            prod, cur = 0, a
            for _ in range(q):
                prod = mult[prod][cur]
                cur = phi_k[cur]
            return frozenset({prod})
        lift = g.lift(a)
        consts = [self._holonomy_of_fstar(("lift", a), lift, i * k) for i in range(q)]
        gens = []
        for s, v in enumerate(g.lattice.generators):
            t = AffineElement.translation_by(v)
            gens.append(tuple(self._holonomy_of_fstar(("lat", s), t, i * k) for i in range(q)))
        # enumerate the image of L in F^q
        one = (0,) * q
        seen = {one}
        frontier = [one]
        while frontier:
            nxt = []
            for h in frontier:
                for s in gens:
                    y = tuple(mult[x][z] for x, z in zip(h, s))
                    if y not in seen:
                        seen.add(y)
                        nxt.append(y)
            frontier = nxt
        out = set()
        for h in seen:
            prod = 0
            for hi, ci in zip(h, consts):
                prod = mult[mult[prod][hi]][ci]
            out.add(prod)
        return frozenset(out)

    def boost_target(self, k: int, class_idx: int, n: int) -> int:
        """Index of the ~f^n-class receiving the boost of class ``class_idx`` at level k."""
        key = (k, class_idx, n)
        if key in self._boosts:
            return self._boosts[key]
        members = self.partition(k)[0][class_idx]
        owner = self.partition(n)[1]
        targets = {owner[b] for a in members for b in self.boost_set(k, a, n)}
        if len(targets) != 1:
            labels = ", ".join(self.g.labels[self.partition(n)[0][t][0]] for t in sorted(targets))
            raise BoostNotWellDefined(
                f"boost not class-well-defined: [{self.g.labels[members[0]]}]_{k} reaches "
                f"classes {labels} at level {n}")
        self._boosts[key] = targets.pop()
        return self._boosts[key]

    # -- irreducible essential counts ---------------------------------------

    def classes(self, k: int) -> tuple:
        """Classes at level k with their irreducible essential counts."""
        if k in self._classes:
            return self._classes[k]
        bare = self._bare_classes(k)
        received = [0] * len(bare)
        for d in divisors(k)[:-1]:
            for b_idx, b in enumerate(self.classes(d)):
                t = self.boost_target(d, b_idx, k)
                if bare[t].essential and not b.essential:
                    raise StructuralInvariantError(
                        f"essential reducibility violated: inessential [{self.g.labels[b.representative]}]_{d} "
                        f"boosts to essential class at level {k}")
                if bare[t].essential:
                    received[t] += b.ie
        out = []
        for cls, r in zip(bare, received):
            ie = cls.n_a - r if cls.essential else 0
            if ie < 0:
                raise StructuralInvariantError(
                    f"structural invariant violated: negative irreducible count at "
                    f"[{self.g.labels[cls.representative]}]_{k}")
            out.append(replace(cls, ie=ie))
        self._classes[k] = tuple(out)
        return self._classes[k]

    def iib(self, n: int) -> int:
        total = 0
        for k in divisors(n)[:-1]:
            target_classes = self.classes(n)
            for idx, cls in enumerate(self.classes(k)):
                if cls.ie and not target_classes[self.boost_target(k, idx, n)].essential:
                    total += cls.ie
        return total

    def nf(self, n: int) -> int:
        return nielsen_number(self.g, self.f, n) + self.iib(n)

    def np_direct(self, n: int) -> int:
        return sum(c.ie for c in self.classes(n))

    def np_moebius(self, n: int) -> int:
        return sum(moebius(n // k) * self.nf(k) for k in divisors(n))

    def np(self, n: int) -> int:
        direct = self.np_direct(n)
        inverted = self.np_moebius(n)
        if direct != inverted:
            raise StructuralInvariantError(
                f"NP_{n}: irreducible class count {direct} != Moebius inversion {inverted}")
        return direct

    def report(self, n: int) -> PeriodicReport:
        divs = tuple(divisors(n))
        return PeriodicReport(
            n=n,
            divisors=divs,
            nielsen={k: nielsen_number(self.g, self.f, k) for k in divs},
            classes={k: self.classes(k) for k in divs},
            iib=self.iib(n),
            nf={k: self.nf(k) for k in divs},
            np={k: self.np(k) for k in divs},
        )


@lru_cache(maxsize=64)
def engine(g: CrystalGroup, f: SelfMapData) -> PeriodicEngine:
    return PeriodicEngine(g, f)


def _positive(n: int, what: str = "n") -> None:
    if not isinstance(n, int) or n < 1:
        raise ValueError(f"{what} must be a positive integer, got {n!r}")


def equivalence_classes(g: CrystalGroup, f: SelfMapData, k: int) -> tuple:
    """Partition of F into ~f^k-classes (without irreducible counts)."""
    _positive(k, "level")
    return engine(g, f)._bare_classes(k)


def class_of(g: CrystalGroup, f: SelfMapData, k: int, a: int) -> tuple:
    _positive(k, "level")
    e = engine(g, f)
    return e.partition(k)[0][e.class_index(k, a)]


def boost_set(g: CrystalGroup, f: SelfMapData, k: int, a: int, n: int) -> frozenset:
    _positive(k, "level")
    return engine(g, f).boost_set(k, a, n)


def boost_class(g: CrystalGroup, f: SelfMapData, k: int, a: int, n: int) -> int:
    """Rotational part of the boost of A from level k to level n.

    With invertible D this is A phi^k(A) phi^{2k}(A) ... phi^{n-k}(A).  With
    singular D the boost is a set; it must lie in one ~f^n-class, and its
    smallest element is returned.
    """
    e = engine(g, f)
    e.boost_target(k, e.class_index(k, a), n)
    return min(e.boost_set(k, a, n))


def irreducible_essential_counts(g: CrystalGroup, f: SelfMapData, n: int) -> dict:
    """{(k, representative): ie} for every class at every level k | n."""
    _positive(n)
    e = engine(g, f)
    return {(k, c.representative): c.ie for k in divisors(n) for c in e.classes(k)}


def iib(g: CrystalGroup, f: SelfMapData, n: int) -> int:
    """Number of irreducible essential classes at levels k | n, k < n, boosted inessentially to n."""
    _positive(n)
    return engine(g, f).iib(n)


def nf(g: CrystalGroup, f: SelfMapData, n: int) -> int:
    """Full Nielsen-Jiang periodic number NF_n(f) = N(f^n) + #IIB_n(f)."""
    _positive(n)
    return engine(g, f).nf(n)


def np(g: CrystalGroup, f: SelfMapData, n: int) -> int:
    """Prime Nielsen-Jiang periodic number, cross-checked by Moebius inversion."""
    _positive(n)
    return engine(g, f).np(n)


def periodic_report(g: CrystalGroup, f: SelfMapData, n: int) -> PeriodicReport:
    _positive(n)
    return engine(g, f).report(n)


# ---------------------------------------------------------------------------
# boosting graph


@dataclass
class BoostGraph:
    n: int
    nodes: list = field(default_factory=list)
    edges: list = field(default_factory=list)


def node_id(k: int, rep: int) -> str:
    return f"L{k}_{rep}"


def boost_graph(g: CrystalGroup, f: SelfMapData, n: int,
                essential_to_inessential_only: bool = False) -> BoostGraph:
    """Classes at every level k | n, with one edge per (class, level n') for k | n' | n, k < n'."""
    _positive(n)
    e = engine(g, f)
    graph = BoostGraph(n=n)
    levels = divisors(n)
    for k in levels:
        for cls in e.classes(k):
            graph.nodes.append({
                "id": node_id(k, cls.representative),
                "level": k,
                "representative": g.labels[cls.representative],
                "members": [g.labels[a] for a in cls.members],
                "essential": cls.essential,
                "n_a": cls.n_a,
                "ie": cls.ie,
            })
    for k in levels:
        for idx, cls in enumerate(e.classes(k)):
            for m in levels:
                if m <= k or m % k:
                    continue
                target = e.classes(m)[e.boost_target(k, idx, m)]
                if essential_to_inessential_only and not (cls.essential and not target.essential):
                    continue
                graph.edges.append({
                    "source": node_id(k, cls.representative),
                    "target": node_id(m, target.representative),
                    "flag": "ess" if target.essential else "iness",
                })
    return graph


def _dot_escape(text: str) -> str:
    return text.replace("\\", "\\\\").replace('"', '\\"')


def export_boost_graph(g: CrystalGroup, f: SelfMapData, n: int, fmt: str = "dot",
                       essential_to_inessential_only: bool = False) -> str:
    """Render the boosting graph as Graphviz DOT or JSON.

    Essential classes are boxes and inessential ones ellipses.
    """
    if fmt not in ("dot", "json"):
        raise ValueError(f"unknown graph format {fmt!r}; use 'dot' or 'json'")
    graph = boost_graph(g, f, n, essential_to_inessential_only)
    if fmt == "json":
        return json.dumps({"n": graph.n, "nodes": graph.nodes, "edges": graph.edges}, indent=2) + "\n"
    lines = [f'digraph "boost_{n}" {{', "  rankdir=LR;"]
    for node in graph.nodes:
        shape = "box" if node["essential"] else "ellipse"
        label = _dot_escape(f'[{node["representative"]}]_{node["level"]}') + f'\\nN_A={node["n_a"]}'
        lines.append(f'  {node["id"]} [label="{label}", shape={shape}];')
    for edge in graph.edges:
        lines.append(f'  {edge["source"]} -> {edge["target"]} [label="{edge["flag"]}"];')
    lines.append("}")
    return "\n".join(lines) + "\n"
