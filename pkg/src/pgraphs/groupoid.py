"""Semidirect product groupoids of a path space, their bases and isomorphisms.

Elements are triples ``(x, q, y)`` with ``q = m n⁻¹`` and ``x · m = y · n``
for some witness ``(m, n)``.  Witnesses are carried along for convenience
but never take part in equality or hashing.
"""

from __future__ import annotations

import itertools
from dataclasses import dataclass, field
from typing import Callable, Iterable, Mapping, Optional, Union

from .degree import (
    Degree,
    GroupElement,
    group_compose,
    group_identity,
    group_invert,
    identity,
    leq,
    left_divide,
    lub,
    quotient,
)
from .filters import WindowOverflowError, shift_up
from .morphisms import MorphismError, prepend, to_filter
from .report import Report
from .spaces import CylinderSet, PathSpace


class GroupoidError(ValueError):
    pass


class NotAnElementError(GroupoidError):
    """``x · m ≠ y · n``, or one side is outside the action domain."""


class NonComposableError(GroupoidError):
    pass


@dataclass(frozen=True)
class GroupoidElement:
    x: object
    q: GroupElement
    y: object
    witness: Optional[tuple] = field(default=None, compare=False)

    def __str__(self):
        return f"({self.x}, {self.q}, {self.y})"


def make_element(space: PathSpace, x, m: Degree, n: Degree, y) -> GroupoidElement:
    xm = space.act(x, m)
    yn = space.act(y, n)
    if xm is None or yn is None or xm != yn:
        raise NotAnElementError(
            f"{space.describe(x)} · {m} ≠ {space.describe(y)} · {n}"
        )
    return GroupoidElement(x, quotient(m, n), y, (m, n))


def invert_element(g: GroupoidElement) -> GroupoidElement:
    w = (g.witness[1], g.witness[0]) if g.witness else None
    return GroupoidElement(g.y, group_invert(g.q), g.x, w)


def _find_witness(space: PathSpace, x, q: GroupElement, y, degrees) -> Optional[tuple]:
    for m in degrees:
        xm = space.act(x, m)
        if xm is None:
            continue
        for n in degrees:
            if quotient(m, n) == q and space.act(y, n) == xm:
                return (m, n)
    return None


def compose_elements(
    space: PathSpace, g: GroupoidElement, h: GroupoidElement, degrees=None
) -> GroupoidElement:
    """``(x, q, y)(y, r, z) = (x, qr, z)`` with a refined witness.

    With witnesses ``(m, n)`` and ``(m', n')`` and ``l = n ∨ m'`` the
    composite has witness ``(m n⁻¹l, n' m'⁻¹l)``.  If that leaves the window
    a witness is searched for among ``degrees``; if none is found the
    composite carries no witness.
    """
    if g.y != h.x:
        raise NonComposableError(f"{g} and {h} are not composable")
    q = group_compose(g.q, h.q)
    witness = None
    if g.witness and h.witness:
        m, n = g.witness
        m2, n2 = h.witness
        l = lub(n, m2)
        if l is not None and space.fits(l) and space.in_domain(g.y, l):
            a, b = left_divide(n, l), left_divide(m2, l)
            mm, nn = m * a, n2 * b
            if space.fits(mm) and space.fits(nn):
                xm, zn = space.act(g.x, mm), space.act(h.y, nn)
                if xm is not None and xm == zn:
                    witness = (mm, nn)
    if witness is None:
        witness = _find_witness(space, g.x, q, h.y, degrees or space.degrees)
    return GroupoidElement(g.x, q, h.y, witness)


class Groupoid:
    """A finite enumerated semidirect product groupoid (or a reduction)."""

    def __init__(self, space: PathSpace, elements: Iterable[GroupoidElement], name: str = ""):
        self.space = space
        self.name = name or f"groupoid({space.kind})"
        self.elements = sorted(set(elements), key=self.key)
        self._lookup = {g: g for g in self.elements}
        self._by_range: dict = {}
        for g in self.elements:
            self._by_range.setdefault(g.x, []).append(g)

    def key(self, g: GroupoidElement):
        return (self.space.index(g.x), self.space.index(g.y), g.q.sort_key())

    def __len__(self):
        return len(self.elements)

    def __iter__(self):
        return iter(self.elements)

    def __contains__(self, g):
        return g in self._lookup

    def canonical(self, g: GroupoidElement) -> GroupoidElement:
        return self._lookup.get(g, g)

    def unit(self, x) -> GroupoidElement:
        e = identity(self.space.monoid)
        return GroupoidElement(x, group_identity(self.space.monoid), x, (e, e))

    def r(self, g):
        return self.unit(g.x)

    def s(self, g):
        return self.unit(g.y)

    @property
    def unit_space(self) -> list:
        seen = []
        for g in self.elements:
            if g.x == g.y and g.q == group_identity(self.space.monoid):
                seen.append(g.x)
        return seen

    def starting_at(self, x) -> list:
        return self._by_range.get(x, [])

    def composable_pairs(self):
        for g in self.elements:
            for h in self.starting_at(g.y):
                yield g, h

    def compose(self, g, h) -> GroupoidElement:
        return self.canonical(compose_elements(self.space, g, h))

    def invert(self, g) -> GroupoidElement:
        return self.canonical(invert_element(g))

    def reduction(self, U: Iterable) -> "Groupoid":
        U = set(U)
        return Groupoid(self.space, [g for g in self.elements if g.x in U and g.y in U], f"{self.name}|U")

    def to_json(self) -> list:
        out = []
        for g in self.elements:
            out.append(
                {
                    "x": self.space.point_to_json(g.x),
                    "q": g.q.to_json(),
                    "y": self.space.point_to_json(g.y),
                    "witness": [g.witness[0].to_json(), g.witness[1].to_json()] if g.witness else None,
                }
            )
        return out


def enumerate_groupoid(space: PathSpace, degree_bound: Optional[Degree] = None) -> Groupoid:
    """All ``(x, q, y)`` with a witness ``(m, n)`` below ``degree_bound``.

    The stored witness is the lexicographically least one in canonical
    degree order.
    """
    degrees = [m for m in space.degrees if degree_bound is None or leq(m, degree_bound)]
    buckets: dict = {}
    for x in space.points:
        for m in degrees:
            z = space.act(x, m)
            if z is not None:
                buckets.setdefault(z, []).append((x, m))
    found: dict = {}
    for pairs in buckets.values():
        for (x, m), (y, n) in itertools.product(pairs, repeat=2):
            g = GroupoidElement(x, quotient(m, n), y, (m, n))
            old = found.get(g)
            if old is None or (m.sort_key(), n.sort_key()) < (
                old.witness[0].sort_key(),
                old.witness[1].sort_key(),
            ):
                found[g] = g
    gpd = Groupoid(space, found.values())
    gpd.degree_bound = degree_bound
    return gpd


# ---------------------------------------------------------------------------
# Basis sets
# ---------------------------------------------------------------------------

PointSet = Union[CylinderSet, frozenset, set, list, tuple, None]


@dataclass(frozen=True)
class BasisSet:
    """``Z(U, m, n, V)``; ``U``/``V`` are cylinder sets or explicit point sets.

    ``None`` stands for the whole space.
    """

    U: object
    m: Degree
    n: Degree
    V: object


def _in(space: PathSpace, x, S: PointSet) -> bool:
    if S is None:
        return True
    if isinstance(S, CylinderSet):
        return space.in_cylinder(x, S)
    return x in S


def basis_membership(space: PathSpace, g: GroupoidElement, Z: BasisSet) -> bool:
    if g.q != quotient(Z.m, Z.n):
        return False
    if not (_in(space, g.x, Z.U) and _in(space, g.y, Z.V)):
        return False
    xm = space.act(g.x, Z.m)
    return xm is not None and xm == space.act(g.y, Z.n)


def basis_elements(gpd: Groupoid, Z: BasisSet) -> list:
    return [g for g in gpd.elements if basis_membership(gpd.space, g, Z)]


@dataclass(frozen=True)
class YeeBasisSet:
    """``Z_Yee(F, m)`` for a finite set ``F`` of pairs with matching sources."""

    F: frozenset
    m: GroupElement


def prepend_point(space: PathSpace, lam: str, t):
    """``λt`` in either presentation, or ``None`` if it leaves the window."""
    G = space.graph
    try:
        if space.kind == "filters":
            if G.s(lam) not in t:
                return None
            return shift_up(G, lam, t)
        if G.s(lam) != t.range:
            return None
        return prepend(lam, t)
    except (WindowOverflowError, MorphismError):
        return None


def source_matched(G, A: Iterable[str], B: Iterable[str]) -> frozenset:
    """``A ∗_s B``."""
    return frozenset((a, b) for a in A for b in B if G.s(a) == G.s(b))


def yee_basis_membership(space: PathSpace, g: GroupoidElement, Z: YeeBasisSet) -> bool:
    G = space.graph
    if g.q != Z.m:
        return False
    for lam, mu in Z.F:
        if G.s(lam) != G.s(mu) or quotient(G.d(lam), G.d(mu)) != Z.m:
            continue
        if lam not in space.ids(g.x) or mu not in space.ids(g.y):
            continue
        for t in space.points:
            if prepend_point(space, lam, t) == g.x and prepend_point(space, mu, t) == g.y:
                return True
    return False


def gpd_cylinder(kappa: str, K: Iterable[str], lam: str, L: Iterable[str], G) -> BasisSet:
    """``Z(Z(κ\\K), d(κ), d(λ), Z(λ\\L))``."""
    return BasisSet(
        CylinderSet({kappa}, K), G.d(kappa), G.d(lam), CylinderSet({lam}, L)
    )


def tail_pairs(G, kappa: str, K: Iterable[str], lam: str, L: Iterable[str]) -> frozenset:
    """``F = {(κζ, λζ) : κζ ∈ K or λζ ∈ L}`` with matching sources."""
    K, L = set(K), set(L)
    out = set()
    for zeta, kz in G.extensions(kappa):
        lz = G.product(lam, zeta)
        if lz is None or G.s(kz) != G.s(lz):
            continue
        if kz in K or lz in L:
            out.add((kz, lz))
    return frozenset(out)


# ---------------------------------------------------------------------------
# The isomorphism induced by the conjugacy
# ---------------------------------------------------------------------------


def psi_h(g: GroupoidElement) -> GroupoidElement:
    """``(x, q, y) ↦ (h(x), q, h(y))``."""
    return GroupoidElement(to_filter(g.x), g.q, to_filter(g.y), g.witness)


def check_isomorphism(
    psi: Union[Callable, Mapping], G1: Groupoid, G2: Groupoid
) -> Report:
    """Bijectivity, composability both ways, homomorphism and inversion laws."""
    f = psi.__getitem__ if isinstance(psi, Mapping) else psi
    rep = Report("groupoid isomorphism")
    image = {}
    for g in G1.elements:
        rep.checked += 1
        pg = f(g)
        if pg not in G2:
            rep.violation("image is not an element of the target", element=g, image=pg)
            continue
        if pg in image:
            rep.violation("map is not injective", elements=(image[pg], g))
        image[pg] = g
    for h in G2.elements:
        if h not in image:
            rep.violation("map is not surjective", missing=h)
    if not rep.ok:
        return rep
    for g in G1.elements:
        rep.checked += 1
        if f(G1.invert(g)) != G2.invert(f(g)):
            rep.violation("inversion is not preserved", element=g)
    for g1, g2 in itertools.product(G1.elements, repeat=2):
        a, b = f(g1), f(g2)
        comp1 = g1.y == g2.x
        comp2 = a.y == b.x
        rep.checked += 1
        if comp1 != comp2:
            rep.violation("composability is not preserved", pair=(g1, g2))
            continue
        if comp1 and f(G1.compose(g1, g2)) != G2.compose(a, b):
            rep.violation("composition is not preserved", pair=(g1, g2))
    return rep


# ---------------------------------------------------------------------------
# Axioms and invariance
# ---------------------------------------------------------------------------


def groupoid_axiom_check(
    gpd: Groupoid,
    compose: Optional[Callable] = None,
    invert: Optional[Callable] = None,
) -> Report:
    """The three groupoid axioms on every element, pair and triple.

    ``compose``/``invert`` default to the groupoid's own operations and can
    be replaced to test a corrupted multiplication table.
    """
    mul = compose or gpd.compose
    inv = invert or gpd.invert
    rep = Report("groupoid axioms")
    elems = set(gpd.elements)
    for g in gpd.elements:
        rep.checked += 1
        gi = inv(g)
        if gi not in elems:
            rep.violation("not closed under inversion", element=g)
            continue
        if inv(gi) != g:
            rep.violation("(g⁻¹)⁻¹ ≠ g", element=g)
        if gi.y != g.x:
            rep.violation("(g⁻¹, g) is not composable", element=g)
    for g, h in gpd.composable_pairs():
        rep.checked += 1
        gh = mul(g, h)
        if gh not in elems:
            rep.violation("not closed under composition", pair=(g, h))
            continue
        if gh.x != g.x or gh.y != h.y:
            rep.violation("composite has wrong endpoints", pair=(g, h))
            continue
        try:
            if mul(inv(g), gh) != h:
                rep.violation("g⁻¹(gh) ≠ h", pair=(g, h))
            if mul(gh, inv(h)) != g:
                rep.violation("(gh)h⁻¹ ≠ g", pair=(g, h))
        except GroupoidError as exc:
            rep.violation(f"cancellation is undefined: {exc}", pair=(g, h))
            continue
        for k in gpd.starting_at(h.y):
            rep.checked += 1
            try:
                hk = mul(h, k)
                if hk in elems and mul(gh, k) != mul(g, hk):
                    rep.violation("associativity fails", triple=(g, h, k))
            except GroupoidError as exc:
                rep.violation(f"associativity is undefined: {exc}", triple=(g, h, k))
    units = gpd.unit_space
    rep.checked += 1
    if sorted(map(gpd.space.index, units)) != list(range(len(gpd.space))):
        rep.violation("unit space is not in bijection with the path space")
    return rep


def invariance_check(gpd: Groupoid, U: Iterable) -> bool:
    """``r(s⁻¹(U)) ⊆ U`` under the identification ``x ↦ (x, e, x)``."""
    U = set(U)
    return all(g.x in U for g in gpd.elements if g.y in U)


def reduction(gpd: Groupoid, U: Iterable) -> Groupoid:
    return gpd.reduction(U)


# ---------------------------------------------------------------------------
# Agreement of the two bases
# ---------------------------------------------------------------------------


def _small_subsets(items, size):
    items = list(items)
    for r in range(size + 1):
        yield from itertools.combinations(items, r)


def tau_equality_check(gpd: Groupoid, subset_size: int = 2) -> Report:
    """Finite shadow of the agreement of the two groupoid topologies.

    (a) ``Z_Yee(A ∗_s B, m)`` is the union of ``Z(Z(λ), d(λ), d(μ), Z(μ))``
    over the pairs with degree difference ``m``.
    (b) ``Z(Z(κ\\K), d(κ), d(λ), Z(λ\\L))`` equals
    ``Z_Yee({κ} ∗_s {λ}, q) \\ Z_Yee(F, q)`` with ``F`` the set of
    ``(κζ, λζ)`` where ``κζ ∈ K`` or ``λζ ∈ L``.

    Both are checked elementwise on the enumerated groupoid; ``A``, ``B``,
    ``K`` and ``L`` range over subsets of size at most ``subset_size``.
    """
    space = gpd.space
    G = space.graph
    rep = Report("basis agreement")
    elems = gpd.elements

    def yee(F, m):
        Z = YeeBasisSet(frozenset(F), m)
        return {g for g in elems if yee_basis_membership(space, g, Z)}

    def cyl(kappa, K, lam, L):
        Z = gpd_cylinder(kappa, K, lam, L, G)
        return {g for g in elems if basis_membership(space, g, Z)}

    simple = {}
    for lam in G.order:
        for mu in G.order:
            simple[(lam, mu)] = cyl(lam, (), mu, ())

    subsets = list(_small_subsets(G.order, subset_size)) + [tuple(G.order)]
    group_values = {quotient(G.d(a), G.d(b)) for a in G.order for b in G.order}
    cache: dict = {}
    for A in subsets:
        for B in subsets:
            pairs = source_matched(G, A, B)
            for m in group_values:
                F = frozenset(p for p in pairs if quotient(G.d(p[0]), G.d(p[1])) == m)
                if (F, m) in cache:
                    continue
                rep.checked += 1
                lhs = yee(F, m)
                rhs = set().union(*(simple[p] for p in F)) if F else set()
                cache[(F, m)] = lhs
                if lhs != rhs:
                    rep.violation("Z_Yee(A ∗_s B, m) is not the union of cylinders", A=A, B=B, m=m)

    for kappa in G.order:
        for lam in G.order:
            q = quotient(G.d(kappa), G.d(lam))
            if G.s(kappa) != G.s(lam):
                rep.checked += 1
                if simple[(kappa, lam)]:
                    rep.violation("cylinder with mismatched sources is nonempty", pair=(kappa, lam))
                continue
            base = yee({(kappa, lam)}, q)
            for K in _small_subsets(sorted(G.cone(kappa)), subset_size):
                for L in _small_subsets(sorted(G.cone(lam)), subset_size):
                    rep.checked += 1
                    F = tail_pairs(G, kappa, K, lam, L)
                    lhs = cyl(kappa, K, lam, L)
                    rhs = base - yee(F, q)
                    if lhs != rhs:
                        rep.violation(
                            "cylinder differs from the Z_Yee difference",
                            kappa=kappa, K=K, lam=lam, L=L,
                        )
    return rep


def basis_image_check(
    gm: Groupoid, gf: Groupoid, cylinders: Iterable[CylinderSet], degrees=None
) -> Report:
    """``ψ_h(Z(U, m, n, V)) = Z(h(U), m, n, h(V))`` for cylinder-generated ``U``, ``V``.

    Cylinders are deduplicated by the set of points they select.  On the
    filter side ``h(U)`` is the explicit image of ``U`` under ``h``.
    """
    ms, fs = gm.space, gf.space
    rep = Report("basis image")
    degrees = degrees or ms.degrees
    ext: dict = {}
    for c in cylinders:
        pts = frozenset(ms.cylinder(c))
        image = frozenset(to_filter(x) for x in pts)
        rep.checked += 1
        if image != frozenset(fs.cylinder(c)):
            rep.violation("h does not carry a cylinder onto its counterpart", cylinder=c)
        ext.setdefault(pts, image)
    findex = {g: i for i, g in enumerate(gf.elements)}
    for m in degrees:
        for n in degrees:
            q = quotient(m, n)
            lhs_x: dict = {}
            lhs_y: dict = {}
            rhs_x: dict = {}
            rhs_y: dict = {}
            zm = [g for g in gm.elements if basis_membership(ms, g, BasisSet(None, m, n, None))]
            zf = [g for g in gf.elements if basis_membership(fs, g, BasisSet(None, m, n, None))]
            for U, hU in ext.items():
                lhs_x[U] = _mask(findex, (psi_h(g) for g in zm if g.x in U))
                lhs_y[U] = _mask(findex, (psi_h(g) for g in zm if g.y in U))
                rhs_x[U] = _mask(findex, (g for g in zf if g.x in hU))
                rhs_y[U] = _mask(findex, (g for g in zf if g.y in hU))
            for U in ext:
                for V in ext:
                    rep.checked += 1
                    if lhs_x[U] & lhs_y[V] != rhs_x[U] & rhs_y[V]:
                        rep.violation("basis image differs", m=m, n=n, q=q)
    return rep


def _mask(index: dict, items) -> int:
    out = 0
    for g in items:
        out |= 1 << index[g]
    return out
