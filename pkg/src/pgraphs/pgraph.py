"""Finite materialized P-graphs.

A ``PGraph`` stores a small category as an explicit morphism table plus a
composition mapping.  When ``window`` is set, the table holds only the
morphisms of degree ``<= window`` of a (possibly infinite) P-graph and
composition is partial: ``lam * mu`` is recorded exactly when the pair is
composable and ``d(lam) d(mu)`` still fits in the window.  Window bounds are
degree-down-closed, so every factor of a stored morphism is stored too.
"""

from __future__ import annotations

import itertools
from dataclasses import dataclass, field
from functools import cached_property
from typing import Iterable, Mapping, Optional

from .degree import (
    Degree,
    IncreasingSequence,
    Monoid,
    UnsupportedMonoidError,
    below,
    class_contains,
    compose,
    degree_class,
    identity,
    leq,
    left_divide,
    lub,
)
from .report import Report


class PGraphError(ValueError):
    pass


class SkeletonError(PGraphError):
    """Malformed skeleton: dangling endpoints, missing squares, cube failures."""


@dataclass(frozen=True)
class Morphism:
    id: str
    range: str
    source: str
    degree: Degree

    def __str__(self):
        return self.id


class PGraph:
    """Materialized P-graph (or a degree window of one).

    ``morphisms`` maps ids to ``Morphism``; each vertex ``v`` is also the id of
    its unit morphism.  ``composition`` maps composable id pairs to ids.
    """

    def __init__(
        self,
        monoid: Monoid,
        vertices: Iterable[str],
        morphisms: Mapping[str, Morphism],
        composition: Mapping[tuple, str],
        window: Optional[Degree] = None,
        name: str = "",
    ):
        self.monoid = monoid
        self.vertices = tuple(sorted(vertices))
        self.morphisms = dict(morphisms)
        self.composition = dict(composition)
        self.window = window
        self.name = name
        missing = [v for v in self.vertices if v not in self.morphisms]
        if missing:
            raise PGraphError(f"vertices without unit morphisms: {missing}")
        for m in self.morphisms.values():
            if m.range not in self.vertices or m.source not in self.vertices:
                raise PGraphError(f"morphism {m.id} has a dangling endpoint")

    @classmethod
    def build(cls, monoid, vertices, morphisms, composition=(), window=None, name=""):
        """Assemble a graph, adding units and all unit compositions.

        ``morphisms`` lists the non-unit morphisms as ``(id, range, source,
        degree_value)``; ``composition`` lists ``(a, b, ab)`` for non-units.
        """
        e = identity(monoid)
        table = {v: Morphism(v, v, v, e) for v in vertices}
        for mid, rng, src, deg in morphisms:
            if mid in table:
                raise PGraphError(f"duplicate id {mid!r}")
            d = deg if isinstance(deg, Degree) else Degree(monoid, deg)
            table[mid] = Morphism(mid, rng, src, d)
        comp = {}
        for m in table.values():
            comp[(m.range, m.id)] = m.id
            comp[(m.id, m.source)] = m.id
        for a, b, c in composition:
            comp[(a, b)] = c
        return cls(monoid, vertices, table, comp, window, name)

    def with_composition(self, overrides: Mapping[tuple, str]) -> "PGraph":
        """Copy with some composition entries replaced (used for mutation tests)."""
        comp = dict(self.composition)
        comp.update(overrides)
        return PGraph(self.monoid, self.vertices, self.morphisms, comp, self.window, self.name)

    # -- basic accessors ---------------------------------------------------

    def __len__(self):
        return len(self.morphisms)

    def __repr__(self):
        label = self.name or "PGraph"
        win = f", window={self.window}" if self.window is not None else ""
        return f"<{label}: {len(self.vertices)} vertices, {len(self.morphisms)} morphisms{win}>"

    def d(self, lam: str) -> Degree:
        return self.morphisms[lam].degree

    def r(self, lam: str) -> str:
        return self.morphisms[lam].range

    def s(self, lam: str) -> str:
        return self.morphisms[lam].source

    def is_unit(self, lam: str) -> bool:
        return lam in self.vertices

    def fits(self, deg: Degree) -> bool:
        return self.window is None or leq(deg, self.window)

    def composable(self, a: str, b: str) -> bool:
        """Composable in the underlying graph and inside the window."""
        return self.s(a) == self.r(b) and self.fits(compose(self.d(a), self.d(b)))

    def product(self, a: str, b: str) -> Optional[str]:
        return self.composition.get((a, b))

    def mul(self, a: str, b: str) -> str:
        c = self.composition.get((a, b))
        if c is None:
            raise PGraphError(f"{a}·{b} is not defined")
        return c

    @cached_property
    def order(self) -> list[str]:
        """Canonical enumeration order: by (degree, id)."""
        return sorted(self.morphisms, key=lambda m: (self.d(m).sort_key(), m))

    @cached_property
    def rank(self) -> dict[str, int]:
        return {m: i for i, m in enumerate(self.order)}

    def sort_ids(self, ids: Iterable[str]) -> list[str]:
        return sorted(ids, key=self.rank.__getitem__)

    @cached_property
    def by_degree(self) -> dict[Degree, list[str]]:
        out: dict[Degree, list[str]] = {}
        for m in self.order:
            out.setdefault(self.d(m), []).append(m)
        return out

    @cached_property
    def degree_universe(self) -> list[Degree]:
        """Degrees the path-space actions range over."""
        if self.window is not None:
            return below(self.window)
        return sorted(self.by_degree, key=Degree.sort_key)

    @cached_property
    def _factors(self) -> dict[str, dict[Degree, list[tuple]]]:
        out: dict[str, dict[Degree, list[tuple]]] = {m: {} for m in self.morphisms}
        for (a, b), c in self.composition.items():
            if c in out and a in self.morphisms:
                out[c].setdefault(self.d(a), []).append((a, b))
        return out

    def factor(self, lam: str, p: Degree) -> tuple[str, str]:
        """The unique ``(mu, nu)`` with ``lam = mu nu`` and ``d(mu) = p``."""
        pairs = self._factors[lam].get(p)
        if not pairs:
            raise PGraphError(f"{lam} has no factorization at degree {p}")
        return pairs[0]

    @cached_property
    def _cones(self) -> dict[str, frozenset]:
        out: dict[str, set] = {m: set() for m in self.morphisms}
        for (a, _b), c in self.composition.items():
            if a in out:
                out[a].add(c)
        return {m: frozenset(v) for m, v in out.items()}

    @cached_property
    def _extensions(self) -> dict[str, list[tuple]]:
        out: dict[str, list[tuple]] = {m: [] for m in self.morphisms}
        for (a, b), c in self.composition.items():
            if a in out:
                out[a].append((b, c))
        return out

    def extensions(self, lam: str) -> list[tuple]:
        """Pairs ``(ν, λν)`` for every recorded composite with prefix ``λ``."""
        return self._extensions[lam]

    @cached_property
    def _downsets(self) -> dict[str, frozenset]:
        return {
            lam: frozenset(a for pairs in fac.values() for a, _ in pairs)
            for lam, fac in self._factors.items()
        }

    def cone(self, lam: str) -> frozenset:
        """``lam Λ`` within the window."""
        return self._cones[lam]

    def downset(self, lam: str) -> frozenset:
        """All ``mu`` with ``mu ⪯ lam``."""
        return self._downsets[lam]

    def precedes(self, mu: str, lam: str) -> bool:
        """``mu ⪯ lam``, i.e. ``lam ∈ mu Λ``."""
        return lam in self._cones[mu]

    def sinks_from(self, v: str) -> list[str]:
        """All morphisms with range ``v`` (the set ``vΛ``) in canonical order."""
        return [m for m in self.order if self.r(m) == v]

    def to_json(self) -> dict:
        non_units = [m for m in self.order if not self.is_unit(m)]
        comps = sorted(
            ([a, b, c] for (a, b), c in self.composition.items()
             if not (self.is_unit(a) or self.is_unit(b))),
            key=lambda t: (self.rank.get(t[0], -1), self.rank.get(t[1], -1)),
        )
        return {
            "monoid": self.monoid.to_json(),
            "presentation": "explicit",
            "vertices": list(self.vertices),
            "morphisms": [
                {"id": m, "range": self.r(m), "source": self.s(m), "degree": self.d(m).to_json()}
                for m in non_units
            ],
            "composition": comps,
            "window": self.window.to_json() if self.window is not None else None,
        }


# ---------------------------------------------------------------------------
# Validation
# ---------------------------------------------------------------------------


def validate_category(G: PGraph) -> Report:
    rep = Report("category")
    e = identity(G.monoid)
    for v in G.vertices:
        u = G.morphisms[v]
        if u.degree != e or u.range != v or u.source != v:
            rep.violation("unit is malformed", unit=v)
    for m in G.order:
        if G.d(m) == e and not G.is_unit(m):
            rep.violation("degree-e morphism that is not a unit", morphism=m)
        if not G.fits(G.d(m)):
            rep.violation("morphism outside the window", morphism=m)

    for (a, b), c in G.composition.items():
        rep.checked += 1
        if a not in G.morphisms or b not in G.morphisms or c not in G.morphisms:
            rep.violation("composition mentions an unknown id", pair=(a, b), result=c)
            continue
        if G.s(a) != G.r(b):
            rep.violation("composition of a non-composable pair", pair=(a, b))
        if G.r(c) != G.r(a) or G.s(c) != G.s(b):
            rep.violation("composite has wrong endpoints", pair=(a, b), result=c)
        if G.d(c) != compose(G.d(a), G.d(b)):
            rep.violation("degree is not functorial", pair=(a, b), result=c)

    for a in G.order:
        rep.checked += 2
        if G.product(G.r(a), a) != a:
            rep.violation("left identity law fails", morphism=a, got=G.product(G.r(a), a))
        if G.product(a, G.s(a)) != a:
            rep.violation("right identity law fails", morphism=a, got=G.product(a, G.s(a)))

    starting: dict[str, list[str]] = {}
    for m in G.order:
        starting.setdefault(G.r(m), []).append(m)
    for a in G.order:
        for b in starting.get(G.s(a), []):
            if not G.composable(a, b):
                continue
            rep.checked += 1
            if G.product(a, b) is None:
                rep.violation("composable pair has no composite", pair=(a, b))

    for (a, b), ab in G.composition.items():
        if ab not in G.morphisms or b not in G.morphisms:
            continue
        for c in starting.get(G.s(b), []):
            if not G.fits(compose(G.d(ab), G.d(c))):
                continue
            bc = G.product(b, c)
            if bc is None:
                continue
            rep.checked += 1
            left, right = G.product(ab, c), G.product(a, bc)
            if left != right:
                rep.violation("associativity fails", triple=(a, b, c), left=left, right=right)
    return rep


def validate_ufp(G: PGraph) -> Report:
    """Every morphism factors exactly once through every splitting of its degree."""
    rep = Report("unique factorization")
    for lam in G.order:
        fac = G._factors[lam]
        for p in below(G.d(lam)):
            rep.checked += 1
            pairs = fac.get(p, [])
            if len(pairs) != 1:
                rep.violation(
                    "factorization is not unique" if pairs else "no factorization",
                    morphism=lam,
                    degree=p,
                    factorizations=pairs,
                )
    return rep


def validate(G: PGraph) -> Report:
    rep = validate_category(G)
    if rep.ok:
        rep.merge(validate_ufp(G))
    rep.name = "pgraph"
    return rep


def check_paths_category(G: PGraph) -> Report:
    """Cancellation, no inverses, and the order properties of ⪯."""
    rep = Report("category of paths")
    left: dict[tuple, str] = {}
    right: dict[tuple, str] = {}
    by_prefix: dict[str, list[tuple]] = {}
    for (a, b), c in G.composition.items():
        rep.checked += 1
        if c == G.s(b) and not (a == b == c):
            rep.violation("inverse pair", pair=(a, b))
        other = left.setdefault((a, c), b)
        if other != b:
            rep.violation("left cancellation fails", prefix=a, result=c, tails=(other, b))
        other = right.setdefault((b, c), a)
        if other != a:
            rep.violation("right cancellation fails", suffix=b, result=c, heads=(other, a))
        by_prefix.setdefault(a, []).append((b, c))
    for mu in G.order:
        for lam in G.cone(mu):
            if lam != mu and G.precedes(lam, mu):
                rep.violation("⪯ is not antisymmetric", pair=(mu, lam))
            for kappa in G.cone(lam):
                rep.checked += 1
                if not G.precedes(mu, kappa):
                    rep.violation("⪯ is not transitive", triple=(mu, lam, kappa))
    for mu, tails in by_prefix.items():
        for nu, mn in tails:
            for kappa, mk in tails:
                if G.precedes(mn, mk):
                    rep.checked += 1
                    if not G.precedes(nu, kappa):
                        rep.violation("⪯ is not left invariant", prefix=mu, pair=(nu, kappa))
    return rep


# ---------------------------------------------------------------------------
# Cones, minimal common extensions, finite alignment
# ---------------------------------------------------------------------------


def cone(G: PGraph, lam: str) -> frozenset:
    return G.cone(lam)


def mce(G: PGraph, mu: str, nu: str) -> frozenset:
    """Minimal elements (under ⪯) of ``mu Λ ∩ nu Λ`` inside the window."""
    common = G.cone(mu) & G.cone(nu)
    return frozenset(
        lam for lam in common if not any(o != lam and G.precedes(o, lam) for o in common)
    )


def is_finitely_aligned(G: PGraph) -> Report:
    """Certificates ``J = mce(mu, nu)`` for every pair, with window flags.

    ``unconfirmed``: the least upper bound of the degrees leaves the window, so
    ``J`` may be truncated.  ``boundary``: some member of ``J`` sits on the
    window boundary, so the cone decomposition was only checked up to it.
    """
    rep = Report("finite alignment")
    certs: dict[tuple, list[str]] = {}
    for mu in G.order:
        for nu in G.order:
            rep.checked += 1
            J = mce(G, mu, nu)
            certs[(mu, nu)] = G.sort_ids(J)
            common = G.cone(mu) & G.cone(nu)
            covered = set()
            for lam in J:
                covered |= G.cone(lam)
            if covered != common:
                rep.violation("cones are not a union over the certificate", pair=(mu, nu))
            if G.window is None:
                continue
            try:
                top = lub(G.d(mu), G.d(nu))
            except UnsupportedMonoidError:
                top = None
            if top is not None and not G.fits(top):
                rep.flag("unconfirmed", pair=(mu, nu))
            elif any(G.monoid.on_boundary(G.d(lam).value, G.window.value) for lam in J):
                rep.flag("boundary", pair=(mu, nu))
    rep.info["certificates"] = certs
    rep.info["max_certificate"] = max((len(j) for j in certs.values()), default=0)
    return rep


# ---------------------------------------------------------------------------
# Path prototypes
# ---------------------------------------------------------------------------


def _omega_on(monoid: Monoid, degrees: list[Degree], name: str) -> PGraph:
    def mid(p, q):
        return f"[{p},{q}]"

    vertices = [mid(p, p) for p in degrees]
    morphisms = []
    for q in degrees:
        for p in degrees:
            if p != q and leq(p, q):
                morphisms.append((mid(p, q), mid(p, p), mid(q, q), left_divide(p, q)))
    comp = []
    for q in degrees:
        for p in degrees:
            if p == q or not leq(p, q):
                continue
            for r in degrees:
                if r != q and leq(q, r):
                    comp.append((mid(p, q), mid(q, r), mid(p, r)))
    G = PGraph.build(monoid, vertices, morphisms, comp, None, name)
    G.prototype_pairs = {mid(p, q): (p, q) for q in degrees for p in degrees if leq(p, q)}
    return G


def build_omega(m: Degree) -> PGraph:
    """The prototype ``{(p, q) : p <= q <= m}`` with ``(p,q)(q,r) = (p,r)``."""
    if m.monoid.kind not in ("grid", "free"):
        raise UnsupportedMonoidError("prototypes need a weakly quasi-lattice ordered monoid")
    return _omega_on(m.monoid, below(m), f"Omega_{m}")


def build_omega_limit(seq: IncreasingSequence, window: Degree) -> PGraph:
    """The direct limit of ``Omega_{m_n}`` restricted to degrees ``<= window``."""
    monoid = seq.monoid
    if monoid.kind not in ("grid", "free"):
        raise UnsupportedMonoidError("prototypes need a weakly quasi-lattice ordered monoid")
    cls = degree_class(seq)
    degrees = [q for q in below(window) if class_contains(cls, q)]
    return _omega_on(monoid, degrees, f"Omega_{cls}|{window}")


# ---------------------------------------------------------------------------
# Skeleton presentations
# ---------------------------------------------------------------------------


@dataclass
class SkeletonPresentation:
    """Coloured edges plus factorization squares ``e f = f' e'``.

    ``edges`` maps an edge id to ``(range, source, colour)`` with colours
    ``1..k``.  A square pairs a two-edge path whose colours are out of order
    with the colour-sorted path it equals; either side may be listed first.
    """

    k: int
    vertices: tuple
    edges: dict
    squares: list = field(default_factory=list)

    def colour(self, e):
        return self.edges[e][2]


def _normal_word(sk: SkeletonPresentation, swap: dict, word: tuple) -> tuple:
    word = list(word)
    changed = True
    while changed:
        changed = False
        for i in range(len(word) - 1):
            x, y = word[i], word[i + 1]
            if sk.colour(x) > sk.colour(y):
                try:
                    word[i], word[i + 1] = swap[(x, y)]
                except KeyError:
                    raise SkeletonError(f"no square for the path {x}{y}") from None
                changed = True
    return tuple(word)


def _all_normal_forms(sk, swap, word: tuple) -> set:
    """Normal forms reachable by every order of square moves."""
    out = set()
    stack, seen = [tuple(word)], set()
    while stack:
        w = stack.pop()
        if w in seen:
            continue
        seen.add(w)
        moved = False
        for i in range(len(w) - 1):
            x, y = w[i], w[i + 1]
            if sk.colour(x) > sk.colour(y):
                moved = True
                a, b = swap[(x, y)]
                stack.append(w[:i] + (a, b) + w[i + 2:])
        if not moved:
            out.add(w)
    return out


def _square_table(sk: SkeletonPresentation) -> dict:
    E = sk.edges
    for e, (rng, src, col) in E.items():
        if rng not in sk.vertices or src not in sk.vertices:
            raise SkeletonError(f"edge {e} has a dangling endpoint")
        if not 1 <= col <= sk.k:
            raise SkeletonError(f"edge {e} has colour {col} outside 1..{sk.k}")
    swap: dict = {}
    for sq in sk.squares:
        (a, b), (c, d) = sq
        for x in (a, b, c, d):
            if x not in E:
                raise SkeletonError(f"square mentions unknown edge {x}")
        if sk.colour(a) > sk.colour(b):
            bad, good = (a, b), (c, d)
        else:
            bad, good = (c, d), (a, b)
        (x, y), (u, v) = bad, good
        if not (sk.colour(x) == sk.colour(v) and sk.colour(y) == sk.colour(u)
                and sk.colour(x) > sk.colour(y)):
            raise SkeletonError(f"square {sq} does not swap two colours")
        if not (E[x][1] == E[y][0] and E[u][1] == E[v][0]
                and E[x][0] == E[u][0] and E[y][1] == E[v][1]):
            raise SkeletonError(f"square {sq} has mismatched endpoints")
        if bad in swap and swap[bad] != good:
            raise SkeletonError(f"path {x}{y} is assigned two squares")
        swap[bad] = good
    for x in E:
        for y in E:
            if E[x][1] == E[y][0] and sk.colour(x) > sk.colour(y) and (x, y) not in swap:
                raise SkeletonError(f"no square for the path {x}{y}")
    return swap


def _check_cubes(sk: SkeletonPresentation, swap: dict) -> None:
    E = sk.edges
    for x, y, z in itertools.product(E, repeat=3):
        if E[x][1] != E[y][0] or E[y][1] != E[z][0]:
            continue
        if len({sk.colour(x), sk.colour(y), sk.colour(z)}) < 3:
            continue
        forms = _all_normal_forms(sk, swap, (x, y, z))
        if len(forms) > 1:
            raise SkeletonError(f"cube condition fails on {x}{y}{z}: {sorted(forms)}")


def from_skeleton(sk: SkeletonPresentation, window: Optional[Degree] = None, monoid=None) -> PGraph:
    """Materialize all colour-sorted paths of degree ``<= window``.

    Composition concatenates and then re-sorts colours with the squares.  The
    unique factorization property is *not* assumed; run ``validate_ufp``.
    """
    from .degree import GridMonoid

    monoid = monoid or GridMonoid(sk.k)
    swap = _square_table(sk)
    if sk.k >= 3:
        _check_cubes(sk, swap)
    E = sk.edges
    if window is None and _has_cycle(sk):
        raise SkeletonError("the skeleton has cycles; a window is required")

    sep = "" if all(len(e) == 1 for e in E) else "."

    def word_id(word):
        return sep.join(word)

    def word_degree(word):
        counts = [0] * sk.k
        for e in word:
            counts[sk.colour(e) - 1] += 1
        return Degree(monoid, tuple(counts))

    words: list[tuple] = []
    stack = [(e,) for e in sorted(E)]
    while stack:
        w = stack.pop()
        deg = word_degree(w)
        if window is not None and not leq(deg, window):
            continue
        words.append(w)
        last = w[-1]
        for f in sorted(E):
            if E[f][0] == E[last][1] and sk.colour(f) >= sk.colour(last):
                stack.append(w + (f,))

    ids = {w: word_id(w) for w in words}
    if len(set(ids.values())) != len(ids) or set(ids.values()) & set(sk.vertices):
        raise SkeletonError("edge ids produce ambiguous path names; use distinct ids")
    morphisms = [(ids[w], E[w[0]][0], E[w[-1]][1], word_degree(w)) for w in words]
    known = set(words)
    comp = []
    for a in words:
        for b in words:
            if E[a[-1]][1] != E[b[0]][0]:
                continue
            joined = a + b
            if window is not None and not leq(word_degree(joined), window):
                continue
            nf = _normal_word(sk, swap, joined)
            if nf not in known:
                raise SkeletonError(f"normal form {nf} escaped the window")
            comp.append((ids[a], ids[b], ids[nf]))
    return PGraph.build(monoid, sk.vertices, morphisms, comp, window, "skeleton")


def _has_cycle(sk: SkeletonPresentation) -> bool:
    adj: dict = {}
    for rng, src, _ in sk.edges.values():
        adj.setdefault(rng, set()).add(src)
    state: dict = {}

    def visit(v):
        state[v] = 1
        for w in adj.get(v, ()):
            if state.get(w) == 1 or (w not in state and visit(w)):
                return True
        state[v] = 2
        return False

    return any(v not in state and visit(v) for v in sk.vertices)
