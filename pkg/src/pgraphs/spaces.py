"""Generic finite path spaces with a partial action of the degree monoid.

``PathSpace`` is the common interface used by the groupoid layer: a finite
list of points, the action ``act(x, m)`` (``None`` off the domain) and a
degree universe to quantify over.  Both the filter and the graph-morphism
presentations subclass it.
"""

from __future__ import annotations

from dataclasses import dataclass
from typing import Hashable, Iterable, Optional

from .degree import Degree, compose, lub
from .pgraph import PGraph
from .report import Report


class NotInDomainError(ValueError):
    """Raised when a point is acted on by a degree outside its domain."""


@dataclass(frozen=True)
class CylinderSet:
    """The basic set of points containing all of ``K1`` and none of ``K2``."""

    K1: frozenset = frozenset()
    K2: frozenset = frozenset()

    def __post_init__(self):
        object.__setattr__(self, "K1", frozenset(self.K1))
        object.__setattr__(self, "K2", frozenset(self.K2))

    def __str__(self):
        a = ",".join(sorted(self.K1)) or "∅"
        b = ",".join(sorted(self.K2)) or "∅"
        return f"Z({a}\\{b})"

    def to_json(self) -> dict:
        return {"K1": sorted(self.K1), "K2": sorted(self.K2)}

    def contains_set(self, ids: frozenset) -> bool:
        return self.K1 <= ids and not (self.K2 & ids)


class PathSpace:
    """A finite path space over a materialized graph."""

    kind = "abstract"

    def __init__(self, graph: PGraph, points: Iterable, depth_bound: Optional[Degree] = None):
        self.graph = graph
        self.points = list(points)
        self.depth_bound = depth_bound
        self._index = {x: i for i, x in enumerate(self.points)}
        self._act_cache: dict = {}
        self._boundary: Optional[list] = None

    def __len__(self):
        return len(self.points)

    def __iter__(self):
        return iter(self.points)

    def __contains__(self, x):
        return x in self._index

    def index(self, x) -> int:
        return self._index[x]

    @property
    def monoid(self):
        return self.graph.monoid

    @property
    def degrees(self) -> list[Degree]:
        return self.graph.degree_universe

    def fits(self, m: Degree) -> bool:
        return self.graph.fits(m)

    # -- to be provided by subclasses ----------------------------------------

    def _act(self, x, m: Degree):
        raise NotImplementedError

    def ids(self, x) -> frozenset:
        """The morphisms a point passes through (its image set)."""
        raise NotImplementedError

    def _boundary_test(self, x) -> bool:
        raise NotImplementedError

    def describe(self, x) -> str:
        return str(x)

    def point_to_json(self, x):
        raise NotImplementedError

    # -- generic layer --------------------------------------------------------

    def act(self, x, m: Degree):
        """``x · m`` or ``None`` when ``(x, m)`` is outside the action domain."""
        key = (x, m)
        if key not in self._act_cache:
            self._act_cache[key] = self._act(x, m)
        return self._act_cache[key]

    def act_strict(self, x, m: Degree):
        y = self.act(x, m)
        if y is None:
            raise NotInDomainError(f"{self.describe(x)} is not in the domain of {m}")
        return y

    def in_domain(self, x, m: Degree) -> bool:
        return self.act(x, m) is not None

    def in_cylinder(self, x, c: CylinderSet) -> bool:
        return c.contains_set(self.ids(x))

    def cylinder(self, c: CylinderSet) -> list:
        return [x for x in self.points if self.in_cylinder(x, c)]

    def is_boundary(self, x) -> bool:
        return self._boundary_test(x)

    def boundary(self) -> list:
        if self._boundary is None:
            self._boundary = [x for x in self.points if self._boundary_test(x)]
        return self._boundary

    def sort_points(self, xs: Iterable) -> list:
        return sorted(xs, key=self.index)

    def is_ultrafilter(self, x) -> bool:
        ids = self.ids(x)
        return not any(ids < self.ids(y) for y in self.points)


def action_axioms_check(space: PathSpace) -> Report:
    """S1, S2 and directedness of the action over every in-window triple.

    When ``m n`` (or the least upper bound in the directedness check) falls
    outside the window, the triple is skipped and flagged.
    """
    rep = Report(f"action axioms ({space.kind})")
    e = Degree(space.monoid, space.monoid.identity_value())
    degrees = space.degrees
    for x in space.points:
        rep.checked += 1
        if space.act(x, e) != x:
            rep.violation("S1 fails", point=space.describe(x))
        for m in degrees:
            xm = space.act(x, m)
            for n in degrees:
                mn = compose(m, n)
                if not space.fits(mn):
                    rep.flag("S2 composite outside window", point=space.describe(x), m=m, n=n)
                    continue
                rep.checked += 1
                lhs = space.act(x, mn)
                rhs = space.act(xm, n) if xm is not None else None
                if (lhs is None) != (rhs is None):
                    rep.violation("S2 domain mismatch", point=space.describe(x), m=m, n=n)
                elif lhs is not None and lhs != rhs:
                    rep.violation("S2 action mismatch", point=space.describe(x), m=m, n=n)
    for i, m in enumerate(degrees):
        dom_m = [x for x in space.points if space.in_domain(x, m)]
        for n in degrees[i + 1:]:
            both = [x for x in dom_m if space.in_domain(x, n)]
            if not both:
                continue
            rep.checked += 1
            top = lub(m, n)
            if top is not None and not space.fits(top):
                rep.flag("directedness witness outside window", m=m, n=n)
                continue
            candidates = ([top] if top is not None else []) + [
                l for l in degrees if m.leq(l) and n.leq(l)
            ]
            if not any(all(space.in_domain(x, l) for x in both) for l in candidates):
                rep.violation("action is not directed", m=m, n=n, point=space.describe(both[0]))
    return rep


def act_buckets(space: PathSpace) -> dict[Hashable, list[tuple]]:
    """Group all in-domain ``(x, m)`` by the point ``x · m``."""
    out: dict = {}
    for x in space.points:
        for m in space.degrees:
            z = space.act(x, m)
            if z is not None:
                out.setdefault(z, []).append((x, m))
    return out


def is_invariant_set(space: PathSpace, U: Iterable) -> bool:
    """``x · m = y · n`` with ``y ∈ U`` forces ``x ∈ U``."""
    return invariant_set_report(space, U).ok


def invariant_set_report(space: PathSpace, U: Iterable) -> Report:
    U = set(U)
    rep = Report("invariant set")
    for z, pairs in act_buckets(space).items():
        members = {x for x, _ in pairs}
        rep.checked += 1
        if members & U and not members <= U:
            outside = space.sort_points(members - U)[0]
            inside = space.sort_points(members & U)[0]
            rep.violation("orbit leaves the set", x=space.describe(outside), y=space.describe(inside))
    return rep
