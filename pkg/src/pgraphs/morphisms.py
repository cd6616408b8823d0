"""The graph-morphism path space.

A path is a degree-preserving functor ``x`` from a path prototype into the
graph.  It is stored by its anchored values ``x(e, q)``; every other value
``x(p, q)`` is recovered by unique factorization.
"""

from __future__ import annotations

from dataclasses import dataclass, field
from typing import Optional, Union

from .degree import (
    Degree,
    DegreeClass,
    DegreeError,
    IncreasingSequence,
    below,
    class_contains,
    class_left_divide,
    class_of_degree,
    class_prepend,
    compose,
    degree_class,
    grid_class_to_sequence,
    identity,
    leq,
    left_divide,
    lub,
    sequence_to_grid_class,
)
from .filters import Filter, enumerate_filters, principal_chain
from .pgraph import PGraph, PGraphError
from .report import Report
from .spaces import CylinderSet, NotInDomainError, PathSpace


class MorphismError(ValueError):
    pass


class OutsideWindowError(MorphismError):
    """The requested value needs degrees the window does not materialize."""


@dataclass(frozen=True)
class PathMorphism:
    """Anchored values ``q ↦ x(e, q)`` over the stored degrees of the domain.

    Equality and hashing use only the domain class and the values.
    """

    graph: PGraph = field(compare=False, repr=False)
    domain_class: DegreeClass
    values: tuple
    window: Optional[Degree] = field(default=None, compare=False)

    def __post_init__(self):
        vals = tuple(sorted(self.values, key=lambda qv: qv[0].sort_key()))
        object.__setattr__(self, "values", vals)

    @property
    def anchored(self) -> dict:
        return dict(self.values)

    def at(self, q: Degree) -> str:
        try:
            return self.anchored[q]
        except KeyError:
            raise MorphismError(f"(e, {q}) is not in the stored domain") from None

    @property
    def degrees(self) -> list[Degree]:
        return [q for q, _ in self.values]

    @property
    def range(self) -> str:
        return self.at(identity(self.graph.monoid))

    def __str__(self):
        body = ", ".join(f"{q}:{v}" for q, v in self.values)
        return f"<{self.domain_class} | {body}>"

    def to_json(self) -> dict:
        return {
            "class": self.domain_class.to_json(),
            "values": [[q.to_json(), v] for q, v in self.values],
        }


def stored_degrees(G: PGraph, cls: DegreeClass, window: Optional[Degree] = None) -> list[Degree]:
    """``{q : (e, q) in the domain, q within the window}`` in canonical order."""
    window = window if window is not None else G.window
    if cls.is_finite:
        top = cls.as_degree()
        out = below(top)
        if window is not None:
            out = [q for q in out if leq(q, window)]
        return out
    if window is None:
        raise MorphismError(f"the class {cls} is infinite; a window is required")
    return [q for q in below(window) if class_contains(cls, q)]


def make_path_morphism(
    G: PGraph,
    cls: DegreeClass,
    assignment: dict,
    window: Optional[Degree] = None,
    check: bool = False,
) -> PathMorphism:
    x = PathMorphism(G, cls, tuple(assignment.items()), window if not cls.is_finite else None)
    if check:
        rep = validate_graph_morphism(x)
        if not rep.ok:
            raise MorphismError(f"not a graph morphism: {rep.witness}")
    return x


def path_from_top(G: PGraph, lam: str) -> PathMorphism:
    """The path with finite domain ``Ω_{d(λ)}`` through ``λ``."""
    top = G.d(lam)
    values = {q: G.factor(lam, q)[0] for q in below(top)}
    return PathMorphism(G, class_of_degree(top), tuple(values.items()))


# ---------------------------------------------------------------------------
# Evaluation and validation
# ---------------------------------------------------------------------------


def eval_path(x: PathMorphism, p: Degree, q: Degree) -> str:
    """``x(p, q)``: the unique ``ι`` with ``x(e, q) = x(e, p) ι``."""
    if not leq(p, q):
        raise MorphismError(f"{p} is not below {q}")
    lam = x.at(q)
    x.at(p)
    try:
        return x.graph.factor(lam, p)[1]
    except PGraphError:
        raise MorphismError(f"{lam} does not factor at {p}") from None


# ``eval`` is the natural name for callers of this module.
eval = eval_path  # noqa: A001


def validate_graph_morphism(x: PathMorphism) -> Report:
    G = x.graph
    rep = Report("graph morphism")
    e = identity(G.monoid)
    vals = x.anchored
    try:
        expected = stored_degrees(G, x.domain_class, x.window)
    except MorphismError as exc:
        rep.violation(str(exc))
        return rep
    if set(vals) != set(expected):
        rep.violation(
            "stored degrees do not match the domain",
            stored=sorted(map(str, vals)),
            expected=sorted(map(str, expected)),
        )
        return rep
    unknown = [v for v in vals.values() if v not in G.morphisms]
    if unknown:
        rep.violation("values are not morphisms of the graph", ids=unknown)
        return rep
    rep.checked += 1
    if not G.is_unit(vals[e]):
        rep.violation("x(e, e) is not a unit", value=vals[e])
    for q, lam in vals.items():
        rep.checked += 1
        if G.d(lam) != q:
            rep.violation("degree is not preserved", degree=q, value=lam, has=G.d(lam))
    if not rep.ok:
        return rep
    for q, lam in vals.items():
        if G.r(lam) != G.r(vals[e]):
            rep.violation("values have different ranges", degree=q, value=lam)
        for p in expected:
            if not leq(p, q):
                continue
            rep.checked += 1
            if not G.precedes(vals[p], lam):
                rep.violation("values are not coherent", lower=p, upper=q, pair=(vals[p], lam))
                continue
            if G.factor(lam, p)[0] != vals[p]:
                rep.violation("factorization disagrees", lower=p, upper=q)
    if not rep.ok:
        return rep
    for r in expected:
        for q in expected:
            if not leq(q, r):
                continue
            for p in expected:
                if not leq(p, q):
                    continue
                rep.checked += 1
                a, b, c = eval_path(x, p, q), eval_path(x, q, r), eval_path(x, p, r)
                if G.product(a, b) != c:
                    rep.violation("functoriality fails", triple=(p, q, r))
    return rep


# ---------------------------------------------------------------------------
# The action
# ---------------------------------------------------------------------------


def is_actionable(x: PathMorphism, p: Degree) -> bool:
    """``(e, p)`` lies in the domain of ``x``."""
    return class_contains(x.domain_class, p)


def class_representatives(cls: DegreeClass) -> list[IncreasingSequence]:
    """A few distinct increasing sequences whose class is ``cls``."""
    monoid = cls.monoid
    e = identity(monoid)
    if monoid.kind == "grid":
        canon = grid_class_to_sequence(cls)
    else:
        prefix, period = cls.value
        canon = IncreasingSequence(
            (Degree(monoid, prefix),), Degree(monoid, period) if period else None
        )
    start = canon.head[-1]
    reps = [canon, IncreasingSequence((e, start), canon.step)]
    if canon.step is not None:
        reps.append(IncreasingSequence((start,), compose(canon.step, canon.step)))
        reps.append(IncreasingSequence((e, start, compose(start, canon.step)), canon.step))
    for s in reps:
        if degree_class(s) != cls:
            raise DegreeError(f"representative {s} left the class {cls}")
    return reps


def _size(p: Degree) -> int:
    return sum(p.value) if p.monoid.kind == "grid" else len(p.value)


def _eventually_below(seq: IncreasingSequence, p: Degree) -> tuple[bool, int]:
    n = len(seq.head) + _size(p)
    for j in range(n + 1):
        if leq(p, seq.term(j)):
            return True, j
    return False, -1


def actionable_characterizations(x: PathMorphism, p: Degree) -> tuple[bool, bool, bool, bool]:
    """The four equivalent descriptions of ``(x, p)`` being actionable.

    1. ``(e, p)`` is in the domain;
    2. every representative sequence is eventually above ``p``;
    3. some representative sequence is eventually above ``p``;
    4. some representative sequence is above ``p`` at every term.
    """
    reps = class_representatives(x.domain_class)
    hits = [_eventually_below(s, p) for s in reps]
    c1 = is_actionable(x, p)
    c2 = all(ok for ok, _ in hits)
    c3 = any(ok for ok, _ in hits)
    c4 = False
    for s, (ok, j) in zip(reps, hits):
        if ok:
            tail = IncreasingSequence((s.term(j),), s.step)
            c4 = c4 or (degree_class(tail) == x.domain_class and leq(p, tail.term(0)))
    return c1, c2, c3, c4


def act_morphism(x: PathMorphism, m: Degree) -> PathMorphism:
    """``x · m`` with ``(x · m)(p, q) = x(mp, mq)``."""
    if not is_actionable(x, m):
        raise NotInDomainError(f"{m} is not in the domain of {x}")
    vals = x.anchored
    if m not in vals:
        raise OutsideWindowError(f"{m} is actionable but outside the stored window")
    cls = class_left_divide(m, x.domain_class)
    window = None
    if not cls.is_finite:
        window = left_divide(m, x.window)
    new = {}
    for mq in vals:
        if leq(m, mq):
            new[left_divide(m, mq)] = eval_path(x, m, mq)
    return PathMorphism(x.graph, cls, tuple(new.items()), window)


def degree_of(x: PathMorphism) -> DegreeClass:
    return x.domain_class


# ---------------------------------------------------------------------------
# The conjugacy with filters
# ---------------------------------------------------------------------------


def to_filter(x: PathMorphism) -> Filter:
    """``h(x)``: the image ``{x(e, q)}``."""
    return frozenset(v for _, v in x.values)


def from_filter(G: PGraph, y: Filter, order: Optional[list] = None) -> PathMorphism:
    """``h⁻¹(y)``: the path through a ⪯-increasing chain exhausting ``y``."""
    chain = principal_chain(G, y, order)
    seq = IncreasingSequence(tuple(G.d(mu) for mu in chain))
    cls = degree_class(seq)
    top = chain[-1]
    values = {q: G.factor(top, q)[0] for q in stored_degrees(G, cls)}
    return PathMorphism(G, cls, tuple(values.items()))


def prepend(lam: str, x: PathMorphism) -> PathMorphism:
    """``λx``: the path with ``(λx)(e, d(λ)) = λ`` and ``(λx) · d(λ) = x``."""
    G = x.graph
    if G.s(lam) != x.range:
        raise MorphismError(f"s({lam}) is not the range of the path")
    dl = G.d(lam)
    cls = class_prepend(dl, x.domain_class)
    window = None if cls.is_finite else G.window
    vals = x.anchored
    new = {}
    for q in stored_degrees(G, cls, window):
        r = lub(q, dl)
        tail = left_divide(dl, r)
        if tail not in vals:
            raise OutsideWindowError(f"{lam}·x needs x(e, {tail})")
        full = G.product(lam, vals[tail])
        if full is None:
            raise OutsideWindowError(f"{lam}·{vals[tail]} lies outside the window")
        new[q] = G.factor(full, q)[0]
    return PathMorphism(G, cls, tuple(new.items()), window)


def is_boundary_morphism(x: PathMorphism, depth_bound: Optional[Degree] = None) -> bool:
    """Every finite exhaustive ``E`` at ``s(x(e, m))`` has ``ν`` with ``x(m, m d(ν)) = ν``."""
    from .filters import _search_pool, is_exhaustive

    G = x.graph
    depth = depth_bound if depth_bound is not None else G.window
    vals = x.anchored
    for m, lam in vals.items():
        v = G.s(lam)
        tails = set()
        for nu in G.sinks_from(v):
            mq = compose(m, G.d(nu))
            if mq in vals and eval_path(x, m, mq) == nu:
                tails.add(nu)
        rest = [nu for nu in _search_pool(G, v, depth) if nu not in tails]
        if rest and is_exhaustive(G, rest):
            return False
    return True


def morphism_cylinder_membership(x: PathMorphism, c: CylinderSet) -> bool:
    return c.contains_set(to_filter(x))


def omega_translate_class(m: Union[DegreeClass, IncreasingSequence]):
    """Translate between ``(ℕ ∪ {∞})^k`` classes and increasing sequences."""
    if isinstance(m, IncreasingSequence):
        return sequence_to_grid_class(m)
    return grid_class_to_sequence(m)


class MorphismSpace(PathSpace):
    """The graph-morphism path space, enumerated as ``h⁻¹`` of the filters."""

    kind = "morphisms"

    def __init__(self, graph: PGraph, depth_bound: Optional[Degree] = None):
        points = [from_filter(graph, y) for y in enumerate_filters(graph)]
        super().__init__(graph, points, depth_bound)

    def _act(self, x, m):
        if not is_actionable(x, m) or m not in x.anchored:
            return None
        return act_morphism(x, m)

    def ids(self, x) -> frozenset:
        return to_filter(x)

    def _boundary_test(self, x) -> bool:
        return is_boundary_morphism(x, self.depth_bound)

    def describe(self, x) -> str:
        return str(x)

    def point_to_json(self, x):
        return x.to_json()


def conjugacy_report(fspace: PathSpace, mspace: PathSpace) -> Report:
    """C1 (bijection), C2 (domains correspond) and C3 (equivariance) for ``h``."""
    G = fspace.graph
    rep = Report("conjugacy")
    images = {}
    for x in mspace.points:
        rep.checked += 1
        y = to_filter(x)
        if y not in fspace:
            rep.violation("C1: image is not a point of the filter space", point=x)
            continue
        if from_filter(G, y) != x:
            rep.violation("C1: h⁻¹(h(x)) differs from x", point=x)
        if y in images:
            rep.violation("C1: h is not injective", points=(images[y], x))
        images[y] = x
    for y in fspace.points:
        rep.checked += 1
        if to_filter(from_filter(G, y)) != y:
            rep.violation("C1: h(h⁻¹(y)) differs from y", point=fspace.describe(y))
        if y not in images:
            rep.violation("C1: h is not surjective", point=fspace.describe(y))
    for m in fspace.degrees:
        rep.checked += 1
        dom_m = {to_filter(x) for x in mspace.points if mspace.in_domain(x, m)}
        dom_f = {y for y in fspace.points if fspace.in_domain(y, m)}
        if dom_m != dom_f:
            rep.violation("C2: domains differ", degree=m)
        for x in mspace.points:
            xm = mspace.act(x, m)
            if xm is None:
                continue
            rep.checked += 1
            if to_filter(xm) != fspace.act(to_filter(x), m):
                rep.violation("C3: h is not equivariant", point=x, degree=m)
    return rep


def check_conjugacy(G: PGraph) -> Report:
    from .filters import FilterSpace

    return conjugacy_report(FilterSpace(G), MorphismSpace(G))


def actionable_report(space: PathSpace) -> Report:
    """The four characterizations of actionability agree on every ``(x, p)``."""
    rep = Report("actionable characterizations")
    for x in space.points:
        for p in space.degrees:
            rep.checked += 1
            chars = actionable_characterizations(x, p)
            if len(set(chars)) != 1:
                rep.violation("characterizations disagree", point=x, degree=p, values=chars)
    return rep
