"""The filter path space: filters, shifts, the action, and boundary filters.

A filter is stored as a ``frozenset`` of morphism ids.  Inside a finite
window every filter has a largest element, so filters coincide with the
principal filters ``↓λ``; ``enumerate_filters`` relies on this and the test
suite checks it against a subset brute force.
"""

from __future__ import annotations

from typing import Iterable, Optional

from .degree import Degree, leq, lub
from .pgraph import PGraph
from .report import Report
from .spaces import (
    CylinderSet,
    NotInDomainError,
    PathSpace,
    action_axioms_check,
    invariant_set_report,
    is_invariant_set,
)

Filter = frozenset

__all__ = [
    "Filter",
    "FilterError",
    "WindowOverflowError",
    "NotInDomainError",
    "CylinderSet",
    "FilterSpace",
    "is_filter",
    "principal",
    "enumerate_filters",
    "range_of",
    "shift_down",
    "shift_up",
    "act",
    "cylinder_membership",
    "cylinder_enumerate",
    "is_ultrafilter",
    "is_exhaustive",
    "is_extendable",
    "is_boundary",
    "boundary_report",
    "principal_chain",
    "is_invariant_set",
    "invariant_set_report",
    "action_axioms_check",
]


class FilterError(ValueError):
    pass


class WindowOverflowError(FilterError):
    """A shift would need morphisms beyond the materialized window."""


def _known(G: PGraph, ids: Iterable[str]) -> frozenset:
    ids = frozenset(ids)
    unknown = ids - G.morphisms.keys()
    if unknown:
        raise FilterError(f"unknown morphism ids: {sorted(unknown)}")
    return ids


def is_filter(G: PGraph, x: Iterable[str]) -> Report:
    """Nonempty, hereditary and directed (report is truthy iff all hold)."""
    x = _known(G, x)
    rep = Report("filter")
    if not x:
        rep.violation("empty set")
        return rep
    for lam in G.sort_ids(x):
        for mu in G.sort_ids(G.downset(lam)):
            rep.checked += 1
            if mu not in x:
                rep.violation("not hereditary", member=lam, missing=mu)
    members = G.sort_ids(x)
    for i, mu in enumerate(members):
        for nu in members[i + 1:]:
            rep.checked += 1
            if not any(G.precedes(mu, lam) and G.precedes(nu, lam) for lam in x):
                rep.violation("not directed", pair=(mu, nu))
    return rep


def principal(G: PGraph, lam: str) -> Filter:
    """``↓λ``: every ``μ ⪯ λ``."""
    return frozenset(G.downset(lam))


def top_of(G: PGraph, x: Filter) -> str:
    """The largest element of a window filter."""
    for lam in x:
        if G.downset(lam) == x:
            return lam
    raise FilterError("the filter has no largest element")


def enumerate_filters(G: PGraph) -> list[Filter]:
    """All filters of the materialized graph in canonical order.

    The order follows the canonical order of each filter's largest element.
    """
    return [principal(G, lam) for lam in G.order]


def range_of(G: PGraph, x: Filter) -> str:
    units = [m for m in x if G.is_unit(m)]
    if len(units) != 1:
        raise FilterError(f"a filter contains exactly one unit, found {units}")
    return units[0]


def shift_down(G: PGraph, lam: str, x: Filter) -> Filter:
    """``{μ : λμ ∈ x}``."""
    if lam not in x:
        raise FilterError(f"{lam} is not in the filter")
    return frozenset(b for b, c in G.extensions(lam) if c in x)


def shift_up(G: PGraph, lam: str, x: Filter) -> Filter:
    """``{ζ : ζ ⪯ λμ for some μ ∈ x}``."""
    if G.s(lam) != range_of(G, x):
        raise FilterError(f"s({lam}) does not match the range of the filter")
    out: set = set()
    for mu in x:
        lm = G.product(lam, mu)
        if lm is None:
            raise WindowOverflowError(f"{lam}·{mu} lies outside the window")
        out |= G.downset(lm)
    return frozenset(out)


def _member_of_degree(G: PGraph, x: Filter, m: Degree) -> Optional[str]:
    hits = [lam for lam in x if G.d(lam) == m]
    if len(hits) > 1:
        raise FilterError(f"degree map is not injective on the filter at {m}")
    return hits[0] if hits else None


def act(G: PGraph, x: Filter, m: Degree) -> Filter:
    """``x · m``: shift down by the unique member of degree ``m``."""
    mu = _member_of_degree(G, x, m)
    if mu is None:
        raise NotInDomainError(f"the filter has no member of degree {m}")
    return shift_down(G, mu, x)


def cylinder_membership(x: Filter, c: CylinderSet) -> bool:
    return c.contains_set(frozenset(x))


def cylinder_enumerate(space: PathSpace, c: CylinderSet) -> list:
    return space.cylinder(c)


def is_ultrafilter(space: "FilterSpace", x: Filter) -> bool:
    return space.is_ultrafilter(x)


def is_exhaustive(G: PGraph, E: Iterable[str]) -> bool:
    """Every ``λ`` with ``r(λ) ∈ r(E)`` shares an extension with some ``μ ∈ E``."""
    E = list(_known(G, E))
    vertices = {G.r(mu) for mu in E}
    for lam in G.order:
        if G.r(lam) in vertices and not any(G.cone(lam) & G.cone(mu) for mu in E):
            return False
    return True


def exhaustive_witness(G: PGraph, E: Iterable[str]) -> Optional[str]:
    E = list(_known(G, E))
    vertices = {G.r(mu) for mu in E}
    for lam in G.order:
        if G.r(lam) in vertices and not any(G.cone(lam) & G.cone(mu) for mu in E):
            return lam
    return None


def _search_pool(G: PGraph, v: str, depth: Optional[Degree]) -> list[str]:
    pool = G.sinks_from(v)
    if depth is not None:
        pool = [m for m in pool if leq(G.d(m), depth)]
    return pool


def is_extendable(G: PGraph, mu: str, x: Filter, depth_bound: Optional[Degree] = None) -> bool:
    """Whether every finite exhaustive ``E`` at ``s(μ)`` has ``ν`` with ``μν ∈ x``.

    Exhaustive sets are closed under enlargement within ``s(μ)Λ``, so an
    exhaustive ``E`` avoiding the tails ``{ν : μν ∈ x}`` exists exactly when the
    complement of the tails is itself a nonempty exhaustive set.
    """
    if mu not in x:
        raise FilterError(f"{mu} is not in the filter")
    depth = depth_bound if depth_bound is not None else G.window
    tails = shift_down(G, mu, x)
    rest = [nu for nu in _search_pool(G, G.s(mu), depth) if nu not in tails]
    return not rest or not is_exhaustive(G, rest)


def boundary_report(G: PGraph, x: Filter, depth_bound: Optional[Degree] = None) -> Report:
    rep = Report("boundary filter")
    depth = depth_bound if depth_bound is not None else G.window
    for mu in G.sort_ids(x):
        rep.checked += 1
        if not is_extendable(G, mu, x, depth):
            rep.violation("not extendable", member=mu)
    if G.window is not None:
        rep.flag("search truncated at the window", window=G.window)
    if depth is not None and any(not leq(G.d(m), depth) for m in G.order):
        rep.flag("search truncated at the depth bound", depth=depth)
    rep.info["depth_bound"] = None if depth is None else depth.to_json()
    return rep


def is_boundary(G: PGraph, x: Filter, depth_bound: Optional[Degree] = None) -> bool:
    """Every member of ``x`` is extendable (boundary within the depth bound)."""
    return boundary_report(G, x, depth_bound).ok


def principal_chain(G: PGraph, y: Filter, order: Optional[list[str]] = None) -> list[str]:
    """A ⪯-increasing chain in ``y`` whose principal filters exhaust ``y``.

    Members are absorbed one at a time in the given order (canonical by
    default); each step moves to the member of ``y`` of degree
    ``d(μ_n) ∨ d(next)``, which dominates both.
    """
    members = list(order) if order is not None else G.sort_ids(y)
    if set(members) != set(y):
        raise FilterError("the enumeration order must list the filter exactly")
    chain = [range_of(G, y)]
    for nu in members:
        cur = chain[-1]
        if G.precedes(nu, cur):
            continue
        top = lub(G.d(cur), G.d(nu))
        nxt = _member_of_degree(G, y, top) if top is not None else None
        if nxt is None or not (G.precedes(cur, nxt) and G.precedes(nu, nxt)):
            raise FilterError(f"{cur} and {nu} have no common extension in the filter")
        chain.append(nxt)
    return chain


class FilterSpace(PathSpace):
    """The (window) filter path space of a graph."""

    kind = "filters"

    def __init__(self, graph: PGraph, depth_bound: Optional[Degree] = None):
        super().__init__(graph, enumerate_filters(graph), depth_bound)

    def _act(self, x, m):
        mu = _member_of_degree(self.graph, x, m)
        return None if mu is None else shift_down(self.graph, mu, x)

    def ids(self, x) -> frozenset:
        return x

    def _boundary_test(self, x) -> bool:
        return is_boundary(self.graph, x, self.depth_bound)

    def describe(self, x) -> str:
        return "{" + ",".join(self.graph.sort_ids(x)) + "}"

    def point_to_json(self, x):
        return self.graph.sort_ids(x)

    def range_of(self, x) -> str:
        return range_of(self.graph, x)
