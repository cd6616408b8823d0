"""Degree monoids P inside groups Q.

Three monoid families are supported:

* ``GridMonoid(k)``: the lattice ordered pair (Z^k, N^k);
* ``FreeMonoid(letters)``: the free monoid in the free group, ordered by prefixes;
* ``GridSubmonoid(k, generators)``: a finitely generated submonoid of N^k.  These
  are generally *not* weakly quasi-lattice ordered, so ``lub`` refuses them and
  ``minimal_upper_bounds`` has to be used instead.

Degrees are immutable ``Degree`` values tagged by their monoid.  Group elements
``q = m n^-1`` are canonicalised (integer vectors or reduced signed words) so
that equality never depends on the pair ``(m, n)`` used to produce them.
"""

from __future__ import annotations

import itertools
import math
from dataclasses import dataclass
from functools import lru_cache
from typing import Iterable, Optional, Sequence, Union

INF = math.inf


class DegreeError(ValueError):
    """Raised on tag mismatches and malformed payloads."""


class UnsupportedMonoidError(DegreeError):
    """Raised when an operation needs a monoid family it does not handle."""


# ---------------------------------------------------------------------------
# Monoid descriptors
# ---------------------------------------------------------------------------


@dataclass(frozen=True)
class GridMonoid:
    k: int

    kind = "grid"
    wqlo = True

    def __post_init__(self):
        if self.k < 1:
            raise DegreeError("grid rank must be positive")

    def check(self, value) -> tuple:
        value = tuple(int(v) for v in value)
        if len(value) != self.k or any(v < 0 for v in value):
            raise DegreeError(f"{value!r} is not an element of N^{self.k}")
        return value

    def identity_value(self) -> tuple:
        return (0,) * self.k

    def compose_values(self, a, b):
        return tuple(x + y for x, y in zip(a, b))

    def leq_values(self, a, b) -> bool:
        return all(x <= y for x, y in zip(a, b))

    def lub_values(self, a, b):
        return tuple(max(x, y) for x, y in zip(a, b))

    def left_divide_values(self, p, r):
        return tuple(y - x for x, y in zip(p, r))

    def below_values(self, m) -> list:
        return [tuple(v) for v in itertools.product(*(range(c + 1) for c in m))]

    def on_boundary(self, d, window) -> bool:
        return any(x >= w for x, w in zip(d, window))

    def sort_key(self, value):
        return tuple(value)

    def format(self, value) -> str:
        if self.k == 1:
            return str(value[0])
        return "(" + ",".join(map(str, value)) + ")"

    def to_json(self) -> dict:
        return {"kind": "grid", "k": self.k}

    def degree_to_json(self, value):
        return list(value)

    def degree_from_json(self, data):
        if isinstance(data, int):
            data = [data]
        return self.check(data)


@dataclass(frozen=True)
class FreeMonoid:
    letters: tuple

    kind = "free"
    wqlo = True

    def __post_init__(self):
        object.__setattr__(self, "letters", tuple(self.letters))
        if len(set(self.letters)) != len(self.letters) or not self.letters:
            raise DegreeError("free monoid needs distinct letters")

    def check(self, value) -> tuple:
        if isinstance(value, str):
            value = tuple(value) if all(len(c) == 1 for c in self.letters) else (value,)
        value = tuple(value)
        bad = [c for c in value if c not in self.letters]
        if bad:
            raise DegreeError(f"letters {bad!r} not in alphabet {self.letters!r}")
        return value

    def identity_value(self) -> tuple:
        return ()

    def compose_values(self, a, b):
        return tuple(a) + tuple(b)

    def leq_values(self, a, b) -> bool:
        return len(a) <= len(b) and tuple(b[: len(a)]) == tuple(a)

    def lub_values(self, a, b):
        if self.leq_values(a, b):
            return tuple(b)
        if self.leq_values(b, a):
            return tuple(a)
        return None

    def left_divide_values(self, p, r):
        return tuple(r[len(p):])

    def below_values(self, m) -> list:
        return [tuple(m[:i]) for i in range(len(m) + 1)]

    def on_boundary(self, d, window) -> bool:
        return len(d) >= len(window)

    def sort_key(self, value):
        return (len(value), tuple(value))

    def format(self, value) -> str:
        return "".join(value) if value else "ε"

    def to_json(self) -> dict:
        return {"kind": "free", "letters": list(self.letters)}

    def degree_to_json(self, value):
        return "".join(value) if all(len(c) == 1 for c in self.letters) else list(value)

    def degree_from_json(self, data):
        return self.check(data)


@dataclass(frozen=True)
class GridSubmonoid:
    k: int
    generators: tuple

    kind = "grid-submonoid"
    wqlo = False

    def __post_init__(self):
        gens = tuple(sorted({tuple(int(c) for c in g) for g in self.generators}))
        if any(len(g) != self.k or any(c < 0 for c in g) or not any(g) for g in gens):
            raise DegreeError("submonoid generators must be nonzero vectors in N^k")
        object.__setattr__(self, "generators", gens)

    def witness(self, value) -> Optional[tuple]:
        """Generator multiplicities summing to ``value``, or ``None``."""
        return _submonoid_witness(self.generators, tuple(value))

    def contains(self, value) -> bool:
        return self.witness(value) is not None

    def check(self, value) -> tuple:
        value = tuple(int(v) for v in value)
        if len(value) != self.k or not self.contains(value):
            raise DegreeError(f"{value!r} is not in the submonoid generated by {self.generators}")
        return value

    def identity_value(self) -> tuple:
        return (0,) * self.k

    def compose_values(self, a, b):
        return tuple(x + y for x, y in zip(a, b))

    def leq_values(self, a, b) -> bool:
        diff = tuple(y - x for x, y in zip(a, b))
        return all(c >= 0 for c in diff) and self.contains(diff)

    def lub_values(self, a, b):
        raise UnsupportedMonoidError(
            "grid submonoids need not have least upper bounds; use minimal_upper_bounds"
        )

    def left_divide_values(self, p, r):
        return tuple(y - x for x, y in zip(p, r))

    def below_values(self, m) -> list:
        """Submonoid elements lying componentwise below ``m`` in the ambient grid."""
        return [
            tuple(v)
            for v in itertools.product(*(range(c + 1) for c in m))
            if self.contains(v)
        ]

    def on_boundary(self, d, window) -> bool:
        return any(x >= w for x, w in zip(d, window))

    def sort_key(self, value):
        return tuple(value)

    def format(self, value) -> str:
        return "(" + ",".join(map(str, value)) + ")"

    def to_json(self) -> dict:
        return {
            "kind": "grid-submonoid",
            "k": self.k,
            "generators": [list(g) for g in self.generators],
        }

    def degree_to_json(self, value):
        return list(value)

    def degree_from_json(self, data):
        return self.check(data)


Monoid = Union[GridMonoid, FreeMonoid, GridSubmonoid]


@lru_cache(maxsize=None)
def _submonoid_witness(generators: tuple, target: tuple) -> Optional[tuple]:
    if not any(target):
        return (0,) * len(generators)
    for i, g in enumerate(generators):
        rest = tuple(t - c for t, c in zip(target, g))
        if all(c >= 0 for c in rest):
            sub = _submonoid_witness(generators, rest)
            if sub is not None:
                return sub[:i] + (sub[i] + 1,) + sub[i + 1:]
    return None


def monoid_from_json(data: dict) -> Monoid:
    kind = data.get("kind")
    if kind == "grid":
        return GridMonoid(int(data["k"]))
    if kind == "free":
        return FreeMonoid(tuple(data["letters"]))
    if kind == "grid-submonoid":
        return GridSubmonoid(int(data["k"]), tuple(tuple(g) for g in data["generators"]))
    raise DegreeError(f"unknown monoid kind {kind!r}")


# ---------------------------------------------------------------------------
# Degrees
# ---------------------------------------------------------------------------


@dataclass(frozen=True)
class Degree:
    monoid: Monoid
    value: tuple

    def __post_init__(self):
        object.__setattr__(self, "value", self.monoid.check(self.value))

    def __mul__(self, other: "Degree") -> "Degree":
        return compose(self, other)

    def __str__(self):
        return self.monoid.format(self.value)

    def __repr__(self):
        return f"Degree({self})"

    def leq(self, other: "Degree") -> bool:
        return leq(self, other)

    @property
    def is_identity(self) -> bool:
        return self.value == self.monoid.identity_value()

    def sort_key(self):
        return self.monoid.sort_key(self.value)

    def to_json(self):
        return self.monoid.degree_to_json(self.value)


def degree(monoid: Monoid, value) -> Degree:
    return Degree(monoid, value)


def identity(monoid: Monoid) -> Degree:
    return Degree(monoid, monoid.identity_value())


def _same_tag(*degrees) -> Monoid:
    monoid = degrees[0].monoid
    for d in degrees[1:]:
        if d.monoid != monoid:
            raise DegreeError(f"tag mismatch: {monoid} vs {d.monoid}")
    return monoid


def compose(p: Degree, q: Degree) -> Degree:
    monoid = _same_tag(p, q)
    return Degree(monoid, monoid.compose_values(p.value, q.value))


def leq(p: Degree, r: Degree) -> bool:
    """``p <= r`` iff ``p q = r`` for some ``q`` in the monoid."""
    monoid = _same_tag(p, r)
    return monoid.leq_values(p.value, r.value)


def lub(p: Degree, r: Degree) -> Optional[Degree]:
    """Least common upper bound, or ``None`` when there is no common upper bound."""
    monoid = _same_tag(p, r)
    value = monoid.lub_values(p.value, r.value)
    return None if value is None else Degree(monoid, value)


def left_divide(p: Degree, r: Degree) -> Degree:
    """The unique ``q`` with ``p q = r``; requires ``p <= r``."""
    monoid = _same_tag(p, r)
    if not monoid.leq_values(p.value, r.value):
        raise DegreeError(f"{p} is not below {r}")
    return Degree(monoid, monoid.left_divide_values(p.value, r.value))


def below(m: Degree) -> list[Degree]:
    """All degrees ``p <= m`` in canonical order."""
    monoid = m.monoid
    out = [Degree(monoid, v) for v in monoid.below_values(m.value)]
    if monoid.kind == "grid-submonoid":
        out = [p for p in out if leq(p, m)]
    return sorted(out, key=Degree.sort_key)


def minimal_upper_bounds(p: Degree, r: Degree, search_bound: Degree) -> set[Degree]:
    """All minimal common upper bounds of ``p`` and ``r`` found below ``search_bound``.

    For grid submonoids the search runs over submonoid elements componentwise
    below ``search_bound``.  For free monoids the bound limits word length.
    """
    monoid = _same_tag(p, r, search_bound)
    if monoid.kind == "free":
        candidate = monoid.lub_values(p.value, r.value)
        if candidate is None or len(candidate) > len(search_bound.value):
            return set()
        return {Degree(monoid, candidate)}
    pool = [Degree(monoid, v) for v in monoid.below_values(search_bound.value)]
    common = [c for c in pool if leq(p, c) and leq(r, c)]
    return {c for c in common if not any(o != c and leq(o, c) for o in common)}


# ---------------------------------------------------------------------------
# Group elements q = m n^-1
# ---------------------------------------------------------------------------


@dataclass(frozen=True)
class GroupElement:
    """Element of the enveloping group: Z^k vector, or reduced word of (letter, ±1)."""

    monoid: Monoid
    value: tuple

    def __post_init__(self):
        if self.monoid.kind == "free":
            for (a, s), (b, t) in zip(self.value, self.value[1:]):
                if a == b and s == -t:
                    raise DegreeError("free group payload is not reduced")

    def __mul__(self, other: "GroupElement") -> "GroupElement":
        return group_compose(self, other)

    def __str__(self):
        if self.monoid.kind == "free":
            if not self.value:
                return "ε"
            return "".join(a if s > 0 else f"{a}⁻¹" for a, s in self.value)
        if len(self.value) == 1:
            return str(self.value[0])
        return "(" + ",".join(map(str, self.value)) + ")"

    def __repr__(self):
        return f"GroupElement({self})"

    def sort_key(self):
        if self.monoid.kind == "free":
            return (len(self.value), self.value)
        return self.value

    def to_json(self):
        if self.monoid.kind == "free":
            return [a if s > 0 else "-" + a for a, s in self.value]
        return list(self.value)


def _reduce(word: Iterable[tuple]) -> tuple:
    out: list = []
    for letter in word:
        if out and out[-1][0] == letter[0] and out[-1][1] == -letter[1]:
            out.pop()
        else:
            out.append(letter)
    return tuple(out)


def group_identity(monoid: Monoid) -> GroupElement:
    return GroupElement(monoid, () if monoid.kind == "free" else (0,) * monoid.k)


def embed(m: Degree) -> GroupElement:
    if m.monoid.kind == "free":
        return GroupElement(m.monoid, tuple((a, 1) for a in m.value))
    return GroupElement(m.monoid, tuple(m.value))


def group_compose(q: GroupElement, r: GroupElement) -> GroupElement:
    if q.monoid != r.monoid:
        raise DegreeError(f"tag mismatch: {q.monoid} vs {r.monoid}")
    if q.monoid.kind == "free":
        return GroupElement(q.monoid, _reduce(q.value + r.value))
    return GroupElement(q.monoid, tuple(a + b for a, b in zip(q.value, r.value)))


def group_invert(q: GroupElement) -> GroupElement:
    if q.monoid.kind == "free":
        return GroupElement(q.monoid, tuple((a, -s) for a, s in reversed(q.value)))
    return GroupElement(q.monoid, tuple(-a for a in q.value))


def quotient(m: Degree, n: Degree) -> GroupElement:
    """Canonical form of ``m n^-1``."""
    _same_tag(m, n)
    return group_compose(embed(m), group_invert(embed(n)))


def group_from_json(monoid: Monoid, data) -> GroupElement:
    if monoid.kind == "free":
        word = tuple((s[1:], -1) if s.startswith("-") else (s, 1) for s in data)
        return GroupElement(monoid, _reduce(word))
    return GroupElement(monoid, tuple(int(v) for v in data))


# ---------------------------------------------------------------------------
# Increasing sequences and degree classes
# ---------------------------------------------------------------------------


@dataclass(frozen=True)
class IncreasingSequence:
    """A <=-increasing sequence given by a finite head and a tail rule.

    With ``step=None`` the sequence is eventually constant at ``head[-1]``;
    otherwise term ``len(head) + j`` is ``head[-1] * step^(j+1)``.
    """

    head: tuple
    step: Optional[Degree] = None

    def __post_init__(self):
        head = tuple(self.head)
        if not head:
            raise DegreeError("an increasing sequence needs at least one term")
        object.__setattr__(self, "head", head)
        tags = list(head) + ([self.step] if self.step is not None else [])
        _same_tag(*tags)
        for a, b in zip(head, head[1:]):
            if not leq(a, b):
                raise DegreeError(f"sequence is not increasing: {a} then {b}")

    @property
    def monoid(self) -> Monoid:
        return self.head[0].monoid

    def term(self, n: int) -> Degree:
        if n < len(self.head):
            return self.head[n]
        if self.step is None or self.step.is_identity:
            return self.head[-1]
        out = self.head[-1]
        for _ in range(n - len(self.head) + 1):
            out = compose(out, self.step)
        return out

    def terms(self, count: int) -> list[Degree]:
        return [self.term(n) for n in range(count)]

    @property
    def eventually_constant(self) -> bool:
        return self.step is None or self.step.is_identity


def constant_sequence(m: Degree) -> IncreasingSequence:
    return IncreasingSequence((m,))


@dataclass(frozen=True)
class DegreeClass:
    """Canonical representative of a ~-class of increasing sequences.

    Grid: a k-tuple over N ∪ {inf}.  Free: ``(prefix, period)`` describing the
    word ``prefix period period ...``; ``period == ()`` marks a finite word.
    """

    monoid: Monoid
    value: tuple

    def __str__(self):
        if self.monoid.kind == "free":
            prefix, period = self.value
            text = "".join(prefix) if prefix else ("" if period else "ε")
            return text + (f"({''.join(period)})^∞" if period else "")
        parts = ["∞" if c == INF else str(c) for c in self.value]
        return parts[0] if len(parts) == 1 else "(" + ",".join(parts) + ")"

    def __repr__(self):
        return f"DegreeClass({self})"

    @property
    def is_finite(self) -> bool:
        if self.monoid.kind == "free":
            return not self.value[1]
        return all(c != INF for c in self.value)

    def as_degree(self) -> Degree:
        if not self.is_finite:
            raise DegreeError(f"class {self} is infinite")
        if self.monoid.kind == "free":
            return Degree(self.monoid, self.value[0])
        return Degree(self.monoid, tuple(int(c) for c in self.value))

    def sort_key(self):
        if self.monoid.kind == "free":
            return (self.value[0], self.value[1])
        return tuple(c if c != INF else 10**9 for c in self.value)

    def to_json(self):
        if self.monoid.kind == "free":
            prefix, period = self.value
            return {"prefix": "".join(prefix), "period": "".join(period)}
        return [c if c != INF else "inf" for c in self.value]


def _primitive_root(word: tuple) -> tuple:
    n = len(word)
    for size in range(1, n + 1):
        if n % size == 0 and word[:size] * (n // size) == word:
            return word[:size]
    return word


def _canonical_periodic(prefix: tuple, period: tuple) -> tuple:
    if not period:
        return (tuple(prefix), ())
    period = _primitive_root(tuple(period))
    prefix = tuple(prefix)
    while prefix and prefix[-1] == period[-1]:
        prefix = prefix[:-1]
        period = (period[-1],) + period[:-1]
    return (prefix, period)


def free_class(monoid: FreeMonoid, prefix, period=()) -> DegreeClass:
    return DegreeClass(monoid, _canonical_periodic(monoid.check(prefix), monoid.check(period)))


def grid_class(monoid: GridMonoid, value) -> DegreeClass:
    value = tuple(INF if c in (INF, "inf", None) else int(c) for c in value)
    if len(value) != monoid.k or any(c != INF and c < 0 for c in value):
        raise DegreeError(f"{value!r} is not in (N ∪ {{∞}})^{monoid.k}")
    return DegreeClass(monoid, value)


def degree_class(seq: IncreasingSequence) -> DegreeClass:
    """Canonical representative of the ~-class of ``seq``."""
    monoid = seq.monoid
    last = seq.head[-1]
    if monoid.kind == "grid":
        step = seq.step.value if seq.step is not None else (0,) * monoid.k
        return DegreeClass(monoid, tuple(INF if s > 0 else c for c, s in zip(last.value, step)))
    if monoid.kind == "free":
        period = () if seq.step is None else seq.step.value
        return DegreeClass(monoid, _canonical_periodic(last.value, period))
    raise UnsupportedMonoidError("degree classes are only defined for grid and free monoids")


def class_of_degree(m: Degree) -> DegreeClass:
    return degree_class(constant_sequence(m))


def class_contains(c: DegreeClass, p: Degree) -> bool:
    """``p <= m_n`` eventually, for any sequence ``(m_n)`` in the class ``c``."""
    if c.monoid != p.monoid:
        raise DegreeError(f"tag mismatch: {c.monoid} vs {p.monoid}")
    if c.monoid.kind == "grid":
        return all(x <= y for x, y in zip(p.value, c.value))
    prefix, period = c.value
    word = p.value
    if not period:
        return c.monoid.leq_values(word, prefix)
    for i, letter in enumerate(word):
        expect = prefix[i] if i < len(prefix) else period[(i - len(prefix)) % len(period)]
        if letter != expect:
            return False
    return True


def class_leq(a: DegreeClass, b: DegreeClass) -> bool:
    """Order on classes induced by the preorder on sequences."""
    if a.monoid != b.monoid:
        raise DegreeError(f"tag mismatch: {a.monoid} vs {b.monoid}")
    if a.monoid.kind == "grid":
        return all(x <= y for x, y in zip(a.value, b.value))
    if a.is_finite:
        return class_contains(b, a.as_degree())
    return a == b


def class_left_divide(m: Degree, c: DegreeClass) -> DegreeClass:
    """The class of ``(m^-1 m_n)`` for ``(m_n)`` in ``c``; needs ``m`` inside ``c``."""
    if not class_contains(c, m):
        raise DegreeError(f"{m} is not below the class {c}")
    if c.monoid.kind == "grid":
        return DegreeClass(c.monoid, tuple(y if y == INF else y - x for x, y in zip(m.value, c.value)))
    prefix, period = c.value
    n = len(m.value)
    if n <= len(prefix):
        return DegreeClass(c.monoid, _canonical_periodic(prefix[n:], period))
    shift = (n - len(prefix)) % len(period)
    return DegreeClass(c.monoid, _canonical_periodic((), period[shift:] + period[:shift]))


def class_prepend(m: Degree, c: DegreeClass) -> DegreeClass:
    """The class of ``(m m_n)``."""
    if c.monoid.kind == "grid":
        return DegreeClass(c.monoid, tuple(y if y == INF else x + y for x, y in zip(m.value, c.value)))
    prefix, period = c.value
    return DegreeClass(c.monoid, _canonical_periodic(tuple(m.value) + tuple(prefix), period))


def seq_precedes(l: IncreasingSequence, m: IncreasingSequence) -> bool:
    """``(l_n) ≺ (m_n)``: every ``l_j`` lies below some ``m_K``."""
    if l.monoid != m.monoid:
        raise DegreeError(f"tag mismatch: {l.monoid} vs {m.monoid}")
    return class_leq(degree_class(l), degree_class(m))


def seq_equivalent(l: IncreasingSequence, m: IncreasingSequence) -> bool:
    return seq_precedes(l, m) and seq_precedes(m, l)


def grid_class_to_sequence(c: Union[DegreeClass, Sequence]) -> IncreasingSequence:
    """Finite coordinates stay constant, infinite ones run through 0, 1, 2, ..."""
    if not isinstance(c, DegreeClass):
        raise DegreeError("expected a DegreeClass")
    if c.monoid.kind != "grid":
        raise UnsupportedMonoidError("grid translation needs a grid class")
    monoid = c.monoid
    start = Degree(monoid, tuple(0 if v == INF else int(v) for v in c.value))
    if c.is_finite:
        return IncreasingSequence((start,))
    step = Degree(monoid, tuple(1 if v == INF else 0 for v in c.value))
    return IncreasingSequence((start,), step)


def sequence_to_grid_class(seq: IncreasingSequence) -> DegreeClass:
    """Coordinatewise maximum when bounded, infinity when unbounded."""
    if seq.monoid.kind != "grid":
        raise UnsupportedMonoidError("grid translation needs a grid sequence")
    return degree_class(seq)
