import pytest
from hypothesis import given, strategies as st

from pgraphs.degree import (
    INF,
    Degree,
    DegreeError,
    FreeMonoid,
    GridMonoid,
    GridSubmonoid,
    IncreasingSequence,
    UnsupportedMonoidError,
    below,
    class_contains,
    class_leq,
    class_left_divide,
    class_prepend,
    compose,
    constant_sequence,
    degree_class,
    embed,
    free_class,
    grid_class,
    grid_class_to_sequence,
    group_compose,
    group_from_json,
    group_identity,
    group_invert,
    identity,
    left_divide,
    leq,
    lub,
    minimal_upper_bounds,
    quotient,
    seq_equivalent,
    seq_precedes,
    sequence_to_grid_class,
)

from oracles import submonoid_mubs

N1, N2 = GridMonoid(1), GridMonoid(2)
AB = FreeMonoid(("a", "b"))
SUB = GridSubmonoid(2, ((1, 0), (1, 1), (1, 2)))


def g2(a, b):
    return Degree(N2, (a, b))


def w(s):
    return Degree(AB, s)


def test_compose_grid_and_free():
    assert compose(g2(1, 0), g2(0, 2)) == g2(1, 2)
    assert compose(w("ab"), w("b")) == w("abb")
    assert g2(1, 1) * identity(N2) == g2(1, 1)


def test_tag_mismatch_is_rejected():
    with pytest.raises(DegreeError):
        compose(g2(1, 0), Degree(N1, (1,)))


def test_leq_examples():
    assert leq(g2(1, 0), g2(2, 1))
    assert not leq(g2(1, 2), g2(2, 1))
    assert leq(w("a"), w("ab"))
    assert not leq(w("b"), w("ab"))
    assert leq(Degree(SUB, (1, 0)), Degree(SUB, (2, 1)))
    assert not leq(Degree(SUB, (1, 0)), Degree(SUB, (1, 1)))


def test_lub_examples():
    assert lub(g2(1, 0), g2(0, 2)) == g2(1, 2)
    assert lub(w("a"), w("ab")) == w("ab")
    assert lub(w("a"), w("b")) is None


def test_submonoid_has_no_lub():
    with pytest.raises(UnsupportedMonoidError):
        lub(Degree(SUB, (1, 0)), Degree(SUB, (1, 1)))


def test_submonoid_membership():
    with pytest.raises(DegreeError):
        Degree(SUB, (0, 1))


def test_minimal_upper_bounds_match_oracle():
    got = minimal_upper_bounds(Degree(SUB, (1, 0)), Degree(SUB, (1, 1)), Degree(SUB, (3, 3)))
    expected = submonoid_mubs(SUB.generators, (1, 0), (1, 1), (3, 3))
    assert {d.value for d in got} == expected == {(2, 1), (2, 2)}


def test_left_divide():
    assert left_divide(g2(1, 0), g2(2, 1)) == g2(1, 1)
    assert left_divide(w("a"), w("abb")) == w("bb")
    with pytest.raises(DegreeError):
        left_divide(w("b"), w("ab"))


def test_below_is_sorted_and_down_closed():
    assert [d.value for d in below(g2(1, 1))] == [(0, 0), (0, 1), (1, 0), (1, 1)]
    assert [d.value for d in below(w("ab"))] == [(), ("a",), ("a", "b")]


def test_quotient_free_reduces():
    assert quotient(w("ab"), w("b")) == embed(w("a"))
    assert str(quotient(w("a"), w("b"))) == "ab⁻¹"


def test_group_json_round_trip():
    q = quotient(w("ab"), w("ba"))
    assert group_from_json(AB, q.to_json()) == q
    r = quotient(g2(2, 0), g2(0, 3))
    assert group_from_json(N2, r.to_json()) == r


def test_sequence_must_increase():
    with pytest.raises(DegreeError):
        IncreasingSequence((g2(1, 1), g2(1, 0)))


def test_grid_class_of_growing_sequence():
    seq = IncreasingSequence((g2(0, 2),), g2(1, 0))
    assert degree_class(seq) == grid_class(N2, (INF, 2))
    assert sequence_to_grid_class(seq).value == (INF, 2)


def test_seq_precedes_examples():
    odd = IncreasingSequence((Degree(N1, (1,)),), Degree(N1, (2,)))
    even = IncreasingSequence((Degree(N1, (2,)),), Degree(N1, (2,)))
    assert seq_precedes(odd, even) and seq_precedes(even, odd)
    assert seq_equivalent(odd, even)
    const = constant_sequence(g2(1, 1))
    diag = IncreasingSequence((g2(1, 1),), g2(1, 1))
    assert seq_precedes(const, diag)
    assert not seq_precedes(diag, const)


def test_free_class_periodic_and_finite():
    c = degree_class(IncreasingSequence((w("a"),), w("ab")))
    assert c == free_class(AB, ("a",), ("a", "b"))
    assert not c.is_finite
    assert class_contains(c, w("aaba"))
    assert not class_contains(c, w("ab"))
    finite = degree_class(constant_sequence(w("ab")))
    assert finite.is_finite and finite.as_degree() == w("ab")


def test_class_translation_grid():
    c = grid_class(N2, (INF, 2))
    assert class_left_divide(g2(1, 1), c) == grid_class(N2, (INF, 1))
    assert class_prepend(g2(1, 1), grid_class(N2, (INF, 1))) == c
    assert class_leq(grid_class(N2, (1, 1)), c)
    assert not class_leq(c, grid_class(N2, (5, 5)))


def test_grid_class_sequence_round_trip():
    c = grid_class(N2, (INF, 3))
    assert sequence_to_grid_class(grid_class_to_sequence(c)) == c


# ---------------------------------------------------------------------------
# properties
# ---------------------------------------------------------------------------

grid_vals = st.tuples(st.integers(0, 4), st.integers(0, 4))
words = st.text(alphabet="ab", max_size=5)


@given(grid_vals, grid_vals, grid_vals)
def test_grid_order_is_partial(a, b, c):
    p, q, r = g2(*a), g2(*b), g2(*c)
    assert leq(p, p)
    if leq(p, q) and leq(q, p):
        assert p == q
    if leq(p, q) and leq(q, r):
        assert leq(p, r)


@given(words, words, words)
def test_free_order_is_partial_and_left_invariant(a, b, c):
    p, q, r = w(a), w(b), w(c)
    if leq(p, q) and leq(q, r):
        assert leq(p, r)
    assert leq(p, q) == leq(compose(r, p), compose(r, q))


@given(grid_vals, grid_vals, grid_vals)
def test_grid_left_invariance(a, b, c):
    p, q, r = g2(*a), g2(*b), g2(*c)
    assert leq(p, q) == leq(r * p, r * q)


@given(grid_vals, grid_vals, grid_vals)
def test_grid_lub_is_least(a, b, c):
    p, q, u = g2(*a), g2(*b), g2(*c)
    top = lub(p, q)
    assert leq(p, top) and leq(q, top)
    if leq(p, u) and leq(q, u):
        assert leq(top, u)


@given(words, words)
def test_free_lub_exists_iff_comparable(a, b):
    top = lub(w(a), w(b))
    comparable = a.startswith(b) or b.startswith(a)
    assert (top is not None) == comparable


@given(words, words, words)
def test_free_group_laws(a, b, c):
    x, y, z = quotient(w(a), w(b)), quotient(w(b), w(c)), embed(w(c))
    e = group_identity(AB)
    assert group_compose(group_compose(x, y), z) == group_compose(x, group_compose(y, z))
    assert group_compose(x, group_invert(x)) == e
    assert group_compose(x, y) == quotient(w(a), w(c))


@given(grid_vals, grid_vals)
def test_grid_quotient_cancels(a, b):
    m, n = g2(*a), g2(*b)
    assert group_compose(quotient(m, n), embed(n)) == embed(m)


@given(st.tuples(st.integers(0, 3), st.integers(0, 3)), st.tuples(st.integers(0, 2), st.integers(0, 2)))
def test_class_depends_only_on_equivalence(head, step):
    h = g2(*head)
    s = g2(*step)
    one = IncreasingSequence((h,), s)
    two = IncreasingSequence((h, h * s, h * s * s), s * s)
    assert seq_equivalent(one, two)
    assert degree_class(one) == degree_class(two)
    assert sequence_to_grid_class(grid_class_to_sequence(degree_class(one))) == degree_class(one)


@given(words, words)
def test_free_class_of_eventually_periodic(prefix, period):
    head = (w(prefix),)
    seq = IncreasingSequence(head, w(period) if period else None)
    c = degree_class(seq)
    for t in seq.terms(4):
        assert class_contains(c, t)
