import pytest
from hypothesis import given, settings, strategies as st

from pgraphs import catalog
from pgraphs.degree import INF, Degree, FreeMonoid, GridSubmonoid, IncreasingSequence
from pgraphs.degree import UnsupportedMonoidError, constant_sequence, grid_class_to_sequence, grid_class
from pgraphs.pgraph import (
    PGraph,
    SkeletonError,
    SkeletonPresentation,
    build_omega,
    build_omega_limit,
    check_paths_category,
    from_skeleton,
    is_finitely_aligned,
    mce,
    validate,
    validate_category,
    validate_ufp,
)

from oracles import omega_pairs_free, omega_pairs_grid

N1, N2 = catalog.N1, catalog.N2


def test_omega_counts_match_pair_oracle():
    G = build_omega(Degree(N2, (1, 1)))
    assert len(G) == omega_pairs_grid((1, 1)) == 9
    assert sum(G.is_unit(m) for m in G.morphisms) == 4
    assert len(build_omega(Degree(N1, (3,)))) == omega_pairs_grid((3,)) == 10
    ab = FreeMonoid(("a", "b"))
    assert len(build_omega(Degree(ab, "ab"))) == omega_pairs_free("ab") == 6


@pytest.mark.parametrize("m", [(0, 0), (2, 0), (1, 2), (2, 2)])
def test_omega_is_a_valid_graph(m):
    G = build_omega(Degree(N2, m))
    assert len(G) == omega_pairs_grid(m)
    assert validate(G).ok
    assert check_paths_category(G).ok


def test_omega_rejects_submonoid():
    sub = GridSubmonoid(2, ((1, 0), (1, 1), (1, 2)))
    with pytest.raises(UnsupportedMonoidError):
        build_omega(Degree(sub, (1, 1)))


def test_omega_limit_counts():
    seq = IncreasingSequence((Degree(N1, (0,)),), Degree(N1, (1,)))
    assert len(build_omega_limit(seq, Degree(N1, (3,)))) == 10


def test_omega_limit_of_constant_is_finite_prototype():
    limit = build_omega_limit(constant_sequence(Degree(N2, (1, 1))), Degree(N2, (5, 5)))
    finite = build_omega(Degree(N2, (1, 1)))
    assert set(limit.morphisms) == set(finite.morphisms)
    assert limit.composition == finite.composition


def test_omega_limit_infinite_class():
    seq = grid_class_to_sequence(grid_class(N2, (INF, 2)))
    G = build_omega_limit(seq, Degree(N2, (2, 2)))
    assert len(G) == omega_pairs_grid((2, 2)) == 36


def test_e3_skeleton_order_and_mce():
    G = catalog.e3((2, 2))
    assert G.order == ["u", "r", "rr", "b", "br", "brr", "bb", "bbr", "bbrr"]
    assert mce(G, "b", "r") == {"br"}
    assert validate(G).ok


def test_twisted_bouquet_materializes_six_morphisms():
    G = catalog.twisted_bouquet((1, 1))
    assert G.order == ["u", "c", "a1", "a2", "a1.c", "a2.c"]
    assert validate(G).ok
    assert G.factor("a1.c", Degree(N2, (0, 1))) == ("c", "a2")


def test_factor_and_cone():
    G = catalog.e3((1, 1))
    assert G.factor("br", Degree(N2, (1, 0))) == ("b", "r")
    assert G.cone("b") == {"b", "br"}
    assert G.downset("br") == {"u", "b", "r", "br"}
    assert G.precedes("r", "br")


def test_explicit_build_and_json(E1):
    data = E1.to_json()
    ids = {m["id"] for m in data["morphisms"]}
    assert ids == {"e"}
    assert data["vertices"] == ["v", "w"]


def test_composition_mutation_is_caught(E1):
    bad = E1.with_composition({("v", "e"): "v"})
    rep = validate_category(bad)
    assert not rep.ok
    assert rep.witness is not None


def test_missing_composition_is_caught():
    G = PGraph.build(N1, ["u"], [("a", "u", "u", (1,)), ("aa", "u", "u", (2,))], [])
    assert not validate(G).ok


def test_non_injective_squares_fail_ufp():
    sk = SkeletonPresentation(
        2, ("u",),
        {"a1": ("u", "u", 1), "a2": ("u", "u", 1), "c": ("u", "u", 2)},
        [(("c", "a1"), ("a1", "c")), (("c", "a2"), ("a1", "c"))],
    )
    rep = validate_ufp(from_skeleton(sk, Degree(N2, (1, 1))))
    assert not rep.ok
    assert rep.witness["morphism"] == "a1.c"


def test_missing_square_is_rejected():
    sk = SkeletonPresentation(2, ("u",), {"b": ("u", "u", 1), "r": ("u", "u", 2)}, [])
    with pytest.raises(SkeletonError):
        from_skeleton(sk, Degree(N2, (1, 1)))


def test_dangling_edge_is_rejected():
    sk = SkeletonPresentation(1, ("u",), {"a": ("u", "x", 1)})
    with pytest.raises(SkeletonError):
        from_skeleton(sk, Degree(N1, (1,)))


def test_finite_alignment_flags_window_pairs():
    G = catalog.e3((2, 2))
    rep = is_finitely_aligned(G)
    assert rep.ok
    assert rep.info["certificates"][("b", "r")] == ["br"]
    assert any(f["message"] == "boundary" for f in rep.flags)


def test_free_monoid_window_graph():
    spec = SkeletonPresentation(1, ("u",), {"a": ("u", "u", 1)})
    G = from_skeleton(spec, Degree(N1, (4,)))
    assert len(G) == 5
    assert check_paths_category(G).ok


@settings(max_examples=12, deadline=None)
@given(st.integers(0, 10_000), st.integers(1, 3))
def test_random_skeletons_are_valid(seed, vertices):
    G = catalog.random_2graph(seed, vertices)
    assert validate(G).ok
    assert check_paths_category(G).ok
    assert is_finitely_aligned(G).ok
