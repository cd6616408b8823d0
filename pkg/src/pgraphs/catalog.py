"""Small named example graphs used by the tests, demos and CLI."""

from __future__ import annotations

import random
from typing import Optional

from .degree import Degree, GridMonoid
from .pgraph import PGraph, SkeletonPresentation, from_skeleton

N1 = GridMonoid(1)
N2 = GridMonoid(2)


def single_vertex() -> PGraph:
    """One vertex and nothing else."""
    return PGraph.build(N1, ["u"], [], name="point")


def e1() -> PGraph:
    """One edge ``e`` from ``w`` to ``v`` (so ``r(e) = v``, ``s(e) = w``)."""
    sk = SkeletonPresentation(1, ("v", "w"), {"e": ("v", "w", 1)})
    G = from_skeleton(sk)
    G.name = "E1"
    return G


def e3(window=(2, 2)) -> PGraph:
    """One vertex, a blue loop ``b`` and a red loop ``r`` with ``rb = br``."""
    sk = SkeletonPresentation(
        2, ("u",), {"b": ("u", "u", 1), "r": ("u", "u", 2)}, [(("r", "b"), ("b", "r"))]
    )
    G = from_skeleton(sk, Degree(N2, window))
    G.name = f"E3{tuple(window)}"
    return G


def loop(window: int = 3) -> PGraph:
    """One vertex with a single loop ``a``, materialized up to ``a^window``."""
    sk = SkeletonPresentation(1, ("u",), {"a": ("u", "u", 1)})
    G = from_skeleton(sk, Degree(N1, (window,)))
    G.name = f"loop{window}"
    return G


def bouquet(window: int = 1, loops: int = 2) -> PGraph:
    """One vertex with ``loops`` loops of the same colour."""
    edges = {f"a{i + 1}": ("u", "u", 1) for i in range(loops)}
    sk = SkeletonPresentation(1, ("u",), edges)
    G = from_skeleton(sk, Degree(N1, (window,)))
    G.name = f"bouquet{loops}x{window}"
    return G


def twisted_bouquet(window=(1, 1)) -> PGraph:
    """Loops ``a1``, ``a2`` (blue) and ``c`` (red) with ``c a1 = a2 c``, ``c a2 = a1 c``."""
    sk = SkeletonPresentation(
        2,
        ("u",),
        {"a1": ("u", "u", 1), "a2": ("u", "u", 1), "c": ("u", "u", 2)},
        [(("c", "a1"), ("a2", "c")), (("c", "a2"), ("a1", "c"))],
    )
    G = from_skeleton(sk, Degree(N2, window))
    G.name = "twisted"
    return G


def random_skeleton(seed: int, vertices: int = 3) -> SkeletonPresentation:
    """A random 2-coloured skeleton with bijective squares.

    Blue adjacency is random; red adjacency is chosen among matrices that
    commute with it, so every square set can be made bijective.
    """
    rng = random.Random(seed)
    names = [f"v{i}" for i in range(vertices)]
    blue = [[rng.randint(0, 1) for _ in names] for _ in names]
    if not any(map(any, blue)):
        blue[0][0] = 1
    ident = [[int(i == j) for j in range(vertices)] for i in range(vertices)]
    choice = rng.choice(["same", "identity", "sum"])
    if choice == "same":
        red = [row[:] for row in blue]
    elif choice == "identity":
        red = ident
    else:
        red = [[blue[i][j] + ident[i][j] for j in range(vertices)] for i in range(vertices)]
    edges = {}
    for colour, adj, tag in ((1, blue, "b"), (2, red, "r")):
        count = 0
        for i, rng_v in enumerate(names):
            for j, src in enumerate(names):
                for _ in range(adj[i][j]):
                    edges[f"{tag}{count}"] = (rng_v, src, colour)
                    count += 1
    squares = []
    for u in names:
        for w in names:
            rb = [(x, y) for x in edges for y in edges
                  if edges[x][2] == 2 and edges[y][2] == 1
                  and edges[x][0] == u and edges[x][1] == edges[y][0] and edges[y][1] == w]
            br = [(x, y) for x in edges for y in edges
                  if edges[x][2] == 1 and edges[y][2] == 2
                  and edges[x][0] == u and edges[x][1] == edges[y][0] and edges[y][1] == w]
            assert len(rb) == len(br)
            rng.shuffle(br)
            squares.extend(zip(rb, br))
    return SkeletonPresentation(2, tuple(names), edges, squares)


def random_2graph(seed: int = 7, vertices: int = 3, window=(1, 1)) -> PGraph:
    G = from_skeleton(random_skeleton(seed, vertices), Degree(N2, window))
    G.name = f"random{seed}"
    return G


def standard_examples(include_random: bool = True, seed: int = 7) -> dict[str, PGraph]:
    """The example set the end-to-end checks run over."""
    out = {
        "E1": e1(),
        "E3(2,2)": e3((2, 2)),
        "loop3": loop(3),
        "bouquet": bouquet(2),
    }
    if include_random:
        out[f"random{seed}"] = random_2graph(seed)
    return out


def window_of(G: PGraph) -> Optional[Degree]:
    """The degree bound the examples use for groupoid enumeration."""
    if G.window is not None:
        return G.window
    degrees = G.degree_universe
    return max(degrees, key=Degree.sort_key) if degrees else None
