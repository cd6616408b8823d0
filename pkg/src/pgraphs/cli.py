"""Command line front end.

Exit codes: 0 when every check passes, 1 when a property fails, 2 when the
input cannot be read.
"""

from __future__ import annotations

import argparse
import itertools
import json
import sys
from typing import Optional

from .degree import Degree
from .filters import FilterSpace
from .groupoid import (
    basis_image_check,
    check_isomorphism,
    enumerate_groupoid,
    groupoid_axiom_check,
    psi_h,
    tau_equality_check,
)
from .io import SpecError, load_graph, parse_degree_arg, spec_window_arg
from .morphisms import MorphismSpace, actionable_report, conjugacy_report
from .pgraph import (
    PGraph,
    PGraphError,
    check_paths_category,
    is_finitely_aligned,
    validate_category,
    validate_ufp,
)
from .report import Report
from .spaces import CylinderSet, action_axioms_check

EXIT_OK, EXIT_FAIL, EXIT_INPUT = 0, 1, 2


def _emit(args, reports: list[Report], extra: Optional[dict] = None) -> int:
    ok = all(r.ok for r in reports)
    if args.json:
        payload = {"ok": ok, "reports": [r.to_json() for r in reports]}
        if extra:
            payload.update(extra)
        print(json.dumps(payload, indent=2, default=str))
    else:
        for r in reports:
            print(r.summary())
    return EXIT_OK if ok else EXIT_FAIL


def _space(G: PGraph, args):
    depth = parse_degree_arg(G, getattr(args, "depth_bound", None))
    if getattr(args, "space", "filters") == "morphisms":
        return MorphismSpace(G, depth)
    return FilterSpace(G, depth)


def _bound(G: PGraph, args) -> Optional[Degree]:
    bound = parse_degree_arg(G, getattr(args, "bound", None))
    if bound is not None:
        return bound
    if G.window is not None:
        return G.window
    degrees = G.degree_universe
    return max(degrees, key=Degree.sort_key) if degrees else None


def _atoms(G: PGraph) -> list[Degree]:
    """Minimal non-identity degrees that occur in the graph."""
    degs = [d for d in G.by_degree if not d.is_identity]
    return [d for d in degs if not any(o != d and o.leq(d) for o in degs)]


def cmd_validate(G: PGraph, args) -> int:
    cat = validate_category(G)
    reports = [cat]
    if cat.ok:
        reports += [validate_ufp(G), check_paths_category(G), is_finitely_aligned(G)]
    fa = reports[-1]
    extra = {}
    if "certificates" in fa.info:
        extra["max_certificate"] = fa.info["max_certificate"]
        fa.info.pop("certificates")
    return _emit(args, reports, extra)


def cmd_paths(G: PGraph, args) -> int:
    space = _space(G, args)
    points = space.boundary() if args.boundary else space.points
    if args.dot:
        print(_paths_dot(space, points))
        return EXIT_OK
    if args.json:
        payload = {
            "space": space.kind,
            "boundary": bool(args.boundary),
            "points": [space.point_to_json(x) for x in points],
        }
        if args.boundary:
            payload["depth_bound"] = _depth_json(G, space)
        print(json.dumps(payload, indent=2))
        return EXIT_OK
    if args.boundary:
        print(f"# depth bound: {_depth_json(G, space)}")
    print(f"# {len(points)} points ({space.kind})")
    for x in points:
        print(space.describe(x))
    return EXIT_OK


def _depth_json(G, space):
    depth = space.depth_bound if space.depth_bound is not None else G.window
    return None if depth is None else depth.to_json()


def _paths_dot(space, points) -> str:
    G = space.graph
    lines = ["digraph paths {", "  rankdir=LR;"]
    index = {x: i for i, x in enumerate(space.points)}
    for x in points:
        lines.append(f'  p{index[x]} [label="{space.describe(x)}"];')
    chosen = set(points)
    for x in points:
        for m in _atoms(G):
            y = space.act(x, m)
            if y is not None and y in chosen:
                lines.append(f'  p{index[x]} -> p{index[y]} [label="{m}"];')
    lines.append("}")
    return "\n".join(lines)


def cmd_groupoid(G: PGraph, args) -> int:
    space = _space(G, args)
    gpd = enumerate_groupoid(space, _bound(G, args))
    if args.reduce == "boundary":
        gpd = gpd.reduction(space.boundary())
    axioms = groupoid_axiom_check(gpd) if args.reduce is None else None
    if args.json:
        print(json.dumps({"count": len(gpd), "elements": gpd.to_json()}, indent=2))
    else:
        print(f"# {len(gpd)} elements")
        for g in gpd.elements:
            print(f"({space.describe(g.x)}, {g.q}, {space.describe(g.y)})")
        if axioms is not None:
            print(axioms.summary())
    return EXIT_OK if axioms is None or axioms.ok else EXIT_FAIL


def cmd_conjugacy(G: PGraph, args) -> int:
    fs, ms = FilterSpace(G), MorphismSpace(G)
    reports = [
        conjugacy_report(fs, ms),
        action_axioms_check(fs),
        action_axioms_check(ms),
        actionable_report(ms),
    ]
    return _emit(args, reports)


def cmd_iso(G: PGraph, args) -> int:
    depth = parse_degree_arg(G, args.depth_bound)
    fs, ms = FilterSpace(G, depth), MorphismSpace(G, depth)
    bound = _bound(G, args)
    gf, gm = enumerate_groupoid(fs, bound), enumerate_groupoid(ms, bound)
    iso = check_isomorphism(psi_h, gm, gf)
    bf, bm = gf.reduction(fs.boundary()), gm.reduction(ms.boundary())
    biso = check_isomorphism(psi_h, bm, bf)
    biso.name = "boundary reduction isomorphism"
    reports = [groupoid_axiom_check(gf), groupoid_axiom_check(gm), iso, biso]
    if iso.ok:
        size = args.cylinder_size
        subsets = [
            set(c) for r in range(size + 1) for c in itertools.combinations(G.order, r)
        ]
        cylinders = [CylinderSet(a, b) for a in subsets for b in subsets]
        degrees = [m for m in G.degree_universe if bound is None or m.leq(bound)]
        reports.append(basis_image_check(gm, gf, cylinders, degrees))
    if G.monoid.kind == "grid" and not args.skip_tau:
        reports.append(tau_equality_check(gm, args.cylinder_size))
    return _emit(args, reports, {"elements": len(gf), "boundary_elements": len(bf)})


def cmd_export(G: PGraph, args) -> int:
    if args.dot:
        print(graph_dot(G))
    else:
        print(json.dumps(G.to_json(), indent=2))
    return EXIT_OK


def graph_dot(G: PGraph) -> str:
    """Vertices plus the morphisms of minimal non-identity degree."""
    palette = ["blue", "red", "darkgreen", "orange", "purple"]
    atoms = _atoms(G)
    lines = [f'digraph "{G.name or "graph"}" {{']
    for v in G.vertices:
        lines.append(f'  "{v}";')
    for m in G.order:
        d = G.d(m)
        if d in atoms:
            slot = atoms.index(d)
            if G.monoid.kind == "grid" and sum(d.value) == 1:
                slot = d.value.index(1)
            colour = palette[slot % len(palette)]
            lines.append(f'  "{G.s(m)}" -> "{G.r(m)}" [label="{m}", color={colour}];')
    lines.append("}")
    return "\n".join(lines)


COMMANDS = {
    "validate": cmd_validate,
    "paths": cmd_paths,
    "groupoid": cmd_groupoid,
    "conjugacy": cmd_conjugacy,
    "iso": cmd_iso,
    "export": cmd_export,
}


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(
        prog="pgraphs",
        description="Materialize P-graphs and check their path spaces and groupoids.",
    )
    sub = parser.add_subparsers(dest="command", required=True)

    def add(name, help_text):
        p = sub.add_parser(name, help=help_text)
        p.add_argument("spec", help="graph-spec JSON file")
        p.add_argument("--window", help="override the window, e.g. 2,2")
        p.add_argument("--json", action="store_true", help="machine-readable output")
        return p

    add("validate", "category axioms, unique factorization, finite alignment")

    p = add("paths", "list the path space")
    p.add_argument("--space", choices=["filters", "morphisms"], default="filters")
    p.add_argument("--boundary", action="store_true", help="only boundary paths")
    p.add_argument("--depth-bound", help="degree bound for the exhaustive-set search")
    p.add_argument("--dot", action="store_true", help="Graphviz output")

    p = add("groupoid", "enumerate the semidirect product groupoid")
    p.add_argument("--space", choices=["filters", "morphisms"], default="filters")
    p.add_argument("--bound", help="degree bound for witnesses (default: the window)")
    p.add_argument("--reduce", choices=["boundary"], default=None)
    p.add_argument("--depth-bound", help="degree bound for the exhaustive-set search")

    add("conjugacy", "check that h conjugates the two actions")

    p = add("iso", "check the groupoid isomorphism and the basis laws")
    p.add_argument("--bound", help="degree bound for witnesses (default: the window)")
    p.add_argument("--depth-bound", help="degree bound for the exhaustive-set search")
    p.add_argument("--cylinder-size", type=int, default=1, help="max |K1|, |K2| (default 1)")
    p.add_argument("--skip-tau", action="store_true", help="skip the Z_Yee comparison")

    p = add("export", "write the graph as explicit JSON or DOT")
    p.add_argument("--dot", action="store_true", help="Graphviz output")
    return parser


def main(argv: Optional[list] = None) -> int:
    parser = build_parser()
    args = parser.parse_args(argv)
    try:
        G = load_graph(args.spec, spec_window_arg(args.window))
    except SpecError as exc:
        print(f"input error: {exc}", file=sys.stderr)
        return EXIT_INPUT
    except PGraphError as exc:
        print(f"FAIL presentation: {exc}")
        return EXIT_FAIL
    try:
        return COMMANDS[args.command](G, args)
    except SpecError as exc:
        print(f"input error: {exc}", file=sys.stderr)
        return EXIT_INPUT


if __name__ == "__main__":
    sys.exit(main())
