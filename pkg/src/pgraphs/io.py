"""Graph-spec JSON files.

A spec names the monoid, a presentation and an optional window::

    {"monoid": {"kind": "grid", "k": 2},
     "presentation": "skeleton",
     "vertices": ["u"],
     "edges": [{"id": "b", "range": "u", "source": "u", "colour": 1}, ...],
     "squares": [[["r", "b"], ["b", "r"]]],
     "window": [2, 2],
     "subsets": {"U": ["b"]}}

``presentation`` is one of ``explicit`` (morphisms plus non-unit
compositions), ``skeleton`` (coloured edges plus squares) or ``omega``
(a path prototype from ``"m"``, or a direct limit from ``"sequence"``).
"""

from __future__ import annotations

import json
from pathlib import Path
from typing import Optional, Union

from .degree import Degree, DegreeError, IncreasingSequence, monoid_from_json
from .pgraph import (
    PGraph,
    PGraphError,
    SkeletonPresentation,
    build_omega,
    build_omega_limit,
    from_skeleton,
)


class SpecError(ValueError):
    """The spec file is unreadable or malformed."""


def _degree(monoid, data) -> Degree:
    return Degree(monoid, monoid.degree_from_json(data))


def graph_from_spec(spec: dict, window_override=None) -> PGraph:
    """Build a graph from a parsed spec.

    Structural problems in a well-formed spec (missing squares, cube
    failures) raise ``SkeletonError``; malformed specs raise ``SpecError``.
    """
    try:
        monoid = monoid_from_json(spec["monoid"])
        kind = spec.get("presentation", "explicit")
        raw_window = window_override if window_override is not None else spec.get("window")
        window = _degree(monoid, raw_window) if raw_window is not None else None
        if kind == "explicit":
            morphisms = [
                (m["id"], m["range"], m["source"], _degree(monoid, m["degree"]))
                for m in spec.get("morphisms", [])
            ]
            comp = [tuple(c) for c in spec.get("composition", [])]
            G = PGraph.build(monoid, spec["vertices"], morphisms, comp, window)
        elif kind == "skeleton":
            edges = {}
            for e in spec["edges"]:
                if e["id"] in edges:
                    raise SpecError(f"duplicate edge id {e['id']!r}")
                edges[e["id"]] = (e["range"], e["source"], int(e.get("colour", e.get("color", 1))))
            squares = [((a, b), (c, d)) for (a, b), (c, d) in spec.get("squares", [])]
            k = int(spec.get("k", getattr(monoid, "k", 1)))
            sk = SkeletonPresentation(k, tuple(spec["vertices"]), edges, squares)
            G = from_skeleton(sk, window, monoid)
        elif kind == "omega":
            if "sequence" in spec:
                seq = spec["sequence"]
                head = tuple(_degree(monoid, d) for d in seq["head"])
                step = _degree(monoid, seq["step"]) if seq.get("step") is not None else None
                if window is None:
                    raise SpecError("an omega limit needs a window")
                G = build_omega_limit(IncreasingSequence(head, step), window)
            else:
                G = build_omega(_degree(monoid, spec["m"]))
        else:
            raise SpecError(f"unknown presentation {kind!r}")
    except SpecError:
        raise
    except (KeyError, TypeError, ValueError, DegreeError) as exc:
        if isinstance(exc, PGraphError):
            raise
        raise SpecError(f"malformed spec: {exc!r}") from exc
    G.name = spec.get("name", G.name)
    G.subsets = {k: list(v) for k, v in spec.get("subsets", {}).items()}
    unknown = [i for ids in G.subsets.values() for i in _flatten(ids) if i not in G.morphisms]
    if unknown:
        raise SpecError(f"subsets mention unknown ids {unknown}")
    return G


def _flatten(items):
    for item in items:
        if isinstance(item, (list, tuple)):
            yield from _flatten(item)
        else:
            yield item


def load_graph(path: Union[str, Path], window_override=None) -> PGraph:
    try:
        spec = json.loads(Path(path).read_text())
    except (OSError, json.JSONDecodeError) as exc:
        raise SpecError(f"cannot read {path}: {exc}") from exc
    if not isinstance(spec, dict):
        raise SpecError("a graph spec must be a JSON object")
    return graph_from_spec(spec, window_override)


def parse_degree_arg(G_or_monoid, text: Optional[str]) -> Optional[Degree]:
    """Parse ``--window``/``--bound`` values: ``3``, ``2,2``, ``[2,2]`` or a word."""
    if text is None:
        return None
    monoid = getattr(G_or_monoid, "monoid", G_or_monoid)
    text = text.strip()
    try:
        if monoid.kind == "free":
            data = json.loads(text) if text.startswith("[") or text.startswith('"') else text
        else:
            data = json.loads(text) if text.startswith("[") else [int(t) for t in text.split(",")]
        return _degree(monoid, data)
    except (ValueError, DegreeError) as exc:
        raise SpecError(f"bad degree {text!r}: {exc}") from exc


def spec_window_arg(text: Optional[str]):
    """Raw JSON form of a ``--window`` value, parsed later against the monoid."""
    if text is None:
        return None
    text = text.strip()
    if text.startswith("[") or text.startswith('"'):
        return json.loads(text)
    if all(part.strip().lstrip("-").isdigit() for part in text.split(",")):
        return [int(t) for t in text.split(",")]
    return text
