"""JSON documents and Graphviz DOT output.

Documents:

* orthoalgebra: ``{"name", "size", "comp", "sum": [[a, b, a+b], ...], "labels"}``
  with every unordered pair listed once, ``a <= b``;
* poset: ``{"size", "covers": [[lo, hi], ...], "labels"}``;
* hypergraph: ``{"points", "lines": [[p, q, r]], "planes": [{"points", "lines"}]}``
  using point names;
* Greechie diagram: ``{"atoms", "blocks"}``;
* morphisms: ``{"source", "target", "map"}`` where source and target are a
  ``catalog:`` reference or an inline document; ``map`` is a list of
  indices for orthoalgebras and a point-name dictionary for hypergraphs;
* direction: ``{"base", "values": [[y, v, w], ...]}``.
"""

from __future__ import annotations

import json
from pathlib import Path

from .catalog import GreechieDiagram, greechie_paste, named
from .core import OrthoAlgebra, ValidationReport, parse_structure
from .hypergraph import Hypergraph, Plane
from .poset import FinitePoset


class DocumentError(ValueError):
    """Input that cannot be read as the requested kind of document."""


# --- orthoalgebras --------------------------------------------------------------


def oa_to_json(A: OrthoAlgebra) -> dict:
    return {
        "name": A.name,
        "size": A.size,
        "comp": list(A.comp),
        "sum": [list(s) for s in A.sums()],
        "labels": list(A.labels),
    }


def oa_from_json(doc: dict) -> OrthoAlgebra:
    """Parse and validate; raise :class:`DocumentError` if structurally bad."""
    report = ValidationReport("orthoalgebra")
    A = parse_structure(doc, report)
    if A is None:
        raise DocumentError(report.summary())
    return A


# --- posets ---------------------------------------------------------------------


def poset_to_json(X: FinitePoset) -> dict:
    return {"name": X.name, "size": X.size, "covers": [list(c) for c in X.covers()], "labels": list(X.labels)}


def poset_from_json(doc: dict) -> FinitePoset:
    try:
        return FinitePoset(doc["size"], [tuple(c) for c in doc["covers"]], doc.get("labels"), name=doc.get("name", ""))
    except (KeyError, TypeError, ValueError) as exc:
        raise DocumentError(f"bad poset document: {exc}") from exc


# --- hypergraphs ----------------------------------------------------------------


def hypergraph_to_json(H: Hypergraph) -> dict:
    name = H.points
    return {
        "points": list(name),
        "lines": [[name[p] for p in sorted(l)] for l in H.lines],
        "planes": [
            {"points": [name[p] for p in sorted(t.points)], "lines": [[name[p] for p in sorted(l)] for l in t.lines]}
            for t in H.planes
        ],
    }


def hypergraph_from_json(doc: dict) -> Hypergraph:
    try:
        points = list(doc["points"])
        pos = {p: i for i, p in enumerate(points)}
        lines = [frozenset(pos[p] for p in l) for l in doc.get("lines", [])]
        bad = [l for l in doc.get("lines", []) if len(set(l)) != 3]
        if bad:
            raise DocumentError(f"line {bad[0]!r} does not have three distinct points")
        planes = [
            Plane.make((pos[p] for p in t["points"]), ([pos[p] for p in l] for l in t["lines"]))
            for t in doc.get("planes", [])
        ]
    except KeyError as exc:
        raise DocumentError(f"unknown point or missing field: {exc}") from exc
    return Hypergraph.make(points, lines, planes)


# --- Greechie diagrams and directions -------------------------------------------------


def greechie_to_json(g: GreechieDiagram) -> dict:
    return {"atoms": list(g.atoms), "blocks": [list(b) for b in g.blocks]}


def greechie_from_json(doc: dict) -> GreechieDiagram:
    return GreechieDiagram(tuple(doc["atoms"]), tuple(tuple(b) for b in doc["blocks"]))


def direction_to_json(d) -> dict:
    return {"base": d.base, "values": [list(v) for v in d.values]}


def direction_from_json(doc: dict):
    from .orthodomain import Direction

    return Direction(int(doc["base"]), tuple(tuple(int(x) for x in v) for v in doc["values"]))


# --- references ---------------------------------------------------------------------


def load_json(ref: str) -> dict:
    try:
        return json.loads(Path(ref).read_text())
    except FileNotFoundError:
        raise DocumentError(f"no such file: {ref}") from None
    except json.JSONDecodeError as exc:
        raise DocumentError(f"{ref}: not valid JSON ({exc})") from None


def document_kind(doc: dict) -> str:
    if "map" in doc:
        return "morphism"
    if "comp" in doc or "sum" in doc:
        return "orthoalgebra"
    if "covers" in doc:
        return "poset"
    if "points" in doc:
        return "hypergraph"
    if "atoms" in doc and "blocks" in doc:
        return "greechie"
    raise DocumentError("cannot tell what kind of document this is")


def resolve_algebra(ref) -> OrthoAlgebra:
    """A ``catalog:`` name, an inline document, or a path to one."""
    if isinstance(ref, OrthoAlgebra):
        return ref
    if isinstance(ref, dict):
        doc = ref
    elif isinstance(ref, str) and ref.startswith("catalog:"):
        try:
            return named(ref)
        except KeyError as exc:
            raise DocumentError(str(exc)) from None
    else:
        doc = load_json(ref)
    kind = document_kind(doc)
    if kind == "orthoalgebra":
        return oa_from_json(doc)
    if kind == "greechie":
        return greechie_paste(greechie_from_json(doc))
    raise DocumentError(f"expected an orthoalgebra, got a {kind} document")


def oa_morphism_from_json(doc: dict):
    from .morphisms import OAMorphism

    A, C = resolve_algebra(doc["source"]), resolve_algebra(doc["target"])
    m = doc["map"]
    if not isinstance(m, list):
        raise DocumentError("orthoalgebra morphism map must be a list")
    return OAMorphism(A, C, tuple(m), doc.get("name", ""))


def oa_morphism_to_json(f, source_ref=None, target_ref=None) -> dict:
    return {
        "source": source_ref or oa_to_json(f.source),
        "target": target_ref or oa_to_json(f.target),
        "map": list(f.mapping),
    }


def _hypergraph_side(ref):
    """Hypergraph of a referenced algebra, or an inline hypergraph."""
    from .hypergraph import hypergraph_of

    if isinstance(ref, dict) and document_kind(ref) == "hypergraph":
        return hypergraph_from_json(ref), None
    A = resolve_algebra(ref)
    return hypergraph_of(A), A


def hg_morphism_from_json(doc: dict):
    """Returns the point map and the two algebras (``None`` for inline hypergraphs)."""
    from .morphisms import PartialPointMap

    H, A = _hypergraph_side(doc["source"])
    K, C = _hypergraph_side(doc["target"])
    m = doc["map"]
    if not isinstance(m, dict):
        raise DocumentError("hypergraph morphism map must be a dictionary of point names")
    hp = {p: i for i, p in enumerate(H.points)}
    kp = {p: i for i, p in enumerate(K.points)}
    unknown = [p for p in m if p not in hp] + [q for q in m.values() if q is not None and q not in kp]
    if unknown:
        raise DocumentError(f"unknown point {unknown[0]!r}")
    assignment = tuple(None if m.get(p) is None else kp[m[p]] for p in H.points)
    return PartialPointMap(H, K, assignment), A, C


def hg_morphism_to_json(alpha, source_ref=None, target_ref=None) -> dict:
    return {
        "source": source_ref or hypergraph_to_json(alpha.source),
        "target": target_ref or hypergraph_to_json(alpha.target),
        "map": alpha.named(),
    }


def dumps(doc) -> str:
    return json.dumps(doc, indent=2, sort_keys=False, ensure_ascii=False)


# --- DOT ------------------------------------------------------------------------------


def _quote(s: str) -> str:
    return '"' + str(s).replace("\\", "\\\\").replace('"', '\\"') + '"'


def poset_to_dot(X: FinitePoset, name: str | None = None) -> str:
    """Hasse diagram, one rank per height, an edge per cover (upwards)."""
    lines = [f"digraph {_quote(name or X.name or 'poset')} {{", "  rankdir=BT;", "  node [shape=box, fontsize=10];"]
    for h in range(X.height + 1):
        layer = [i for i in range(X.size) if X.heights[i] == h]
        nodes = " ".join(f"n{i} [label={_quote(X.labels[i])}];" for i in layer)
        lines.append(f"  {{ rank=same; {nodes} }}")
    for a, b in X.covers():
        lines.append(f"  n{a} -> n{b};")
    lines.append("}")
    return "\n".join(lines) + "\n"


def hypergraph_to_dot(H: Hypergraph, name: str = "hypergraph") -> str:
    """Points as nodes, each line as a triangle of edges tagged with the
    line number, each plane as a cluster of its points."""
    out = [f"graph {_quote(name)} {{", "  node [shape=circle, fontsize=9];"]
    for k, t in enumerate(H.planes):
        out.append(f"  subgraph cluster_plane_{k} {{")
        out.append(f"    label={_quote(f'plane {k}')}; style=rounded; class=plane;")
        for p in sorted(t.points):
            out.append(f"    p{p};")
        out.append("  }")
    for p, nm in enumerate(H.points):
        out.append(f"  p{p} [label={_quote(nm)}];")
    for k, l in enumerate(H.lines):
        a, b, c = sorted(l)
        for u, v in ((a, b), (b, c), (a, c)):
            out.append(f"  p{u} -- p{v} [class=line, comment={_quote(f'line {k}')}];")
    out.append("}")
    return "\n".join(out) + "\n"
