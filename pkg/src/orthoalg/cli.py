"""Command line interface.

Exit status: 0 on success (or a true verdict), 1 when input was read but
fails validation or a check, 2 on unreadable or structurally broken input.
"""

from __future__ import annotations

import argparse
import sys
from pathlib import Path

from . import catalog
from .core import (
    DEFAULT_SIZE_CAP,
    CapExceededError,
    OrthoAlgebraError,
    enumerate_bsub,
    is_orthomodular_poset,
    is_proper,
    validate_orthoalgebra,
)
from .io import (
    DocumentError,
    direction_to_json,
    document_kind,
    dumps,
    hg_morphism_from_json,
    hg_morphism_to_json,
    hypergraph_from_json,
    hypergraph_to_dot,
    hypergraph_to_json,
    load_json,
    oa_morphism_from_json,
    oa_morphism_to_json,
    oa_to_json,
    poset_from_json,
    poset_to_dot,
    poset_to_json,
    resolve_algebra,
    greechie_to_json,
)

OK, FALSE, BROKEN = 0, 1, 2


class _Out:
    def __init__(self, path: str | None):
        self.path = path
        self.chunks: list[str] = []

    def write(self, text: str) -> None:
        self.chunks.append(text if text.endswith("\n") else text + "\n")

    def flush(self) -> None:
        data = "".join(self.chunks)
        if self.path:
            Path(self.path).write_text(data)
        else:
            sys.stdout.write(data)


def _is_algebra_ref(ref: str) -> bool:
    if ref.startswith("catalog:"):
        return True
    return document_kind(load_json(ref)) in ("orthoalgebra", "greechie")


def _poset_of(ref: str, cap: int):
    """BSub of an algebra reference, or a poset document as given."""
    if _is_algebra_ref(ref):
        return enumerate_bsub(resolve_algebra(ref), cap=cap)
    doc = load_json(ref)
    kind = document_kind(doc)
    if kind == "poset":
        return poset_from_json(doc)
    if kind == "hypergraph":
        from .hypergraph import orthodomain_of

        return orthodomain_of(hypergraph_from_json(doc))
    raise DocumentError(f"expected an algebra or a poset, got a {kind} document")


def _bool(v: bool) -> str:
    return "true" if v else "false"


# --- verbs ------------------------------------------------------------------------


def cmd_validate(args, out: _Out) -> int:
    kind, ref = args.kind, args.ref
    if ref.startswith("catalog:"):
        if kind != "orthoalgebra":
            raise DocumentError("catalog references name orthoalgebras")
        report = validate_orthoalgebra(resolve_algebra(ref))
    else:
        doc = load_json(ref)
        if kind == "orthoalgebra":
            report = validate_orthoalgebra(doc)
        elif kind == "poset":
            from .poset import validate_poset

            report = validate_poset(doc)
        elif kind == "hypergraph":
            from .hypergraph import validate_hypergraph

            report = validate_hypergraph(hypergraph_from_json(doc))
        else:
            report = _validate_morphism(doc)
    out.write(report.summary())
    if report.structural:
        return BROKEN
    return OK if report.ok else FALSE


def _validate_morphism(doc: dict):
    from .morphisms import validate_hg_morphism, validate_oa_morphism

    if isinstance(doc.get("map"), dict):
        alpha, _, _ = hg_morphism_from_json(doc)
        return validate_hg_morphism(alpha)
    f = oa_morphism_from_json(doc)
    return validate_oa_morphism(f)


def cmd_bsub(args, out: _Out) -> int:
    X = enumerate_bsub(resolve_algebra(args.ref), cap=args.cap)
    if args.count:
        out.write(str(X.size))
    elif args.format == "dot":
        out.write(poset_to_dot(X))
    else:
        doc = poset_to_json(X)
        doc["members"] = [sorted(m) for m in X.members]
        out.write(dumps(doc))
    return OK


def cmd_hypergraph(args, out: _Out) -> int:
    from .hypergraph import hypergraph_of

    H = hypergraph_of(resolve_algebra(args.ref))
    out.write(hypergraph_to_dot(H) if args.format == "dot" else dumps(hypergraph_to_json(H)))
    return OK


def cmd_odir(args, out: _Out) -> int:
    from .orthodomain import NoDirectionsError, odir

    X = _poset_of(args.ref, args.cap)
    try:
        D = odir(X)
    except NoDirectionsError as exc:
        out.write(f"no direction algebra: {exc}")
        return FALSE
    out.write(dumps(oa_to_json(D)))
    return OK


def cmd_roundtrip(args, out: _Out) -> int:
    from .orthodomain import ReconstructionError, reconstruct_check

    A = resolve_algebra(args.ref)
    try:
        w = reconstruct_check(A, cap=args.cap)
    except ReconstructionError as exc:
        out.write(f"roundtrip failed: {exc}")
        return FALSE
    out.write(f"isomorphism witness found ({w.source.size} elements)")
    if args.verbose:
        for a, d in enumerate(w.forward):
            out.write(f"  {A.labels[a]} -> {w.target.labels[d]}")
    return OK


def cmd_directions(args, out: _Out) -> int:
    from .orthodomain import directions_for

    X = _poset_of(args.ref, args.cap)
    elems = X.basic_elements() if args.element is None else [_element(X, args.element)]
    rows = []
    for x in elems:
        for d in directions_for(X, x):
            rows.append(direction_to_json(d))
    out.write(dumps(rows))
    return OK


def _element(X, token: str) -> int:
    if token.isdigit():
        return int(token)
    try:
        return X.labels.index(token)
    except ValueError:
        raise DocumentError(f"no element labelled {token!r}") from None


def cmd_shadows(args, out: _Out) -> int:
    from .shadows import boolean_shadows, shadows

    X = _poset_of(args.ref, args.cap)
    found = boolean_shadows(X) if args.boolean else shadows(X)
    if args.count:
        out.write(str(len(found)))
    else:
        out.write(dumps([[X.labels[i] for i in sorted(S)] for S in found]))
    return OK


def cmd_classify(args, out: _Out) -> int:
    from .orthodomain import has_enough_directions, is_orthodomain, is_proper_orthodomain
    from .shadows import is_short, is_tall

    algebra = _is_algebra_ref(args.ref)
    X = _poset_of(args.ref, args.cap)
    orthodomain = is_orthodomain(X)
    out.write(f"orthodomain: {_bool(orthodomain)}")
    out.write(f"short: {_bool(is_short(X))}")
    out.write(f"tall: {_bool(orthodomain and is_tall(X))}")
    out.write(f"proper: {_bool(is_proper_orthodomain(X))}")
    out.write(f"enough-directions: {_bool(orthodomain and has_enough_directions(X))}")
    if algebra:
        A = resolve_algebra(args.ref)
        out.write(f"proper-algebra: {_bool(is_proper(A))}")
        out.write(f"OMP: {_bool(is_orthomodular_poset(A))}")
    return OK


def cmd_infer_planes(args, out: _Out) -> int:
    from .hypergraph import Hypergraph, hypergraph_of, infer_planes_omp

    if _is_algebra_ref(args.ref):
        H = hypergraph_of(resolve_algebra(args.ref))
    else:
        H = hypergraph_from_json(load_json(args.ref))
    planes = infer_planes_omp(H.n_points, H.lines)
    out.write(dumps(hypergraph_to_json(Hypergraph.make(H.points, H.lines, planes))["planes"]))
    return OK


def cmd_functor(args, out: _Out) -> int:
    from .morphisms import g_functor, validate_oa_morphism

    doc = load_json(args.ref)
    f = oa_morphism_from_json(doc)
    report = validate_oa_morphism(f)
    if not report.ok:
        out.write(report.summary())
        return FALSE
    alpha = g_functor(f)
    src = doc["source"] if isinstance(doc["source"], str) else None
    dst = doc["target"] if isinstance(doc["target"], str) else None
    out.write(dumps(hg_morphism_to_json(alpha, src, dst)))
    return OK


def cmd_lift(args, out: _Out) -> int:
    from .morphisms import LiftError, NotProperError, lift_hg_morphism

    doc = load_json(args.ref)
    alpha, A, C = hg_morphism_from_json(doc)
    if A is None or C is None:
        raise DocumentError("lifting needs source and target given as algebras")
    try:
        f = lift_hg_morphism(alpha, A, C)
    except (LiftError, NotProperError) as exc:
        out.write(f"cannot lift: {exc}")
        return FALSE
    src = doc["source"] if isinstance(doc["source"], str) else None
    dst = doc["target"] if isinstance(doc["target"], str) else None
    out.write(dumps(oa_morphism_to_json(f, src, dst)))
    return OK


def cmd_catalog(args, out: _Out) -> int:
    if args.action == "list":
        for name in catalog.CATALOG_NAMES:
            out.write(name)
        return OK
    if args.name is None:
        raise DocumentError("catalog emit needs a name")
    if args.name == "random":
        A = catalog.random_corpus(args.seed, 1)[0]
    else:
        try:
            A = catalog.named(args.name)
        except KeyError as exc:
            raise DocumentError(str(exc)) from None
    if args.greechie:
        out.write(dumps(greechie_to_json(catalog.greechie_diagram(A))))
    else:
        out.write(dumps(oa_to_json(A)))
    return OK


def cmd_export_dot(args, out: _Out) -> int:
    from .hypergraph import hypergraph_of

    if args.what == "hypergraph":
        if _is_algebra_ref(args.ref):
            H = hypergraph_of(resolve_algebra(args.ref))
        else:
            H = hypergraph_from_json(load_json(args.ref))
        out.write(hypergraph_to_dot(H))
    else:
        out.write(poset_to_dot(_poset_of(args.ref, args.cap)))
    return OK


# --- parser -----------------------------------------------------------------------


def build_parser() -> argparse.ArgumentParser:
    common = argparse.ArgumentParser(add_help=False)
    common.add_argument("--cap", type=int, default=DEFAULT_SIZE_CAP, help="largest algebra to enumerate")
    common.add_argument("--seed", type=int, default=0, help="seed for random corpus generation")
    common.add_argument("-o", "--output", help="write to this file instead of stdout")

    p = argparse.ArgumentParser(prog="orthoalg", description="Orthoalgebras, Boolean subalgebra posets and hypergraphs.")
    sub = p.add_subparsers(dest="verb", required=True)

    s = sub.add_parser("validate", parents=[common], help="check a document")
    s.add_argument("kind", choices=["orthoalgebra", "poset", "hypergraph", "morphism"])
    s.add_argument("ref")
    s.set_defaults(func=cmd_validate)

    s = sub.add_parser("bsub", parents=[common], help="poset of Boolean subalgebras")
    s.add_argument("ref")
    s.add_argument("--count", action="store_true")
    s.add_argument("--format", choices=["json", "dot"], default="json")
    s.set_defaults(func=cmd_bsub)

    s = sub.add_parser("hypergraph", parents=[common], help="points, lines and planes of an algebra")
    s.add_argument("ref")
    s.add_argument("--format", choices=["json", "dot"], default="json")
    s.set_defaults(func=cmd_hypergraph)

    s = sub.add_parser("odir", parents=[common], help="orthoalgebra of directions")
    s.add_argument("ref")
    s.set_defaults(func=cmd_odir)

    s = sub.add_parser("roundtrip", parents=[common], help="rebuild an algebra from its Boolean subalgebras")
    s.add_argument("ref")
    s.add_argument("-v", "--verbose", action="store_true")
    s.set_defaults(func=cmd_roundtrip)

    s = sub.add_parser("directions", parents=[common], help="directions of basic elements")
    s.add_argument("ref")
    s.add_argument("--element")
    s.set_defaults(func=cmd_directions)

    s = sub.add_parser("shadows", parents=[common], help="shadows of an orthodomain")
    s.add_argument("ref")
    s.add_argument("--boolean", action="store_true")
    s.add_argument("--count", action="store_true")
    s.set_defaults(func=cmd_shadows)

    s = sub.add_parser("classify", parents=[common], help="short, tall, proper, directions, OMP")
    s.add_argument("ref")
    s.set_defaults(func=cmd_classify)

    s = sub.add_parser("infer-planes", parents=[common], help="planes implied by lines, for orthomodular posets")
    s.add_argument("ref")
    s.set_defaults(func=cmd_infer_planes)

    s = sub.add_parser("functor", parents=[common], help="hypergraph morphism of an orthoalgebra morphism")
    s.add_argument("ref")
    s.set_defaults(func=cmd_functor)

    s = sub.add_parser("lift", parents=[common], help="orthoalgebra morphism of a proper hypergraph morphism")
    s.add_argument("ref")
    s.set_defaults(func=cmd_lift)

    s = sub.add_parser("catalog", parents=[common], help="list or emit catalog entries")
    s.add_argument("action", choices=["list", "emit"])
    s.add_argument("name", nargs="?")
    s.add_argument("--greechie", action="store_true", help="emit atoms and blocks instead")
    s.set_defaults(func=cmd_catalog)

    s = sub.add_parser("export-dot", parents=[common], help="Graphviz rendering")
    s.add_argument("ref")
    s.add_argument("--what", choices=["bsub", "hypergraph"], default="bsub")
    s.set_defaults(func=cmd_export_dot)
    return p


def main(argv: list[str] | None = None) -> int:
    args = build_parser().parse_args(argv)
    out = _Out(args.output)
    try:
        code = args.func(args, out)
    except (DocumentError, OrthoAlgebraError, CapExceededError, ValueError, KeyError, TypeError) as exc:
        sys.stderr.write(f"error: {exc}\n")
        return BROKEN
    out.flush()
    return code


if __name__ == "__main__":
    sys.exit(main())
