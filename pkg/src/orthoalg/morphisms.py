"""Morphisms of orthoalgebras and of hypergraphs, and the functor between them.

An orthoalgebra morphism preserves complements and defined sums.  The
functor sends it to the partial map of points ``x_a ↦ x_f(a)`` (undefined
when ``f(a)`` is 0 or 1).  Hypergraph morphisms are partial point maps with
prescribed behaviour on lines and planes; a proper one lifts back to an
orthoalgebra morphism through directions.
"""

from __future__ import annotations

import itertools
import random
from dataclasses import dataclass
from typing import Sequence

from .catalog import mo, power_set, power_set_order
from .core import (
    OrthoAlgebra,
    ValidationReport,
    big_oplus,
    blocks,
    boolean_subalgebras,
    is_boolean,
    is_closed,
    is_proper,
    minimal_nonzero,
    morphism_violations,
)
from .hypergraph import Hypergraph, Plane, hypergraph_of, orthodomain_of
from .orthodomain import Direction, direction_map, odir


class LiftError(ValueError):
    pass


class NotProperError(ValueError):
    pass


# --- orthoalgebra morphisms --------------------------------------------------------


@dataclass(frozen=True)
class OAMorphism:
    source: OrthoAlgebra
    target: OrthoAlgebra
    mapping: tuple[int, ...]
    name: str = ""

    def __call__(self, a: int) -> int:
        return self.mapping[a]

    def image(self, S=None) -> frozenset[int]:
        S = range(self.source.size) if S is None else S
        return frozenset(self.mapping[a] for a in S)

    def is_injective(self) -> bool:
        return len(set(self.mapping)) == len(self.mapping)


def compose(g: OAMorphism, f: OAMorphism) -> OAMorphism:
    """``g ∘ f``."""
    if f.target.size != g.source.size:
        raise ValueError("morphisms are not composable")
    return OAMorphism(f.source, g.target, tuple(g.mapping[x] for x in f.mapping), f"{g.name}.{f.name}")


def identity(A: OrthoAlgebra) -> OAMorphism:
    return OAMorphism(A, A, tuple(range(A.size)), "id")


def _boolean_hom_violations(f: OAMorphism) -> list[str]:
    """Cross-check: on each Boolean subalgebra B, f must be a Boolean
    algebra homomorphism onto a Boolean subalgebra of the target.

    Joins of B and of f[B] are taken as unions of atom sets, so this
    route does not reuse the sum table of the target.
    """
    A, C, m = f.source, f.target, f.mapping
    out = []
    for B in boolean_subalgebras(A):
        img = frozenset(m[b] for b in B)
        if not is_closed(C, img) or not is_boolean(C, img):
            out.append(f"image of {sorted(B)} is not a Boolean subalgebra")
            continue
        atoms_b = minimal_nonzero(A, B)
        atoms_i = minimal_nonzero(C, img)
        below_b = {b: frozenset(x for x in atoms_b if A.down_masks[b] >> x & 1) for b in B}
        below_i = {c: frozenset(x for x in atoms_i if C.down_masks[c] >> x & 1) for c in img}
        by_atoms = {v: k for k, v in below_b.items()}
        if m[0] != C.zero or m[A.one] != C.one:
            out.append("constants not preserved")
        for b in B:
            if below_i[m[A.comp[b]]] != frozenset(atoms_i) - below_i[m[b]]:
                out.append(f"complement of {A.labels[b]} not preserved in a Boolean subalgebra")
        for b1, b2 in itertools.combinations(B, 2):
            j = by_atoms[below_b[b1] | below_b[b2]]
            if below_i[m[j]] != below_i[m[b1]] | below_i[m[b2]]:
                out.append(f"join of {A.labels[b1]}, {A.labels[b2]} not preserved")
    return out


def validate_oa_morphism(f: OAMorphism, cross_check: bool = True) -> ValidationReport:
    """Complement and sum preservation, with the Boolean-subalgebra
    characterisation run as an independent second opinion."""
    report = ValidationReport(f.name or "morphism")
    for v in morphism_violations(f.source, f.target, f.mapping):
        report.violations.append(v)
    if cross_check and not any(v.axiom == "shape" for v in report.violations):
        second = _boolean_hom_violations(f)
        if bool(second) != (not report.ok):
            report.add("oracle-disagreement", (), "sum-table check and Boolean-subalgebra check disagree")
    return report


def is_oa_morphism(f: OAMorphism) -> bool:
    return not morphism_violations(f.source, f.target, f.mapping)


def is_proper_oa_morphism(f: OAMorphism) -> bool:
    """Each element lies in a block with image larger than four elements, and
    each orthogonal pair a, b lies in a block whose image is not
    {0, f(a), f(a)', f(b), f(b)', 1}."""
    A, C, m = f.source, f.target, f.mapping
    bl = blocks(A)
    images = [frozenset(m[x] for x in b) for b in bl]
    for a in range(A.size):
        if not any(a in b and len(img) > 4 for b, img in zip(bl, images)):
            return False
    for a, b, _ in A.sums():
        small = {C.zero, C.one, m[a], C.comp[m[a]], m[b], C.comp[m[b]]}
        if not any(a in blk and b in blk and img != small for blk, img in zip(bl, images)):
            return False
    return True


# --- hypergraph morphisms ----------------------------------------------------------


@dataclass(frozen=True)
class PartialPointMap:
    source: Hypergraph
    target: Hypergraph
    assignment: tuple[int | None, ...]

    def __call__(self, p: int) -> int | None:
        return self.assignment[p]

    def is_injective(self) -> bool:
        vals = [v for v in self.assignment if v is not None]
        return len(vals) == len(set(vals)) and None not in self.assignment

    def named(self) -> dict[str, str | None]:
        return {
            self.source.points[p]: (None if q is None else self.target.points[q]) for p, q in enumerate(self.assignment)
        }


def compose_point_maps(beta: PartialPointMap, alpha: PartialPointMap) -> PartialPointMap:
    return PartialPointMap(
        alpha.source,
        beta.target,
        tuple(None if q is None else beta.assignment[q] for q in alpha.assignment),
    )


def _element_points(H: Hypergraph) -> dict[int, int]:
    """Algebra element ↦ point index, from the point carriers."""
    if H.carriers is None:
        raise ValueError("hypergraph carries no subalgebras for its points")
    out = {}
    for p, S in enumerate(H.carriers):
        for e in S:
            if e not in (0, 1):
                out[e] = p
    return out


def g_functor(f: OAMorphism, source: Hypergraph | None = None, target: Hypergraph | None = None) -> PartialPointMap:
    """The partial point map ``x_a ↦ x_f(a)``."""
    H = source if source is not None else hypergraph_of(f.source)
    K = target if target is not None else hypergraph_of(f.target)
    to_point = _element_points(K)
    one = f.target.one
    out = []
    for S in H.carriers:
        a = min(e for e in S if e not in (0, f.source.one))
        fa = f.mapping[a]
        out.append(None if fa in (0, one) else to_point[fa])
    return PartialPointMap(H, K, tuple(out))


def line_image(alpha: PartialPointMap, line) -> tuple[str, object]:
    """Classify the image of a line: ``undefined``, ``point``, ``line`` or ``invalid``."""
    vals = [alpha.assignment[p] for p in sorted(line)]
    defined = [v for v in vals if v is not None]
    if not defined:
        return ("undefined", None)
    if len(defined) == 2 and defined[0] == defined[1]:
        return ("point", defined[0])
    if len(defined) == 3 and len(set(defined)) == 3 and frozenset(defined) in alpha.target.line_set():
        return ("line", frozenset(defined))
    return ("invalid", tuple(vals))


def _third(t: Plane, p: int, q: int) -> int:
    for l in t.lines:
        if p in l and q in l:
            (r,) = l - {p, q}
            return r
    raise ValueError("points are not on a common line of the plane")


def plane_image(alpha: PartialPointMap, t: Plane) -> tuple[str, object]:
    """Classify the image of a plane: ``undefined``, ``point``, ``line``,
    ``plane`` or ``invalid``."""
    a = alpha.assignment
    pts = sorted(t.points)
    undefined = {p for p in pts if a[p] is None}
    if len(undefined) == 7:
        return ("undefined", None)
    corners = t.corners()
    if len(undefined) == 3 and frozenset(undefined) in t.lines:
        rest = {a[p] for p in pts if p not in undefined}
        if len(rest) == 1:
            return ("point", rest.pop())
        return ("invalid", "point-image")
    if len(undefined) == 1 and next(iter(undefined)) in corners:
        (lost,) = undefined
        others = [c for c in corners if c != lost]
        images = [a[c] for c in others]
        if len(set(images)) != 3 or frozenset(images) not in alpha.target.line_set():
            return ("invalid", "line-image")
        for c in others:
            if a[_third(t, lost, c)] != a[c]:
                return ("invalid", "line-image")
        return ("line", frozenset(images))
    if not undefined:
        image = frozenset(a[p] for p in pts)
        target = [s for s in alpha.target.planes if s.points == image]
        if len(image) == 7 and target:
            s = target[0]
            if all(frozenset(a[p] for p in l) in s.lines for l in t.lines):
                return ("plane", s)
    return ("invalid", "pattern")


def validate_hg_morphism(alpha: PartialPointMap) -> ValidationReport:
    """Line, plane and plane-reflection conditions."""
    report = ValidationReport("hypergraph morphism")
    H, K = alpha.source, alpha.target
    if len(alpha.assignment) != H.n_points:
        report.add("shape", (), "assignment length differs from the number of points")
        return report
    for q in alpha.assignment:
        if q is not None and not (0 <= q < K.n_points):
            report.add("shape", (), f"image {q!r} out of range")
            return report
    kinds = {}
    for l in H.lines:
        kind, val = line_image(alpha, l)
        kinds[l] = (kind, val)
        if kind == "invalid":
            report.add("lines", tuple(sorted(l)), f"line image {val} is neither undefined, a point nor a line")
    for t in H.planes:
        kind, val = plane_image(alpha, t)
        if kind == "invalid":
            report.add("planes", tuple(sorted(t.points)), f"plane image fails ({val})")
    for l, m in itertools.combinations(H.lines, 2):
        common = l & m
        if len(common) != 1:
            continue
        (p,) = common
        (k1, L1), (k2, L2) = kinds[l], kinds[m]
        if k1 != "line" or k2 != "line" or L1 == L2:
            continue
        q = alpha.assignment[p]
        for s in K.planes:
            if L1 in s.lines and L2 in s.lines and s.degree(q) == 2:
                ok = any(
                    l in t.lines and m in t.lines and plane_image(alpha, t) == ("plane", s) for t in H.planes
                )
                if not ok:
                    report.add(
                        "plane-reflection",
                        tuple(sorted(l | m)),
                        "two lines meet at an edge point of a target plane but lie in no plane mapped onto it",
                    )
    return report


def is_hg_morphism(alpha: PartialPointMap) -> bool:
    return validate_hg_morphism(alpha).ok


def is_proper_hg_morphism(alpha: PartialPointMap) -> bool:
    """Every point lies on a line or plane whose image contains a line, and
    any two points of a line are completed by a third point of a line or
    plane through both whose image differs from theirs."""
    if not is_hg_morphism(alpha):
        return False
    H, K = alpha.source, alpha.target
    a = alpha.assignment
    klines = K.line_set()
    for p in range(H.n_points):
        if any(line_image(alpha, l)[0] == "line" for l in H.lines_through(p)):
            continue
        hit = False
        for t in H.planes_through(p):
            img = {a[x] for x in t.points if a[x] is not None}
            if any(L <= img for L in klines):
                hit = True
                break
        if not hit:
            return False
    for l in H.lines:
        for p, q in itertools.combinations(sorted(l), 2):
            spans = [set(l2) for l2 in H.lines if p in l2 and q in l2]
            spans += [set(t.points) for t in H.planes if p in t.points and q in t.points]
            ok = any(
                a[s] is not None and a[s] != a[p] and a[s] != a[q] for span in spans for s in span if s not in (p, q)
            )
            if not ok:
                return False
    return True


# --- directions as arrows -------------------------------------------------------------


@dataclass(frozen=True)
class DirectionArrow:
    cover: int
    arrow: str


def direction_arrows(X, d: Direction) -> list[DirectionArrow]:
    """``down`` at covers where the base sits as an atom, ``up`` where it
    sits as a coatom."""
    from .orthodomain import arrow

    return [DirectionArrow(y, arrow(X, d, y)) for y in X.upper_covers[d.base]]


def arrow_law_violations(X, d: Direction) -> list[str]:
    """Corner points carry one arrow on all three plane lines, edge points
    carry opposite arrows on their two, and opposite arrows at a point
    need a plane in which it is an edge point."""
    p = d.base
    if X.heights[p] != 1:
        return []
    arrows = {a.cover: a.arrow for a in direction_arrows(X, d)}
    out = []
    planes = [t for t in X.upset(p) if X.heights[t] == 3]
    for t in planes:
        mine = [l for l in arrows if X.leq(l, t)]
        vals = {arrows[l] for l in mine}
        if len(mine) == 3 and len(vals) != 1:
            out.append(f"corner {X.labels[p]} of {X.labels[t]} has mixed arrows")
        if len(mine) == 2 and len(vals) != 2:
            out.append(f"edge point {X.labels[p]} of {X.labels[t]} has equal arrows")
    for l, m in itertools.combinations(sorted(arrows), 2):
        if arrows[l] != arrows[m]:
            if not any(X.leq(l, t) and X.leq(m, t) and sum(1 for y in arrows if X.leq(y, t)) == 2 for t in planes):
                out.append(f"opposite arrows at {X.labels[p]} on {X.labels[l]}, {X.labels[m]} without a plane")
    return out


# --- lifting ---------------------------------------------------------------------------


@dataclass
class _Side:
    algebra: OrthoAlgebra
    hypergraph: Hypergraph
    poset: object
    directions: object
    xi: list[int]
    xi_inverse: dict[int, int]
    line_index: dict[frozenset, int]


_side_cache: dict[int, _Side] = {}


def _side(A: OrthoAlgebra, H: Hypergraph) -> _Side:
    key = id(A)
    cached = _side_cache.get(key)
    if cached is not None and cached.algebra is A and cached.hypergraph.same_shape(H):
        return cached
    X = orthodomain_of(H, A)
    D = odir(X)
    xi = direction_map(A, X, D)
    if sorted(xi) != list(range(D.size)):
        raise LiftError("elements and directions are not in bijection")
    lines = {}
    n = H.n_points
    for k, l in enumerate(H.lines):
        lines[l] = 1 + n + k
    side = _Side(A, H, X, D, xi, {d: a for a, d in enumerate(xi)}, lines)
    _side_cache[key] = side
    return side


def lift_hg_morphism(alpha: PartialPointMap, A: OrthoAlgebra, C: OrthoAlgebra) -> OAMorphism:
    """The orthoalgebra morphism ``g`` with ``G(g) = alpha``.

    A direction for a point p goes to the direction for alpha(p) that carries
    the same arrow along the image of a line through p; directions of the
    bottom go to themselves.
    """
    if not (is_proper(A) and is_proper(C)):
        raise NotProperError("both algebras must be proper")
    if not alpha.source.same_shape(hypergraph_of(A)) or not alpha.target.same_shape(hypergraph_of(C)):
        raise LiftError("point map is not between the hypergraphs of the two algebras")
    if not is_proper_hg_morphism(alpha):
        raise NotProperError("point map is not a proper hypergraph morphism")
    src = _side(A, hypergraph_of(A))
    dst = _side(C, hypergraph_of(C))
    X, D = src.poset, src.directions
    Y, E = dst.poset, dst.directions
    n = alpha.source.n_points
    f = [0] * D.size
    f[0], f[1] = 0, 1
    for i in range(2, D.size):
        d = D.directions[i]
        p = d.base
        q = alpha.assignment[p - 1]
        results = set()
        for l in X.upper_covers[p]:
            line = alpha.source.lines[l - 1 - n]
            kind, val = line_image(alpha, line)
            down = d.at(l) == (p, l)
            if q is None and kind == "point":
                results.add(0 if down else 1)
            elif q is not None and kind == "line":
                L = dst.line_index[val]
                qq = q + 1
                want = (qq, L) if down else (L, qq)
                hits = [E.index_of(e) for e in _directions_of(Y, E, qq) if e.at(L) == want]
                if len(hits) != 1:
                    raise LiftError(f"no unique target direction at {Y.labels[qq]}")
                results.add(hits[0])
        if len(results) != 1:
            raise LiftError(f"direction {D.labels[i]} lifts to {len(results)} values")
        f[i] = results.pop()
    g = tuple(dst.xi_inverse[f[src.xi[a]]] for a in range(A.size))
    mor = OAMorphism(A, C, g, "lift")
    bad = morphism_violations(A, C, g)
    if bad:
        raise LiftError(f"lifted map is not a morphism: {bad[0]}")
    back = g_functor(mor, alpha.source, alpha.target)
    if back.assignment != alpha.assignment:
        raise LiftError("functor image of the lift differs from the point map")
    return mor


def _directions_of(Y, E, base: int) -> list[Direction]:
    return [d for d in E.directions if d.base == base]


# --- a corpus of morphisms -----------------------------------------------------------


def boolean_hom(n: int, m: int, phi: Sequence[int]) -> OAMorphism:
    """``P(n) -> P(m)`` taking S to the preimage of S under ``phi: m -> n``."""
    src, dst = power_set(n), power_set(m)
    pos = {mask: i for i, mask in enumerate(power_set_order(m))}
    out = []
    for mask in power_set_order(n):
        image = 0
        for j in range(m):
            if mask >> phi[j] & 1:
                image |= 1 << j
        out.append(pos[image])
    return OAMorphism(src, dst, tuple(out), f"hom{tuple(phi)}")


def endomorphisms(n: int) -> list[OAMorphism]:
    return [boolean_hom(n, n, phi) for phi in itertools.product(range(n), repeat=n)]


def homomorphisms(n: int, m: int) -> list[OAMorphism]:
    return [boolean_hom(n, m, phi) for phi in itertools.product(range(n), repeat=m)]


def block_inclusion(C: OrthoAlgebra, atoms: Sequence[int], name: str = "") -> OAMorphism:
    """``P(k) -> C`` sending the i-th singleton to the i-th given atom."""
    k = len(atoms)
    out = []
    for mask in power_set_order(k):
        s = big_oplus(C, [atoms[i] for i in range(k) if mask >> i & 1])
        if s is None:
            raise ValueError("atoms are not jointly orthogonal")
        out.append(s)
    return OAMorphism(power_set(k), C, tuple(out), name or "inclusion")


def mo2_embedding() -> OAMorphism:
    """a ↦ {1}, a' ↦ {2,3}, b ↦ {2}, b' ↦ {1,3}."""
    A, C = mo(2), power_set(3)
    images = {"0": "0", "1": "1", "a": "{1}", "a'": "{2,3}", "b": "{2}", "b'": "{1,3}"}
    return OAMorphism(A, C, tuple(C.index(images[A.labels[i]]) for i in range(A.size)), "mo2_embedding")


def _power_set_map(n: int, atom_images: Sequence[int]) -> OAMorphism:
    """Endomorphism of P(n) fixed by the images of the singletons (as masks)."""
    A = power_set(n)
    order = power_set_order(n)
    pos = {mask: i for i, mask in enumerate(order)}
    out = []
    for mask in order:
        img = 0
        for i in range(n):
            if mask >> i & 1:
                img |= atom_images[i]
        out.append(pos[img])
    return OAMorphism(A, A, tuple(out))


def composition_pair() -> tuple[OAMorphism, OAMorphism]:
    """Two proper endomorphisms of P(4) whose composite is not proper.

    f kills {1} and folds it into {4}; g kills {2} and folds it into {4}.
    """
    f = _power_set_map(4, [0, 0b0010, 0b0100, 0b1001])
    g = _power_set_map(4, [0b0001, 0, 0b0100, 0b1010])
    return (
        OAMorphism(f.source, f.target, f.mapping, "f"),
        OAMorphism(g.source, g.target, g.mapping, "g"),
    )


def morphism_corpus(seed: int = 0, random_count: int = 20) -> list[OAMorphism]:
    """Endomorphisms of P(3) and P(4), block inclusions, the MO2 embedding,
    the composition pair and seeded random maps between power sets."""
    from .catalog import named

    out = list(endomorphisms(3)) + list(endomorphisms(4))
    out.append(mo2_embedding())
    out.extend(composition_pair())
    for name in ("fraser_cube", "mo2_times_mo2"):
        C = named(name)
        for b in blocks(C):
            if len(b) == 16:
                out.append(block_inclusion(C, minimal_nonzero(C, b), f"block->{name}"))
    rng = random.Random(seed)
    for _ in range(random_count):
        n, m = rng.randint(2, 4), rng.randint(2, 4)
        phi = [rng.randrange(n) for _ in range(m)]
        out.append(boolean_hom(n, m, phi))
    return out
