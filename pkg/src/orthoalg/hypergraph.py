"""Hypergraphs of points, lines and planes.

The hypergraph of an orthoalgebra has a point for each four-element Boolean
subalgebra, a line (three points) for each eight-element one and a plane
(seven points, six lines) for each sixteen-element one.  A plane always has
the shape of the Fano plane with one line removed: four corner points on
three internal lines each and three edge points on two.
"""

from __future__ import annotations

import itertools
from dataclasses import dataclass, field
from typing import Iterable, Sequence

from .core import OrthoAlgebra, ValidationReport, enumerate_bsub, generated_subalgebra
from .poset import FinitePoset

Line = frozenset


@dataclass(frozen=True)
class Plane:
    points: frozenset[int]
    lines: tuple[frozenset[int], ...]

    @classmethod
    def make(cls, points: Iterable[int], lines: Iterable[Iterable[int]]) -> "Plane":
        return cls(frozenset(points), tuple(sorted((frozenset(l) for l in lines), key=sorted)))

    def degree(self, p: int) -> int:
        return sum(1 for l in self.lines if p in l)

    def corners(self) -> list[int]:
        return sorted(p for p in self.points if self.degree(p) == 3)

    def edges(self) -> list[int]:
        return sorted(p for p in self.points if self.degree(p) == 2)


@dataclass(frozen=True)
class Hypergraph:
    points: tuple[str, ...]
    lines: tuple[frozenset[int], ...]
    planes: tuple[Plane, ...] = ()
    carriers: tuple[frozenset[int], ...] | None = field(default=None, compare=False, repr=False)

    @classmethod
    def make(cls, points: Sequence[str], lines: Iterable[Iterable[int]], planes: Iterable[Plane] = (), carriers=None) -> "Hypergraph":
        ls = sorted({frozenset(l) for l in lines}, key=sorted)
        ps = sorted(set(planes), key=lambda t: sorted(t.points))
        return cls(tuple(points), tuple(ls), tuple(ps), tuple(carriers) if carriers is not None else None)

    @property
    def n_points(self) -> int:
        return len(self.points)

    def lines_through(self, p: int) -> list[frozenset[int]]:
        return [l for l in self.lines if p in l]

    def planes_through(self, p: int) -> list[Plane]:
        return [t for t in self.planes if p in t.points]

    def line_set(self) -> set[frozenset[int]]:
        return set(self.lines)

    def same_shape(self, other: "Hypergraph") -> bool:
        return self.points == other.points and self.lines == other.lines and self.planes == other.planes


# The plane template: corners 0-3, edge points 4-6.
TEMPLATE_LINES = (
    frozenset({0, 1, 4}),
    frozenset({2, 3, 4}),
    frozenset({0, 2, 5}),
    frozenset({1, 3, 5}),
    frozenset({0, 3, 6}),
    frozenset({1, 2, 6}),
)


def hypergraph_of(A: OrthoAlgebra, X: FinitePoset | None = None) -> Hypergraph:
    """Points, lines and planes from the Boolean subalgebras of ``A``."""
    if X is None:
        X = enumerate_bsub(A)
    atoms = X.atoms()
    pos = {a: i for i, a in enumerate(atoms)}
    names = [X.labels[a] for a in atoms]
    lines, planes = [], []
    line_of: dict[int, frozenset[int]] = {}
    for w in range(X.size):
        if X.heights[w] == 2:
            line_of[w] = frozenset(pos[a] for a in X.atoms_below(w))
            lines.append(line_of[w])
    for w in range(X.size):
        if X.heights[w] == 3:
            pts = frozenset(pos[a] for a in X.atoms_below(w))
            internal = [line_of[v] for v in X.downset(w) if X.heights[v] == 2]
            planes.append(Plane.make(pts, internal))
    return Hypergraph.make(names, lines, planes, carriers=[X.members[a] for a in atoms])


def _is_plane_shape(t: Plane) -> bool:
    if len(t.points) != 7 or len(t.lines) != 6 or len(set(t.lines)) != 6:
        return False
    corners, edges = t.corners(), t.edges()
    if len(corners) != 4 or len(edges) != 3:
        return False
    cs = set(corners)
    for l in t.lines:
        if len(l) != 3 or not l <= t.points or len(l & cs) != 2:
            return False
    pairs = {frozenset(l & cs) for l in t.lines}
    if len(pairs) != 6:
        return False
    for e in edges:
        through = [l for l in t.lines if e in l]
        if len(through) != 2 or (through[0] & through[1]) != {e}:
            return False
    return True


def validate_hypergraph(H: Hypergraph) -> ValidationReport:
    """Lines are 3-sets meeting in at most one point; every plane has the
    template shape and contains exactly the lines of its points; a line
    with two points in a plane is one of that plane's lines."""
    report = ValidationReport("hypergraph")
    n = H.n_points
    if len(set(H.points)) != n:
        report.add("points", (), "duplicate point names")
    for l in H.lines:
        if len(l) != 3 or any(not (0 <= p < n) for p in l):
            report.add("line", tuple(sorted(l)), "a line must be three distinct points")
    for l, m in itertools.combinations(H.lines, 2):
        if len(l & m) > 1:
            report.add("line-intersection", tuple(sorted(l | m)), "two lines share two points")
    lineset = H.line_set()
    seen_planes = set()
    for t in H.planes:
        tag = tuple(sorted(t.points))
        if t.points in seen_planes:
            report.add("plane", tag, "duplicate plane")
        seen_planes.add(t.points)
        if not _is_plane_shape(t):
            report.add("plane-shape", tag, "plane does not have the seven-point, six-line shape")
            continue
        for l in t.lines:
            if l not in lineset:
                report.add("plane-lines", tuple(sorted(l)), "plane line is not a line of the hypergraph")
        inside = {l for l in H.lines if l <= t.points}
        if inside != set(t.lines):
            report.add("plane-lines", tag, "lines inside the plane's points differ from its declared lines")
        for l in H.lines:
            if len(l & t.points) >= 2 and l not in t.lines:
                report.add("plane-line-meet", tuple(sorted(l)), "line meets a plane in two points without being one of its lines")
    return report


def orthodomain_of(H: Hypergraph, algebra: OrthoAlgebra | None = None) -> FinitePoset:
    """Bottom, then points, lines and planes, ordered by membership.

    With ``algebra`` given and point carriers present, every element also
    carries its Boolean subalgebra as ``members``.
    """
    n = H.n_points
    elements: list[frozenset[int]] = [frozenset()]
    labels = ["bot"]
    elements += [frozenset({p}) for p in range(n)]
    labels += list(H.points)
    elements += list(H.lines)
    labels += ["-".join(H.points[p] for p in sorted(l)) for l in H.lines]
    elements += [t.points for t in H.planes]
    labels += ["plane(" + ",".join(H.points[p] for p in sorted(t.points)) + ")" for t in H.planes]
    down = []
    for j, ej in enumerate(elements):
        m = 0
        for i, ei in enumerate(elements):
            if ei <= ej:
                m |= 1 << i
        down.append(m)
    members = None
    if algebra is not None:
        if H.carriers is None:
            raise ValueError("hypergraph carries no subalgebras for its points")
        members = [frozenset({0, algebra.one})]
        for e in elements[1:]:
            gens = set().union(*(H.carriers[p] for p in e))
            members.append(generated_subalgebra(algebra, gens))
    return FinitePoset.from_down_masks(down, labels=labels, members=members, name="O(H)")


def is_orthohypergraph(H: Hypergraph) -> bool:
    """Valid, with an orthodomain in which every basic element has a direction."""
    from .orthodomain import directions_for, is_orthodomain

    if not validate_hypergraph(H).ok:
        return False
    X = orthodomain_of(H)
    if not is_orthodomain(X):
        return False
    return all(directions_for(X, x) for x in X.basic_elements())


def point_class(H: Hypergraph, t: Plane, p: int) -> str:
    """``corner`` (on three lines of ``t``) or ``edge`` (on two)."""
    d = t.degree(p)
    if d == 3:
        return "corner"
    if d == 2:
        return "edge"
    raise ValueError("point is not in the plane")


def infer_planes_omp(n_points: int, lines: Iterable[Iterable[int]]) -> list[Plane]:
    """Every seven-point configuration with exactly the template's lines.

    Four pairwise collinear corners whose three pairings each close through
    one common edge point, the edge points being new and distinct, and no
    further line among the seven points.  For orthomodular posets these are
    exactly the planes.
    """
    lineset = {frozenset(l) for l in lines}
    third: dict[frozenset[int], int] = {}
    for l in lineset:
        for p, q in itertools.combinations(sorted(l), 2):
            (r,) = l - {p, q}
            third[frozenset({p, q})] = r
    found = set()
    collinear = {p: set() for p in range(n_points)}
    for pq in third:
        p, q = tuple(pq)
        collinear[p].add(q)
        collinear[q].add(p)
    for c in itertools.combinations(range(n_points), 4):
        if any(b not in collinear[a] for a, b in itertools.combinations(c, 2)):
            continue
        edges = []
        ok = True
        for (i, j), (k, l) in (((0, 1), (2, 3)), ((0, 2), (1, 3)), ((0, 3), (1, 2))):
            e1 = third[frozenset({c[i], c[j]})]
            e2 = third[frozenset({c[k], c[l]})]
            if e1 != e2 or e1 in c:
                ok = False
                break
            edges.append(e1)
        if not ok or len(set(edges)) != 3:
            continue
        pts = frozenset(c) | frozenset(edges)
        internal = [l for l in lineset if l <= pts]
        if len(internal) != 6:
            continue
        found.add(Plane.make(pts, internal))
    return sorted(found, key=lambda t: sorted(t.points))


def without_planes(H: Hypergraph) -> Hypergraph:
    return Hypergraph(H.points, H.lines, (), H.carriers)
