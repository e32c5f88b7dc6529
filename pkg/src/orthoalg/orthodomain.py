"""Orthodomains, principal pairs, directions and the direction algebra.

Posets are :class:`~orthoalg.poset.FinitePoset` instances.  For an element
``y`` the principal ideal ``↓y`` is treated as a lattice of its own; its
join and meet tables are kept as numpy arrays so that the dual modularity
test (a cubic scan) stays vectorised.
"""

from __future__ import annotations

from dataclasses import dataclass, field
from functools import cached_property
from typing import Iterable, Sequence

import numpy as np

from .core import (
    OrthoAlgebra,
    OrthoAlgebraError,
    enumerate_bsub,
    is_proper,
    morphism_violations,
)
from .poset import (
    BELL,
    MAX_PARTITION_RANK,
    FinitePoset,
    is_poset_isomorphic,
    partition_lattice,
)

Pair = tuple[int, int]


class NotALatticeError(ValueError):
    pass


class TooLargeError(ValueError):
    """A principal ideal would need a partition lattice beyond the cache."""


class NoDirectionsError(ValueError):
    """The poset is not proper or some basic element has no direction."""


class ReconstructionError(OrthoAlgebraError):
    pass


# --- principal ideals as lattices ---------------------------------------------


class IdealLattice:
    """Join/meet tables of ``↓top`` indexed by local positions."""

    def __init__(self, X: FinitePoset, top: int):
        self.X = X
        self.top = top
        self.elems = X.downset(top)
        self.local = {e: i for i, e in enumerate(self.elems)}
        k = len(self.elems)
        J = np.zeros((k, k), dtype=np.int32)
        M = np.zeros((k, k), dtype=np.int32)
        L = np.zeros((k, k), dtype=bool)
        for i, a in enumerate(self.elems):
            J[i, i] = M[i, i] = i
            for j in range(i + 1, k):
                b = self.elems[j]
                u = X.lub((a, b), within=top)
                m = X.glb((a, b))
                if u is None or m is None:
                    raise NotALatticeError(f"{X.labels[a]} and {X.labels[b]} have no join below {X.labels[top]}")
                J[i, j] = J[j, i] = self.local[u]
                M[i, j] = M[j, i] = self.local[m]
            for j, b in enumerate(self.elems):
                L[i, j] = X.leq(a, b)
        self.J, self.M, self.L = J, M, L

    def dual_modular(self) -> list[int]:
        """Elements x with (x∨y)∧z = x∨(y∧z) for z ≥ x and
        (w∨x)∧y = w∨(x∧y) for w ≤ y."""
        J, M, L = self.J, self.M, self.L
        k = len(self.elems)
        cols = np.arange(k)
        out = []
        for x in range(k):
            zs = np.nonzero(L[x])[0]
            lhs = M[J[x][:, None], zs[None, :]]
            rhs = J[x][M[:, zs]]
            if not np.array_equal(lhs, rhs):
                continue
            lhs2 = M[J[:, x][:, None], cols[None, :]]
            rhs2 = J[cols[:, None], M[x][None, :]]
            if np.any((lhs2 != rhs2) & L):
                continue
            out.append(self.elems[x])
        return out


def _ideal(X: FinitePoset, y: int) -> IdealLattice:
    key = ("ideal", y)
    if key not in X._cache:
        X._cache[key] = IdealLattice(X, y)
    return X._cache[key]


def _top(X: FinitePoset) -> int:
    t = X.top()
    if t is None:
        raise NotALatticeError("poset has no greatest element")
    return t


def dual_modular_elements(X: FinitePoset, within: int | None = None) -> frozenset[int]:
    """Dual modular elements of the lattice ``X`` (or of ``↓within``)."""
    y = _top(X) if within is None else within
    key = ("dm", y)
    if key not in X._cache:
        X._cache[key] = frozenset(_ideal(X, y).dual_modular())
    return X._cache[key]


def principal_pairs(X: FinitePoset, x: int, within: int | None = None) -> list[Pair]:
    """Principal pairs for the basic element ``x`` in the lattice ``↓within``.

    A pair (y, z) of dual modular elements with y∧z = x qualifies when
    y is the top and z basic, z is the top and y basic, or y∨z is the top
    and x is basic but not dual modular.
    """
    top = _top(X) if within is None else within
    key = ("pp", x, top)
    if key in X._cache:
        return X._cache[key]
    if not (X.leq(x, top) and X.is_basic(x)):
        raise ValueError(f"{X.labels[x]} is not a basic element below {X.labels[top]}")
    dm = dual_modular_elements(X, top)
    found: set[Pair] = set()
    if x in dm:
        found.add((top, x))
        found.add((x, top))
    else:
        cands = sorted(e for e in dm if X.leq(x, e))
        for y in cands:
            for z in cands:
                if X.meet(y, z) == x and X.lub((y, z), within=top) == top:
                    found.add((y, z))
    result = sorted(found)
    X._cache[key] = result
    return result


def pair_leq(X: FinitePoset, p: Pair, q: Pair) -> bool:
    """Order on principal pairs of a Boolean domain."""
    (y1, z1), (y2, z2) = p, q
    if not (X.leq(y1, y2) and X.leq(z2, z1)):
        return False
    m = X.meet(y1, z1)
    if m is not None and X.heights[m] == 1 and m in dual_modular_elements(X):
        return (y2, z2) != (z1, y1)
    return True


def all_principal_pairs(X: FinitePoset) -> list[Pair]:
    """Principal pairs for every basic element of the Boolean domain ``X``."""
    out: set[Pair] = set()
    for x in X.basic_elements():
        out.update(principal_pairs(X, x))
    return sorted(out)


# --- Boolean domains and orthodomains -----------------------------------------


def _is_partition_lattice(P: FinitePoset) -> bool:
    n = P.size
    if n > BELL[MAX_PARTITION_RANK]:
        raise TooLargeError(f"ideal with {n} elements exceeds the partition lattice cache")
    if n not in BELL:
        return False
    k = max(i for i, b in enumerate(BELL) if b == n)
    return is_poset_isomorphic(P, partition_lattice(k))


def is_boolean_domain(X: FinitePoset) -> bool:
    """A lattice in which every principal ideal is a partition lattice."""
    if not X.is_lattice():
        return False
    return all(_ideal_is_partition_lattice(X, x) for x in range(X.size))


def _ideal_is_partition_lattice(X: FinitePoset, x: int) -> bool:
    key = ("pi", x)
    if key not in X._cache:
        D = X.down_poset(x)
        X._cache[key] = D.is_lattice() and _is_partition_lattice(D)
    return X._cache[key]


def orthodomain_violations(X: FinitePoset) -> list[str]:
    """Reasons ``X`` fails to be an orthodomain (empty when it is one)."""
    out = []
    for x in range(X.size):
        if X.lub(X.atoms_below(x)) != x:
            out.append(f"{X.labels[x]} is not the join of the atoms below it")
    for x in range(X.size):
        if not _ideal_is_partition_lattice(X, x):
            out.append(f"the ideal below {X.labels[x]} is not a Boolean domain")
    atoms = X.atoms()
    for w in range(X.size):
        below = [a for a in X.lower_covers[w] if a in atoms]
        for i, a in enumerate(below):
            for b in below[i + 1:]:
                if X.join(a, b) != w:
                    out.append(f"atoms {X.labels[a]}, {X.labels[b]} are covered by {X.labels[w]} but do not join to it")
    return out


def is_orthodomain(X: FinitePoset) -> bool:
    return not orthodomain_violations(X)


def near_atoms(X: FinitePoset, x: int, y: int) -> bool:
    """Distinct atoms whose join exists and covers both."""
    if x == y or X.heights[x] != 1 or X.heights[y] != 1:
        return False
    w = X.join(x, y)
    return w is not None and w in X.upper_covers[x] and w in X.upper_covers[y]


def near_pairs(X: FinitePoset) -> list[tuple[int, int, int]]:
    """Triples (x, y, x∨y) over near atoms with x < y."""
    atoms = X.atoms()
    out = []
    for i, x in enumerate(atoms):
        for y in atoms[i + 1:]:
            if near_atoms(X, x, y):
                out.append((x, y, X.join(x, y)))
    return out


def third_atoms(X: FinitePoset, x: int, y: int, w: int) -> list[int]:
    return [z for z in X.atoms_below(w) if z not in (x, y)]


def exchange_violations(X: FinitePoset) -> list[str]:
    """Near atoms x, y must have exactly one other atom z under x∨y, and
    each two of x, y, z must be near."""
    out = []
    for x, y, w in near_pairs(X):
        zs = third_atoms(X, x, y, w)
        if len(zs) != 1:
            out.append(f"{X.labels[x]}, {X.labels[y]}: {len(zs)} other atoms under their join")
            continue
        z = zs[0]
        if not (near_atoms(X, x, z) and near_atoms(X, y, z)):
            out.append(f"{X.labels[x]}, {X.labels[y]}, {X.labels[z]} are not pairwise near")
    return out


# --- directions -----------------------------------------------------------------


@dataclass(frozen=True)
class Direction:
    """A direction for ``base``: a principal pair at every element above it."""

    base: int
    values: tuple[tuple[int, int, int], ...]

    @cached_property
    def _lookup(self) -> dict[int, Pair]:
        return {y: (v, w) for y, v, w in self.values}

    def at(self, y: int) -> Pair:
        return self._lookup[y]

    def complement(self) -> "Direction":
        return Direction(self.base, tuple((y, w, v) for y, v, w in self.values))

    def key(self):
        return (self.base, self.values)


def _restrict(X: FinitePoset, pair: Pair, y: int) -> Pair | None:
    v, w = pair
    a, b = X.meet(y, v), X.meet(y, w)
    if a is None or b is None:
        return None
    return (a, b)


def _verify(X: FinitePoset, x: int, d: dict[int, Pair]) -> bool:
    above = X.upset(x)
    for y in above:
        if d.get(y) not in principal_pairs(X, x, y):
            return False
    for y in above:
        for z in X.upper_covers[y]:
            if _restrict(X, d[z], y) != d[y]:
                return False
    covers = X.upper_covers[x]
    for y in covers:
        if d[y] != (x, y):
            continue
        for z in covers:
            if z != y and d[z] == (z, x):
                j = X.join(y, z)
                if j is None or j not in X.upper_covers[y] or j not in X.upper_covers[z]:
                    return False
    return True


def _component_options(X: FinitePoset, x: int, comp: list[int]) -> list[dict[int, Pair]]:
    """Candidate assignments on the maximal elements of one component."""
    above_x = X.up[x] & ~(1 << x)
    seed = comp[0]
    options = []
    for start in principal_pairs(X, x, seed):
        assign = {seed: start}
        queue = [seed]
        alive = True
        while queue and alive:
            m = queue.pop()
            for m2 in comp:
                shared = X.down[m] & X.down[m2] & above_x
                if m2 == m or not shared:
                    continue
                y = (shared & -shared).bit_length() - 1
                target = _restrict(X, assign[m], y)
                if m2 in assign:
                    if _restrict(X, assign[m2], y) != target:
                        alive = False
                        break
                    continue
                fits = [p for p in principal_pairs(X, x, m2) if _restrict(X, p, y) == target]
                if len(fits) != 1:
                    alive = False
                    break
                assign[m2] = fits[0]
                queue.append(m2)
        if alive:
            options.append(assign)
    return options


def _fill(X: FinitePoset, x: int, tops: dict[int, Pair]) -> dict[int, Pair] | None:
    d = {}
    for y in X.upset(x):
        m = next(m for m in tops if X.leq(y, m))
        r = _restrict(X, tops[m], y)
        if r is None:
            return None
        d[y] = r
    return d


def directions_for(X: FinitePoset, x: int) -> list[Direction]:
    """All directions for the basic element ``x``, in canonical order."""
    key = ("dirs", x)
    if key in X._cache:
        return X._cache[key]
    if not X.is_basic(x):
        raise ValueError(f"{X.labels[x]} is not basic")
    maxima = [m for m in X.maximal_elements() if X.leq(x, m)]
    above_x = X.up[x] & ~(1 << x)
    # maximal elements sharing some element strictly above x are linked
    parent = {m: m for m in maxima}

    def find(m):
        while parent[m] != m:
            m = parent[m]
        return m

    for i, m1 in enumerate(maxima):
        for m2 in maxima[i + 1:]:
            if X.down[m1] & X.down[m2] & above_x:
                parent[find(m2)] = find(m1)
    groups: dict[int, list[int]] = {}
    for m in maxima:
        groups.setdefault(find(m), []).append(m)
    components = sorted(groups.values())

    partial: list[dict[int, Pair]] = [{}]
    for comp in components:
        extended = []
        for opt in _component_options(X, x, comp):
            for base in partial:
                merged = {**base, **opt}
                if _cross_ok(X, x, merged):
                    extended.append(merged)
        partial = extended
        if not partial:
            break
    found = []
    for tops in partial:
        d = _fill(X, x, tops)
        if d is not None and _verify(X, x, d):
            found.append(Direction(x, tuple((y, v, w) for y, (v, w) in sorted(d.items()))))
    found = sorted(set(found), key=Direction.key)
    X._cache[key] = found
    return found


def _cross_ok(X: FinitePoset, x: int, tops: dict[int, Pair]) -> bool:
    """Covers of x in different components may not carry opposite arrows."""
    arrows = {}
    for y in X.upper_covers[x]:
        ms = [m for m in tops if X.leq(y, m)]
        if not ms:
            continue
        r = _restrict(X, tops[ms[0]], y)
        arrows[y] = r
    for y, ry in arrows.items():
        if ry != (x, y):
            continue
        for z, rz in arrows.items():
            if z != y and rz == (z, x):
                j = X.join(y, z)
                if j is None or j not in X.upper_covers[y] or j not in X.upper_covers[z]:
                    return False
    return True


def is_proper_orthodomain(X: FinitePoset) -> bool:
    """No maximal element is basic."""
    return not any(X.is_basic(m) for m in X.maximal_elements())


def has_enough_directions(X: FinitePoset) -> bool:
    """Proper, and every basic element has at least one direction."""
    if not is_proper_orthodomain(X):
        return False
    return all(directions_for(X, x) for x in X.basic_elements())


def arrow(X: FinitePoset, d: Direction, y: int) -> str:
    """``down`` when x sits as an atom in the cover y, ``up`` when as a coatom."""
    x = d.base
    v, w = d.at(y)
    if (v, w) == (x, y):
        return "down"
    if (v, w) == (y, x):
        return "up"
    raise ValueError(f"{X.labels[y]} does not cover {X.labels[x]}")


# --- the direction algebra ------------------------------------------------------


@dataclass(frozen=True)
class DirectionAlgebra(OrthoAlgebra):
    """An orthoalgebra whose elements are directions of a poset."""

    directions: tuple[Direction, ...] = ()
    poset: FinitePoset | None = field(default=None, compare=False, repr=False)

    def index_of(self, d: Direction) -> int:
        return self._positions[d.key()]

    @cached_property
    def _positions(self) -> dict:
        return {d.key(): i for i, d in enumerate(self.directions)}


def odir(X: FinitePoset) -> DirectionAlgebra:
    """The orthoalgebra of directions of an orthodomain with enough directions.

    Elements: both directions of the bottom (0 and 1) and both directions of
    every atom.  Sums: d + 0 = d, d + d' = 1, and for directions d, e of
    near atoms x, y with d(x∨y) = (x, x∨y), e(x∨y) = (y, x∨y) the sum is the
    direction of the third atom z with value (x∨y, z) there.
    """
    key = ("odir",)
    if key in X._cache:
        return X._cache[key]
    if not has_enough_directions(X):
        raise NoDirectionsError("poset is not proper or lacks directions")
    bot = X.bottom
    bottom_dirs = directions_for(X, bot)
    zero = [d for d in bottom_dirs if all(v == bot for _, v, _ in d.values)]
    one = [d for d in bottom_dirs if all(w == bot for _, _, w in d.values)]
    if len(zero) != 1 or len(one) != 1 or len(bottom_dirs) != 2:
        raise NoDirectionsError("bottom does not have exactly the directions 0 and 1")
    dirs = [zero[0], one[0]]
    labels = ["0", "1"]
    for x in X.atoms():
        for i, d in enumerate(directions_for(X, x)):
            dirs.append(d)
            labels.append(f"{X.labels[x]}.{i}")
    pos = {d.key(): i for i, d in enumerate(dirs)}
    comp = [pos[d.complement().key()] for d in dirs]
    sums: dict[tuple[int, int], int] = {}

    def put(i: int, j: int, k: int) -> None:
        key2 = (min(i, j), max(i, j))
        if sums.get(key2, k) != k:
            raise ReconstructionError(f"conflicting sums for {labels[i]}, {labels[j]}")
        sums[key2] = k

    for i in range(len(dirs)):
        put(i, 0, i)
        put(i, comp[i], 1)
    for x, y, w in near_pairs(X):
        zs = third_atoms(X, x, y, w)
        if len(zs) != 1:
            raise ReconstructionError("exchange property fails")
        z = zs[0]
        target = [r for r in directions_for(X, z) if r.at(w) == (w, z)]
        if len(target) != 1:
            raise ReconstructionError(f"no direction for {X.labels[z]} pointing up at {X.labels[w]}")
        k = pos[target[0].key()]
        for d in directions_for(X, x):
            if d.at(w) != (x, w):
                continue
            for e in directions_for(X, y):
                if e.at(w) == (y, w):
                    put(pos[d.key()], pos[e.key()], k)
    base = OrthoAlgebra.from_sums(comp, [(a, b, c) for (a, b), c in sums.items()], labels)
    D = DirectionAlgebra(base.comp, base.table, base.labels, f"oDir({X.name})", tuple(dirs), X)
    X._cache[key] = D
    return D


def element_direction(A: OrthoAlgebra, X: FinitePoset, a: int) -> Direction:
    """The direction of ``a`` on a poset of Boolean subalgebras of ``A``.

    At each subalgebra y containing a, the pair is
    (↓a ∪ ↑a', ↓a' ∪ ↑a) computed inside y.
    """
    index = _member_index(X)
    ca = A.comp[a]
    base = index.get(frozenset({0, A.one, a, ca}))
    if base is None:
        raise ReconstructionError(f"no element of the poset is the subalgebra of {A.labels[a]}")
    up, down = A.up_masks, A.down_masks
    values = []
    for y in X.upset(base):
        members = X.members[y]
        below_a = {b for b in members if down[a] >> b & 1}
        below_ca = {b for b in members if down[ca] >> b & 1}
        above_a = {b for b in members if up[a] >> b & 1}
        above_ca = {b for b in members if up[ca] >> b & 1}
        v = index.get(frozenset(below_a | above_ca))
        w = index.get(frozenset(below_ca | above_a))
        if v is None or w is None:
            raise ReconstructionError(f"pair for {A.labels[a]} at {X.labels[y]} is not in the poset")
        values.append((y, v, w))
    return Direction(base, tuple(values))


def _member_index(X: FinitePoset) -> dict[frozenset, int]:
    key = ("members",)
    if key not in X._cache:
        X._cache[key] = X.index_of_members()
    return X._cache[key]


@dataclass(frozen=True)
class IsomorphismWitness:
    source: OrthoAlgebra
    target: OrthoAlgebra
    forward: tuple[int, ...]
    backward: tuple[int, ...]

    def verify(self) -> bool:
        n = self.source.size
        if self.target.size != n:
            return False
        if any(self.backward[self.forward[a]] != a for a in range(n)):
            return False
        return not morphism_violations(self.source, self.target, self.forward) and not morphism_violations(
            self.target, self.source, self.backward
        )


def direction_map(A: OrthoAlgebra, X: FinitePoset, D: DirectionAlgebra) -> list[int]:
    """``a ↦ d_a`` as indices into ``D``."""
    out = []
    for a in range(A.size):
        d = element_direction(A, X, a)
        try:
            out.append(D.index_of(d))
        except KeyError:
            raise ReconstructionError(f"direction of {A.labels[a]} is not an element of the direction algebra") from None
    return out


def reconstruct_check(A: OrthoAlgebra, cap: int | None = None) -> IsomorphismWitness:
    """Rebuild ``A`` from its Boolean subalgebras and verify ``a ↦ d_a``.

    Raises :class:`ReconstructionError` unless the map is a bijection that
    preserves sums and complements in both directions.
    """
    if not is_proper(A):
        raise ReconstructionError(f"{A.name or 'algebra'} has a block with four or fewer elements")
    X = enumerate_bsub(A) if cap is None else enumerate_bsub(A, cap=cap)
    D = odir(X)
    forward = direction_map(A, X, D)
    if sorted(forward) != list(range(D.size)):
        raise ReconstructionError("a ↦ d_a is not a bijection")
    backward = [0] * D.size
    for a, i in enumerate(forward):
        backward[i] = a
    witness = IsomorphismWitness(A, D, tuple(forward), tuple(backward))
    if not witness.verify():
        raise ReconstructionError("a ↦ d_a does not preserve the operations in both directions")
    return witness


def reconstruct(X: FinitePoset) -> OrthoAlgebra:
    """An orthoalgebra whose Boolean subalgebra poset is ``X``.

    Maximal atoms stand for four-element blocks; they are removed, the rest is
    rebuilt from directions, and each removed atom comes back as a copy of
    the four-element algebra in a horizontal sum.
    """
    from .catalog import horizontal_sum, mo

    lone = [a for a in X.atoms() if not X.upper_covers[a]]
    if not lone:
        return odir(X)
    rest = [e for e in range(X.size) if e not in lone]
    if len(rest) == 1:
        return mo(len(lone))
    core = odir(X.subposet(rest))
    return horizontal_sum([core, mo(len(lone))], name=f"oDir({X.name})")


def direction_dump(X: FinitePoset, d: Direction) -> dict:
    return {"base": d.base, "values": [list(v) for v in d.values]}


def principal_pair_poset(X: FinitePoset) -> tuple[FinitePoset, list[Pair]]:
    """Principal pairs of a Boolean domain under :func:`pair_leq`."""
    pairs = all_principal_pairs(X)
    P = FinitePoset.from_leq(
        len(pairs),
        lambda i, j: pair_leq(X, pairs[i], pairs[j]),
        labels=[f"({X.labels[y]},{X.labels[z]})" for y, z in pairs],
    )
    return P, pairs

