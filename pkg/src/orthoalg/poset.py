"""Finite posets with a least element, stored as up/down bitmasks.

Bit ``j`` of ``down[i]`` is set iff ``j <= i``.  Joins and meets are least
upper and greatest lower bounds when they exist, ``None`` otherwise.
"""

from __future__ import annotations

from functools import lru_cache
from typing import Callable, Iterable, Sequence

from .core import iter_bits


class PosetError(ValueError):
    """Cover data that does not describe a poset with a least element."""


def _popcount(m: int) -> int:
    return bin(m).count("1")


class FinitePoset:
    """A finite poset with a least element.

    ``members`` optionally attaches a frozenset to every element (the member
    set of a Boolean subalgebra, for instance).  ``parent`` records, for an
    induced subposet, the index of each element in the poset it came from.
    """

    def __init__(
        self,
        size: int,
        covers: Iterable[tuple[int, int]],
        labels: Sequence[str] | None = None,
        members: Sequence[frozenset] | None = None,
        name: str = "",
        parent: Sequence[int] | None = None,
    ):
        covers = sorted({(int(a), int(b)) for a, b in covers})
        for a, b in covers:
            if not (0 <= a < size and 0 <= b < size):
                raise PosetError(f"cover ({a},{b}) out of range")
            if a == b:
                raise PosetError(f"cover ({a},{a}) is a loop")
        upper: list[list[int]] = [[] for _ in range(size)]
        lower: list[list[int]] = [[] for _ in range(size)]
        for a, b in covers:
            upper[a].append(b)
            lower[b].append(a)
        order = _topological(size, upper, lower)
        down = [1 << i for i in range(size)]
        for x in order:
            for y in lower[x]:
                down[x] |= down[y]
        self._init(down, labels, members, name, parent)
        for a, b in covers:
            if b not in self.upper_covers[a]:
                raise PosetError(f"({a},{b}) is not a cover: there is an element strictly between")

    @classmethod
    def from_down_masks(cls, down: Sequence[int], labels=None, members=None, name="", parent=None) -> "FinitePoset":
        """Build from a reflexive, transitive, antisymmetric relation."""
        obj = cls.__new__(cls)
        n = len(down)
        for i, d in enumerate(down):
            if not d >> i & 1:
                raise PosetError(f"relation is not reflexive at {i}")
            for j in iter_bits(d):
                if down[j] & ~d:
                    raise PosetError(f"relation is not transitive at ({j},{i})")
                if j != i and down[j] >> i & 1:
                    raise PosetError(f"relation is not antisymmetric at ({j},{i})")
        obj._init(list(down), labels, members, name, parent)
        return obj

    @classmethod
    def from_leq(cls, size: int, leq: Callable[[int, int], bool], **kw) -> "FinitePoset":
        down = []
        for i in range(size):
            m = 0
            for j in range(size):
                if j == i or leq(j, i):
                    m |= 1 << j
            down.append(m)
        return cls.from_down_masks(down, **kw)

    def _init(self, down, labels, members, name, parent) -> None:
        n = len(down)
        self.size = n
        self.down = tuple(down)
        up = [0] * n
        for i, d in enumerate(down):
            for j in iter_bits(d):
                up[j] |= 1 << i
        self.up = tuple(up)
        full = (1 << n) - 1
        bottoms = [i for i in range(n) if up[i] == full]
        if n == 0 or not bottoms:
            raise PosetError("no least element")
        self.bottom = bottoms[0]
        upper: list[list[int]] = [[] for _ in range(n)]
        lower: list[list[int]] = [[] for _ in range(n)]
        for b in range(n):
            strict = down[b] & ~(1 << b)
            for a in iter_bits(strict):
                between = up[a] & strict & ~(1 << a)
                if not between:
                    upper[a].append(b)
                    lower[b].append(a)
        self.upper_covers = tuple(tuple(u) for u in upper)
        self.lower_covers = tuple(tuple(l) for l in lower)
        heights = [0] * n
        for x in sorted(range(n), key=lambda i: _popcount(down[i])):
            heights[x] = max((heights[y] + 1 for y in lower[x]), default=0)
        self.heights = tuple(heights)
        self.labels = tuple(labels) if labels is not None else tuple(str(i) for i in range(n))
        if len(self.labels) != n:
            raise PosetError("labels length differs from size")
        self.members = tuple(members) if members is not None else None
        self.name = name
        self.parent = tuple(parent) if parent is not None else None
        self._join_cache: dict[tuple[int, int], int | None] = {}
        self._cache: dict = {}

    # --- basic queries ------------------------------------------------------

    def leq(self, a: int, b: int) -> bool:
        return bool(self.down[b] >> a & 1)

    def lt(self, a: int, b: int) -> bool:
        return a != b and self.leq(a, b)

    def covers(self) -> list[tuple[int, int]]:
        return [(a, b) for a in range(self.size) for b in self.upper_covers[a]]

    @property
    def height(self) -> int:
        return max(self.heights)

    def atoms(self) -> list[int]:
        return list(self.upper_covers[self.bottom])

    def basic_elements(self) -> list[int]:
        return [self.bottom] + self.atoms()

    def is_basic(self, x: int) -> bool:
        return self.heights[x] <= 1

    def maximal_elements(self) -> list[int]:
        return [i for i in range(self.size) if not self.upper_covers[i]]

    def downset(self, x: int) -> list[int]:
        return list(iter_bits(self.down[x]))

    def upset(self, x: int) -> list[int]:
        return list(iter_bits(self.up[x]))

    def atoms_below(self, x: int) -> list[int]:
        return [a for a in self.atoms() if self.down[x] >> a & 1]

    def top(self) -> int | None:
        tops = self.maximal_elements()
        return tops[0] if len(tops) == 1 else None

    # --- bounds -------------------------------------------------------------

    def lub(self, elements: Iterable[int], within: int | None = None) -> int | None:
        """Least upper bound, optionally among the elements below ``within``."""
        common = (1 << self.size) - 1
        for e in elements:
            common &= self.up[e]
        if within is not None:
            common &= self.down[within]
        if common == (1 << self.size) - 1:
            return self.bottom
        for m in iter_bits(common):
            if self.up[m] & common == common:
                return m
        return None

    def glb(self, elements: Iterable[int]) -> int | None:
        common = (1 << self.size) - 1
        for e in elements:
            common &= self.down[e]
        for m in iter_bits(common):
            if self.down[m] & common == common:
                return m
        return None

    def join(self, a: int, b: int) -> int | None:
        key = (a, b) if a <= b else (b, a)
        if key not in self._join_cache:
            self._join_cache[key] = self.lub(key)
        return self._join_cache[key]

    def meet(self, a: int, b: int) -> int | None:
        return self.glb((a, b))

    def is_lattice(self) -> bool:
        return all(self.join(a, b) is not None for a in range(self.size) for b in range(a + 1, self.size))

    # --- derived posets -----------------------------------------------------

    def subposet(self, elements: Iterable[int], name: str = "") -> "FinitePoset":
        """Induced subposet, keeping the original relative order of indices."""
        keep = sorted(set(elements))
        pos = {x: i for i, x in enumerate(keep)}
        down = []
        for x in keep:
            m = 0
            for y in iter_bits(self.down[x]):
                if y in pos:
                    m |= 1 << pos[y]
            down.append(m)
        members = [self.members[x] for x in keep] if self.members is not None else None
        parent = [self.parent[x] for x in keep] if self.parent is not None else keep
        return FinitePoset.from_down_masks(
            down, labels=[self.labels[x] for x in keep], members=members, name=name or self.name, parent=parent
        )

    def down_poset(self, x: int) -> "FinitePoset":
        """``↓x`` as a poset of its own (cached)."""
        key = ("down", x)
        if key not in self._cache:
            self._cache[key] = self.subposet(self.downset(x), name=f"down({self.labels[x]})")
        return self._cache[key]

    def index_of_members(self) -> dict[frozenset, int]:
        if self.members is None:
            raise PosetError("poset carries no member sets")
        return {m: i for i, m in enumerate(self.members)}

    def height_counts(self) -> list[int]:
        counts = [0] * (self.height + 1)
        for h in self.heights:
            counts[h] += 1
        return counts

    def __repr__(self) -> str:
        tag = f" {self.name!r}" if self.name else ""
        return f"<FinitePoset{tag} size={self.size} height={self.height}>"


def _topological(size: int, upper, lower) -> list[int]:
    indeg = [len(lower[i]) for i in range(size)]
    stack = [i for i in range(size) if indeg[i] == 0]
    order = []
    while stack:
        x = stack.pop()
        order.append(x)
        for y in upper[x]:
            indeg[y] -= 1
            if indeg[y] == 0:
                stack.append(y)
    if len(order) != size:
        raise PosetError("cover relation has a cycle")
    return order


def validate_poset(doc: dict):
    """Structural check of a JSON poset document; returns a report."""
    from .core import ValidationReport

    report = ValidationReport(str(doc.get("name", "poset")))
    try:
        FinitePoset(doc["size"], [tuple(c) for c in doc["covers"]], doc.get("labels"))
    except (PosetError, KeyError, TypeError, ValueError) as exc:
        report.add("poset", (), str(exc))
        report.structural = True
    return report


# --- isomorphism --------------------------------------------------------------


def _refined_colors(P: FinitePoset, Q: FinitePoset) -> tuple[list[int], list[int]]:
    """Colour refinement on the two cover graphs with a shared palette."""

    def base(X: FinitePoset, i: int):
        return (
            X.heights[i],
            _popcount(X.down[i]),
            _popcount(X.up[i]),
            len(X.lower_covers[i]),
            len(X.upper_covers[i]),
        )

    sig_p = [base(P, i) for i in range(P.size)]
    sig_q = [base(Q, i) for i in range(Q.size)]
    while True:
        palette = {s: k for k, s in enumerate(sorted(set(sig_p) | set(sig_q)))}
        cp = [palette[s] for s in sig_p]
        cq = [palette[s] for s in sig_q]
        new_p = [(cp[i], tuple(sorted(cp[j] for j in P.upper_covers[i])), tuple(sorted(cp[j] for j in P.lower_covers[i]))) for i in range(P.size)]
        new_q = [(cq[i], tuple(sorted(cq[j] for j in Q.upper_covers[i])), tuple(sorted(cq[j] for j in Q.lower_covers[i]))) for i in range(Q.size)]
        if len(set(new_p) | set(new_q)) == len(palette):
            return cp, cq
        sig_p, sig_q = new_p, new_q


def find_poset_isomorphism(P: FinitePoset, Q: FinitePoset) -> list[int] | None:
    """An order isomorphism ``P -> Q`` as a list, or ``None``.

    Backtracking over colour classes from refinement.  The next element to
    map is the one with the most already-mapped cover neighbours, so each
    choice is constrained by the order relation to earlier ones.
    """
    if P.size != Q.size or len(P.covers()) != len(Q.covers()):
        return None
    cp, cq = _refined_colors(P, Q)
    if sorted(cp) != sorted(cq):
        return None
    classes: dict[int, list[int]] = {}
    for j, c in enumerate(cq):
        classes.setdefault(c, []).append(j)
    n = P.size
    f = [-1] * n
    used = [False] * n
    mapped: list[int] = []
    neighbours = [set(P.upper_covers[i]) | set(P.lower_covers[i]) for i in range(n)]
    weight = [0] * n

    def pick() -> int:
        best, key = -1, None
        for u in range(n):
            if f[u] == -1:
                k = (-weight[u], len(classes[cp[u]]), u)
                if key is None or k < key:
                    best, key = u, k
        return best

    def ok(u: int, v: int) -> bool:
        du, uu, dv, uv = P.down[u], P.up[u], Q.down[v], Q.up[v]
        for w in mapped:
            fw = f[w]
            if (du >> w & 1) != (dv >> fw & 1) or (uu >> w & 1) != (uv >> fw & 1):
                return False
        return True

    def search() -> bool:
        if len(mapped) == n:
            return True
        u = pick()
        for v in classes[cp[u]]:
            if used[v] or not ok(u, v):
                continue
            f[u], used[v] = v, True
            mapped.append(u)
            for w in neighbours[u]:
                weight[w] += 1
            if search():
                return True
            for w in neighbours[u]:
                weight[w] -= 1
            mapped.pop()
            f[u], used[v] = -1, False
        return False

    if not search():
        return None
    return f


def is_poset_isomorphic(P: FinitePoset, Q: FinitePoset) -> bool:
    return find_poset_isomorphism(P, Q) is not None


def is_order_isomorphism(P: FinitePoset, Q: FinitePoset, f: Sequence[int]) -> bool:
    if len(f) != P.size or sorted(f) != list(range(Q.size)):
        return False
    return all(P.leq(a, b) == Q.leq(f[a], f[b]) for a in range(P.size) for b in range(P.size))


# --- partition lattices -------------------------------------------------------

BELL = (1, 1, 2, 5, 15, 52, 203, 877)
MAX_PARTITION_RANK = 6


def set_partitions(k: int) -> list[tuple[frozenset[int], ...]]:
    from sympy.utilities.iterables import multiset_partitions

    if k == 0:
        return [()]
    out = []
    for p in multiset_partitions(list(range(k))):
        out.append(tuple(sorted((frozenset(b) for b in p), key=sorted)))
    return out


def _refines(fine, coarse) -> bool:
    return all(any(b <= c for c in coarse) for b in fine)


@lru_cache(maxsize=None)
def partition_lattice(k: int) -> FinitePoset:
    """Partitions of a k-set, with ``p <= q`` iff ``q`` refines ``p``.

    Coarse partitions sit at the bottom, matching inclusion of Boolean
    subalgebras (fewer atoms means a smaller subalgebra).
    """
    if not 0 <= k <= MAX_PARTITION_RANK:
        raise ValueError(f"partition lattices are cached for k <= {MAX_PARTITION_RANK}")
    parts = set_partitions(k)
    parts.sort(key=lambda p: (len(p), [sorted(b) for b in p]))
    labels = ["|".join("".join(str(i + 1) for i in sorted(b)) for b in p) or "()" for p in parts]
    return FinitePoset.from_leq(
        len(parts), lambda i, j: _refines(parts[j], parts[i]), labels=labels, name=f"Pi_{k}"
    )
