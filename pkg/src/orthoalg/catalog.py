"""Standard orthoalgebras and ways of building new ones.

Every constructor returns an :class:`OrthoAlgebra` with index 0 the zero and
index 1 the unit.  Named fixtures are reachable through :func:`named`.
"""

from __future__ import annotations

import itertools
import random
import string
from dataclasses import dataclass
from typing import Callable, Sequence

from .core import (
    UNDEF,
    OrthoAlgebra,
    OrthoAlgebraError,
    atoms_of,
    blocks,
    validate_orthoalgebra,
)


class GreechieError(OrthoAlgebraError):
    """A pasting that does not produce an orthoalgebra."""

    def __init__(self, message: str, report=None):
        super().__init__(message)
        self.report = report


MAX_POWER_SET = 6


def power_set(n: int) -> OrthoAlgebra:
    """The Boolean algebra of subsets of {1..n}; ``a + b`` is disjoint union.

    ``power_set(0)`` is the one-element algebra, the unit for products.
    """
    if not 0 <= n <= MAX_POWER_SET:
        raise ValueError(f"power_set needs 0 <= n <= {MAX_POWER_SET}, got {n}")
    full = (1 << n) - 1
    order = power_set_order(n)
    pos = {m: i for i, m in enumerate(order)}
    comp = [pos[full ^ m] for m in order]
    sums = []
    for x, y in itertools.combinations_with_replacement(order, 2):
        if x & y == 0:
            sums.append((pos[x], pos[y], pos[x | y]))
    labels = []
    for m in order:
        if m == 0:
            labels.append("0")
        elif m == full:
            labels.append("1")
        else:
            labels.append("{" + ",".join(str(i + 1) for i in range(n) if m >> i & 1) + "}")
    return OrthoAlgebra.from_sums(comp, sums, labels, name=f"power_set_{n}")


def _bits_key(m: int) -> list[int]:
    return [i for i in range(m.bit_length()) if m >> i & 1]


def power_set_order(n: int) -> list[int]:
    """Bitmask of the subset stored at each index of ``power_set(n)``."""
    full = (1 << n) - 1
    rest = sorted(set(range(1 << n)) - {0, full}, key=lambda m: (bin(m).count("1"), _bits_key(m)))
    return [0] + ([full] if n else []) + rest


def horizontal_sum(parts: Sequence[OrthoAlgebra], name: str = "") -> OrthoAlgebra:
    """Disjoint union of the summands with all zeros and all units identified."""
    if not parts:
        raise ValueError("need at least one summand")
    labels = ["0", "1"]
    comp = [1, 0]
    sums: list[tuple[int, int, int]] = [(0, 0, 0), (0, 1, 1)]
    taken = {"0", "1"}
    for k, A in enumerate(parts):
        if A.size == 1:
            raise ValueError("summands must have 0 != 1")
        pos = {0: 0, 1: 1}
        for x in range(2, A.size):
            pos[x] = len(labels)
            lab = A.labels[x]
            if lab in taken:
                lab = f"{lab}_{k}"
            taken.add(lab)
            labels.append(lab)
            comp.append(-1)
        for x in range(2, A.size):
            comp[pos[x]] = pos[A.comp[x]]
        for a, b, c in A.sums():
            if (a, b) in ((0, 0), (0, 1)):
                continue
            sums.append((pos[a], pos[b], pos[c]))
    return OrthoAlgebra.from_sums(comp, sums, labels, name or "+".join(p.name for p in parts))


def mo(n: int) -> OrthoAlgebra:
    """Horizontal sum of ``n`` copies of the four-element Boolean algebra."""
    if n < 1:
        raise ValueError("n must be positive")
    names = string.ascii_lowercase
    parts = []
    for i in range(n):
        a = names[i] if n <= 26 else f"a{i}"
        parts.append(OrthoAlgebra.from_sums([1, 0, 3, 2], [(0, 0, 0), (0, 1, 1), (0, 2, 2), (0, 3, 3), (2, 3, 1)], ["0", "1", a, a + "'"]))
    return horizontal_sum(parts, name=f"mo_{n}")


def direct_product(A: OrthoAlgebra, C: OrthoAlgebra, name: str = "") -> OrthoAlgebra:
    """Componentwise operations; a sum is defined iff it is in both factors."""
    pairs = [(a, c) for a in range(A.size) for c in range(C.size)]
    first = [(0, 0), (A.one, C.one)] if A.size * C.size > 1 else [(0, 0)]
    rest = [p for p in pairs if p not in first]
    order = first + rest
    pos = {p: i for i, p in enumerate(order)}
    comp = [pos[(A.comp[a], C.comp[c])] for a, c in order]
    sums = []
    for i, (a1, c1) in enumerate(order):
        for j in range(i, len(order)):
            a2, c2 = order[j]
            s, t = A.table[a1][a2], C.table[c1][c2]
            if s != UNDEF and t != UNDEF:
                sums.append((i, j, pos[(s, t)]))
    labels = [f"({A.labels[a]},{C.labels[c]})" for a, c in order]
    if len(order) > 1:
        labels[0], labels[1] = "0", "1"
    else:
        labels[0] = "0"
    return OrthoAlgebra.from_sums(comp, sums, labels, name or f"{A.name}x{C.name}")


# --- Greechie pasting ---------------------------------------------------------


@dataclass(frozen=True)
class GreechieDiagram:
    atoms: tuple[str, ...]
    blocks: tuple[tuple[str, ...], ...]


class _UnionFind:
    def __init__(self):
        self.parent: dict = {}

    def find(self, x):
        self.parent.setdefault(x, x)
        root = x
        while self.parent[root] != root:
            root = self.parent[root]
        while self.parent[x] != root:
            self.parent[x], x = root, self.parent[x]
        return root

    def union(self, x, y) -> bool:
        rx, ry = self.find(x), self.find(y)
        if rx == ry:
            return False
        self.parent[ry] = rx
        return True


def greechie_paste(diagram: GreechieDiagram | dict, name: str = "") -> OrthoAlgebra:
    """Paste Boolean blocks along shared atoms.

    Block elements are pairs (block, atom subset).  Equal subsets of two
    blocks are identified, and identifications are propagated to the
    complements inside each block until nothing changes.  Raises
    :class:`GreechieError` when two distinct elements of one block get
    identified, when sums clash, or when the result fails validation.
    """
    if isinstance(diagram, dict):
        diagram = GreechieDiagram(tuple(diagram["atoms"]), tuple(tuple(b) for b in diagram["blocks"]))
    atom_set = set(diagram.atoms)
    if len(atom_set) != len(diagram.atoms):
        raise GreechieError("duplicate atom names")
    if atom_set & {"0", "1"}:
        raise GreechieError("atom names 0 and 1 are reserved for the constants")
    block_sets = []
    for b in diagram.blocks:
        if not b or len(set(b)) != len(b) or not set(b) <= atom_set:
            raise GreechieError(f"bad block {b!r}")
        block_sets.append(frozenset(b))
    if not block_sets:
        raise GreechieError("no blocks")
    covered = set().union(*block_sets)
    if covered != atom_set:
        raise GreechieError(f"atoms in no block: {sorted(atom_set - covered)}")

    elems = []
    for k, b in enumerate(block_sets):
        for r in range(len(b) + 1):
            for sub in itertools.combinations(sorted(b), r):
                elems.append((k, frozenset(sub)))
    uf = _UnionFind()
    for e in elems:
        uf.find(e)
    by_subset: dict[frozenset, list] = {}
    for e in elems:
        by_subset.setdefault(e[1], []).append(e)
    for group in by_subset.values():
        for e in group[1:]:
            uf.union(group[0], e)
    # zero and unit of all blocks coincide
    for k in range(1, len(block_sets)):
        uf.union((0, block_sets[0]), (k, block_sets[k]))
    changed = True
    while changed:
        changed = False
        classes: dict = {}
        for e in elems:
            classes.setdefault(uf.find(e), []).append(e)
        for members in classes.values():
            first = members[0]
            c0 = (first[0], block_sets[first[0]] - first[1])
            for e in members[1:]:
                if uf.union(c0, (e[0], block_sets[e[0]] - e[1])):
                    changed = True

    classes = {}
    for e in elems:
        classes.setdefault(uf.find(e), []).append(e)
    for members in classes.values():
        seen_blocks: dict[int, frozenset] = {}
        for k, sub in members:
            if k in seen_blocks and seen_blocks[k] != sub:
                raise GreechieError(
                    f"block {sorted(block_sets[k])} would identify {sorted(seen_blocks[k])} with {sorted(sub)}"
                )
            seen_blocks[k] = sub

    zero_root = uf.find((0, frozenset()))
    one_root = uf.find((0, block_sets[0]))

    def rep(root):
        members = classes[root]
        return min(members, key=lambda e: (len(e[1]), sorted(e[1]), e[0]))

    def label(root) -> str:
        if root == zero_root:
            return "0"
        if root == one_root:
            return "1"
        members = classes[root]
        k, sub = rep(root)
        if len(sub) == 1:
            return next(iter(sub))
        singles = [next(iter(block_sets[k2] - s)) for k2, s in members if len(block_sets[k2] - s) == 1]
        if singles:
            return min(singles) + "'"
        return "+".join(sorted(sub))

    roots = [r for r in classes if r not in (zero_root, one_root)]
    roots.sort(key=lambda r: (len(rep(r)[1]), label(r)))
    order = [zero_root, one_root] + roots
    pos = {r: i for i, r in enumerate(order)}
    comp = [0] * len(order)
    for r in order:
        k, sub = classes[r][0]
        comp[pos[r]] = pos[uf.find((k, block_sets[k] - sub))]
    table: dict[tuple[int, int], int] = {}
    for k, b in enumerate(block_sets):
        subs = [frozenset(s) for r in range(len(b) + 1) for s in itertools.combinations(sorted(b), r)]
        for s1 in subs:
            i = pos[uf.find((k, s1))]
            for s2 in subs:
                if s1 & s2:
                    continue
                j = pos[uf.find((k, s2))]
                c = pos[uf.find((k, s1 | s2))]
                key = (min(i, j), max(i, j))
                if table.get(key, c) != c:
                    raise GreechieError(f"sum of {label(order[i])} and {label(order[j])} differs between blocks")
                table[key] = c
    A = OrthoAlgebra.from_sums(comp, [(a, b, c) for (a, b), c in table.items()], [label(r) for r in order], name or "pasting")
    report = validate_orthoalgebra(A)
    if not report.ok:
        raise GreechieError("pasting is not an orthoalgebra", report)
    return A


def greechie_diagram(A: OrthoAlgebra) -> GreechieDiagram:
    """Atoms and blocks (as atom lists) of an orthoalgebra."""
    atoms = atoms_of(A)
    out = []
    for b in blocks(A):
        out.append(tuple(A.labels[a] for a in atoms if a in b))
    return GreechieDiagram(tuple(A.labels[a] for a in atoms), tuple(sorted(out)))


# --- named fixtures -----------------------------------------------------------

FRASER_FACES = {
    "bottom": "abcd",
    "top": "efgh",
    "front": "abef",
    "back": "cdgh",
    "left": "aceg",
    "right": "bdfh",
}


def fraser_cube() -> OrthoAlgebra:
    """Eight atoms on the corners of a cube, one 16-element block per face."""
    return greechie_paste(
        GreechieDiagram(tuple("abcdefgh"), tuple(tuple(f) for f in FRASER_FACES.values())), name="fraser_cube"
    )


def fig1_gluing() -> OrthoAlgebra:
    """Two eight-element blocks sharing the atom c."""
    return greechie_paste(GreechieDiagram(tuple("abcde"), (tuple("abc"), tuple("cde"))), name="fig1_gluing")


# Corners p1-p4 and edge points p5-p7, as in the plane of the 16-element block.
FANO_MINUS_LINE_BLOCKS = (
    ("p1", "p2", "p5"),
    ("p3", "p4", "p5"),
    ("p1", "p3", "p6"),
    ("p2", "p4", "p6"),
    ("p1", "p4", "p7"),
    ("p2", "p3", "p7"),
)


def fano_minus_line() -> OrthoAlgebra:
    """Seven atoms, six three-atom blocks: the Fano plane with one line removed."""
    return greechie_paste(GreechieDiagram(tuple(f"p{i}" for i in range(1, 8)), FANO_MINUS_LINE_BLOCKS), name="fano_minus_line")


def mo2_times_two() -> OrthoAlgebra:
    return direct_product(mo(2), power_set(1), name="mo2_times_two")


def mo2_times_mo2() -> OrthoAlgebra:
    return direct_product(mo(2), mo(2), name="mo2_times_mo2")


_FIXED: dict[str, Callable[[], OrthoAlgebra]] = {
    "fig1_gluing": fig1_gluing,
    "fraser_cube": fraser_cube,
    "fano_minus_line": fano_minus_line,
    "mo2_times_two": mo2_times_two,
    "mo2_times_mo2": mo2_times_mo2,
}

CATALOG_NAMES = (
    [f"power_set_{n}" for n in range(1, 7)]
    + [f"mo_{n}" for n in range(1, 5)]
    + list(_FIXED)
)

PROPER_CATALOG_NAMES = (
    "power_set_3",
    "power_set_4",
    "power_set_5",
    "fig1_gluing",
    "fraser_cube",
    "mo2_times_two",
    "mo2_times_mo2",
    "fano_minus_line",
)

_cache: dict[str, OrthoAlgebra] = {}


def named(name: str) -> OrthoAlgebra:
    """Look up a catalog entry such as ``power_set_4``, ``mo_2`` or ``fraser_cube``.

    ``power_set(4)`` and ``mo(2)`` spellings are accepted too.
    """
    key = name.strip()
    if key.startswith("catalog:"):
        key = key[len("catalog:"):]
    for prefix in ("power_set", "mo"):
        if key.startswith(prefix + "(") and key.endswith(")"):
            key = f"{prefix}_{key[len(prefix) + 1:-1]}"
    if key in _cache:
        return _cache[key]
    if key in _FIXED:
        A = _FIXED[key]()
    elif key.startswith("power_set_") and key[10:].isdigit():
        A = power_set(int(key[10:]))
    elif key.startswith("mo_") and key[3:].isdigit():
        A = mo(int(key[3:]))
    else:
        raise KeyError(f"unknown catalog entry {name!r}")
    _cache[key] = A
    return A


# --- random corpus ------------------------------------------------------------


def random_pasting(rng: random.Random, max_atoms: int = 8, max_blocks: int = 5) -> GreechieDiagram:
    """Random blocks of 2 to 4 atoms, any two sharing at most one atom."""
    n_atoms = rng.randint(3, max_atoms)
    names = [string.ascii_lowercase[i] for i in range(n_atoms)]
    want = rng.randint(1, max_blocks)
    chosen: list[frozenset] = []
    for _ in range(40):
        if len(chosen) == want:
            break
        k = rng.choice((2, 3, 3, 3, 4))
        if k > n_atoms:
            continue
        b = frozenset(rng.sample(names, k))
        if any(len(b & c) > 1 for c in chosen):
            continue
        chosen.append(b)
    used = sorted(set().union(*chosen))
    return GreechieDiagram(tuple(used), tuple(tuple(sorted(b)) for b in chosen))


def random_orthoalgebra(rng: random.Random, max_size: int = 24) -> OrthoAlgebra:
    """A random orthoalgebra with at most ``max_size`` elements.

    Mixes power sets, horizontal sums, direct products and random
    Greechie pastings.  Pastings that fail to paste are redrawn.
    """
    while True:
        kind = rng.choice(("power_set", "horizontal", "product", "pasting", "pasting", "pasting"))
        if kind == "power_set":
            A = power_set(rng.randint(1, 4))
        elif kind == "horizontal":
            parts = [power_set(rng.randint(2, 3)) for _ in range(rng.randint(1, 3))]
            A = horizontal_sum(parts)
        elif kind == "product":
            choices = [power_set(1), power_set(2), mo(2), mo(3), power_set(3)]
            A = direct_product(rng.choice(choices), rng.choice(choices))
        else:
            try:
                A = greechie_paste(random_pasting(rng), name="random_pasting")
            except GreechieError:
                continue
        if A.size <= max_size:
            return A


def random_corpus(seed: int, count: int, max_size: int = 24) -> list[OrthoAlgebra]:
    rng = random.Random(seed)
    out = []
    for i in range(count):
        A = random_orthoalgebra(rng, max_size)
        out.append(OrthoAlgebra(A.comp, A.table, A.labels, f"random_{seed}_{i}"))
    return out
