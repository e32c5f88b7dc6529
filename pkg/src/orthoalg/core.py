"""Finite orthoalgebras.

An orthoalgebra is stored as a dense symmetric sum table over the indices
``0 .. size-1`` together with the orthocomplement as a tuple.  Index 0 is the
zero and index 1 the unit (both are 0 for the one-element algebra).  An
undefined sum is stored as ``-1``.

The functions here are the primitives everything else is built on: the
derived order, jointly orthogonal sums, subalgebra closure, the Boolean test
and the enumeration of Boolean subalgebras.
"""

from __future__ import annotations

import itertools
from dataclasses import dataclass, field
from functools import cached_property
from typing import Iterable, Mapping, Sequence

UNDEF = -1

DEFAULT_SIZE_CAP = 64
DEFAULT_SUBALGEBRA_BUDGET = 200_000


class OrthoAlgebraError(ValueError):
    """Base class for malformed or unsupported orthoalgebra input."""


class StructuralError(OrthoAlgebraError):
    """Table shape or index problems detected before any axiom is checked."""


class NotClosedError(OrthoAlgebraError):
    """A set passed as a subalgebra is not closed under the operations."""


class CapExceededError(OrthoAlgebraError):
    """An enumeration would exceed the configured size limit or budget."""


class TrivialAlgebraError(OrthoAlgebraError):
    """The operation needs more than the two-element algebra."""


@dataclass(frozen=True)
class Violation:
    """One failed check, with the elements that witness it."""

    axiom: str
    witness: tuple
    message: str

    def __str__(self) -> str:
        return f"[{self.axiom}] {self.message}"


@dataclass
class ValidationReport:
    """Outcome of a validator: ``ok`` iff no violation was recorded."""

    subject: str
    violations: list[Violation] = field(default_factory=list)
    structural: bool = False

    @property
    def ok(self) -> bool:
        return not self.violations

    def __bool__(self) -> bool:
        return self.ok

    def add(self, axiom: str, witness: tuple, message: str) -> None:
        self.violations.append(Violation(axiom, tuple(witness), message))

    def axioms(self) -> set[str]:
        return {v.axiom for v in self.violations}

    def summary(self) -> str:
        if self.ok:
            return f"{self.subject}: valid"
        lines = [f"{self.subject}: {len(self.violations)} violation(s)"]
        lines += [f"  {v}" for v in self.violations]
        return "\n".join(lines)


@dataclass(frozen=True)
class OrthoAlgebra:
    """A finite partial algebra (carrier, sum, orthocomplement, 0, 1).

    Construction does not check the axioms; use :func:`validate_orthoalgebra`.
    """

    comp: tuple[int, ...]
    table: tuple[tuple[int, ...], ...]
    labels: tuple[str, ...]
    name: str = ""

    @classmethod
    def from_sums(
        cls,
        comp: Sequence[int],
        sums: Iterable[Sequence[int]],
        labels: Sequence[str] | None = None,
        name: str = "",
    ) -> "OrthoAlgebra":
        """Build from a list of ``(a, b, a+b)`` triples.

        Each unordered pair may be given in either order; the table is made
        symmetric.  Out-of-range indices and two different results for the
        same pair raise :class:`StructuralError`.
        """
        n = len(comp)
        if n == 0:
            raise StructuralError("empty carrier")
        for a, c in enumerate(comp):
            if not (isinstance(c, int) and 0 <= c < n):
                raise StructuralError(f"complement of {a} out of range: {c!r}")
        rows = [[UNDEF] * n for _ in range(n)]
        for entry in sums:
            if len(entry) != 3:
                raise StructuralError(f"sum entry {entry!r} is not a triple")
            a, b, c = entry
            for v in (a, b, c):
                if not (isinstance(v, int) and 0 <= v < n):
                    raise StructuralError(f"sum entry {entry!r} out of range")
            old = rows[a][b]
            if old != UNDEF and old != c:
                raise StructuralError(f"conflicting sums for ({a},{b}): {old} and {c}")
            rows[a][b] = c
            rows[b][a] = c
        if labels is None:
            labels = default_labels(n)
        if len(labels) != n:
            raise StructuralError("labels length differs from size")
        return cls(tuple(comp), tuple(tuple(r) for r in rows), tuple(labels), name)

    @property
    def size(self) -> int:
        return len(self.comp)

    @property
    def zero(self) -> int:
        return 0

    @property
    def one(self) -> int:
        return 0 if self.size == 1 else 1

    def oplus(self, a: int, b: int) -> int | None:
        c = self.table[a][b]
        return None if c == UNDEF else c

    def orth(self, a: int, b: int) -> bool:
        return self.table[a][b] != UNDEF

    def label(self, a: int) -> str:
        return self.labels[a]

    def index(self, label: str) -> int:
        try:
            return self.labels.index(label)
        except ValueError:
            raise KeyError(label) from None

    def sums(self) -> list[tuple[int, int, int]]:
        """Every defined sum once, as ``(a, b, c)`` with ``a <= b``."""
        out = []
        for a in range(self.size):
            row = self.table[a]
            for b in range(a, self.size):
                if row[b] != UNDEF:
                    out.append((a, b, row[b]))
        return out

    @cached_property
    def up_masks(self) -> tuple[int, ...]:
        """Bit ``c`` of ``up_masks[a]`` is set iff ``a <= c``."""
        masks = []
        for a in range(self.size):
            m = 0
            for c in self.table[a]:
                if c != UNDEF:
                    m |= 1 << c
            masks.append(m)
        return tuple(masks)

    @cached_property
    def down_masks(self) -> tuple[int, ...]:
        masks = [0] * self.size
        for a, m in enumerate(self.up_masks):
            for c in iter_bits(m):
                masks[c] |= 1 << a
        return tuple(masks)

    @cached_property
    def heights(self) -> tuple[int, ...]:
        """Length of the longest chain from 0 in the derived order."""
        order = sorted(range(self.size), key=lambda a: bin(self.down_masks[a]).count("1"))
        h = [0] * self.size
        for c in order:
            below = self.down_masks[c] & ~(1 << c)
            h[c] = max((h[a] + 1 for a in iter_bits(below)), default=0)
        return tuple(h)

    def __repr__(self) -> str:
        tag = f" {self.name!r}" if self.name else ""
        return f"<OrthoAlgebra{tag} size={self.size}>"


def default_labels(n: int) -> tuple[str, ...]:
    if n == 1:
        return ("0",)
    return ("0", "1") + tuple(f"e{i}" for i in range(2, n))


def iter_bits(mask: int):
    while mask:
        low = mask & -mask
        yield low.bit_length() - 1
        mask ^= low


def to_mask(elements: Iterable[int]) -> int:
    m = 0
    for e in elements:
        m |= 1 << e
    return m


# --- primitive operations -------------------------------------------------


def oplus(A: OrthoAlgebra, a: int, b: int) -> int | None:
    """The sum ``a + b`` or ``None`` when undefined."""
    return A.oplus(a, b)


def leq(A: OrthoAlgebra, a: int, c: int) -> bool:
    """Derived order: ``a <= c`` iff ``a + b = c`` for some ``b``."""
    return bool(A.up_masks[a] >> c & 1)


def big_oplus(A: OrthoAlgebra, elements: Iterable[int]) -> int | None:
    """Sum of a finite set, if some enumeration folds to a defined value.

    The empty sum is 0.  A plain left fold in index order is tried first;
    only if it breaks down is a search over orderings performed.
    """
    items = sorted(set(elements))
    acc = 0
    for e in items:
        acc = A.table[acc][e]
        if acc == UNDEF:
            break
    else:
        return acc

    # Some orthoalgebra-like tables are order sensitive; look for any order.
    seen: dict[tuple[int, int], int | None] = {}

    def search(remaining: int, acc: int) -> int | None:
        if not remaining:
            return acc
        key = (remaining, acc)
        if key in seen:
            return seen[key]
        result = None
        for i in iter_bits(remaining):
            nxt = A.table[acc][items[i]]
            if nxt != UNDEF:
                result = search(remaining & ~(1 << i), nxt)
                if result is not None:
                    break
        seen[key] = result
        return result

    return search((1 << len(items)) - 1, 0)


def generated_subalgebra(A: OrthoAlgebra, generators: Iterable[int]) -> frozenset[int]:
    """Least subset containing the generators, 0 and 1, closed under
    complement and under every defined sum of its members."""
    members = {0, A.one}
    members.update(generators)
    members.update(A.comp[x] for x in list(members))
    frontier = list(members)
    while frontier:
        new = []
        for x in frontier:
            cx = A.comp[x]
            if cx not in members:
                members.add(cx)
                new.append(cx)
            row = A.table[x]
            for y in list(members):
                s = row[y]
                if s != UNDEF and s not in members:
                    members.add(s)
                    new.append(s)
        frontier = new
    return frozenset(members)


def is_closed(A: OrthoAlgebra, S: Iterable[int]) -> bool:
    S = set(S)
    if 0 not in S or A.one not in S:
        return False
    for x in S:
        if A.comp[x] not in S:
            return False
        row = A.table[x]
        for y in S:
            if row[y] != UNDEF and row[y] not in S:
                return False
    return True


def minimal_nonzero(A: OrthoAlgebra, S: Iterable[int]) -> list[int]:
    """Minimal nonzero members of ``S`` in the derived order."""
    S = sorted(set(S))
    mask = to_mask(S) & ~1
    out = []
    for x in S:
        if x == 0:
            continue
        if A.down_masks[x] & mask == 1 << x:
            out.append(x)
    return out


def is_boolean(A: OrthoAlgebra, S: Iterable[int]) -> bool:
    """Whether the subalgebra ``S`` is a Boolean algebra.

    The minimal nonzero elements must sum to 1 and every member must be the
    sum of a subset of them, with distinct subsets giving distinct members.
    """
    S = frozenset(S)
    if not is_closed(A, S):
        raise NotClosedError("set is not closed under complement and sums")
    atoms = minimal_nonzero(A, S)
    if len(S) != 1 << len(atoms):
        return False
    sums = {0}
    for atom in atoms:
        step = set()
        for s in sums:
            t = A.table[s][atom]
            if t == UNDEF:
                return False
            step.add(t)
        sums |= step
    return sums == S and big_oplus(A, atoms) == A.one


def partitions_of_unity(A: OrthoAlgebra, budget: int = DEFAULT_SUBALGEBRA_BUDGET) -> list[tuple[int, ...]]:
    """All sets of nonzero, jointly orthogonal elements summing to 1.

    These are exactly the atom sets of the Boolean subalgebras.
    """
    n = A.size
    one = A.one
    table = A.table
    found: list[tuple[int, ...]] = []
    visited = 0

    def grow(start: int, acc: int, chosen: list[int]) -> None:
        nonlocal visited
        visited += 1
        if visited > budget:
            raise CapExceededError(f"more than {budget} partial sums explored")
        if acc == one:
            found.append(tuple(chosen))
            return
        row = table[acc]
        for e in range(max(start, 1), n):
            s = row[e]
            if s != UNDEF:
                chosen.append(e)
                grow(e + 1, s, chosen)
                chosen.pop()

    grow(1, 0, [])
    return found


def boolean_span(A: OrthoAlgebra, atoms: Sequence[int]) -> frozenset[int]:
    """All sums of subsets of a jointly orthogonal family."""
    members = {0}
    for atom in atoms:
        step = set()
        for m in members:
            s = A.table[m][atom]
            if s == UNDEF:
                raise StructuralError(f"family {tuple(atoms)} is not jointly orthogonal")
            step.add(s)
        members |= step
    return frozenset(members)


def boolean_subalgebras(A: OrthoAlgebra, budget: int = DEFAULT_SUBALGEBRA_BUDGET) -> list[frozenset[int]]:
    """Boolean subalgebras, ordered by (size, sorted member list)."""
    subs = {boolean_span(A, atoms) for atoms in partitions_of_unity(A, budget)}
    return sorted(subs, key=lambda s: (len(s), sorted(s)))


def enumerate_bsub(
    A: OrthoAlgebra,
    cap: int = DEFAULT_SIZE_CAP,
    budget: int = DEFAULT_SUBALGEBRA_BUDGET,
):
    """The poset of Boolean subalgebras of ``A`` ordered by inclusion.

    Each element carries its member set in ``members``.  The bottom is
    ``{0, 1}`` and the atoms are the four-element subalgebras.
    """
    from .poset import FinitePoset

    if A.size > cap:
        raise CapExceededError(f"algebra has {A.size} elements, cap is {cap}")
    subs = boolean_subalgebras(A, budget)
    if len(subs) > budget:
        raise CapExceededError(f"{len(subs)} Boolean subalgebras exceeds budget {budget}")
    masks = [to_mask(s) for s in subs]
    down = []
    for j, mj in enumerate(masks):
        d = 0
        for i, mi in enumerate(masks):
            if mi & ~mj == 0:
                d |= 1 << i
        down.append(d)
    labels = [subalgebra_label(A, s) for s in subs]
    return FinitePoset.from_down_masks(down, labels=labels, members=subs, name=f"BSub({A.name})")


def subalgebra_label(A: OrthoAlgebra, S: Iterable[int]) -> str:
    """Short name: listed atoms of the subalgebra, or ``bot`` for {0,1}."""
    S = frozenset(S)
    atoms = minimal_nonzero(A, S)
    if len(S) <= 2:
        return "bot"
    if len(S) == 4:
        a = min(atoms, key=lambda x: (A.heights[x], x))
        return f"x({A.labels[a]})"
    return "<" + ",".join(A.labels[a] for a in atoms) + ">"


def blocks(A: OrthoAlgebra, budget: int = DEFAULT_SUBALGEBRA_BUDGET) -> list[frozenset[int]]:
    """Maximal Boolean subalgebras."""
    subs = boolean_subalgebras(A, budget)
    return [s for s in subs if not any(s < t for t in subs if len(t) > len(s))]


def is_proper(A: OrthoAlgebra) -> bool:
    """No block has four or fewer elements."""
    return all(len(b) > 4 for b in blocks(A))


def is_orthomodular_poset(A: OrthoAlgebra) -> bool:
    """Every orthogonal sum ``a + b`` is the least upper bound of a and b."""
    up = A.up_masks
    for a, b, c in A.sums():
        common = up[a] & up[b]
        # c is an upper bound; it must lie below every other one
        if common & ~up[c]:
            return False
    return True


def restrict(A: OrthoAlgebra, S: Iterable[int], name: str = "") -> OrthoAlgebra:
    """The subalgebra ``S`` as an orthoalgebra in its own right.

    Indices are renumbered in increasing order, which keeps 0 and 1 first.
    """
    keep = sorted(set(S))
    if not is_closed(A, keep):
        raise NotClosedError("set is not closed under complement and sums")
    pos = {x: i for i, x in enumerate(keep)}
    comp = [pos[A.comp[x]] for x in keep]
    sums = []
    for x in keep:
        for y in keep:
            s = A.table[x][y]
            if x <= y and s != UNDEF:
                sums.append((pos[x], pos[y], pos[s]))
    return OrthoAlgebra.from_sums(comp, sums, [A.labels[x] for x in keep], name or A.name)


def remove_small_blocks(A: OrthoAlgebra) -> OrthoAlgebra:
    """Drop the two middle elements of every block with four elements."""
    if A.size <= 2:
        raise TrivialAlgebraError("algebra has at most two elements")
    small = [b for b in blocks(A) if len(b) <= 4]
    drop = set()
    for b in small:
        drop |= set(b) - {0, A.one}
    if len(drop) == A.size - 2:
        raise TrivialAlgebraError("every block is small")
    return restrict(A, set(range(A.size)) - drop, name=f"{A.name}-minus-small-blocks")


def morphism_violations(A: OrthoAlgebra, C: OrthoAlgebra, f: Sequence[int | None]) -> list[Violation]:
    """Failures of ``f`` to preserve complements and defined sums."""
    out: list[Violation] = []
    if len(f) != A.size:
        return [Violation("shape", (), f"map has {len(f)} entries, source has {A.size}")]
    for a, v in enumerate(f):
        if not (isinstance(v, int) and 0 <= v < C.size):
            out.append(Violation("shape", (a,), f"image of {A.labels[a]} out of range: {v!r}"))
    if out:
        return out
    if f[A.one] != C.one:
        out.append(Violation("unit", (A.one,), "1 is not mapped to 1"))
    for a in range(A.size):
        if f[A.comp[a]] != C.comp[f[a]]:
            out.append(Violation("complement", (a,), f"f({A.labels[a]}') != f({A.labels[a]})'"))
    for a, b, c in A.sums():
        s = C.table[f[a]][f[b]]
        if s == UNDEF:
            out.append(Violation("sum", (a, b), f"f({A.labels[a]}) + f({A.labels[b]}) undefined"))
        elif s != f[c]:
            out.append(Violation("sum", (a, b), f"f({A.labels[a]} + {A.labels[b]}) differs from the sum of images"))
    return out


def is_morphism(A: OrthoAlgebra, C: OrthoAlgebra, f: Sequence[int | None]) -> bool:
    return not morphism_violations(A, C, f)


# --- validation -------------------------------------------------------------

_MAX_PER_AXIOM = 25


def validate_orthoalgebra(candidate: OrthoAlgebra | Mapping) -> ValidationReport:
    """Check the table shape and then every orthoalgebra axiom.

    Accepts either an :class:`OrthoAlgebra` or a JSON-style mapping with
    ``size``, ``comp`` and ``sum``.  Violations carry witness elements.
    """
    if isinstance(candidate, OrthoAlgebra):
        A = candidate
        report = ValidationReport(A.name or "orthoalgebra")
    else:
        report = ValidationReport(str(candidate.get("name", "orthoalgebra")))
        A = parse_structure(candidate, report)
        if A is None:
            report.structural = True
            return report
    _check_axioms(A, report)
    return report


def parse_structure(doc: Mapping, report: ValidationReport) -> OrthoAlgebra | None:
    for key in ("size", "comp", "sum"):
        if key not in doc:
            report.add("structure", (), f"missing field {key!r}")
    if not report.ok:
        return None
    n, comp, sums = doc["size"], doc["comp"], doc["sum"]
    if not isinstance(n, int) or n < 1:
        report.add("structure", (), f"size must be a positive integer, got {n!r}")
        return None
    if len(comp) != n:
        report.add("structure", (), f"comp has {len(comp)} entries, size is {n}")
    for a, c in enumerate(comp):
        if not (isinstance(c, int) and 0 <= c < n):
            report.add("structure", (a,), f"complement of {a} out of range: {c!r}")
    seen: dict[tuple[int, int], int] = {}
    for entry in sums:
        if not (isinstance(entry, (list, tuple)) and len(entry) == 3):
            report.add("structure", (), f"sum entry {entry!r} is not a triple")
            continue
        if not all(isinstance(v, int) and 0 <= v < n for v in entry):
            report.add("structure", tuple(v for v in entry if isinstance(v, int)), f"sum entry {entry!r} out of range")
            continue
        a, b, c = entry
        key = (min(a, b), max(a, b))
        if key in seen and seen[key] != c:
            report.add("structure", (a, b), f"asymmetric or conflicting sum for ({a},{b}): {seen[key]} and {c}")
        seen[key] = c
    labels = doc.get("labels")
    if labels is not None and len(labels) != n:
        report.add("structure", (), "labels length differs from size")
    if not report.ok:
        return None
    return OrthoAlgebra.from_sums(
        list(comp), [(a, b, c) for (a, b), c in seen.items()], labels, str(doc.get("name", ""))
    )


def _check_axioms(A: OrthoAlgebra, report: ValidationReport) -> None:
    n, comp, T, one = A.size, A.comp, A.table, A.one
    lab = A.labels
    counts: dict[str, int] = {}

    def flag(axiom: str, witness: tuple, message: str) -> None:
        counts[axiom] = counts.get(axiom, 0) + 1
        if counts[axiom] <= _MAX_PER_AXIOM:
            report.add(axiom, witness, message)

    if comp[0] != one:
        flag("complement-constants", (0,), "0' is not 1")
    for a in range(n):
        if comp[comp[a]] != a:
            flag("complement-involution", (a,), f"{lab[a]}'' != {lab[a]}")
        if T[a][0] != a:
            flag("zero-identity", (a,), f"{lab[a]} + 0 is not {lab[a]}")
        if T[a][comp[a]] != one:
            flag("orthocomplement", (a,), f"{lab[a]} + {lab[a]}' is not 1")
        for b in range(n):
            if T[a][b] == one and b != comp[a]:
                flag("orthocomplement-unique", (a, b), f"{lab[a]} + {lab[b]} = 1 but {lab[b]} is not {lab[a]}'")
        if a != 0 and T[a][a] != UNDEF:
            flag("consistency", (a,), f"{lab[a]} + {lab[a]} is defined for nonzero {lab[a]}")

    partners = [[b for b in range(n) if T[a][b] != UNDEF] for a in range(n)]
    for a in range(n):
        for b in partners[a]:
            ab = T[a][b]
            for c in partners[ab]:
                bc = T[b][c]
                if bc == UNDEF or T[a][bc] == UNDEF:
                    flag("associativity", (a, b, c), f"({lab[a]}+{lab[b]})+{lab[c]} defined but {lab[a]}+({lab[b]}+{lab[c]}) is not")
                elif T[a][bc] != T[ab][c]:
                    flag("associativity", (a, b, c), f"regrouping {lab[a]},{lab[b]},{lab[c]} changes the sum")
            for c in partners[b]:
                bc = T[b][c]
                if T[a][bc] != UNDEF and T[ab][c] == UNDEF:
                    flag("associativity", (a, b, c), f"{lab[a]}+({lab[b]}+{lab[c]}) defined but ({lab[a]}+{lab[b]})+{lab[c]} is not")
    # a + (b + c) defined with a + b undefined
    for b in range(n):
        for c in partners[b]:
            bc = T[b][c]
            for a in partners[bc]:
                if T[a][b] == UNDEF:
                    flag("associativity", (a, b, c), f"{lab[a]}+({lab[b]}+{lab[c]}) defined but {lab[a]}+{lab[b]} is not")

    up = A.up_masks
    for a in range(n):
        for c in iter_bits(up[a]):
            if c != a and up[c] >> a & 1:
                flag("order-antisymmetry", (a, c), f"{lab[a]} <= {lab[c]} <= {lab[a]}")
            if up[c] & ~up[a]:
                d = next(iter_bits(up[c] & ~up[a]))
                flag("order-transitivity", (a, c, d), f"{lab[a]} <= {lab[c]} <= {lab[d]} but not {lab[a]} <= {lab[d]}")

    for axiom, k in counts.items():
        if k > _MAX_PER_AXIOM:
            report.add(axiom, (), f"... {k - _MAX_PER_AXIOM} further violations of {axiom} omitted")


def find_isomorphism(A: OrthoAlgebra, C: OrthoAlgebra) -> list[int] | None:
    """A bijection preserving complements and sums in both directions.

    Backtracking over elements ordered by height; an element that is a sum
    of already mapped elements has a forced image.
    """
    if A.size != C.size or len(A.sums()) != len(C.sums()):
        return None

    def invariant(X: OrthoAlgebra, a: int):
        partners = sum(1 for b in range(X.size) if X.table[a][b] != UNDEF)
        return (X.heights[a], partners, bin(X.down_masks[a]).count("1"), bin(X.up_masks[a]).count("1"))

    inv_a = [invariant(A, a) for a in range(A.size)]
    inv_c = [invariant(C, c) for c in range(C.size)]
    if sorted(inv_a) != sorted(inv_c):
        return None
    by_inv: dict[tuple, list[int]] = {}
    for c, key in enumerate(inv_c):
        by_inv.setdefault(key, []).append(c)

    order = sorted(range(A.size), key=lambda a: (A.heights[a], len(by_inv[inv_a[a]]), a))
    f = [-1] * A.size
    g = [-1] * C.size
    mapped: list[int] = []

    def forced(a: int) -> int | None:
        for x in mapped:
            for y in mapped:
                if A.table[x][y] == a:
                    s = C.table[f[x]][f[y]]
                    return s if s != UNDEF else -2
        return None

    def consistent(a: int, c: int) -> bool:
        if inv_a[a] != inv_c[c]:
            return False
        for x in mapped:
            fx = f[x]
            s, t = A.table[a][x], C.table[c][fx]
            if (s == UNDEF) != (t == UNDEF):
                return False
            if s != UNDEF and f[s] != -1 and f[s] != t:
                return False
            if s != UNDEF and f[s] == -1 and g[t] != -1:
                return False
        ca, cc = A.comp[a], C.comp[c]
        if f[ca] != -1 and f[ca] != cc:
            return False
        if g[cc] != -1 and g[cc] != ca:
            return False
        return True

    def assign(a: int, c: int) -> None:
        f[a], g[c] = c, a
        mapped.append(a)

    def unassign(a: int) -> None:
        g[f[a]] = -1
        f[a] = -1
        mapped.pop()

    def search(k: int) -> bool:
        if k == len(order):
            return True
        a = order[k]
        if f[a] != -1:
            return search(k + 1)
        fc = forced(a)
        if fc == -2:
            return False
        cands = [fc] if fc is not None else by_inv[inv_a[a]]
        for c in cands:
            if g[c] != -1 or not consistent(a, c):
                continue
            assign(a, c)
            ok = True
            ca, cc = A.comp[a], C.comp[c]
            pushed = False
            if f[ca] == -1:
                if g[cc] != -1 or not consistent(ca, cc):
                    ok = False
                else:
                    assign(ca, cc)
                    pushed = True
            if ok and search(k + 1):
                return True
            if pushed:
                unassign(ca)
            unassign(a)
        return False

    if not search(0):
        return None
    inverse = [0] * C.size
    for a, c in enumerate(f):
        inverse[c] = a
    if morphism_violations(A, C, f) or morphism_violations(C, A, inverse):
        return None
    return f


def is_isomorphic(A: OrthoAlgebra, C: OrthoAlgebra) -> bool:
    return find_isomorphism(A, C) is not None


def atoms_of(A: OrthoAlgebra) -> list[int]:
    return minimal_nonzero(A, range(A.size))
