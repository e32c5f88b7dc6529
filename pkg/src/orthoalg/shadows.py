"""Truncations, shadows, and the tall/short classification.

``X*`` is the subposet of elements of height at most 3.  A shadow is a
nonempty down-set of ``X*`` closed under the joins that exist in ``X*``.
Because orthodomains are atomistic, a shadow is fixed by its atoms, and an
atom set ``U`` gives a shadow exactly when for every ``w`` of ``X*`` the join
of ``U ∩ atoms(w)`` being ``w`` forces ``atoms(w) ⊆ U``.  Shadows are listed
by closing atom sets under that rule.
"""

from __future__ import annotations

from dataclasses import dataclass

from .core import CapExceededError, is_boolean
from .orthodomain import DirectionAlgebra, has_enough_directions, odir
from .poset import FinitePoset

DEFAULT_SHADOW_BUDGET = 100_000


class ShadowMapError(ValueError):
    """The map from Boolean subalgebras to Boolean shadows is not an order isomorphism."""


def truncate(X: FinitePoset, level: int) -> FinitePoset:
    """Elements of height at most ``level``."""
    return X.subposet([i for i in range(X.size) if X.heights[i] <= level], name=f"{X.name}<={level}")


def truncate_star(X: FinitePoset) -> FinitePoset:
    return truncate(X, 3)


def is_short(X: FinitePoset) -> bool:
    return X.height <= 3


def _star(X: FinitePoset) -> tuple[FinitePoset, list[int]]:
    """``X*`` with the position of each of its elements in ``X``."""
    key = ("star",)
    if key not in X._cache:
        keep = [i for i in range(X.size) if X.heights[i] <= 3]
        Y = X.subposet(keep, name=f"{X.name}*")
        X._cache[key] = (Y, keep)
    return X._cache[key]


def _atom_masks(Y: FinitePoset) -> list[int]:
    """Bitmask of the atoms below each element."""
    atoms = set(Y.atoms())
    out = []
    for w in range(Y.size):
        m = 0
        for a in Y.downset(w):
            if a in atoms:
                m |= 1 << a
        out.append(m)
    return out


def _closure(Y: FinitePoset, masks: list[int], U: int) -> int:
    high = [w for w in range(Y.size) if Y.heights[w] >= 2]
    changed = True
    while changed:
        changed = False
        for w in high:
            aw = masks[w]
            if aw & ~U == 0:
                continue
            inside = aw & U
            if inside and Y.lub(_bits(inside)) == w:
                U |= aw
                changed = True
    return U


def _bits(mask: int) -> list[int]:
    out = []
    while mask:
        low = mask & -mask
        out.append(low.bit_length() - 1)
        mask ^= low
    return out


def _elements_of(Y: FinitePoset, masks: list[int], U: int) -> frozenset[int]:
    return frozenset(w for w in range(Y.size) if masks[w] & ~U == 0)


def shadows(X: FinitePoset, budget: int = DEFAULT_SHADOW_BUDGET) -> list[frozenset[int]]:
    """Every shadow of ``X``, as sets of indices of ``X``, smallest first."""
    Y, keep = _star(X)
    masks = _atom_masks(Y)
    atoms = Y.atoms()
    start = _closure(Y, masks, 0)
    seen = {start}
    stack = [start]
    while stack:
        U = stack.pop()
        for a in atoms:
            if U >> a & 1:
                continue
            V = _closure(Y, masks, U | 1 << a)
            if V not in seen:
                if len(seen) >= budget:
                    raise CapExceededError(f"more than {budget} shadows")
                seen.add(V)
                stack.append(V)
    out = [frozenset(keep[w] for w in _elements_of(Y, masks, U)) for U in seen]
    return sorted(out, key=lambda s: (len(s), sorted(s)))


def is_shadow(X: FinitePoset, S) -> bool:
    """Direct check: nonempty down-set of ``X*`` closed under existing joins."""
    Y, keep = _star(X)
    pos = {x: i for i, x in enumerate(keep)}
    if not S or any(x not in pos for x in S):
        return False
    local = {pos[x] for x in S}
    for w in local:
        if any(v not in local for v in Y.downset(w)):
            return False
    masks = _atom_masks(Y)
    U = 0
    for w in local:
        U |= masks[w]
    return _closure(Y, masks, U) == U and _elements_of(Y, masks, U) == local


def _shadow_poset(X: FinitePoset, S) -> FinitePoset:
    return X.subposet(sorted(S), name="shadow")


def is_boolean_shadow(X: FinitePoset, S) -> bool:
    """``↓x`` for a basic ``x``, or a shadow with enough directions whose
    direction algebra is Boolean."""
    S = frozenset(S)
    key = ("bshadow", S)
    if key in X._cache:
        return X._cache[key]
    if not is_shadow(X, S):
        result = False
    elif len(S) <= 2:
        result = True
    else:
        P = _shadow_poset(X, S)
        if not has_enough_directions(P):
            result = False
        else:
            D = odir(P)
            result = is_boolean(D, range(D.size))
    X._cache[key] = result
    return result


def boolean_shadows(X: FinitePoset, budget: int = DEFAULT_SHADOW_BUDGET) -> list[frozenset[int]]:
    return [S for S in shadows(X, budget) if is_boolean_shadow(X, S)]


def shadow_of(X: FinitePoset, B, D: DirectionAlgebra | None = None) -> frozenset[int]:
    """The shadow of a Boolean subalgebra ``B`` of the direction algebra.

    Take the bases of the directions in ``B`` and close under the joins
    that exist in ``X*``:  ``w`` belongs iff the join of the bases below
    ``w`` is ``w``.
    """
    if D is None:
        D = odir(X)
    Y, keep = _star(X)
    pos = {x: i for i, x in enumerate(keep)}
    bases = {pos[D.directions[i].base] for i in B}
    out = []
    for w in range(Y.size):
        under = [b for b in bases if Y.leq(b, w)]
        if Y.lub(under) == w:
            out.append(keep[w])
    return frozenset(out)


@dataclass
class ShadowCorrespondence:
    """Boolean shadows ordered by inclusion, and the map from Boolean
    subalgebras of the direction algebra onto them."""

    poset: FinitePoset
    shadows: list[frozenset[int]]
    subalgebras: list[frozenset[int]]
    gamma: list[int]


def bshad(X: FinitePoset, budget: int = DEFAULT_SHADOW_BUDGET) -> ShadowCorrespondence:
    """Poset of Boolean shadows, checked against the Boolean subalgebras of
    the direction algebra.

    Raises :class:`ShadowMapError` if the shadow map is not an order isomorphism.
    """
    from .core import boolean_subalgebras

    shads = boolean_shadows(X, budget)
    P = FinitePoset.from_leq(
        len(shads), lambda i, j: shads[i] <= shads[j], members=shads, name=f"BShad({X.name})"
    )
    D = odir(X)
    subs = boolean_subalgebras(D)
    where = {s: i for i, s in enumerate(shads)}
    gamma = []
    for B in subs:
        S = shadow_of(X, B, D)
        if S not in where:
            raise ShadowMapError(f"shadow of a Boolean subalgebra is not a Boolean shadow: {sorted(S)}")
        gamma.append(where[S])
    if sorted(gamma) != list(range(len(shads))):
        raise ShadowMapError("shadow map is not a bijection onto the Boolean shadows")
    for i, B1 in enumerate(subs):
        for j, B2 in enumerate(subs):
            if (B1 <= B2) != (shads[gamma[i]] <= shads[gamma[j]]):
                raise ShadowMapError("shadow map does not preserve and reflect inclusion")
    return ShadowCorrespondence(P, shads, subs, gamma)


def is_tall(X: FinitePoset, budget: int = DEFAULT_SHADOW_BUDGET) -> bool:
    """Every Boolean shadow ``S`` has a join ``m`` with ``↓m ∩ X* = S``."""
    for S in boolean_shadows(X, budget):
        m = X.lub(S)
        if m is None:
            return False
        if frozenset(y for y in X.downset(m) if X.heights[y] <= 3) != S:
            return False
    return True
