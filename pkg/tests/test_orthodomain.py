import itertools

import pytest

from orthoalg.catalog import CATALOG_NAMES, PROPER_CATALOG_NAMES, mo, named, power_set, power_set_order
from orthoalg.core import enumerate_bsub, find_isomorphism, validate_orthoalgebra
from orthoalg.orthodomain import (
    NoDirectionsError,
    all_principal_pairs,
    arrow,
    directions_for,
    dual_modular_elements,
    has_enough_directions,
    is_boolean_domain,
    is_orthodomain,
    odir,
    orthodomain_violations,
    pair_leq,
    principal_pairs,
    reconstruct_check,
)
from orthoalg.poset import FinitePoset


# --- brute-force oracles on raw order queries ----------------------------------


def raw_join(X, a, b, within):
    ub = [w for w in range(X.size) if X.leq(w, within) and X.leq(a, w) and X.leq(b, w)]
    least = [w for w in ub if all(X.leq(w, v) for v in ub)]
    return least[0] if least else None


def raw_meet(X, a, b):
    lb = [w for w in range(X.size) if X.leq(w, a) and X.leq(w, b)]
    return next(w for w in lb if all(X.leq(v, w) for v in lb))


def brute_dual_modular(X, top):
    L = [e for e in range(X.size) if X.leq(e, top)]
    J = lambda a, b: raw_join(X, a, b, top)
    out = set()
    for x in L:
        ok = True
        for y, z in itertools.product(L, L):
            if X.leq(x, z) and raw_meet(X, J(x, y), z) != J(x, raw_meet(X, y, z)):
                ok = False
                break
            # second identity with x in the middle: w <= y
            w, yy = y, z
            if X.leq(w, yy) and raw_meet(X, J(w, x), yy) != J(w, raw_meet(X, x, yy)):
                ok = False
                break
        if ok:
            out.add(x)
    return out


def is_basic_in(X, e, top):
    return X.heights[e] <= 1 and X.leq(e, top)


def brute_principal_pairs(X, x, top):
    dm = brute_dual_modular(X, top)
    out = set()
    for y, z in itertools.product(sorted(dm), repeat=2):
        if raw_meet(X, y, z) != x:
            continue
        if y == top and is_basic_in(X, z, top):
            out.add((y, z))
        elif z == top and is_basic_in(X, y, top):
            out.add((y, z))
        elif raw_join(X, y, z, top) == top and x not in dm and is_basic_in(X, x, top):
            out.add((y, z))
    return out


def brute_directions(X, x):
    """Backtracking over one principal pair per element above x, checked
    against restriction coherence on every comparable pair and the join
    condition on every pair of covers."""
    above = [y for y in range(X.size) if X.leq(x, y)]
    above.sort(key=lambda y: -X.heights[y])
    options = {y: sorted(brute_principal_pairs(X, x, y)) for y in above}
    found = []
    chosen: dict[int, tuple[int, int]] = {}

    def coherent(y):
        for z, (v, w) in chosen.items():
            if z != y and X.leq(y, z):
                if chosen[y] != (raw_meet(X, y, v), raw_meet(X, y, w)):
                    return False
            if z != y and X.leq(z, y):
                v2, w2 = chosen[y]
                if (v, w) != (raw_meet(X, z, v2), raw_meet(X, z, w2)):
                    return False
        return True

    def rec(k):
        if k == len(above):
            covers = [y for y in above if y in X.upper_covers[x]]
            for y, z in itertools.permutations(covers, 2):
                if chosen[y] == (x, y) and chosen[z] == (z, x):
                    ub = [u for u in range(X.size) if X.leq(y, u) and X.leq(z, u)]
                    least = [u for u in ub if all(X.leq(u, v) for v in ub)]
                    if not least:
                        return
                    w = least[0]
                    if w not in X.upper_covers[y] or w not in X.upper_covers[z]:
                        return
            found.append({y: chosen[y] for y in above})
            return
        y = above[k]
        for p in options[y]:
            chosen[y] = p
            if coherent(y):
                rec(k + 1)
            del chosen[y]

    rec(0)
    return found


def as_dict(d):
    return {y: (v, w) for y, v, w in d.values}


# --- Boolean domains --------------------------------------------------------------


def test_boolean_domain_examples():
    chain = FinitePoset(2, [(0, 1)])
    assert is_boolean_domain(chain)
    assert is_boolean_domain(enumerate_bsub(power_set(4)))
    assert not is_boolean_domain(enumerate_bsub(named("fig1_gluing")))


@pytest.mark.parametrize("name", CATALOG_NAMES)
def test_bsub_is_orthodomain(name):
    assert is_orthodomain(enumerate_bsub(named(name)))


def test_orthodomain_needs_atom_joins():
    # two atoms under two distinct tops: their join does not exist
    bowtie = FinitePoset(5, [(0, 1), (0, 2), (1, 3), (2, 3), (1, 4), (2, 4)])
    assert orthodomain_violations(bowtie)


def test_fraser_bsub_lacks_some_meets():
    X = enumerate_bsub(named("fraser_cube"))
    assert is_orthodomain(X)
    assert any(X.meet(a, b) is None for a, b in itertools.combinations(range(X.size), 2))


# --- dual modular elements and principal pairs ------------------------------------


@pytest.mark.parametrize("n", [2, 3, 4])
def test_dual_modular_against_oracle(n):
    X = enumerate_bsub(power_set(n))
    top = X.top()
    assert dual_modular_elements(X) == brute_dual_modular(X, top)


@pytest.mark.parametrize("n", [3, 4])
def test_dual_modular_are_ideal_subalgebras(n):
    # in Sub(B) the dual modular elements are the sets down(a) + up(a')
    A = power_set(n)
    X = enumerate_bsub(A)
    order = power_set_order(n)
    ideal_subalgebras = set()
    for m in order:
        down = {j for j, k in enumerate(order) if k & ~m == 0}
        ideal_subalgebras.add(frozenset(down | {A.comp[j] for j in down}))
    index = X.index_of_members()
    expected = {index[S] for S in ideal_subalgebras if S in index}
    assert dual_modular_elements(X) == expected


def test_dual_modular_basic_elements_of_bsub16():
    X = enumerate_bsub(power_set(4))
    dm_basic = sorted(x for x in dual_modular_elements(X) if X.heights[x] <= 1)
    labels = sorted(X.labels[x] for x in dm_basic)
    assert labels == ["bot", "x({1})", "x({2})", "x({3})", "x({4})"]
    assert X.top() in dual_modular_elements(X) and X.bottom in dual_modular_elements(X)


def test_every_element_of_bsub8_is_dual_modular():
    X = enumerate_bsub(power_set(3))
    assert dual_modular_elements(X) == frozenset(range(5))


@pytest.mark.parametrize("n", [3, 4])
def test_principal_pairs_against_oracle(n):
    X = enumerate_bsub(power_set(n))
    for y in range(X.size):
        for x in X.basic_elements():
            if X.leq(x, y):
                assert set(principal_pairs(X, x, y)) == brute_principal_pairs(X, x, y)


def test_principal_pair_counts():
    P2 = enumerate_bsub(power_set(1))
    assert P2.size == 1
    assert principal_pairs(P2, 0) == [(0, 0)]
    X = enumerate_bsub(power_set(4))
    for a in X.atoms():
        assert len(principal_pairs(X, a)) == 2


def test_pair_algebra_of_bsub8_is_the_power_set():
    A = power_set(3)
    X = enumerate_bsub(A)
    index = X.index_of_members()
    down = lambda a: {b for b in range(A.size) if A.up_masks[b] >> a & 1}
    phi = []
    for a in range(A.size):
        y = frozenset(down(a) | {A.comp[b] for b in down(a)})
        z = frozenset(down(A.comp[a]) | {A.comp[b] for b in down(A.comp[a])})
        phi.append((index[y], index[z]))
    pairs = all_principal_pairs(X)
    assert sorted(set(phi)) == pairs and len(set(phi)) == A.size
    for a in range(A.size):
        assert phi[A.comp[a]] == (phi[a][1], phi[a][0])
        for b in range(A.size):
            assert pair_leq(X, phi[a], phi[b]) == bool(A.up_masks[a] >> b & 1)


# --- directions -------------------------------------------------------------------------


@pytest.mark.parametrize("name", ["power_set_3", "power_set_4", "fig1_gluing", "mo2_times_two", "fano_minus_line", "mo_2"])
def test_directions_against_oracle(name):
    X = enumerate_bsub(named(name))
    for x in X.basic_elements():
        ours = sorted(sorted(as_dict(d).items()) for d in directions_for(X, x))
        theirs = sorted(sorted(d.items()) for d in brute_directions(X, x))
        assert ours == theirs, X.labels[x]


def test_bottom_directions_are_zero_and_one():
    X = enumerate_bsub(power_set(4))
    dirs = [as_dict(d) for d in directions_for(X, X.bottom)]
    zero = {w: (X.bottom, w) for w in range(X.size)}
    one = {w: (w, X.bottom) for w in range(X.size)}
    assert zero in dirs and one in dirs


def test_maximal_atom_has_one_direction():
    X = enumerate_bsub(mo(2))
    for a in X.atoms():
        assert len(directions_for(X, a)) == 1


def test_direction_of_a_singleton_points_down_everywhere():
    X = enumerate_bsub(power_set(4))
    x = X.labels.index("x({1})")
    covers = X.upper_covers[x]
    assert len(covers) == 3
    arrows = sorted(tuple(arrow(X, d, y) for y in covers) for d in directions_for(X, x))
    assert arrows == [("down",) * 3, ("up",) * 3]


def test_enough_directions():
    assert has_enough_directions(enumerate_bsub(named("fraser_cube")))
    assert not has_enough_directions(enumerate_bsub(mo(2)))
    assert not has_enough_directions(enumerate_bsub(power_set(2)))


# --- the direction algebra ----------------------------------------------------------


@pytest.mark.parametrize("name", PROPER_CATALOG_NAMES)
def test_odir_is_a_valid_isomorphic_algebra(name):
    A = named(name)
    D = odir(enumerate_bsub(A))
    assert D.size == A.size
    assert validate_orthoalgebra(D).ok
    assert find_isomorphism(D, A) is not None


def test_odir_sizes():
    assert odir(enumerate_bsub(power_set(3))).size == 8
    assert odir(enumerate_bsub(named("fraser_cube"))).size == 36
    assert odir(enumerate_bsub(named("fig1_gluing"))).size == 12


def test_odir_needs_enough_directions():
    with pytest.raises(NoDirectionsError):
        odir(enumerate_bsub(mo(2)))


def test_reconstruct_check_witness():
    w = reconstruct_check(named("mo2_times_mo2"))
    assert w.verify()
    assert len(w.forward) == 36
