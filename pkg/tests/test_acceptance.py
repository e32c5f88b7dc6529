"""One test per acceptance criterion.

Each test is tagged with its criterion number; the run ends with a
``criterion N PASS|FAIL`` line for each of them (see ``conftest.py``).
"""

import itertools
import random
import time
from collections import defaultdict

from conftest import criterion
from sympy import bell

from orthoalg.catalog import CATALOG_NAMES, PROPER_CATALOG_NAMES, fraser_cube, named, power_set, random_corpus
from orthoalg.core import (
    big_oplus,
    blocks,
    enumerate_bsub,
    find_isomorphism,
    is_boolean,
    is_closed,
    is_orthomodular_poset,
    is_proper,
    validate_orthoalgebra,
)
from orthoalg.hypergraph import hypergraph_of, infer_planes_omp, orthodomain_of
from orthoalg.morphisms import (
    OAMorphism,
    composition_pair,
    compose,
    compose_point_maps,
    g_functor,
    identity,
    is_oa_morphism,
    is_proper_oa_morphism,
    lift_hg_morphism,
    morphism_corpus,
)
from orthoalg.orthodomain import directions_for, exchange_violations, odir, reconstruct, reconstruct_check
from orthoalg.poset import FinitePoset, find_poset_isomorphism, is_order_isomorphism
from orthoalg.shadows import truncate, truncate_star


def _brute_exchange_ok(X: FinitePoset) -> bool:
    """Near atoms via raw order queries, then count third atoms."""
    atoms = [a for a in range(X.size) if a != X.bottom and all(b in (a, X.bottom) for b in range(X.size) if X.leq(b, a))]
    between = lambda lo, hi: [m for m in range(X.size) if X.lt(lo, m) and X.lt(m, hi)]
    for x, y in itertools.combinations(atoms, 2):
        ub = [w for w in range(X.size) if X.leq(x, w) and X.leq(y, w)]
        least = [w for w in ub if all(X.leq(w, v) for v in ub)]
        if not least:
            continue
        w = least[0]
        if between(x, w) or between(y, w):
            continue
        others = [z for z in atoms if z not in (x, y) and X.leq(z, w)]
        if len(others) != 1:
            return False
    return True


@criterion(1, "Boolean subalgebra counts of 2^2, 2^3, 2^4 are 2, 5, 15")
def test_subalgebra_counts():
    start = time.perf_counter()
    counts = [enumerate_bsub(power_set(n)).size for n in (2, 3, 4)]
    elapsed = time.perf_counter() - start
    assert counts == [2, 5, 15]
    # Boolean subalgebras of P(n) correspond to set partitions of n
    assert counts == [int(bell(n)) for n in (2, 3, 4)]
    assert elapsed < 1.0


@criterion(2, "BSub of the two-block gluing: 8 elements, 1 + 5 + 2, covers 5 + 3 + 3")
def test_fig1_gluing_shape():
    A = named("fig1_gluing")
    X = enumerate_bsub(A)
    assert X.size == 8
    assert X.height_counts() == [1, 5, 2]
    tops = X.maximal_elements()
    assert len(X.upper_covers[X.bottom]) == 5
    assert sorted(len(X.lower_covers[t]) for t in tops) == [3, 3]
    # bottom, atoms 1..5, tops over {1,2,3} and {3,4,5}
    shape = FinitePoset(8, [(0, i) for i in range(1, 6)] + [(1, 6), (2, 6), (3, 6), (3, 7), (4, 7), (5, 7)])
    phi = find_poset_isomorphism(X, shape)
    assert phi is not None and is_order_isomorphism(X, shape, phi)


@criterion(3, "Fraser cube: 36 elements, 8 atoms, 6 blocks of 16, top/bottom meet is not Boolean")
def test_fraser_cube():
    start = time.perf_counter()
    A = fraser_cube()
    assert A.size == 36
    atoms = [a for a in range(A.size) if A.heights[a] == 1]
    assert len(atoms) == 8
    bl = blocks(A)
    assert len(bl) == 6 and all(len(b) == 16 for b in bl)
    idx = A.index
    bottom = next(b for b in bl if {idx(x) for x in "abcd"} <= b)
    top = next(b for b in bl if {idx(x) for x in "efgh"} <= b)
    meet = bottom & top
    assert meet == {idx(x) for x in ("0", "a+b", "b+d", "c+d", "a+c", "1")}
    assert is_closed(A, meet)
    assert is_boolean(A, meet) is False
    assert time.perf_counter() - start < 5.0


@criterion(4, "odir(BSub(A)) is isomorphic to A for every proper catalog algebra")
def test_reconstruction_roundtrip():
    start = time.perf_counter()
    for name in PROPER_CATALOG_NAMES:
        A = named(name)
        witness = reconstruct_check(A)
        assert witness.verify(), name
        assert witness.target.size == A.size
        # second route: a plain isomorphism search between A and the rebuilt algebra
        assert find_isomorphism(A, odir(enumerate_bsub(A))) is not None, name
    assert time.perf_counter() - start < 60.0


@criterion(5, "two directions per basic element; one at the maximal atoms of BSub(MO2)")
def test_direction_counts():
    for name in PROPER_CATALOG_NAMES:
        X = enumerate_bsub(named(name))
        for x in X.basic_elements():
            assert len(directions_for(X, x)) == 2, (name, X.labels[x])
    X = enumerate_bsub(named("mo_2"))
    maximal_atoms = [a for a in X.atoms() if not X.upper_covers[a]]
    assert len(maximal_atoms) == 2
    for a in maximal_atoms:
        assert len(directions_for(X, a)) == 1


@criterion(6, "exchange property on every orthodomain fixture")
def test_exchange_property():
    fixtures = [enumerate_bsub(named(n)) for n in CATALOG_NAMES]
    fixtures += [orthodomain_of(hypergraph_of(named(n))) for n in PROPER_CATALOG_NAMES]
    for X in fixtures:
        assert exchange_violations(X) == [], X.name
        assert _brute_exchange_ok(X), X.name
    # a square has near atoms with no third atom, so the scan must object
    square = FinitePoset(4, [(0, 1), (0, 2), (1, 3), (2, 3)])
    assert exchange_violations(square) and not _brute_exchange_ok(square)


@criterion(7, "orthodomain_of(hypergraph_of(A)) is isomorphic to the height-3 truncation of BSub(A)")
def test_hypergraph_roundtrip():
    for name in CATALOG_NAMES:
        A = named(name)
        X = enumerate_bsub(A)
        P, Q = orthodomain_of(hypergraph_of(A, X)), truncate_star(X)
        phi = find_poset_isomorphism(P, Q)
        assert phi is not None and is_order_isomorphism(P, Q, phi), name


@criterion(8, "height-2 truncations of BSub(2^4) and BSub(fano_minus_line) agree, algebras differ")
def test_height_two_insufficiency():
    A, C = power_set(4), named("fano_minus_line")
    X, Y = enumerate_bsub(A), enumerate_bsub(C)
    assert find_poset_isomorphism(truncate(X, 2), truncate(Y, 2)) is not None
    assert find_poset_isomorphism(X, Y) is None
    RA, RC = reconstruct(X), reconstruct(Y)
    assert find_isomorphism(RA, A) is not None
    assert find_isomorphism(RC, C) is not None
    assert A.size == C.size == 16
    assert find_isomorphism(RA, RC) is None
    assert find_isomorphism(A, C) is None


@criterion(9, "plane inference recovers MO2xMO2's 4 planes and finds 1 spurious plane for fano_minus_line")
def test_plane_inference():
    H = hypergraph_of(named("mo2_times_mo2"))
    assert len(H.planes) == 4
    assert infer_planes_omp(H.n_points, H.lines) == sorted(H.planes, key=lambda t: sorted(t.points))
    C = named("fano_minus_line")
    K = hypergraph_of(C)
    assert K.planes == ()
    assert len(infer_planes_omp(K.n_points, K.lines)) == 1
    assert is_orthomodular_poset(C) is False


def _hg(A, cache={}):
    key = id(A)
    if key not in cache:
        cache[key] = (A, hypergraph_of(A))
    return cache[key][1]


def _G(f: OAMorphism):
    return g_functor(f, _hg(f.source), _hg(f.target))


@criterion(10, "functor laws, the non-proper composite, faithfulness and fullness on the corpus")
def test_morphism_suite():
    start = time.perf_counter()
    corpus = morphism_corpus(seed=7)
    assert all(is_oa_morphism(f) for f in corpus)

    # G(id) = id
    for A in {id(f.source): f.source for f in corpus}.values():
        assert _G(identity(A)).assignment == tuple(range(_hg(A).n_points))

    # G(g . f) = G(g) . G(f) over composable pairs
    rng = random.Random(11)
    by_source = defaultdict(list)
    for g in corpus:
        by_source[(g.source.name, g.source.size)].append(g)
    pairs = 0
    for f in corpus:
        nexts = by_source[(f.target.name, f.target.size)]
        for g in rng.sample(nexts, min(12, len(nexts))):
            gf = compose(g, f)
            assert _G(gf).assignment == compose_point_maps(_G(g), _G(f)).assignment
            pairs += 1
    assert pairs > 1000

    # proper f, g with a composite that is not proper
    f, g = composition_pair()
    assert is_proper_oa_morphism(f) and is_proper_oa_morphism(g)
    assert not is_proper_oa_morphism(compose(g, f))

    proper = [f for f in corpus if is_proper(f.source) and is_proper(f.target) and is_proper_oa_morphism(f)]
    assert proper

    # faithful: distinct proper maps between the same algebras have distinct images
    images = defaultdict(dict)
    for f in proper:
        key = (f.source.name, f.target.name, f.source.size, f.target.size)
        images[key][f.mapping] = _G(f).assignment
    for per_pair in images.values():
        assert len(set(per_pair.values())) == len(per_pair)

    # full: each proper image lifts back to a morphism with the same image
    for f in proper:
        alpha = _G(f)
        lifted = lift_hg_morphism(alpha, f.source, f.target)
        assert _G(lifted).assignment == alpha.assignment
        assert lifted.mapping == f.mapping
    assert time.perf_counter() - start < 60.0


@criterion(11, "200 random algebras validate, proper ones reconstruct, big sums are order invariant")
def test_random_algebras():
    start = time.perf_counter()
    corpus = random_corpus(seed=2024, count=200, max_size=24)
    assert len(corpus) == 200 and all(A.size <= 24 for A in corpus)
    n_proper = 0
    for A in corpus:
        assert validate_orthoalgebra(A).ok, A.name
        if is_proper(A):
            n_proper += 1
            assert reconstruct_check(A).verify(), A.name
        for k in range(5):
            for S in itertools.combinations(range(A.size), k):
                folds = set()
                for order in itertools.permutations(S):
                    acc = 0
                    for e in order:
                        acc = A.oplus(acc, e)
                        if acc is None:
                            break
                    folds.add(acc)
                assert len(folds) == 1, (A.name, S)
                assert big_oplus(A, S) == folds.pop(), (A.name, S)
    assert n_proper > 0
    assert time.perf_counter() - start < 300.0
