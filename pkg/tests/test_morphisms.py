import itertools

import pytest

from orthoalg.catalog import mo, named, power_set
from orthoalg.core import enumerate_bsub, is_proper
from orthoalg.hypergraph import hypergraph_of
from orthoalg.morphisms import (
    LiftError,
    NotProperError,
    OAMorphism,
    PartialPointMap,
    arrow_law_violations,
    compose,
    compose_point_maps,
    composition_pair,
    direction_arrows,
    g_functor,
    homomorphisms,
    identity,
    is_hg_morphism,
    is_oa_morphism,
    is_proper_hg_morphism,
    is_proper_oa_morphism,
    lift_hg_morphism,
    line_image,
    mo2_embedding,
    morphism_corpus,
    validate_hg_morphism,
    validate_oa_morphism,
)
from orthoalg.orthodomain import odir


def all_point_maps(H, K):
    for a in itertools.product([None, *range(K.n_points)], repeat=H.n_points):
        yield PartialPointMap(H, K, a)


# counts of valid and proper hypergraph morphisms between power-set
# hypergraphs, from exhaustive enumeration of partial point maps
@pytest.mark.parametrize("n, m, valid, proper", [(3, 3, 16, 6), (3, 4, 58, 36), (4, 3, 43, 24)])
def test_point_maps_between_power_sets(n, m, valid, proper):
    H, K = hypergraph_of(power_set(n)), hypergraph_of(power_set(m))
    ours_valid = {al.assignment for al in all_point_maps(H, K) if is_hg_morphism(al)}
    ours_proper = {a for a in ours_valid if is_proper_hg_morphism(PartialPointMap(H, K, a))}
    assert (len(ours_valid), len(ours_proper)) == (valid, proper)
    homs = homomorphisms(n, m)
    assert ours_valid == {g_functor(f, H, K).assignment for f in homs}
    assert ours_proper == {g_functor(f, H, K).assignment for f in homs if is_proper_oa_morphism(f)}


def test_hypergraph_morphisms_compose():
    H = hypergraph_of(power_set(3))
    valid = [al for al in all_point_maps(H, H) if is_hg_morphism(al)]
    for a, b in itertools.product(valid, repeat=2):
        assert is_hg_morphism(compose_point_maps(b, a))


def test_functor_preserves_composition_on_endomorphisms():
    H = hypergraph_of(power_set(3))
    homs = homomorphisms(3, 3)
    for f, g in itertools.product(homs, repeat=2):
        lhs = g_functor(compose(g, f), H, H)
        rhs = compose_point_maps(g_functor(g, H, H), g_functor(f, H, H))
        assert lhs.assignment == rhs.assignment


def test_line_condition_violation():
    H = hypergraph_of(power_set(3))
    (line,) = H.lines
    a, b, _ = sorted(line)
    assignment = [None] * H.n_points
    assignment[a], assignment[b] = a, b
    alpha = PartialPointMap(H, H, tuple(assignment))
    assert line_image(alpha, line)[0] == "invalid"
    assert "lines" in validate_hg_morphism(alpha).axioms()


def test_out_of_range_point_map():
    H = hypergraph_of(power_set(3))
    assert "shape" in validate_hg_morphism(PartialPointMap(H, H, (0, 1, 9))).axioms()
    assert "shape" in validate_hg_morphism(PartialPointMap(H, H, (0, 1))).axioms()


def test_mo2_embedding_is_valid_but_not_proper():
    f = mo2_embedding()
    assert validate_oa_morphism(f).ok
    assert not is_proper_oa_morphism(f)
    alpha = g_functor(f)
    assert is_hg_morphism(alpha) and not is_proper_hg_morphism(alpha)
    assert sorted(v for v in alpha.named().values()) == ["x({1})", "x({2})"]
    with pytest.raises(NotProperError):
        lift_hg_morphism(alpha, f.source, f.target)


def test_complement_violating_map_is_rejected():
    A, C = mo(2), power_set(3)
    images = {"0": "0", "1": "1", "a": "{1}", "a'": "{2}", "b": "{2}", "b'": "{1,3}"}
    f = OAMorphism(A, C, tuple(C.index(images[A.labels[i]]) for i in range(A.size)))
    report = validate_oa_morphism(f)
    assert "complement" in report.axioms()
    assert "oracle-disagreement" not in report.axioms()


def test_sum_violating_map_is_rejected():
    A = power_set(2)
    # swap {1} with its complement but fix {2}
    f = OAMorphism(A, A, (0, A.index("{2}"), A.index("{2}"), 3))
    assert not is_oa_morphism(f)
    assert not validate_oa_morphism(f).ok


@pytest.mark.parametrize("f", morphism_corpus(seed=3), ids=lambda f: f.name)
def test_sum_table_and_boolean_route_agree(f):
    report = validate_oa_morphism(f)
    assert report.ok
    assert "oracle-disagreement" not in report.axioms()


def test_composite_of_proper_maps_can_fail_to_be_proper():
    f, g = composition_pair()
    assert is_proper_oa_morphism(f) and is_proper_oa_morphism(g)
    gf = compose(g, f)
    assert is_oa_morphism(gf) and not is_proper_oa_morphism(gf)
    assert not is_proper_hg_morphism(g_functor(gf))


@pytest.mark.parametrize("name", ["power_set_3", "power_set_4", "fig1_gluing", "fraser_cube"])
def test_identity_lifts_to_identity(name):
    A = named(name)
    alpha = g_functor(identity(A))
    assert alpha.assignment == tuple(range(alpha.source.n_points))
    assert is_proper_hg_morphism(alpha)
    assert lift_hg_morphism(alpha, A, A).mapping == identity(A).mapping


def test_lifting_needs_matching_hypergraphs():
    A, C = power_set(3), power_set(4)
    alpha = g_functor(identity(A))
    with pytest.raises(LiftError):
        lift_hg_morphism(alpha, A, C)


CORPUS = morphism_corpus(seed=11)
PROPER_PAIRS = [f for f in CORPUS if is_proper(f.source) and is_proper(f.target)]


def test_properness_agrees_across_the_functor():
    for f in CORPUS:
        assert is_proper_oa_morphism(f) == is_proper_hg_morphism(g_functor(f)), f.name


def test_injectivity_transfers():
    for f in PROPER_PAIRS:
        assert f.is_injective() == g_functor(f).is_injective(), f.name


def test_proper_hypergraph_maps_lift_back():
    for f in PROPER_PAIRS:
        if is_proper_oa_morphism(f):
            assert lift_hg_morphism(g_functor(f), f.source, f.target).mapping == f.mapping, f.name


@pytest.mark.parametrize("name", ["power_set_4", "fraser_cube", "mo2_times_mo2", "fig1_gluing"])
def test_arrow_laws_hold(name):
    X = enumerate_bsub(named(name))
    D = odir(X)
    for d in D.directions:
        assert arrow_law_violations(X, d) == []
        assert {a.arrow for a in direction_arrows(X, d)} <= {"up", "down"}


def test_edge_point_carries_opposite_arrows():
    X = enumerate_bsub(power_set(4))
    D = odir(X)
    p = X.labels.index("x({1,2})")
    arrows = [sorted(a.arrow for a in direction_arrows(X, d)) for d in D.directions if d.base == p]
    assert arrows and all(a == ["down", "up"] for a in arrows)
