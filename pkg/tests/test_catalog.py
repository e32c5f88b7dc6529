import random

import pytest

from orthoalg.catalog import (
    CATALOG_NAMES,
    FANO_MINUS_LINE_BLOCKS,
    FRASER_FACES,
    GreechieDiagram,
    GreechieError,
    direct_product,
    greechie_diagram,
    greechie_paste,
    horizontal_sum,
    mo,
    named,
    power_set,
    random_corpus,
    random_orthoalgebra,
)
from orthoalg.core import blocks, enumerate_bsub, find_isomorphism, validate_orthoalgebra


def test_power_sets():
    assert power_set(1).size == 2
    assert [power_set(n).size for n in range(1, 7)] == [2, 4, 8, 16, 32, 64]
    with pytest.raises(ValueError):
        power_set(7)
    assert power_set(0).size == 1
    with pytest.raises(ValueError):
        power_set(-1)


def test_horizontal_sums():
    M = mo(2)
    assert M.size == 6 and len(blocks(M)) == 2
    H = horizontal_sum([power_set(3), power_set(3)])
    assert H.size == 14 and validate_orthoalgebra(H).ok
    X = enumerate_bsub(M)
    assert X.size == 3
    assert all(not X.upper_covers[a] for a in X.atoms())


def test_pastings():
    two = greechie_paste(GreechieDiagram(tuple("abcde"), (tuple("abc"), tuple("cde"))))
    assert two.size == 12
    assert find_isomorphism(two, named("fig1_gluing")) is not None
    fano = greechie_paste(GreechieDiagram(tuple(f"p{i}" for i in range(1, 8)), FANO_MINUS_LINE_BLOCKS))
    assert fano.size == 16
    assert all(len(b) == 8 for b in blocks(fano))
    cube = greechie_paste(GreechieDiagram(tuple("abcdefgh"), tuple(tuple(f) for f in FRASER_FACES.values())))
    assert cube.size == 36


def test_bad_pastings_are_rejected():
    # a triangle of two-atom blocks forces a = a'
    with pytest.raises(GreechieError):
        greechie_paste(GreechieDiagram(tuple("abc"), (tuple("ab"), tuple("bc"), tuple("ca"))))
    with pytest.raises(GreechieError):
        greechie_paste(GreechieDiagram(tuple("ab"), (tuple("a"), tuple("b"), tuple("ab"), tuple("x"))))
    with pytest.raises(GreechieError):
        greechie_paste(GreechieDiagram(("1", "2"), (("1", "2"),)))


@pytest.mark.parametrize("name", ["fig1_gluing", "fano_minus_line", "fraser_cube", "mo2_times_two", "power_set_4"])
def test_reading_off_the_diagram_returns_the_input(name):
    A = named(name)
    g = greechie_diagram(A)
    B = greechie_paste(g)
    assert find_isomorphism(A, B) is not None
    h = greechie_diagram(B)
    assert sorted(h.atoms) == sorted(g.atoms)
    assert sorted(map(sorted, h.blocks)) == sorted(map(sorted, g.blocks))


def test_products():
    A = named("fig1_gluing")
    # the one-element algebra is the unit; the two-element one doubles the size
    assert find_isomorphism(direct_product(power_set(0), A), A) is not None
    assert direct_product(power_set(1), A).size == 2 * A.size
    M2 = named("mo2_times_two")
    assert M2.size == 12 and validate_orthoalgebra(M2).ok
    MM = named("mo2_times_mo2")
    assert MM.size == 36
    assert sum(1 for a in range(MM.size) if MM.heights[a] == 1) == 8
    assert len(blocks(MM)) == 4


def test_named_registry():
    assert named("fraser_cube").size == 36
    assert named("fig1_gluing").size == 12
    assert named("catalog:mo_3").size == 8
    assert named("power_set(4)").size == 16
    with pytest.raises(KeyError):
        named("no_such_algebra")


@pytest.mark.parametrize("name", CATALOG_NAMES)
def test_catalog_is_stable_and_valid(name):
    A, B = named(name), named(name)
    assert A == B
    assert validate_orthoalgebra(A).ok
    assert len(set(A.labels)) == A.size


def test_random_corpus_is_seeded():
    a = random_corpus(5, 30)
    b = random_corpus(5, 30)
    assert [x.table for x in a] == [x.table for x in b]
    assert all(x.size <= 24 for x in a)
    rng = random.Random(1)
    for _ in range(30):
        A = random_orthoalgebra(rng, max_size=12)
        assert A.size <= 12 and validate_orthoalgebra(A).ok
