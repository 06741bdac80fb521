import itertools
import random

import pytest

from coverreg.complexes import (
    SimplicialComplex,
    degree_complex_general,
    degree_complex_unimodular,
    is_acyclic,
    negative_support,
    reduced_homology_dims,
)
from coverreg.hypergraph import cycle, path
from coverreg.monomial import MonomialIdeal, cover_ideal

from conftest import tu_corpus
from oracles import (
    brute_degree_complex_faces,
    closure_faces,
    euler_characteristic_faces,
    euler_characteristic_homology,
)


def facet_sets(cx):
    return {frozenset(f) for f in (cx.facets or ())}


def test_void_vs_irrelevant():
    void = SimplicialComplex.void(3)
    irrelevant = SimplicialComplex(3, [[]])
    assert void.is_void and not void.is_irrelevant
    assert irrelevant.is_irrelevant and not irrelevant.is_void
    assert void != irrelevant
    assert SimplicialComplex(3, []).is_void


def test_facets_are_maximalized():
    cx = SimplicialComplex(3, [[1], [1, 2], [2, 3], [1, 2]])
    assert facet_sets(cx) == {frozenset({1, 2}), frozenset({2, 3})}


def test_negative_support():
    assert negative_support((0, -1, 3, -2)) == {2, 4}


def test_degree_complex_general_c4():
    ideal = MonomialIdeal(4, [(1, 0, 1, 0), (0, 1, 0, 1)])
    cx = degree_complex_general(ideal, (0, 0, 0, 0))
    assert facet_sets(cx) == {
        frozenset({3, 4}),
        frozenset({1, 4}),
        frozenset({1, 2}),
        frozenset({2, 3}),
    }


def test_degree_complex_general_one_variable():
    ideal = MonomialIdeal(1, [(1,)])
    assert degree_complex_general(ideal, (0,)).is_irrelevant
    assert degree_complex_general(ideal, (1,)).is_void
    # alpha = (-1) inverts x1, so x^alpha lies in the localized ideal: void
    assert degree_complex_general(ideal, (-1,)).is_void


def test_degree_complex_general_zero_ideal():
    cx = degree_complex_general(MonomialIdeal.zero(2), (0, -1))
    assert facet_sets(cx) == {frozenset({1})}
    assert degree_complex_general(MonomialIdeal.zero(1), (-1,)).is_irrelevant


def test_degree_complex_general_matches_brute_force():
    rng = random.Random(5)
    cases = []
    for h in (cycle(4), path(3)):
        ideal = cover_ideal(h)
        for s in (1, 2):
            cases.append(ideal.power(s))
    for _ in range(20):
        n = rng.randint(1, 4)
        gens = [
            tuple(rng.randint(0, 2) for _ in range(n))
            for _ in range(rng.randint(0, 4))
        ]
        gens = [g for g in gens if any(g)]
        cases.append(MonomialIdeal(n, gens))
    for ideal in cases:
        for alpha in itertools.product((-1, 0, 1, 2), repeat=ideal.n):
            cx = degree_complex_general(ideal, alpha)
            assert closure_faces(cx) == brute_degree_complex_faces(ideal, alpha), (
                ideal,
                alpha,
            )


def test_entries_below_minus_one_act_like_minus_one():
    ideal = cover_ideal(cycle(4)).power(2)
    for alpha in itertools.product((-1, 0, 2), repeat=4):
        lower = tuple(-3 if a == -1 else a for a in alpha)
        assert degree_complex_general(ideal, alpha) == degree_complex_general(ideal, lower)


def test_degree_complex_unimodular_examples():
    c4 = cycle(4)
    cx = degree_complex_unimodular(c4, 1, (0, 0, 0, 0))
    assert facet_sets(cx) == {
        frozenset({3, 4}),
        frozenset({1, 4}),
        frozenset({1, 2}),
        frozenset({2, 3}),
    }
    cx = degree_complex_unimodular(c4, 1, (1, 0, 0, 0))
    assert facet_sets(cx) == {frozenset({1, 4}), frozenset({1, 2})}
    assert degree_complex_unimodular(c4, 1, (1, 1, 1, 1)).is_void


def test_degree_complex_unimodular_rejects_negative():
    with pytest.raises(ValueError):
        degree_complex_unimodular(cycle(4), 1, (-1, 0, 0, 0))


def test_unimodular_equals_general_on_corpus():
    for name, h in tu_corpus().items():
        ideal = cover_ideal(h)
        for s in (1, 2):
            power = ideal.power(s)
            for alpha in itertools.product(range(s + 1), repeat=h.n):
                uni = degree_complex_unimodular(h, s, alpha)
                gen = degree_complex_general(power, alpha)
                assert uni == gen, (name, s, alpha)


def test_homology_examples():
    circle = SimplicialComplex(3, [[1, 2], [2, 3], [1, 3]])
    assert reduced_homology_dims(circle) == {-1: 0, 0: 0, 1: 1}
    simplex = SimplicialComplex(3, [[1, 2, 3]])
    assert all(v == 0 for v in reduced_homology_dims(simplex).values())
    two_points = SimplicialComplex(2, [[1], [2]])
    assert reduced_homology_dims(two_points) == {-1: 0, 0: 1}
    assert reduced_homology_dims(SimplicialComplex(1, [[]])) == {-1: 1}
    assert reduced_homology_dims(SimplicialComplex.void(2)) == {}


def test_homology_sphere():
    # boundary of the tetrahedron: one 2-cycle
    sphere = SimplicialComplex(4, list(itertools.combinations(range(1, 5), 3)))
    assert reduced_homology_dims(sphere) == {-1: 0, 0: 0, 1: 0, 2: 1}


def test_homology_field_choice():
    # 6-vertex projective plane: acyclic over Q, 2-torsion visible over F_2
    rp2 = SimplicialComplex(
        6,
        [
            [1, 2, 4], [1, 2, 5], [1, 3, 4], [1, 3, 6], [1, 5, 6],
            [2, 3, 5], [2, 3, 6], [2, 4, 6], [3, 4, 5], [4, 5, 6],
        ],
    )
    assert reduced_homology_dims(rp2) == {-1: 0, 0: 0, 1: 0, 2: 0}
    assert reduced_homology_dims(rp2, field=2) == {-1: 0, 0: 0, 1: 1, 2: 1}
    assert reduced_homology_dims(rp2, field=3) == {-1: 0, 0: 0, 1: 0, 2: 0}
    assert euler_characteristic_faces(rp2) == euler_characteristic_homology(
        reduced_homology_dims(rp2, field=2)
    )


def test_is_acyclic():
    assert is_acyclic(SimplicialComplex.void(2))
    assert not is_acyclic(SimplicialComplex(1, [[]]))
    assert not is_acyclic(degree_complex_unimodular(cycle(4), 1, (0, 0, 0, 0)))


def test_cone_acyclicity():
    rng = random.Random(13)
    for _ in range(20):
        n = rng.randint(2, 5)
        apex = n
        facets = []
        for _ in range(rng.randint(1, 4)):
            f = set(rng.sample(range(1, n), rng.randint(1, n - 1))) | {apex}
            facets.append(sorted(f))
        cx = SimplicialComplex(n, facets)
        assert is_acyclic(cx), facets
        assert is_acyclic(cx, field=3), facets


def test_homology_independent_of_facet_order():
    facets = [[3, 4], [1, 4], [1, 2], [2, 3]]
    rng = random.Random(3)
    reference = reduced_homology_dims(SimplicialComplex(4, facets))
    for _ in range(5):
        shuffled = facets[:]
        rng.shuffle(shuffled)
        assert reduced_homology_dims(SimplicialComplex(4, shuffled)) == reference


def test_euler_characteristic_consistency():
    rng = random.Random(23)
    for _ in range(30):
        n = rng.randint(1, 6)
        facets = [
            sorted(rng.sample(range(1, n + 1), rng.randint(1, n)))
            for _ in range(rng.randint(1, 5))
        ]
        cx = SimplicialComplex(n, facets)
        dims = reduced_homology_dims(cx)
        assert euler_characteristic_faces(cx) == euler_characteristic_homology(dims)
