import random
from fractions import Fraction

from lamcoh import (FiniteComplex, Transversal, betti_numbers,
                    kronecker_model, product_complex)
from lamcoh.subdivision import (barycentric_subdivide,
                                barycentric_subdivide_with_atlas,
                                leaf_blocks_match)
from conftest import single_edge


def test_single_edge_counts():
    S = barycentric_subdivide(single_edge())
    assert S.validate().ok
    assert S.instance_count(0) == 3
    assert S.instance_count(1) == 2


def test_single_triangle_counts(filled_triangle):
    S = barycentric_subdivide(filled_triangle)
    assert S.validate().ok
    assert S.instance_count(2) == 6
    assert S.instance_count(1) == 12
    assert S.instance_count(0) == 7


def test_top_family_replacement_factor(filled_triangle):
    S = barycentric_subdivide(filled_triangle)
    # each n-family is replaced by (n+1)! top families over the same atoms
    assert len(S.families[2]) == 6 * len(filled_triangle.families[2])


def test_circle_cohomology_invariant():
    X = product_complex(FiniteComplex.circle(3),
                        Transversal([Fraction(1, 2), Fraction(1, 3)]))
    S, origin = barycentric_subdivide_with_atlas(X)
    assert S.validate().ok
    assert betti_numbers(S, "q") == betti_numbers(X, "q")
    assert betti_numbers(S, "z2") == betti_numbers(X, "z2")
    assert leaf_blocks_match(X, S, origin)


def test_kronecker_subdivision():
    K = kronecker_model(5, 2)
    S, origin = barycentric_subdivide_with_atlas(K)
    assert S.validate().ok
    assert betti_numbers(S, "z2") == betti_numbers(K, "z2")
    assert leaf_blocks_match(K, S, origin)
    # barycenter atoms inherit the weight of their parametrizing atom
    for a, (d, gi, t) in enumerate(origin):
        assert S.transversal.weights[a] == K.transversal.weights[t]


def test_double_subdivision_valid(filled_triangle):
    S2 = barycentric_subdivide(barycentric_subdivide(filled_triangle))
    assert S2.validate().ok
    assert S2.instance_count(2) == 36
    assert betti_numbers(S2, "q") == [1, 0, 0]


def test_random_complex_invariance():
    from lamcoh.corpus import random_complex
    rng = random.Random(13)
    done = 0
    while done < 5:
        X = random_complex(rng, allow_subdivision=False)
        if X.instance_count(2) > 8 or X.top_dim > 2:
            continue
        S = barycentric_subdivide(X)
        assert S.validate().ok
        assert betti_numbers(S, "q") == betti_numbers(X, "q")
        done += 1
