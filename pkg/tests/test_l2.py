import random
from fractions import Fraction

import numpy as np
import pytest

from lamcoh import (Cochain, FiniteComplex, Transversal, betti_numbers,
                    hodge_decompose, hodge_report, inner_product,
                    kronecker_model, l2_betti, laplacian,
                    laplacian_kernel_dim, product_complex,
                    weighted_euler_characteristic)
from lamcoh.l2 import MeasureNotLeafConstantError
from lamcoh.subdivision import barycentric_subdivide
from conftest import cyclic_circle, single_edge


def test_inner_product_definiteness(triangle_circle):
    rng = random.Random(0)
    for _ in range(10):
        vals = [{0: Fraction(rng.randint(-3, 3))} for _ in range(3)]
        om = Cochain(triangle_circle, 0, "q", vals)
        ip = inner_product(triangle_circle, om, om)
        assert ip >= 0
        assert (ip == 0) == om.is_zero()


def test_inner_product_single_vertex():
    X = product_complex(FiniteComplex.point(), Transversal([Fraction(1, 2)]))
    one = Cochain.constant(X, 0, "q")
    assert inner_product(X, one, one) == Fraction(1, 2)


def test_inner_product_kronecker_edges():
    K = kronecker_model(4)
    one = Cochain.constant(K, 1, "q")
    assert inner_product(K, one, one) == 1


def test_inner_product_degree_mismatch(triangle_circle):
    a = Cochain.constant(triangle_circle, 0, "q")
    b = Cochain.constant(triangle_circle, 1, "q")
    with pytest.raises(ValueError):
        inner_product(triangle_circle, a, b)


def test_laplacian_single_vertex():
    X = product_complex(FiniteComplex.point(), Transversal([Fraction(1)]))
    assert laplacian(X, 0, "q") == [[0]]


def test_laplacian_single_edge():
    lap = laplacian(single_edge(), 0, "q")
    assert lap == [[1, -1], [-1, 1]]


def test_laplacian_circle_spectrum(triangle_circle):
    lap = laplacian(triangle_circle, 0, "r")
    evals = sorted(np.linalg.eigvalsh(lap))
    assert np.allclose(evals, [0, 3, 3])


def test_laplacian_symmetric_in_weighted_inner_product():
    X = product_complex(FiniteComplex.circle(4),
                        Transversal([Fraction(1, 2), Fraction(2, 3)]))
    rng = random.Random(1)
    lapq = laplacian(X, 1, "q")
    ctxw = [X.transversal.weights[t] for _, t in X.instances(1)]
    for _ in range(5):
        u = [Fraction(rng.randint(-3, 3)) for _ in ctxw]
        v = [Fraction(rng.randint(-3, 3)) for _ in ctxw]
        lu = [sum(r * x for r, x in zip(row, u)) for row in lapq]
        lv = [sum(r * x for r, x in zip(row, v)) for row in lapq]
        lhs = sum(w * a * b for w, a, b in zip(ctxw, lu, v))
        rhs = sum(w * a * b for w, a, b in zip(ctxw, u, lv))
        assert lhs == rhs


def test_hodge_projection_idempotent(triangle_circle):
    om = Cochain(triangle_circle, 1, "q", [{0: 1}, {}, {}])
    dec = hodge_decompose(triangle_circle, om)
    again = hodge_decompose(triangle_circle, dec.harmonic)
    assert again.harmonic == dec.harmonic
    assert again.exact.is_zero() and again.coexact.is_zero()


def test_hodge_of_exact_input(triangle_circle):
    from lamcoh import apply_coboundary
    alpha = Cochain(triangle_circle, 0, "q", [{0: 2}, {0: -1}, {0: 3}])
    om = apply_coboundary(triangle_circle, alpha)
    dec = hodge_decompose(triangle_circle, om)
    assert dec.harmonic.is_zero()
    assert dec.coexact.is_zero()
    assert dec.exact == om


def test_hodge_circle_example():
    # cyclically oriented 3-circle: harmonic part of (1,0,0) is the
    # constant edge cocycle at height 1/3
    X = cyclic_circle(3, [Fraction(1)])
    om = Cochain(X, 1, "q", [{0: 1}, {}, {}])
    dec = hodge_decompose(X, om)
    assert dec.harmonic.as_vector() == [Fraction(1, 3)] * 3
    assert all(v == 0 for v in dec.residuals.values())


def test_hodge_float_residuals(triangle_circle):
    rng = random.Random(2)
    vals = [{0: rng.uniform(-1, 1)} for _ in range(3)]
    om = Cochain(triangle_circle, 1, "r", vals)
    dec = hodge_decompose(triangle_circle, om)
    norm = max(1e-30, sum(abs(v) for v in om.as_vector()))
    assert max(dec.residuals.values()) < 1e-8 * max(1.0, norm)


def test_l2_betti_product_example():
    X = product_complex(FiniteComplex.circle(3),
                        Transversal([Fraction(1, 2), Fraction(1, 3)]))
    assert l2_betti(X, 0) == Fraction(5, 6)
    assert l2_betti(X, 1) == Fraction(5, 6)
    assert abs(l2_betti(X, 1, exact=False) - 5 / 6) < 1e-8


def test_l2_betti_kronecker():
    for q in (3, 4, 7):
        K = kronecker_model(q)
        assert l2_betti(K, 1) == Fraction(1, q)
        assert l2_betti(K, 0) == Fraction(1, q)


def test_l2_betti_empty_degree(triangle_circle):
    assert l2_betti(triangle_circle, 5) == 0


def test_l2_betti_requires_leaf_constant_measure():
    from lamcoh import FiberedComplex, SimplexFamily
    T = Transversal([Fraction(1, 2), Fraction(1, 3)])
    v = SimplexFamily(0, [0, 1])
    e = SimplexFamily(1, [0, 1], [(0, {0: 1, 1: 0}), (0, {0: 0, 1: 1})])
    X = FiberedComplex(T, [[v], [e]])
    with pytest.raises(MeasureNotLeafConstantError):
        l2_betti(X, 0)


def test_zero_weight_orbits_dropped():
    X = product_complex(FiniteComplex.circle(3),
                        Transversal([Fraction(0), Fraction(1, 3)]))
    assert l2_betti(X, 1) == Fraction(1, 3)


def test_kernel_dim_matches_exact_rank():
    from lamcoh.corpus import random_complex
    rng = random.Random(4)
    for _ in range(8):
        X = random_complex(rng, allow_subdivision=False)
        bn = betti_numbers(X, "q")
        for n in range(X.top_dim + 1):
            assert laplacian_kernel_dim(X, n, "q") == bn[n]
            assert laplacian_kernel_dim(X, n, "r") == bn[n]


def test_l2_betti_invariant_under_subdivision():
    X = product_complex(FiniteComplex.circle(3),
                        Transversal([Fraction(1, 2), Fraction(1, 3)]))
    S = barycentric_subdivide(X)
    for n in (0, 1):
        assert l2_betti(S, n) == l2_betti(X, n)
    K = kronecker_model(4, 3)
    SK = barycentric_subdivide(K)
    for n in (0, 1):
        assert l2_betti(SK, n) == l2_betti(K, n)


def test_alternating_betti_sum_is_weighted_euler():
    from lamcoh.corpus import random_complex
    rng = random.Random(5)
    for _ in range(8):
        X = random_complex(rng, allow_subdivision=False)
        alt = sum((-1) ** n * l2_betti(X, n) for n in range(X.top_dim + 1))
        assert alt == weighted_euler_characteristic(X)


def test_hodge_report_serialization():
    X = product_complex(FiniteComplex.circle(3),
                        Transversal([Fraction(1, 2), Fraction(1, 3)]))
    hr = hodge_report(X, 1, "q")
    doc = hr.to_dict()
    assert doc["lambda_betti"] == "5/6"
    assert len(doc["harmonic_basis"]) == 2
    hrf = hodge_report(X, 1, "r")
    assert abs(float(hrf.to_dict()["lambda_betti"]) - 5 / 6) < 1e-8
    assert hrf.residuals["orthogonality"] < 1e-10
