from fractions import Fraction

import pytest

from lamcoh import (Cochain, FiberedComplex, FiniteComplex, SimplexFamily,
                    Subcomplex, Transversal, apply_coboundary,
                    complex_from_json, complex_to_json, kronecker_model,
                    product_complex)
from conftest import single_edge


def test_validate_clean_triangle(filled_triangle):
    assert filled_triangle.validate().ok


def test_validate_reports_simplicial_identity_violation():
    T = Transversal([Fraction(1), Fraction(1)])
    ident = {0: 0, 1: 1}
    swap = {0: 1, 1: 0}
    v = SimplexFamily(0, [0, 1])
    e = SimplexFamily(1, [0, 1], [(0, dict(ident)), (0, dict(ident))])
    # face_1 of the triangle swaps atoms, breaking face_0 . face_1 =
    # face_0 . face_0 at the atom level
    tri = SimplexFamily(2, [0, 1], [(0, dict(ident)), (0, dict(swap)),
                                    (0, dict(ident))])
    X = FiberedComplex(T, [[v], [e], [tri]])
    rep = X.validate()
    assert not rep.ok
    assert any(kind == "simplicial-identity" for kind, _ in rep.violations)


def test_validate_reports_weight_violation():
    # one leaf whose two atoms carry different weights
    T = Transversal([Fraction(1, 2), Fraction(1, 3)])
    v = SimplexFamily(0, [0, 1])
    e = SimplexFamily(1, [0, 1], [(0, {0: 1, 1: 0}), (0, {0: 0, 1: 1})])
    X = FiberedComplex(T, [[v], [e]])
    rep = X.validate()
    assert any(kind == "leaf-weight" for kind, _ in rep.violations)


def test_validate_reports_regularity_violation(one_atom):
    v = SimplexFamily(0, [0])
    edges = [SimplexFamily(1, [0], [(0, {0: 0}), (0, {0: 0})]) for _ in range(3)]
    X = FiberedComplex(one_atom, [[v], edges], regularity_bound=2)
    rep = X.validate()
    assert any(kind == "regularity" for kind, _ in rep.violations)


def test_leaf_decomposition_product():
    T = Transversal([Fraction(1)] * 3)
    X = product_complex(FiniteComplex.circle(3), T)
    assert X.leaf_decomposition() == ((0,), (1,), (2,))


def test_leaf_decomposition_kronecker():
    assert kronecker_model(5).leaf_decomposition() == ((0, 1, 2, 3, 4),)


def test_leaf_decomposition_wedge_connected():
    from lamcoh import wedge
    F = product_complex(FiniteComplex.circle(3), Transversal([Fraction(1)]))
    G = product_complex(FiniteComplex.circle(3), Transversal([Fraction(1)]))
    W, _ = wedge(F, G, [((0, 0), (0, 0))])
    assert len(W.leaf_decomposition()) == 1


def test_single_edge_coboundary_row():
    X = single_edge()
    d0 = X.coboundary_matrix(0)
    # columns: (u over atom 0), (v over atom 0); the edge row is [-1, +1]
    assert d0.entries == {(0, 1): 1, (0, 0): -1}
    omega = Cochain(X, 0, "q", [{}, {0: 1}])
    d = apply_coboundary(X, omega)
    assert d.get(0, 0) == 1


def test_triangle_signed_incidence(filled_triangle):
    d1 = filled_triangle.coboundary_matrix(1)
    # edges sorted (0,1), (0,2), (1,2): signs +1, -1, +1
    assert d1.entries == {(0, 0): 1, (0, 1): -1, (0, 2): 1}


def test_delta_squared_zero(filled_triangle):
    d1 = filled_triangle.coboundary_matrix(1)
    d0 = filled_triangle.coboundary_matrix(0)
    assert d1.matmul(d0).is_zero()


def test_coboundary_past_top_dimension(triangle_circle):
    m = triangle_circle.coboundary_matrix(1)
    assert m.nrows == 0 and m.ncols == 3


def test_kronecker_coboundary_values():
    K = kronecker_model(3)
    f = Cochain(K, 0, "z2", [{0: 1}])
    df = apply_coboundary(K, f)
    assert [df.get(0, t) for t in range(3)] == [1, 0, 1]


def test_apply_coboundary_zero_is_zero(triangle_circle):
    z = Cochain.zero(triangle_circle, 0, "q")
    assert apply_coboundary(triangle_circle, z).is_zero()


def test_coboundary_commutes_with_restriction():
    # elementary-cochain axiom on a product over two atoms: restriction to
    # an atom subset commutes with the coboundary (leaves are disjoint)
    T = Transversal([Fraction(1), Fraction(1)])
    X = product_complex(FiniteComplex.circle(3), T)
    omega = Cochain(X, 0, "q", [{0: 2, 1: 3}, {0: 5}, {1: 7}])
    subset = [{0} for _ in X.families[1]]
    lhs = apply_coboundary(X, omega.restrict([{0} for _ in X.families[0]]))
    rhs = apply_coboundary(X, omega).restrict(subset)
    assert lhs == rhs


def test_cochain_support_enforced(triangle_circle):
    with pytest.raises(ValueError):
        Cochain(triangle_circle, 0, "q", [{5: 1}, {}, {}])


def test_cochain_mismatch_rejected(triangle_circle, filled_triangle):
    omega = Cochain.constant(triangle_circle, 0, "q")
    with pytest.raises(ValueError):
        apply_coboundary(filled_triangle, omega)


def test_subcomplex_face_closure(filled_triangle):
    A = Subcomplex.from_instances(filled_triangle, [(2, 0, 0)])
    assert A.is_face_closed()
    assert A.instance_count(1) == 3 and A.instance_count(0) == 3


def test_empty_complex_is_legal():
    X = FiberedComplex(Transversal([]), [])
    assert X.validate().ok
    assert X.euler_characteristic() == 0
    assert X.coboundary_matrix(0).is_zero()


def test_json_roundtrip():
    K = kronecker_model(4, 3, [Fraction(1, 4)] * 4)
    text = complex_to_json(K)
    K2 = complex_from_json(text)
    assert K2.validate().ok
    assert complex_to_json(K2) == text
    assert K2.instance_count(1) == K.instance_count(1)
    assert '"1/4"' in text


def test_json_rejects_unknown_keys():
    import json
    from lamcoh.complexes import complex_from_dict
    data = json.loads(complex_to_json(kronecker_model(2)))
    data["bogus"] = 1
    with pytest.raises(ValueError):
        complex_from_dict(data)


def test_euler_characteristic_counts(filled_triangle):
    assert filled_triangle.euler_characteristic() == 3 - 3 + 1
