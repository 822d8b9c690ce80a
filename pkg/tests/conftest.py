from fractions import Fraction

import pytest

from lamcoh import (FiberedComplex, FiniteComplex, SimplexFamily, Transversal,
                    product_complex)


@pytest.fixture
def one_atom():
    return Transversal([Fraction(1)])


@pytest.fixture
def triangle_circle(one_atom):
    """3-vertex circle over a single atom."""
    return product_complex(FiniteComplex.circle(3), one_atom)


@pytest.fixture
def filled_triangle(one_atom):
    return product_complex(FiniteComplex([(0, 1, 2)]), one_atom)


def cyclic_circle(k, weights):
    """k-vertex circle with cyclically oriented edges e_i: v_i -> v_{i+1}."""
    T = Transversal(weights)
    ident = {t: t for t in T.atoms}
    verts = [SimplexFamily(0, T.atoms) for _ in range(k)]
    edges = [SimplexFamily(1, T.atoms, [((i + 1) % k, dict(ident)), (i, dict(ident))])
             for i in range(k)]
    return FiberedComplex(T, [verts, edges])


def single_edge(weights=(Fraction(1),)):
    """Two vertex families u, v and one edge: face_0 = head v, face_1 = tail u."""
    T = Transversal(weights)
    ident = {t: t for t in T.atoms}
    u = SimplexFamily(0, T.atoms)
    v = SimplexFamily(0, T.atoms)
    e = SimplexFamily(1, T.atoms, [(1, dict(ident)), (0, dict(ident))])
    return FiberedComplex(T, [[u, v], [e]])
