import random
from fractions import Fraction

import pytest

from lamcoh import (FiniteComplex, Transversal, betti_numbers,
                    constant_homotopy, homotopy_operator, induced_map_matrix,
                    kronecker_model, prism_complex, product_complex)
from lamcoh.homotopy import PrismHomotopy


def test_prism_complex_is_valid(triangle_circle):
    L, bottom, top, H = prism_complex(triangle_circle)
    assert L.validate().ok
    bottom.check()
    top.check()
    # one extra dimension, cylinder over a circle
    assert betti_numbers(L, "q") == [1, 1, 0]


def test_constant_homotopy_certificate(triangle_circle):
    L, bottom, _, _ = prism_complex(triangle_circle)
    cert = homotopy_operator(triangle_circle, L, bottom, bottom,
                             constant_homotopy(triangle_circle, L, bottom))
    assert cert.ok
    # P vanishes identically
    assert all(P.is_zero() for P in cert.operators.values())


def test_cylinder_certificate(triangle_circle):
    L, bottom, top, H = prism_complex(triangle_circle)
    cert = homotopy_operator(triangle_circle, L, bottom, top, H)
    assert cert.exact_over_q and cert.exact_over_z2
    assert not all(P.is_zero() for P in cert.operators.values())


def test_cylinder_induced_maps_agree(triangle_circle):
    L, bottom, top, _ = prism_complex(triangle_circle)
    for kind in ("q", "z2"):
        for n in (0, 1):
            assert (induced_map_matrix(bottom, n, kind)
                    == induced_map_matrix(top, n, kind))


def test_certificate_over_2dim_base(filled_triangle):
    L, bottom, top, H = prism_complex(filled_triangle)
    assert L.validate().ok
    assert homotopy_operator(filled_triangle, L, bottom, top, H).ok


def test_inconsistent_ends_rejected(triangle_circle):
    L, bottom, top, H = prism_complex(triangle_circle)
    with pytest.raises(ValueError):
        homotopy_operator(triangle_circle, L, top, bottom, H)


def test_randomized_homotopies():
    from lamcoh.corpus import random_complex
    rng = random.Random(17)
    for _ in range(6):
        K = random_complex(rng, allow_subdivision=False)
        L, bottom, top, H = prism_complex(K)
        assert L.validate().ok
        cert = homotopy_operator(K, L, bottom, top, H)
        assert cert.ok


def test_operator_degree_bookkeeping():
    K = kronecker_model(4)
    L, bottom, top, H = prism_complex(K)
    P1 = H.operator_matrix(1)
    assert P1.nrows == K.instance_count(0)
    assert P1.ncols == L.instance_count(1)
    P0 = H.operator_matrix(0)
    assert P0.nrows == 0
