"""Desk-scale cohomology of measurable laminations.

Fibered simplicial complexes over finite measured transversals, exact
simplicial and L2 (transverse-measure) cohomology, structural checkers
(excision, Mayer-Vietoris, pair sequences, homotopy operators), exact
polytope subdivision, and circle-rotation dynamics over real quadratic
fields.
"""

from .arcs import (ArcSet, boolean, indicator_coboundary,
                   is_rotation_invariant, one_is_coboundary, rotate, zero_set)
from .builders import (FiniteComplex, SuspensionData, kronecker_model,
                       product_complex, suspension, wedge)
from .checkers import excision_check, mayer_vietoris_check
from .cohomology import (CohomologyGroup, betti_numbers, cohomology_dim,
                         cup_product, finite_complex_betti,
                         pair_sequence_check)
from .complexes import (Cochain, FiberedComplex, Q, R, SimplexFamily,
                        Subcomplex, Transversal, Z2, apply_coboundary,
                        complex_from_json, complex_to_json,
                        subcomplex_as_complex)
from .geometry import (Box, ConvexPoly, HalfSpace, LinearRegion, Simplex,
                       adapted_subdivision, attach_decompose,
                       convex_decompose, prism_decompose, triangulate)
from .homotopy import (PrismHomotopy, SimplicialMap, constant_homotopy,
                       homotopy_operator, induced_map_matrix, prism_complex)
from .l2 import (HodgeReport, hodge_decompose, hodge_report, inner_product,
                 l2_betti, laplacian, laplacian_kernel_dim,
                 weighted_euler_characteristic)
from .quadfield import QuadReal, golden_rotation
from .subdivision import barycentric_subdivide

__all__ = [
    "ArcSet", "Box", "Cochain", "CohomologyGroup", "ConvexPoly",
    "FiberedComplex", "FiniteComplex", "HalfSpace", "HodgeReport",
    "LinearRegion", "PrismHomotopy", "Q", "QuadReal", "R", "Simplex",
    "SimplexFamily", "SimplicialMap", "Subcomplex", "SuspensionData",
    "Transversal", "Z2", "adapted_subdivision", "apply_coboundary",
    "attach_decompose", "barycentric_subdivide", "betti_numbers", "boolean",
    "cohomology_dim", "complex_from_json", "complex_to_json",
    "constant_homotopy", "convex_decompose", "cup_product", "excision_check",
    "finite_complex_betti", "golden_rotation", "hodge_decompose",
    "hodge_report", "homotopy_operator", "indicator_coboundary",
    "induced_map_matrix", "inner_product", "is_rotation_invariant",
    "kronecker_model", "l2_betti", "laplacian", "laplacian_kernel_dim",
    "mayer_vietoris_check", "one_is_coboundary", "pair_sequence_check",
    "prism_complex", "prism_decompose", "product_complex", "rotate",
    "subcomplex_as_complex", "suspension", "triangulate",
    "weighted_euler_characteristic", "wedge", "zero_set",
]

__version__ = "0.1.0"
