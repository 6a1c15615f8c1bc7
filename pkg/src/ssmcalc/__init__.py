"""Exact CSM/SSM classes of Schubert cells in G/P and Euler characteristics
of generic intersections of Schubert cells."""

from .classes import CohClass, Space, make_space
from .euler import (chi_multi_intersection, expected_dim, richardson_chi, signed_E,
                    structure_constants, verify_nfold_sign, verify_orthogonality,
                    verify_positivity)
from .oracle import proj_cell_chi, proj_cross_check
from .weyl import RootSystem, WeylElement, WeylGroup, build_root_system, parabolic_data

__all__ = [
    "CohClass", "Space", "make_space",
    "chi_multi_intersection", "expected_dim", "richardson_chi", "signed_E",
    "structure_constants", "verify_nfold_sign", "verify_orthogonality", "verify_positivity",
    "proj_cell_chi", "proj_cross_check",
    "RootSystem", "WeylElement", "WeylGroup", "build_root_system", "parabolic_data",
]

__version__ = "0.1.0"
