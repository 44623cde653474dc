"""Guruswami-Sudan list decoding of algebraic-geometry codes.

Exact finite-field and polynomial-matrix algebra, coordinate representation
of function-field elements over two curve backends (rational line and
Hermitian curves), interpolation-module minimization, power-series root
finding, and a complete encode/decode pipeline with a CLI (`agdec`).
"""

from .codec import (FAIL, CodeSpec, Precomp, brute_force_list_decode, channel,
                    choose_radius, decode, encode, precompute)
from .fields import Field, field_embed, field_make
from .funcfield import (Divisor, FuncElem, Place, backend_hermitian,
                        backend_rational, x_partition)
from .interpolation import (GenSet, Tables, ZPoly, assemble, basis_products,
                            evaluate_elem, find_Q, generators_polyring,
                            generators_ring, interpolate)
from .poly import (Poly, SeriesTrunc, lagrange_interpolate, multipoint_eval,
                   roots_in_field, vanishing_poly)
from .polymat import (PolyMat, Shift, frac_shift_permutation, hp_basis,
                      is_popov, minimal_row, popov, sdeg, spivot)
from .rootfind import basic_root_set, root_finding, series_to_function

__all__ = [
    "FAIL", "CodeSpec", "Precomp", "brute_force_list_decode", "channel",
    "choose_radius", "decode", "encode", "precompute",
    "Field", "field_embed", "field_make",
    "Divisor", "FuncElem", "Place", "backend_hermitian", "backend_rational",
    "x_partition",
    "GenSet", "Tables", "ZPoly", "assemble", "basis_products",
    "evaluate_elem", "find_Q", "generators_polyring", "generators_ring",
    "interpolate",
    "Poly", "SeriesTrunc", "lagrange_interpolate", "multipoint_eval",
    "roots_in_field", "vanishing_poly",
    "PolyMat", "Shift", "frac_shift_permutation", "hp_basis", "is_popov",
    "minimal_row", "popov", "sdeg", "spivot",
    "basic_root_set", "root_finding", "series_to_function",
]

__version__ = "0.1.0"
