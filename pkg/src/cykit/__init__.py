"""Exact tools for Calabi-Yau type differential operators: Frobenius bases,
mirror maps, Yukawa couplings, pullbacks, Hadamard products and recursions."""

from .catalog import CatalogEntry, catalog_get, default_catalog, load_catalog
from .cystruct import (
    IdentityReport,
    a_from_b,
    b_from_a,
    cy2_check,
    cy5_check,
    exterior_power_operator,
    verify_identities,
    wronskian_lift,
    yang_pullback,
)
from .diffops import (
    DifferenceOperator,
    boundary_coefficients,
    de_to_diff,
    diff_to_de,
    holonomic_enumerate,
    superseeker_lookup,
    superseeker_signature,
)
from .errors import CykitError
from .frobenius import (
    equivalence_transformation,
    equivalent_k,
    frobenius_basis,
    instanton_numbers,
    mirror_map,
    mum_check,
    series_annihilator,
    yukawa_coupling,
)
from .opalg import ThetaOperator, weyl_multiply, weyl_right_divide
from .text import parse_operator, render_operator

__version__ = "0.1.0"
