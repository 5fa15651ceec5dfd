"""Exact global residues, traces and root counts for square polynomial
systems with pure-power leading terms."""

from .errors import (
    BasisError,
    GResidueError,
    InvariantError,
    ParseError,
    ZeroDimensionalityError,
)
from .linalg import RationalMatrix, char_poly, rank_and_signature
from .poly import Polynomial, PolySystem, jacobian_determinant, parse_polynomial
from .weights import BasisProfile, discover_weight, verify_basis
from .series import DeformationSeries, invert_series
from .cones import ConePair, build_cones
from .residues import residue_batch, residue_monomial, residue_polynomial
from .normal_form import (
    NormalForm,
    bezoutian,
    bezoutian_project,
    dual_matrix,
    nf_via_residues,
    normal_form,
    residue_via_nf,
    trace,
)
from .roots import chow_form, count_roots, count_roots_weighted, mapping_degree, trace_form
from .transform import extended_buchberger, residue_general
from .sysfile import parse_system_file, parse_system_text

__version__ = "0.1.0"

__all__ = [
    "BasisError", "GResidueError", "InvariantError", "ParseError", "ZeroDimensionalityError",
    "RationalMatrix", "char_poly", "rank_and_signature",
    "Polynomial", "PolySystem", "jacobian_determinant", "parse_polynomial",
    "BasisProfile", "discover_weight", "verify_basis",
    "DeformationSeries", "invert_series", "ConePair", "build_cones",
    "residue_batch", "residue_monomial", "residue_polynomial",
    "NormalForm", "bezoutian", "bezoutian_project", "dual_matrix", "nf_via_residues",
    "normal_form", "residue_via_nf", "trace",
    "chow_form", "count_roots", "count_roots_weighted", "mapping_degree", "trace_form",
    "extended_buchberger", "residue_general",
    "parse_system_file", "parse_system_text",
]
