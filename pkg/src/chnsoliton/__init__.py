"""Ricci soliton Lie subgroups of complex hyperbolic space, computed at the Lie algebra level."""

from .algebra import MetricLieAlgebra, derivation_space, koszul_connection, ricci
from .ambient import AmbientModel, build_ambient, closed_form_connection, nilpotent_part
from .classify import Classification, classify, soliton_extension
from .families import FamilySpec, InfeasibleSpecError, build_family, random_spec
from .kahler import decompose, kahler_decompose
from .scan import ScanReport, random_subalgebra, scan
from .soliton import SolitonCertificate, certify_soliton, einstein_check, lauret_conditions, nilsoliton_constant
from .submanifold import (
    ClosureError,
    Subalgebra,
    curvature_signature,
    gauss_ricci,
    geometry_report,
    make_subalgebra,
    mean_curvature,
    shape_operator,
    subalgebra,
)

__all__ = [
    "AmbientModel", "Classification", "ClosureError", "FamilySpec", "InfeasibleSpecError",
    "MetricLieAlgebra", "ScanReport", "SolitonCertificate", "Subalgebra", "build_ambient",
    "build_family", "certify_soliton", "classify", "closed_form_connection", "curvature_signature",
    "decompose", "derivation_space", "einstein_check", "gauss_ricci", "geometry_report",
    "kahler_decompose", "koszul_connection", "lauret_conditions", "make_subalgebra", "mean_curvature",
    "nilpotent_part", "nilsoliton_constant", "random_spec", "random_subalgebra", "ricci", "scan",
    "shape_operator", "soliton_extension", "subalgebra",
]
__version__ = "0.1.0"
