"""Exact computation of homomorphism spaces between Weyl modules of q-Schur algebras.

The modules are layered: :mod:`scalars` (fields and Gaussian binomials),
:mod:`tableaux` (count-matrix tableaux), :mod:`homcalc` (the h_{d,t} action,
straightening and the kernel Psi(mu, lambda)), :mod:`families` (the explicit
two-dimensional family and gluing) and :mod:`cli`.
"""

from .families import FamilyParams, ParameterError, closed_form_h, glue, phi_element, theta_element
from .homcalc import (
    HomElement,
    KernelResult,
    MembershipReport,
    Straightener,
    StraighteningError,
    apply_hdt,
    hom_dim,
    normalize,
    straighten_once,
    verify_membership,
)
from .scalars import Cyclotomic, FieldError, PrimeField, QParams, gauss_lucas, parse_field
from .tableaux import (
    TableauCounts,
    dominates,
    enumerate_row_standard,
    enumerate_semistandard,
    is_semistandard,
    parse_tableau,
)

__version__ = "0.1.0"

__all__ = [
    "Cyclotomic", "FamilyParams", "FieldError", "HomElement", "KernelResult", "MembershipReport",
    "ParameterError", "PrimeField", "QParams", "Straightener", "StraighteningError", "TableauCounts",
    "apply_hdt", "closed_form_h", "dominates", "enumerate_row_standard", "enumerate_semistandard",
    "gauss_lucas", "glue", "hom_dim", "is_semistandard", "normalize", "parse_field", "parse_tableau",
    "phi_element", "straighten_once", "theta_element", "verify_membership",
]
