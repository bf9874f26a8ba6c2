"""Exact computation with corack algebras and their Leibniz algebras."""

from .algebra import AlgebraHom, AlgElem, Presentation, hom_verify, identity_hom, tensor_power
from .corack import (
    CorackAlgebra,
    HopfAlgebra,
    conj_corack,
    corack_check,
    corack_hom_verify,
    corack_predicates,
    nabla_apply,
    ol_corack,
    stock_hopf,
    trivial_corack,
)
from .field import GF, QQ, parse_field
from .finite import FiniteGroup, FiniteRack, conj_of_group, dual_corack, enumerate_racks
from .leibniz import LeibnizAlgebra, check_identities, left_center, omni_lie
from .poly import MultiPoly, parse_poly
from .tangent import Derivation, bracket, derivation_basis, structure_constants

__all__ = [
    "AlgebraHom", "AlgElem", "CorackAlgebra", "Derivation", "FiniteGroup", "FiniteRack", "GF",
    "HopfAlgebra", "LeibnizAlgebra", "MultiPoly", "Presentation", "QQ", "bracket",
    "check_identities", "conj_corack", "conj_of_group", "corack_check", "corack_hom_verify",
    "corack_predicates", "derivation_basis", "dual_corack", "enumerate_racks", "hom_verify",
    "identity_hom", "left_center", "nabla_apply", "ol_corack", "omni_lie", "parse_field",
    "parse_poly", "stock_hopf", "structure_constants", "tensor_power", "trivial_corack",
]
