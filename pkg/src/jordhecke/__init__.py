"""Jordan-block combinatorics of enhanced L-parameters and their affine Hecke algebras."""

from .errors import JordHeckeError
from .hecke import AlgebraElement, HeckeContext, multiply, opposite, weyl_elements
from .laurent import LaurentScalar
from .params import EnhancedParam, JordanBlock, component_group, is_cuspidal, is_discrete, is_relevant, validate
from .repdata import Family, GroupFlavor, Registry, RepSymbol, SelfDualClass, SignRule, parse_flavor
from .rootdata import BernsteinEntry, PartnerClass, affine_row, build_presentation, m_alpha, rescale_BC
from .support import cuspidal_support, defect_orthogonal, defect_symplectic, reduce_to_alternated

__all__ = [
    "AlgebraElement",
    "BernsteinEntry",
    "EnhancedParam",
    "Family",
    "GroupFlavor",
    "HeckeContext",
    "JordHeckeError",
    "JordanBlock",
    "LaurentScalar",
    "PartnerClass",
    "Registry",
    "RepSymbol",
    "SelfDualClass",
    "SignRule",
    "affine_row",
    "build_presentation",
    "component_group",
    "cuspidal_support",
    "defect_orthogonal",
    "defect_symplectic",
    "is_cuspidal",
    "is_discrete",
    "is_relevant",
    "m_alpha",
    "multiply",
    "opposite",
    "parse_flavor",
    "reduce_to_alternated",
    "rescale_BC",
    "validate",
    "weyl_elements",
]
