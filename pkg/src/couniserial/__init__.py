"""Couniserial and uniserial dimension of finite abelian groups.

Two independent evaluators (a memoised recursion over isomorphism types and
a literal subgroup-lattice oracle), a closed-form catalog for a few infinite
modules, Cantor-normal-form ordinals, and a property-checking suite.
"""
from .abtype import (
    AbelianType,
    invariants,
    quotient_types,
    smith_normal_form,
    subtypes,
    type_from_matrix,
    type_from_orders,
    type_from_spec,
)
from .dimension import (
    DimensionReport,
    Free,
    InfHomogeneousSemisimple,
    Prufer,
    catalog,
    cudim,
    infinite_power_defined,
    realize,
    report,
    usdim,
)
from .ordinal import Ordinal, ord_add, ord_cmp, ord_format, ord_parse, ord_sup

__all__ = [
    "AbelianType", "invariants", "quotient_types", "smith_normal_form", "subtypes",
    "type_from_matrix", "type_from_orders", "type_from_spec",
    "DimensionReport", "Free", "InfHomogeneousSemisimple", "Prufer", "catalog", "cudim",
    "infinite_power_defined", "realize", "report", "usdim",
    "Ordinal", "ord_add", "ord_cmp", "ord_format", "ord_parse", "ord_sup",
]
