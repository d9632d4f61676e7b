"""PBW normal forms for the B3 Nichols algebra family and its liftings."""

from .dims import box_count, dimension_formula, graded_dimension
from .relations import PBW_ORDER, PBW_POS, ROOT_VECTOR_DEF, commutation_table
from .rewrite import (
    AlgElement,
    BudgetExceeded,
    RewriteSystem,
    build_rewrite_system,
    format_element,
    multiply,
    normalize,
    power,
)

__all__ = [
    "box_count",
    "dimension_formula",
    "graded_dimension",
    "PBW_ORDER",
    "PBW_POS",
    "ROOT_VECTOR_DEF",
    "commutation_table",
    "AlgElement",
    "BudgetExceeded",
    "RewriteSystem",
    "build_rewrite_system",
    "format_element",
    "multiply",
    "normalize",
    "power",
]
