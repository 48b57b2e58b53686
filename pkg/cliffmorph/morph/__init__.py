from .codec import TableDocument, decode_table, encode_table, load_table, save_table
from .models import (
    AssociativityError,
    ClosureViolationError,
    DimensionMismatchError,
    IsomorphismReport,
    MorphPlan,
    MorphStep,
    PlanSourceMismatchError,
    StepKind,
    TableFormatError,
)
from .planner import apply_plan, plan_signature_change
from .tables import (
    ProductTable,
    anticommutator_metric,
    base_table,
    generator_squares,
    table_contract,
    table_product,
    tilt_by_parity,
    tilt_table,
    vee_blades,
    vee_chain,
    vee_table,
    verify_isomorphism,
)

__all__ = [
    "AssociativityError",
    "ClosureViolationError",
    "DimensionMismatchError",
    "IsomorphismReport",
    "MorphPlan",
    "MorphStep",
    "PlanSourceMismatchError",
    "ProductTable",
    "StepKind",
    "TableDocument",
    "TableFormatError",
    "anticommutator_metric",
    "apply_plan",
    "base_table",
    "decode_table",
    "encode_table",
    "generator_squares",
    "load_table",
    "plan_signature_change",
    "save_table",
    "table_contract",
    "table_product",
    "tilt_by_parity",
    "tilt_table",
    "vee_blades",
    "vee_chain",
    "vee_table",
    "verify_isomorphism",
]
