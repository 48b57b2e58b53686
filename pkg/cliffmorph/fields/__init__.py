from .calculus import (
    Side,
    codifferential,
    dirac,
    exterior_d,
    hodge_star,
    hodge_star_via_parity,
    parity,
    partial_derivative,
    wave_check,
    wave_operator,
)
from .dirac import (
    apply_recoding,
    component_system,
    dh_residual,
    even_basis,
    find_recoding,
    recoding_holds,
    table_residual,
)
from .maxwell import (
    em_split,
    maxwell_residual,
    selfdual_by_split,
    selfdual_check,
    selfdual_space,
)
from .models import (
    ComponentSystem,
    DiracContext,
    DiracForm,
    EMField,
    Equation,
    FieldError,
    NotATwoFormError,
    PolyMultivectorField,
    Recoding,
    Term,
    WrongTableError,
    euclidean_context,
    hodge_vee_context,
    minkowski_context,
    vee_context,
)

__all__ = [
    "ComponentSystem",
    "DiracContext",
    "DiracForm",
    "EMField",
    "Equation",
    "FieldError",
    "NotATwoFormError",
    "PolyMultivectorField",
    "Recoding",
    "Side",
    "Term",
    "WrongTableError",
    "apply_recoding",
    "codifferential",
    "component_system",
    "dh_residual",
    "dirac",
    "em_split",
    "euclidean_context",
    "even_basis",
    "exterior_d",
    "find_recoding",
    "hodge_star",
    "hodge_star_via_parity",
    "hodge_vee_context",
    "maxwell_residual",
    "minkowski_context",
    "parity",
    "partial_derivative",
    "recoding_holds",
    "selfdual_by_split",
    "selfdual_check",
    "selfdual_space",
    "table_residual",
    "vee_context",
    "wave_check",
    "wave_operator",
]
