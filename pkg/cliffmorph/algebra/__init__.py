from .models import (
    BladeIndex,
    CliffordError,
    DimensionOutOfRangeError,
    GradeOutOfRangeError,
    Multivector,
    Signature,
    SignatureMismatchError,
    blade_label,
    grade,
    make_signature,
)
from .products import (
    InvolutionKind,
    blade_product,
    conjugate,
    contract,
    geometric_product,
    grade_involution,
    grade_project,
    involution,
    parity_split,
    reverse,
    wedge,
)

__all__ = [
    "BladeIndex",
    "CliffordError",
    "DimensionOutOfRangeError",
    "GradeOutOfRangeError",
    "InvolutionKind",
    "Multivector",
    "Signature",
    "SignatureMismatchError",
    "blade_label",
    "blade_product",
    "conjugate",
    "contract",
    "geometric_product",
    "grade",
    "grade_involution",
    "grade_project",
    "involution",
    "make_signature",
    "parity_split",
    "reverse",
    "wedge",
]
