"""Geometric product, grade projection, wedge, contraction and involutions."""

from __future__ import annotations

from collections.abc import Callable
from enum import Enum
from fractions import Fraction

from .models import (
    BladeIndex,
    GradeOutOfRangeError,
    Multivector,
    Signature,
    SignatureMismatchError,
    grade,
)

# (sign, result blade) of a blade-pair product
BladeProduct = Callable[[BladeIndex, BladeIndex], tuple[int, BladeIndex]]
# keep(k, m, r): whether the grade-r part of X_k Y_m survives
GradeFilter = Callable[[int, int, int], bool]


class InvolutionKind(str, Enum):
    """The three grade-wise sign involutions."""

    REVERSE = "reverse"
    GRADE = "grade"
    CONJUGATE = "conjugate"


def reorder_sign(a: BladeIndex, b: BladeIndex) -> int:
    """Sign of the permutation sorting the generators of ``a`` followed by ``b``."""
    swaps = 0
    a >>= 1
    while a:
        swaps += (a & b).bit_count()
        a >>= 1
    return -1 if swaps & 1 else 1


def blade_product(
    sig: Signature, i: BladeIndex, j: BladeIndex
) -> tuple[int, BladeIndex]:
    """Clifford product of two basis blades as (sign, blade)."""
    sign = reorder_sign(i, j)
    common = i & j
    mu = 0
    while common:
        if common & 1:
            sign *= sig.squares[mu]
        common >>= 1
        mu += 1
    return sign, i ^ j


def bilinear(
    a: Multivector,
    b: Multivector,
    product: BladeProduct,
    keep: GradeFilter | None = None,
) -> Multivector:
    """Bilinear extension of a blade product, optionally filtered by grades."""
    if a.sig != b.sig:
        raise SignatureMismatchError(
            f"Operands live in different algebras: {a.sig} and {b.sig}"
        )
    coeffs = [Fraction(0)] * a.sig.size
    for i, x in a.terms():
        k = grade(i)
        for j, y in b.terms():
            sign, blade = product(i, j)
            if keep is not None and not keep(k, grade(j), grade(blade)):
                continue
            coeffs[blade] += sign * x * y
    return Multivector(a.sig, tuple(coeffs))


def wedge_grades(left: int, right: int, r: int) -> bool:
    """Keep grade k + l of a grade-k by grade-l product."""
    return r == left + right


def contraction_grades(left: int, right: int, r: int) -> bool:
    # A scalar operand contracts to zero; otherwise keep grade |k - l|.
    return left > 0 and right > 0 and r == abs(left - right)


def geometric_product(a: Multivector, b: Multivector) -> Multivector:
    """Clifford product in the algebra of the operands."""
    sig = a.sig
    return bilinear(a, b, lambda i, j: blade_product(sig, i, j))


def grade_project(a: Multivector, r: int) -> Multivector:
    """The grade-r part of ``a``."""
    if not 0 <= r <= a.sig.n:
        raise GradeOutOfRangeError(f"Grade {r} outside 0..{a.sig.n}")
    kept = (c if grade(mask) == r else Fraction(0) for mask, c in enumerate(a.coeffs))
    return Multivector(a.sig, tuple(kept))


def wedge(a: Multivector, b: Multivector) -> Multivector:
    """Exterior product: <X_k Y_l>_{k+l}, extended over grade parts."""
    sig = a.sig
    return bilinear(a, b, lambda i, j: blade_product(sig, i, j), wedge_grades)


def contract(a: Multivector, b: Multivector) -> Multivector:
    """Contraction: <X_k Y_l>_{|k-l|} for k, l > 0, zero against scalars."""
    sig = a.sig
    return bilinear(a, b, lambda i, j: blade_product(sig, i, j), contraction_grades)


def involution_sign(kind: InvolutionKind, k: int) -> int:
    """Sign ``kind`` applies to a grade-k blade."""
    reverse = -1 if (k * (k - 1) // 2) % 2 else 1
    graded = -1 if k % 2 else 1
    if kind is InvolutionKind.REVERSE:
        return reverse
    if kind is InvolutionKind.GRADE:
        return graded
    return reverse * graded


def involution(a: Multivector, kind: InvolutionKind | str) -> Multivector:
    """Reversion, grade involution or Clifford conjugation."""
    kind = InvolutionKind(kind)
    signed = (c * involution_sign(kind, grade(mask)) for mask, c in enumerate(a.coeffs))
    return Multivector(a.sig, tuple(signed))


def reverse(a: Multivector) -> Multivector:
    """Reversion: sign (-1)^{k(k-1)/2} on grade k."""
    return involution(a, InvolutionKind.REVERSE)


def grade_involution(a: Multivector) -> Multivector:
    """Grade involution: sign (-1)^k on grade k."""
    return involution(a, InvolutionKind.GRADE)


def conjugate(a: Multivector) -> Multivector:
    """Clifford conjugation, reversion composed with grade involution."""
    return involution(a, InvolutionKind.CONJUGATE)


def parity_split(a: Multivector) -> tuple[Multivector, Multivector]:
    """Even and odd parts of ``a``."""
    zero = Fraction(0)
    even = tuple(zero if grade(m) % 2 else c for m, c in enumerate(a.coeffs))
    odd = tuple(c if grade(m) % 2 else zero for m, c in enumerate(a.coeffs))
    return Multivector(a.sig, even), Multivector(a.sig, odd)
