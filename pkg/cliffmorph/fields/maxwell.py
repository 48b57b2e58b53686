"""Electromagnetic split, self-duality and the free Maxwell system."""

from __future__ import annotations

import logging
from fractions import Fraction

import sympy

from cliffmorph.algebra.models import BladeIndex, Multivector, Signature, grade
from cliffmorph.morph.tables import ProductTable

from .calculus import codifferential, exterior_d, hodge_star, parity
from .models import DiracContext, EMField, NotATwoFormError, PolyMultivectorField

logger = logging.getLogger(__name__)


def _require_two_form(value: Multivector | PolyMultivectorField) -> None:
    """Raise unless ``value`` only has grade-2 parts."""
    if not value.grades() <= {2}:
        raise NotATwoFormError(f"Expected a pure 2-form, found grades {value.grades()}")


def two_form_blades(sig: Signature) -> list[BladeIndex]:
    """Masks of the grade-2 blades of ``sig``."""
    return [mask for mask in range(sig.size) if grade(mask) == 2]


def em_split(field_strength: Multivector) -> EMField:
    """F = E + g5 B with E = (F - g0 F g0)/2 and g5 B = (F + g0 F g0)/2."""
    _require_two_form(field_strength)
    reflected = parity(field_strength)
    electric = (field_strength - reflected).scale(Fraction(1, 2))
    magnetic_dual = (field_strength + reflected).scale(Fraction(1, 2))

    sig = field_strength.sig
    volume = Multivector.blade(sig, sig.volume)
    volume_square = (volume * volume).scalar_part()
    # g5^-1 = g5 / g5^2
    magnetic = (volume * magnetic_dual).scale(1 / volume_square)
    return EMField(F=field_strength, E=electric, B=magnetic)


def selfdual_check(table: ProductTable, field_strength: Multivector, sign: int) -> bool:
    """Whether F = sign * star F for the star of ``table``."""
    if sign not in (1, -1):
        raise ValueError(f"Duality sign must be +1 or -1, got {sign}")
    _require_two_form(field_strength)
    return field_strength == hodge_star(table, field_strength).scale(sign)


def selfdual_by_split(field_strength: Multivector, sign: int) -> bool:
    """Whether E = sign * B in the electromagnetic split of F."""
    split = em_split(field_strength)
    return split.E == split.B.scale(sign)


def _to_sympy(value: Fraction) -> sympy.Rational:
    return sympy.Rational(value.numerator, value.denominator)


def _from_sympy(value: sympy.Expr) -> Fraction:
    rational = sympy.Rational(value)
    return Fraction(int(rational.p), int(rational.q))


def star_matrix(table: ProductTable, sig: Signature) -> sympy.Matrix:
    """Matrix of the star of ``table`` on the 2-form blades of ``sig``."""
    blades = two_form_blades(sig)
    columns = []
    for blade in blades:
        image = hodge_star(table, Multivector.blade(sig, blade))
        _require_two_form(image)
        columns.append([_to_sympy(image.coeffs[b]) for b in blades])
    return sympy.Matrix(columns).T


def selfdual_space(
    table: ProductTable, sig: Signature, sign: int
) -> list[Multivector]:
    """Rational basis of the real 2-forms with F = sign * star F."""
    blades = two_form_blades(sig)
    matrix = star_matrix(table, sig) - sign * sympy.eye(len(blades))
    basis = []
    for vector in matrix.nullspace():
        terms = {
            blade: _from_sympy(value)
            for blade, value in zip(blades, vector, strict=True)
        }
        basis.append(Multivector.from_terms(sig, terms))
    logger.info(f"Dimension of sign {sign:+d} dual 2-forms under {table}: {len(basis)}")
    return basis


def maxwell_residual(
    ctx: DiracContext, field_strength: PolyMultivectorField
) -> tuple[PolyMultivectorField, PolyMultivectorField]:
    """(dF, delta F) under the operators of ``ctx``; both vanish on solutions."""
    _require_two_form(field_strength)
    return exterior_d(ctx, field_strength), codifferential(ctx, field_strength)
