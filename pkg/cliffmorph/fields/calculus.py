"""Derivatives, Dirac operators, Hodge stars and the exterior calculus of fields."""

from __future__ import annotations

from enum import Enum
from fractions import Fraction
from functools import partial
from typing import overload

from cliffmorph.algebra.models import Multivector
from cliffmorph.algebra.products import (
    conjugate,
    geometric_product,
    grade_involution,
    reverse,
)
from cliffmorph.morph.tables import ProductTable, table_product

from .models import DiracContext, Exponent, FieldError, PolyMultivectorField

HALF = Fraction(1, 2)


class Side(str, Enum):
    """Side of the field the Dirac operator acts from."""

    LEFT = "left"
    RIGHT = "right"


def partial_derivative(phi: PolyMultivectorField, mu: int) -> PolyMultivectorField:
    """Exact derivative d/dx_mu."""
    if not 0 <= mu < phi.sig.n:
        raise FieldError(f"Derivative index {mu} invalid for {phi.sig}")
    result: dict[Exponent, Multivector] = {}
    for exponent, coeff in phi.items():
        power = exponent[mu]
        if power:
            lowered = exponent[:mu] + (power - 1,) + exponent[mu + 1 :]
            result[lowered] = coeff.scale(power)
    return PolyMultivectorField(phi.sig, result)


def _right_product(
    table: ProductTable, right: Multivector, left: Multivector
) -> Multivector:
    """``left`` o ``right``, with the right factor bound first."""
    return table_product(table, left, right)


def _check_context(ctx: DiracContext, phi: PolyMultivectorField) -> None:
    """Raise unless ``phi`` lives in the context carrier."""
    if phi.sig != ctx.carrier:
        raise FieldError(f"Field lives in {phi.sig}, context carrier is {ctx.carrier}")


def dirac(
    ctx: DiracContext, phi: PolyMultivectorField, side: Side | str = Side.LEFT
) -> PolyMultivectorField:
    """Dirac operator e^mu o d_mu phi (left) or (d_mu phi) o e^mu (right)."""
    _check_context(ctx, phi)
    side = Side(side)
    total = PolyMultivectorField.zero(phi.sig)
    for mu in range(ctx.n):
        derivative = partial_derivative(phi, mu)
        if derivative.is_zero():
            continue
        upper = ctx.upper(mu)
        if side is Side.LEFT:
            action = partial(table_product, ctx.table, upper)
        else:
            action = partial(_right_product, ctx.table, upper)
        total = total + derivative.map(action)
    return total


def wave_operator(ctx: DiracContext, phi: PolyMultivectorField) -> PolyMultivectorField:
    """sum_mu s_mu d_mu^2 phi with s_mu the squares realised by the context table."""
    total = PolyMultivectorField.zero(phi.sig)
    for mu, square in enumerate(ctx.table.squares):
        total = total + partial_derivative(partial_derivative(phi, mu), mu).scale(
            square
        )
    return total


def wave_check(ctx: DiracContext, phi: PolyMultivectorField) -> PolyMultivectorField:
    """Dirac operator applied twice minus the wave operator; identically zero."""
    return dirac(ctx, dirac(ctx, phi)) - wave_operator(ctx, phi)


@overload
def hodge_star(table: ProductTable, phi: Multivector) -> Multivector: ...


@overload
def hodge_star(
    table: ProductTable, phi: PolyMultivectorField
) -> PolyMultivectorField: ...


def hodge_star(
    table: ProductTable, phi: Multivector | PolyMultivectorField
) -> Multivector | PolyMultivectorField:
    """Reverse of phi times the volume blade, in the product of ``table``."""
    if isinstance(phi, PolyMultivectorField):
        return phi.map(partial(_star, table))
    return _star(table, phi)


def _star(table: ProductTable, phi: Multivector) -> Multivector:
    """Reverse of ``phi`` times the volume blade under ``table``."""
    volume = Multivector.blade(phi.sig, phi.sig.volume)
    return table_product(table, reverse(phi), volume)


def _require_spacetime(phi: Multivector) -> None:
    if phi.sig.n != 4:
        raise FieldError(f"Parity and spacetime stars need n = 4, got {phi.sig}")


def _parity(phi: Multivector) -> Multivector:
    """g0 phi g0 for a single multivector."""
    _require_spacetime(phi)
    g0 = Multivector.blade(phi.sig, 1)
    return g0 * phi * g0


def _star_via_parity(phi: Multivector) -> Multivector:
    """g5 g0 conj(phi) g0 for a single multivector."""
    _require_spacetime(phi)
    g0 = Multivector.blade(phi.sig, 1)
    g5 = Multivector.blade(phi.sig, phi.sig.volume)
    return geometric_product(g5 * g0, conjugate(phi) * g0)


@overload
def parity(phi: Multivector) -> Multivector: ...


@overload
def parity(phi: PolyMultivectorField) -> PolyMultivectorField: ...


def parity(
    phi: Multivector | PolyMultivectorField,
) -> Multivector | PolyMultivectorField:
    """g0 phi g0 in the carrier product; coordinates are left alone."""
    if isinstance(phi, PolyMultivectorField):
        return phi.map(_parity)
    return _parity(phi)


@overload
def hodge_star_via_parity(phi: Multivector) -> Multivector: ...


@overload
def hodge_star_via_parity(phi: PolyMultivectorField) -> PolyMultivectorField: ...


def hodge_star_via_parity(
    phi: Multivector | PolyMultivectorField,
) -> Multivector | PolyMultivectorField:
    """g5 g0 conj(phi) g0 in the carrier product; equals the vee-product star."""
    if isinstance(phi, PolyMultivectorField):
        return phi.map(_star_via_parity)
    return _star_via_parity(phi)


def exterior_d(ctx: DiracContext, phi: PolyMultivectorField) -> PolyMultivectorField:
    """d phi = (nabla phi + hat(phi) nabla) / 2."""
    left = dirac(ctx, phi, Side.LEFT)
    right = dirac(ctx, phi.map(grade_involution), Side.RIGHT)
    return (left + right).scale(HALF)


def codifferential(
    ctx: DiracContext, phi: PolyMultivectorField
) -> PolyMultivectorField:
    """delta phi = (nabla phi - hat(phi) nabla) / 2."""
    left = dirac(ctx, phi, Side.LEFT)
    right = dirac(ctx, phi.map(grade_involution), Side.RIGHT)
    return (left - right).scale(HALF)
