"""Dirac-Hestenes residuals, their component systems and sign recodings."""

from __future__ import annotations

import logging
from collections import defaultdict, deque
from collections.abc import Callable, Iterable
from functools import partial
from itertools import product

from cliffmorph.algebra.models import (
    BladeIndex,
    Multivector,
    Scalar,
    blade_label,
    grade,
    make_signature,
)
from cliffmorph.algebra.products import contract, geometric_product, grade_involution
from cliffmorph.morph.tables import table_product

from .calculus import dirac, partial_derivative
from .models import (
    EUCLIDEAN_RAISING,
    MINKOWSKI_RAISING,
    ComponentSystem,
    DiracContext,
    DiracForm,
    Equation,
    FieldError,
    PolyMultivectorField,
    Recoding,
    Term,
    WrongTableError,
    minkowski_context,
    vee_context,
)

logger = logging.getLogger(__name__)

E0 = 0b0001
E12 = 0b0110
E012 = 0b0111

# (carrier squares, squares realised by the table, raising signs) per form
_FORM_CONTEXTS: dict[DiracForm, tuple[tuple[int, ...], ...]] = {
    DiracForm.MINKOWSKI: ((1, -1, -1, -1), (1, -1, -1, -1), MINKOWSKI_RAISING),
    DiracForm.VEE: ((1, 1, 1, 1), (1, -1, -1, -1), EUCLIDEAN_RAISING),
    DiracForm.EUCLIDEAN: ((1, 1, 1, 1), (1, 1, 1, 1), EUCLIDEAN_RAISING),
}


def check_form(ctx: DiracContext, form: DiracForm | str) -> DiracForm:
    """Raise unless ``ctx`` is the context the residual of ``form`` is written in."""
    form = DiracForm(form)
    expected = _FORM_CONTEXTS[form]
    found = (ctx.carrier.squares, ctx.table.squares, ctx.raising)
    if found != expected:
        raise WrongTableError(
            f"The {form.value} form needs carrier/table/raising {expected}, "
            f"got {found} from {ctx.table}"
        )
    return form


def _left(factor: Multivector) -> Callable[[Multivector], Multivector]:
    return partial(geometric_product, factor)


def _right(factor: Multivector) -> Callable[[Multivector], Multivector]:
    return lambda value: geometric_product(value, factor)


def _check_potential(
    ctx: DiracContext, potential: PolyMultivectorField | None
) -> None:
    """Raise unless the potential is a vector field in the carrier."""
    if potential is None:
        return
    if potential.sig != ctx.carrier:
        raise FieldError(f"Potential lives in {potential.sig}, not {ctx.carrier}")
    if not potential.grades() <= {1}:
        raise FieldError(
            f"Potential must be a vector field, has grades {potential.grades()}"
        )


def table_residual(
    ctx: DiracContext,
    psi: PolyMultivectorField,
    potential: PolyMultivectorField | None = None,
) -> PolyMultivectorField:
    """nabla o psi - m psi o e012 + e A o psi o e12 in the product of ``ctx.table``."""
    _check_potential(ctx, potential)
    sig = ctx.carrier
    e012 = Multivector.blade(sig, E012)
    e12 = Multivector.blade(sig, E12)
    residual = dirac(ctx, psi) - psi.map(
        lambda value: table_product(ctx.table, value, e012)
    ).scale(ctx.mass)
    if potential is not None:
        coupled = potential.combine(psi, partial(table_product, ctx.table))
        residual = residual + coupled.map(
            lambda value: table_product(ctx.table, value, e12)
        ).scale(ctx.charge)
    return residual


def _expanded_vee_residual(
    ctx: DiracContext,
    psi: PolyMultivectorField,
    potential: PolyMultivectorField | None,
) -> PolyMultivectorField:
    """Vee residual rewritten in base products about g0."""
    # e0 d0 psi + (d_i hat(psi)) e_i - m e12 psi e0 + e e12 (psi A - 2 (psi . e0) A0)
    _check_potential(ctx, potential)
    sig = ctx.carrier
    e0 = Multivector.blade(sig, E0)
    e12 = Multivector.blade(sig, E12)

    residual = partial_derivative(psi, 0).map(_left(e0))
    hat = psi.map(grade_involution)
    for i in range(1, sig.n):
        e_i = Multivector.blade(sig, 1 << i)
        residual = residual + partial_derivative(hat, i).map(_right(e_i))
    residual = residual - psi.map(_left(e12)).map(_right(e0)).scale(ctx.mass)

    if potential is not None:
        a0 = potential.map(lambda value: Multivector.scalar(sig, value.coeffs[E0]))
        psi_a = psi.combine(potential, geometric_product)
        dotted = psi.map(lambda value: contract(value, e0)).combine(
            a0, geometric_product
        )
        interaction = (psi_a - dotted.scale(2)).map(_left(e12))
        residual = residual + interaction.scale(ctx.charge)
    return residual


def dh_residual(
    ctx: DiracContext,
    psi: PolyMultivectorField,
    form: DiracForm | str,
    potential: PolyMultivectorField | None = None,
) -> PolyMultivectorField:
    """Residual of the Dirac-Hestenes equation in the requested form.

    The minkowski and euclidean forms evaluate nabla psi - m psi e012 (+ e A psi
    e12) with the context table. The vee form evaluates the same equation
    expanded into plain Cl(4,0) products. A zero residual means psi solves it.
    """
    form = check_form(ctx, form)
    if not psi.is_even():
        logger.warning(f"Spinor field has odd grades {sorted(psi.grades())}")
    if form is DiracForm.VEE:
        return _expanded_vee_residual(ctx, psi, potential)
    return table_residual(ctx, psi, potential)


def _unit_exponent(n: int, mu: int | None = None) -> tuple[int, ...]:
    return tuple(1 if nu == mu else 0 for nu in range(n))


def component_system(
    ctx: DiracContext,
    form: DiracForm | str,
    basis: Iterable[BladeIndex],
    with_potential: bool = False,
) -> ComponentSystem:
    """Scalar equations of dh_residual for psi = sum_I psi[I](x) e_I over ``basis``.

    Each unknown is fed in separately: x_mu e_I gives the d_mu terms, a constant
    e_I with unit mass the m terms and, with a unit charge and potential e_mu,
    the e A_mu terms.
    """
    form = check_form(ctx, form)
    blades = tuple(sorted(set(basis)))
    for blade in blades:
        if grade(blade) % 2 or not 0 <= blade < ctx.carrier.size:
            raise FieldError(f"Basis blade {blade_label(blade)} is not an even blade")

    sig = ctx.carrier
    origin = _unit_exponent(sig.n)
    free = ctx.with_couplings(mass=0, charge=0)
    massive = ctx.with_couplings(mass=1, charge=0)
    charged = ctx.with_couplings(mass=0, charge=1)
    collected: dict[BladeIndex, list[Term]] = defaultdict(list)

    def collect(residual: PolyMultivectorField, blade: BladeIndex, factor: str) -> None:
        value = residual.terms.get(origin)
        if value is None:
            return
        for output, coeff in value.terms():
            collected[output].append(Term(blade, factor, coeff))

    for blade in blades:
        unit = Multivector.blade(sig, blade)
        for mu in range(sig.n):
            sample = PolyMultivectorField.monomial(_unit_exponent(sig.n, mu), unit)
            collect(dh_residual(free, sample, form), blade, f"d{mu}")
        constant = PolyMultivectorField.constant(unit)
        collect(dh_residual(massive, constant, form), blade, "m")
        if with_potential:
            for mu in range(sig.n):
                potential = PolyMultivectorField.constant(
                    Multivector.blade(sig, 1 << mu)
                )
                collect(
                    dh_residual(charged, constant, form, potential), blade, f"eA{mu}"
                )

    equations = tuple(
        Equation(output, tuple(sorted(collected[output])))
        for output in sorted(collected)
    )
    return ComponentSystem(form, blades, equations, with_potential)


def _potential_index(factor: str) -> int | None:
    """Index mu of an ``eA<mu>`` factor, None for d and m."""
    return int(factor[2:]) if factor.startswith("eA") else None


def _solve_signs(
    first: ComponentSystem,
    second: ComponentSystem,
    potential_signs: dict[int, int],
) -> Recoding | None:
    """Two-colour the unknown and equation signs for fixed potential signs."""
    # edges (equation X, unknown I, p) demand equation_sign[X] * unknown_sign[I] == p
    edges: dict[tuple[str, int], list[tuple[tuple[str, int], int]]] = defaultdict(list)
    for eq1 in first.equations:
        eq2 = second.equation(eq1.blade)
        if eq2 is None:
            return None
        terms1, terms2 = eq1.term_map(), eq2.term_map()
        if terms1.keys() != terms2.keys():
            return None
        for (blade, factor), c1 in terms1.items():
            ratio = terms2[(blade, factor)] / c1
            if ratio not in (1, -1):
                return None
            mu = _potential_index(factor)
            parity = int(ratio) * (1 if mu is None else potential_signs[mu])
            eq_node, unknown_node = ("eq", eq1.blade), ("psi", blade)
            edges[eq_node].append((unknown_node, parity))
            edges[unknown_node].append((eq_node, parity))

    nodes = [("psi", b) for b in first.basis] + [
        ("eq", eq.blade) for eq in first.equations
    ]
    signs: dict[tuple[str, int], int] = {}
    for root in nodes:
        if root in signs:
            continue
        signs[root] = 1
        queue = deque([root])
        while queue:
            node = queue.popleft()
            for neighbour, parity in edges[node]:
                wanted = signs[node] * parity
                if neighbour not in signs:
                    signs[neighbour] = wanted
                    queue.append(neighbour)
                elif signs[neighbour] != wanted:
                    return None

    return Recoding(
        unknown_signs={b: signs[("psi", b)] for b in first.basis},
        equation_signs={eq.blade: signs[("eq", eq.blade)] for eq in first.equations},
        potential_signs=dict(potential_signs),
    )


def find_recoding(first: ComponentSystem, second: ComponentSystem) -> Recoding | None:
    """Diagonal +-1 recoding turning ``first`` into ``second``, if one exists.

    Unknown and equation signs are solved as a two-colouring; potential signs,
    when the systems carry an interaction term, are searched exhaustively
    starting from all +1.
    """
    if first.basis != second.basis:
        raise FieldError(
            f"Systems are over different bases: {first.basis} and {second.basis}"
        )
    if {eq.blade for eq in first.equations} != {eq.blade for eq in second.equations}:
        return None

    potentials = sorted(
        {
            mu
            for system in (first, second)
            for eq in system.equations
            for t in eq.terms
            if (mu := _potential_index(t.factor)) is not None
        }
    )
    for choice in product((1, -1), repeat=len(potentials)):
        signs = dict(zip(potentials, choice, strict=True))
        recoding = _solve_signs(first, second, signs)
        if recoding is not None:
            logger.info(f"Recoding flips unknowns {recoding.flipped_unknowns()}")
            return recoding
    return None


def apply_recoding(
    recoding: Recoding, psi: PolyMultivectorField
) -> PolyMultivectorField:
    """Substitute the recoding's unknown signs into ``psi``."""
    return recoding.recode_unknowns(psi)


def even_basis(n: int = 4) -> tuple[BladeIndex, ...]:
    """Masks of the even blades in dimension ``n``."""
    return tuple(mask for mask in range(1 << n) if grade(mask) % 2 == 0)


def recoding_holds(
    recoding: Recoding,
    psi: PolyMultivectorField,
    potential: PolyMultivectorField | None = None,
    mass: Scalar = 0,
    charge: Scalar = 0,
) -> bool:
    """Whether ``recoding`` carries the Minkowski residual of psi onto the vee one.

    ``psi`` and ``potential`` live in Cl(1,3); their recoded images are read in
    Cl(4,0) and fed to the vee form with the same couplings.
    """
    euclidean = make_signature(4, 0)
    minkowski = dh_residual(
        minkowski_context(mass, charge), psi, DiracForm.MINKOWSKI, potential
    )
    recoded_potential = (
        None
        if potential is None
        else recoding.recode_potential(potential).reinterpret(euclidean)
    )
    vee = dh_residual(
        vee_context(mass, charge),
        recoding.recode_unknowns(psi).reinterpret(euclidean),
        DiracForm.VEE,
        recoded_potential,
    )
    return vee == recoding.recode_equations(minkowski).reinterpret(euclidean)
