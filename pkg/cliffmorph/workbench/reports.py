"""Builders for the plan, dirac, selfdual and eval reports."""

from __future__ import annotations

import logging
import random
from fractions import Fraction

from cliffmorph.algebra.models import Multivector, Signature, blade_label
from cliffmorph.fields.dirac import (
    component_system,
    even_basis,
    find_recoding,
    recoding_holds,
)
from cliffmorph.fields.maxwell import (
    maxwell_residual,
    selfdual_by_split,
    selfdual_check,
    selfdual_space,
)
from cliffmorph.fields.models import (
    ComponentSystem,
    DiracForm,
    PolyMultivectorField,
    Recoding,
    euclidean_context,
    hodge_vee_context,
    minkowski_context,
    vee_context,
)
from cliffmorph.morph.planner import apply_plan, plan_signature_change
from cliffmorph.morph.tables import base_table, verify_isomorphism
from cliffmorph.utils import random_even, random_field, random_vector

from .evaluator import render
from .models import (
    CheckResult,
    DiracReport,
    EvalReport,
    PlanReport,
    SelfDualReport,
    SessionConfig,
)

logger = logging.getLogger(__name__)


def plan_report(source: Signature, target: Signature) -> PlanReport:
    """Plan the change of signature, build the table and compare it."""
    plan = plan_signature_change(source, target)
    table = apply_plan(base_table(source), plan)
    report = verify_isomorphism(table, base_table(target))
    return PlanReport(
        source=str(source),
        target=str(target),
        steps=[str(step) for step in plan.steps],
        provenance=table.provenance,
        verified=report.equal,
        first_mismatch=report.first_mismatch,
    )


def dirac_systems(
    against: DiracForm, with_potential: bool
) -> tuple[ComponentSystem, ComponentSystem, Recoding | None]:
    """Minkowski system, the ``against`` system and their recoding."""
    if against is DiracForm.MINKOWSKI:
        raise ValueError("Compare the Minkowski form against 'vee' or 'euclidean'")
    basis = even_basis(4)
    minkowski = component_system(
        minkowski_context(), DiracForm.MINKOWSKI, basis, with_potential
    )
    other_ctx = vee_context() if against is DiracForm.VEE else euclidean_context()
    other = component_system(other_ctx, against, basis, with_potential)
    return minkowski, other, find_recoding(minkowski, other)


def dirac_report(
    mass: Fraction,
    charge: Fraction,
    with_potential: bool = False,
    against: DiracForm = DiracForm.VEE,
    seed: int = 0,
    samples: int = 5,
) -> DiracReport:
    """Compare the Dirac component systems and confirm a recoding on sample fields.

    The systems carry the couplings as symbols; ``mass`` and ``charge`` enter
    through the seeded sample fields the recoding is confirmed on.
    """
    minkowski, other, recoding = dirac_systems(against, with_potential)
    equivalent = recoding is not None
    if recoding is not None:
        rng = random.Random(f"{seed}:dirac")
        sig = minkowski_context().carrier
        for _ in range(samples):
            psi = random_field(sig, rng, coefficient=random_even)
            potential = (
                random_field(sig, rng, coefficient=random_vector)
                if with_potential
                else None
            )
            if not recoding_holds(recoding, psi, potential, mass, charge):
                logger.warning(f"Recoding fails on sample field {psi}")
                equivalent = False
                break
    return DiracReport(
        mass=str(mass),
        charge=str(charge),
        with_potential=with_potential,
        against=against.value,
        minkowski=minkowski.to_dict(),
        other=other.to_dict(),
        recoding=None if recoding is None else recoding.to_dict(),
        equivalent=equivalent,
    )


def selfdual_report(sign: int) -> SelfDualReport:
    """Basis of the sign-dual 2-forms with their duality and Maxwell checks."""
    if sign not in (1, -1):
        raise ValueError(f"Duality sign must be +1 or -1, got {sign}")
    ctx = hodge_vee_context()
    sig = ctx.carrier
    basis = selfdual_space(ctx.table, sig, sign)
    checks = [
        CheckResult(
            name="dimension",
            passed=len(basis) == 3,
            detail=f"{len(basis)} basis fields",
        )
    ]
    for field_strength in basis:
        label = str(field_strength)
        d, delta = maxwell_residual(ctx, PolyMultivectorField.constant(field_strength))
        checks += [
            CheckResult(
                name=f"star {label}",
                passed=selfdual_check(ctx.table, field_strength, sign),
                detail=f"F = {sign:+d} star F",
            ),
            CheckResult(
                name=f"split {label}",
                passed=selfdual_by_split(field_strength, sign),
                detail=f"E = {sign:+d} B",
            ),
            CheckResult(
                name=f"maxwell {label}",
                passed=d.is_zero() and delta.is_zero(),
                detail="dF = 0 and delta F = 0 for the constant field",
            ),
        ]
    minkowski = selfdual_space(base_table(sig), sig, sign)
    checks.append(
        CheckResult(
            name="minkowski",
            passed=not minkowski,
            detail=f"{len(minkowski)} real fixed points of the Minkowski star",
        )
    )
    return SelfDualReport(
        sign=sign,
        basis=[str(f) for f in basis],
        passed=all(c.passed for c in checks),
        checks=checks,
    )


def eval_report(text: str, cfg: SessionConfig, value: Multivector) -> EvalReport:
    """Report for a value evaluated from ``text``."""
    return EvalReport(
        expression=text,
        signature=str(cfg.signature),
        preserve=cfg.preserve,
        value=render(value),
        terms=[(blade_label(mask), str(coeff)) for mask, coeff in value.terms()],
    )
