"""Plan and apply signature changes as sequences of vee and tilt steps."""

from __future__ import annotations

import logging

from cliffmorph.algebra.models import Signature

from .models import (
    DimensionMismatchError,
    MorphPlan,
    MorphStep,
    PlanSourceMismatchError,
    StepKind,
)
from .tables import ProductTable, tilt_table, vee_table

logger = logging.getLogger(__name__)


def _candidate(preserved: list[int], tilt: bool) -> tuple[MorphStep, ...]:
    """Vees in index order, then the tilt if requested."""
    steps = [MorphStep.vee(mu) for mu in sorted(preserved)]
    if tilt:
        steps.append(MorphStep.tilt())
    return tuple(steps)


def plan_signature_change(src: Signature, dst: Signature) -> MorphPlan:
    """Shortest vee/tilt sequence turning the product of ``src`` into ``dst``.

    A vee about e_mu flips every square but mu's and a tilt flips them all, so
    a generator g ends up flipped iff (vees - vees about g + tilts) is odd. Two
    families satisfy that: one vee about each differing generator plus a tilt
    when their count is odd, or one vee about each agreeing generator plus a
    tilt when that count is even. The shorter wins; ties go to the smaller
    preserved indices.
    """
    if src.n != dst.n:
        raise DimensionMismatchError(
            f"Cannot change signature between dimensions {src.n} and {dst.n}"
        )
    differing = [mu for mu in range(src.n) if src.squares[mu] != dst.squares[mu]]
    agreeing = [mu for mu in range(src.n) if src.squares[mu] == dst.squares[mu]]

    candidates = [
        _candidate(differing, len(differing) % 2 == 1),
        _candidate(agreeing, len(agreeing) % 2 == 0),
    ]

    def rank(steps: tuple[MorphStep, ...]) -> tuple[int, list[int]]:
        indices = [s.preserved for s in steps if s.kind is StepKind.VEE]
        return len(steps), [i for i in indices if i is not None]

    best = min(candidates, key=rank)
    plan = MorphPlan(src, dst, best)
    logger.debug(f"Planned {plan}")
    return plan


def apply_plan(base: ProductTable, plan: MorphPlan) -> ProductTable:
    """Fold the plan's steps over ``base``, each consuming the previous table."""
    if base.squares != plan.source.squares:
        raise PlanSourceMismatchError(
            f"Plan starts from {plan.source} but the table realises {base.signature}"
        )
    table = base
    for step in plan.steps:
        if step.kind is StepKind.TILT:
            table = tilt_table(table)
        else:
            assert step.preserved is not None
            table = vee_table(table, step.preserved)
    return table
