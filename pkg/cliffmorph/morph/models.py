"""Signature-morph data models."""

from __future__ import annotations

from collections.abc import Sequence
from dataclasses import dataclass
from enum import Enum

from cliffmorph.algebra.models import BladeIndex, CliffordError, Signature


class ClosureViolationError(CliffordError):
    """Exception raised when a blade-pair product is not a single signed blade."""


class DimensionMismatchError(CliffordError):
    """Exception raised when tables or operands have different dimensions."""


class PlanSourceMismatchError(CliffordError):
    """Exception raised when a plan is applied to a table of another signature."""


class TableFormatError(CliffordError):
    """Exception raised when a table document cannot be turned into a table."""


class AssociativityError(CliffordError):
    """Exception raised when sampled blade triples violate associativity."""


class StepKind(str, Enum):
    """Kind of a morph step."""

    VEE = "vee"
    TILT = "tilt"


@dataclass(frozen=True)
class MorphStep:
    """One vee (with its preserved generator) or tilt step."""

    kind: StepKind
    preserved: int | None = None

    def __post_init__(self) -> None:
        if self.kind is StepKind.VEE and (self.preserved or 0) < 0:
            raise CliffordError(f"Negative preserved index {self.preserved}")
        if self.kind is StepKind.VEE and self.preserved is None:
            raise CliffordError("Vee step needs a preserved index")
        if self.kind is StepKind.TILT and self.preserved is not None:
            raise CliffordError("Tilt step takes no preserved index")

    @classmethod
    def vee(cls, preserved: int) -> MorphStep:
        """Vee step preserving the square of generator ``preserved``."""
        return cls(StepKind.VEE, preserved)

    @classmethod
    def tilt(cls) -> MorphStep:
        """Tilt step, flipping every square."""
        return cls(StepKind.TILT)

    def apply(self, sig: Signature) -> Signature:
        """Signature whose product this step simulates on top of ``sig``."""
        if self.kind is StepKind.TILT:
            return sig.flipped()
        assert self.preserved is not None
        if self.preserved >= sig.n:
            raise CliffordError(
                f"Preserved index {self.preserved} invalid for dimension {sig.n}"
            )
        return sig.flipped(keep=(self.preserved,))

    def __str__(self) -> str:
        if self.kind is StepKind.TILT:
            return "tilt"
        return f"vee({self.preserved})"


def describe_steps(origin: Signature | str, steps: Sequence[MorphStep]) -> str:
    """Provenance string: the origin followed by the morph steps.

    A signature origin reads as its base product; a string is an existing
    provenance that the steps extend.
    """
    head = f"base {origin}" if isinstance(origin, Signature) else origin
    return " -> ".join([head, *(str(step) for step in steps)])


@dataclass(frozen=True)
class MorphPlan:
    """Sequence of steps turning the product of ``source`` into that of ``target``."""

    source: Signature
    target: Signature
    steps: tuple[MorphStep, ...]

    def __post_init__(self) -> None:
        object.__setattr__(self, "steps", tuple(self.steps))
        if self.source.n != self.target.n:
            raise DimensionMismatchError(
                f"Cannot plan between dimensions {self.source.n} and {self.target.n}"
            )
        reached = self.source
        for step in self.steps:
            reached = step.apply(reached)
        if reached != self.target:
            raise CliffordError(
                f"Plan {self} reaches {reached}, not the target {self.target}"
            )

    def __len__(self) -> int:
        return len(self.steps)

    def __str__(self) -> str:
        body = ", ".join(str(step) for step in self.steps)
        return f"{self.source} => {self.target}: [{body}]"


@dataclass(frozen=True)
class IsomorphismReport:
    """Outcome of an entrywise table comparison."""

    equal: bool
    first_mismatch: tuple[BladeIndex, BladeIndex] | None = None
