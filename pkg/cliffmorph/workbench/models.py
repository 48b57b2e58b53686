"""Workbench models: session configuration, expression trees and reports."""

from __future__ import annotations

from dataclasses import dataclass
from enum import Enum
from fractions import Fraction
from typing import Any

import msgspec
from pydantic import BaseModel, Field, field_validator, model_validator

from cliffmorph.algebra.models import (
    BladeIndex,
    CliffordError,
    Signature,
    make_signature,
)
from cliffmorph.config import get_settings


class ParseError(CliffordError):
    """Exception raised for malformed expressions, with the offending position."""

    def __init__(self, message: str, position: int, token: str) -> None:
        super().__init__(f"{message} at position {position}: {token!r}")
        self.position = position
        self.token = token


class OutputMode(str, Enum):
    """Human-readable or JSON output."""

    HUMAN = "human"
    STRUCTURED = "structured"


def parse_signature(text: str) -> Signature:
    """Signature from ``p,q`` or from a square pattern such as ``-+++``."""
    text = text.strip()
    if text and set(text) <= {"+", "-"}:
        return Signature(tuple(1 if c == "+" else -1 for c in text))
    parts = text.split(",")
    if len(parts) != 2 or not all(part.strip().isdigit() for part in parts):
        raise ValueError(f"Signature must look like 'p,q' or '+---', got {text!r}")
    return make_signature(int(parts[0]), int(parts[1]))


class SessionConfig(BaseModel):
    """Signature, preserved vee index, output mode and seed of one command."""

    squares: tuple[int, ...] = Field(..., description="Generator squares")
    preserve: int = Field(default=0, ge=0, description="Preserved index for 'v'")
    output: OutputMode = Field(default=OutputMode.HUMAN, description="Output mode")
    seed: int = Field(default=0, description="Seed for randomized checks")

    model_config = {"frozen": True}

    @field_validator("squares")
    @classmethod
    def _valid_squares(cls, squares: tuple[int, ...]) -> tuple[int, ...]:
        """Reject dimensions out of range and squares other than +-1."""
        n_max = get_settings().n_max
        if not 1 <= len(squares) <= n_max:
            raise ValueError(f"Dimension {len(squares)} outside 1..{n_max}")
        if any(s not in (1, -1) for s in squares):
            raise ValueError(f"Squares must be +1 or -1, got {squares}")
        return squares

    @model_validator(mode="after")
    def _preserve_in_range(self) -> SessionConfig:
        """Reject a preserved index past the last generator."""
        if self.preserve >= len(self.squares):
            raise ValueError(
                f"Preserved index {self.preserve} invalid for dimension "
                f"{len(self.squares)}"
            )
        return self

    @classmethod
    def from_flags(
        cls,
        signature: str = "4,0",
        preserve: int = 0,
        structured: bool = False,
        seed: int | None = None,
    ) -> SessionConfig:
        """Build a session from command-line flag values."""
        try:
            sig = parse_signature(signature)
        except CliffordError as e:
            raise ValueError(str(e)) from e
        return cls(
            squares=sig.squares,
            preserve=preserve,
            output=OutputMode.STRUCTURED if structured else OutputMode.HUMAN,
            seed=get_settings().default_seed if seed is None else seed,
        )

    @property
    def signature(self) -> Signature:
        """The session signature."""
        return Signature(self.squares)

    @property
    def n(self) -> int:
        """Dimension of the session signature."""
        return len(self.squares)


# Expression trees


@dataclass(frozen=True)
class Literal:
    """Rational literal."""

    value: Fraction


@dataclass(frozen=True)
class BladeAtom:
    """Basis blade such as ``e013``."""

    mask: BladeIndex


@dataclass(frozen=True)
class Unary:
    """rev, gi, conj, star, or neg for a leading minus."""

    op: str
    operand: Expression


@dataclass(frozen=True)
class GradeOf:
    """Grade projection ``grade(operand, k)``."""

    operand: Expression
    grade: int


@dataclass(frozen=True)
class Binary:
    """Infix operator: + - * ^ . v t."""

    op: str
    left: Expression
    right: Expression


Expression = Literal | BladeAtom | Unary | GradeOf | Binary


# Structured reports


class CheckResult(msgspec.Struct):
    """Outcome of one named check."""

    name: str
    passed: bool
    detail: str
    counterexample: str | None = None


class VerifyReport(msgspec.Struct):
    """Results of a verify run."""

    signature: str
    preserve: int
    seed: int
    passed: bool
    checks: list[CheckResult]


class PlanReport(msgspec.Struct):
    """Plan steps and whether the planned table matches the target."""

    source: str
    target: str
    steps: list[str]
    provenance: str
    verified: bool
    first_mismatch: tuple[int, int] | None = None


class DiracReport(msgspec.Struct):
    """Both component systems and the recoding between them."""

    mass: str
    charge: str
    with_potential: bool
    against: str
    minkowski: dict[str, Any]
    other: dict[str, Any]
    recoding: dict[str, Any] | None
    equivalent: bool


class SelfDualReport(msgspec.Struct):
    """Dual 2-form basis and its checks."""

    sign: int
    basis: list[str]
    passed: bool
    checks: list[CheckResult]


class EvalReport(msgspec.Struct):
    """Expression, session and its value."""

    expression: str
    signature: str
    preserve: int
    value: str
    terms: list[tuple[str, str]]
