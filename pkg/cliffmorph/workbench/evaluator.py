"""Evaluate expression trees with the session's product tables, and render results."""

from __future__ import annotations

import logging
from collections.abc import Callable
from functools import cached_property, lru_cache

from cliffmorph.algebra.models import Multivector, blade_label
from cliffmorph.algebra.products import (
    conjugate,
    contract,
    grade_involution,
    grade_project,
    reverse,
    wedge,
)
from cliffmorph.fields.calculus import hodge_star
from cliffmorph.morph.tables import (
    ProductTable,
    base_table,
    table_product,
    tilt_table,
    vee_table,
)

from .models import (
    Binary,
    BladeAtom,
    Expression,
    GradeOf,
    Literal,
    SessionConfig,
    Unary,
)
from .parser import parse

logger = logging.getLogger(__name__)


class Evaluator:
    """Evaluates expressions in one session; tables are built on first use."""

    def __init__(self, cfg: SessionConfig) -> None:
        self.cfg = cfg
        self.sig = cfg.signature

    @cached_property
    def base(self) -> ProductTable:
        """Clifford product table of the session signature."""
        return base_table(self.sig)

    @cached_property
    def vee(self) -> ProductTable:
        """Vee table about the session's preserved index."""
        return vee_table(self.base, self.cfg.preserve)

    @cached_property
    def tilt(self) -> ProductTable:
        """Tilt table of the session signature."""
        return tilt_table(self.base)

    def binary(self, op: str) -> Callable[[Multivector, Multivector], Multivector]:
        """Function implementing the infix operator ``op``."""
        if op == "+":
            return lambda a, b: a + b
        if op == "-":
            return lambda a, b: a - b
        if op == "*":
            return lambda a, b: table_product(self.base, a, b)
        if op == "^":
            return wedge
        if op == ".":
            return contract
        if op == "v":
            return lambda a, b: table_product(self.vee, a, b)
        if op == "t":
            return lambda a, b: table_product(self.tilt, a, b)
        raise ValueError(f"Unknown operator {op!r}")

    def unary(self, op: str, value: Multivector) -> Multivector:
        """Apply the named function ``op`` to ``value``."""
        if op == "neg":
            return -value
        if op == "rev":
            return reverse(value)
        if op == "gi":
            return grade_involution(value)
        if op == "conj":
            return conjugate(value)
        if op == "star":
            return hodge_star(self.base, value)
        raise ValueError(f"Unknown function {op!r}")

    def evaluate(self, expr: Expression) -> Multivector:
        """Value of ``expr`` in the session algebra."""
        if isinstance(expr, Literal):
            return Multivector.scalar(self.sig, expr.value)
        if isinstance(expr, BladeAtom):
            return Multivector.blade(self.sig, expr.mask)
        if isinstance(expr, Unary):
            return self.unary(expr.op, self.evaluate(expr.operand))
        if isinstance(expr, GradeOf):
            return grade_project(self.evaluate(expr.operand), expr.grade)

        # Walk the left spine so long operator chains do not recurse.
        spine: list[Binary] = []
        node: Expression = expr
        while isinstance(node, Binary):
            spine.append(node)
            node = node.left
        value = self.evaluate(node)
        for step in reversed(spine):
            value = self.binary(step.op)(value, self.evaluate(step.right))
        return value


@lru_cache(maxsize=8)
def evaluator_for(cfg: SessionConfig) -> Evaluator:
    """Fresh evaluator for ``cfg``."""
    return Evaluator(cfg)


def evaluate(expr: Expression, cfg: SessionConfig) -> Multivector:
    """Evaluate a parsed expression for ``cfg``."""
    return evaluator_for(cfg).evaluate(expr)


def evaluate_text(text: str, cfg: SessionConfig) -> Multivector:
    """Parse and evaluate ``text`` for ``cfg``."""
    return evaluate(parse(text, cfg), cfg)


def render(value: Multivector) -> str:
    """Signed blade sum in expression syntax, e.g. ``-1/2*e1 + e012``."""
    parts: list[str] = []
    for mask, coeff in value.terms():
        magnitude = abs(coeff)
        if mask == 0:
            body = str(magnitude)
        elif magnitude == 1:
            body = blade_label(mask)
        else:
            body = f"{magnitude}*{blade_label(mask)}"
        if not parts:
            parts.append(f"-{body}" if coeff < 0 else body)
        else:
            parts.append(f"- {body}" if coeff < 0 else f"+ {body}")
    return " ".join(parts) if parts else "0"
