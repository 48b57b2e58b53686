from .checks import CHECKS, run_checks
from .evaluator import Evaluator, evaluate, evaluate_text, render
from .models import (
    Binary,
    BladeAtom,
    Expression,
    GradeOf,
    Literal,
    OutputMode,
    ParseError,
    SessionConfig,
    Unary,
    parse_signature,
)
from .parser import parse

__all__ = [
    "CHECKS",
    "Binary",
    "BladeAtom",
    "Evaluator",
    "Expression",
    "GradeOf",
    "Literal",
    "OutputMode",
    "ParseError",
    "SessionConfig",
    "Unary",
    "evaluate",
    "evaluate_text",
    "parse",
    "parse_signature",
    "render",
    "run_checks",
]
