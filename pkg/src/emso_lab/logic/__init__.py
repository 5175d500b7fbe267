from .ast import (
    Adj, And, BinOp, Eq, Exists, Forall, Formula, Iff, Implies, LogicError, Member, Not, Or, Quant,
    QuantifierDepth, free_variables, quantifier_depth, size, to_text, total_depth,
)
from .builtins import builtin
from .catalog import catalog_e12, in_e12
from .evaluate import EvalBudgetExceeded, UnassignedVariableError, evaluate, evaluate_naive
from .parser import ParseError, ShadowingError, UnboundVariableError, parse_formula, parse_sentence

__all__ = [
    "Adj", "And", "BinOp", "Eq", "Exists", "Forall", "Formula", "Iff", "Implies", "LogicError",
    "Member", "Not", "Or", "Quant", "QuantifierDepth", "free_variables", "quantifier_depth", "size",
    "to_text", "total_depth", "builtin", "catalog_e12", "in_e12", "EvalBudgetExceeded",
    "UnassignedVariableError", "evaluate", "evaluate_naive", "ParseError", "ShadowingError",
    "UnboundVariableError", "parse_formula", "parse_sentence",
]
