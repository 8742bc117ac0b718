from .ast import CType, ConstraintAst, classify
from .parser import parse_arith_conj, parse_constraint, parse_logic_program, parse_set_program
from .printer import format_rational, print_constraint
from .rules import Rule, RuleText, parse_rule_text, skeleton_from_rules

__all__ = [
    "CType", "ConstraintAst", "classify",
    "parse_constraint", "parse_arith_conj", "parse_logic_program", "parse_set_program",
    "print_constraint", "format_rational",
    "Rule", "RuleText", "parse_rule_text", "skeleton_from_rules",
]
