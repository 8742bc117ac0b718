from .arith import solve_arith
from .logic import solve_logic
from .query import Obligation, SolverBudget, build_query, make_obligation, premises_query, solve
from .sets import solve_abstract_set, solve_concrete_set
from .smtlib import export_smtlib
from .verdict import Model, ModelValue, Outcome, Verdict

__all__ = [
    "Obligation", "SolverBudget", "build_query", "make_obligation", "premises_query",
    "solve", "solve_arith", "solve_logic", "solve_abstract_set", "solve_concrete_set",
    "export_smtlib", "Verdict", "Outcome", "Model", "ModelValue",
]
