"""Tree evaluation: one satisfiability obligation per fully formalized
family, statuses assigned from solver verdicts.

A family is the parent node plus its direct children.  The parent's
expression is the conclusion, the children's expressions are the premises,
and the edge relation picks the And/Or query shape.  Soundness is local:
statuses never cascade; the report layer derives the tainted ancestor set
instead.  Leaves carrying an expression are accepted as evidence and
marked Sound with an evidence-assumed flag so reports can separate proved
from assumed.
"""

from __future__ import annotations

import datetime as _dt
from concurrent.futures import ThreadPoolExecutor
from dataclasses import dataclass

from .errors import IllFormedQuery, MixedCtypes, ParseError, UnboundSetName
from .lang import parse_constraint
from .model import Project, Status, validation_errors
from .report import EvaluationReport, build_report
from .solve import (Outcome, SolverBudget, Verdict, build_query, make_obligation,
                    premises_query, solve)

__all__ = ["SolverBudget", "NodeOutcome", "evaluate_tree", "evaluate_subtree"]


@dataclass(frozen=True)
class NodeOutcome:
    status: Status
    verdict: Verdict | None = None
    evidence_assumed: bool = False
    vacuous_premises: bool = False
    detail: str = ""


def _family_outcome(project: Project, node_id: str, budget: SolverBudget) -> NodeOutcome:
    node = project.nodes[node_id]
    if not node.children:
        if node.expr is None:
            return NodeOutcome(Status.NOT_EVALUATED, detail="no formal expression")
        try:
            parse_constraint(node.expr)
        except ParseError as exc:
            return NodeOutcome(Status.ILL_FORMED, detail=f"unparseable expression: {exc}")
        return NodeOutcome(Status.SOUND, evidence_assumed=True,
                           detail="leaf evidence assumed true")

    missing = [n.id for n in (node, *(project.nodes[c] for c in node.children))
               if n.expr is None]
    if missing:
        return NodeOutcome(Status.NOT_EVALUATED,
                           detail=f"missing expression on {', '.join(missing)}")
    try:
        conclusion = parse_constraint(node.expr)
        premises = [parse_constraint(project.nodes[c].expr) for c in node.children]
    except ParseError as exc:
        return NodeOutcome(Status.ILL_FORMED, detail=f"unparseable expression: {exc}")
    try:
        obligation = make_obligation(premises, conclusion, node.relation)
        verdict = solve(build_query(obligation), budget)
    except (MixedCtypes, IllFormedQuery, UnboundSetName) as exc:
        return NodeOutcome(Status.ILL_FORMED, detail=str(exc))

    if verdict.outcome == Outcome.UNSAT:
        vacuous = False
        check = premises_query(obligation)
        if check is not None:
            vacuous = solve(check, budget).outcome == Outcome.UNSAT
        return NodeOutcome(Status.SOUND, verdict=verdict, vacuous_premises=vacuous)
    if verdict.outcome == Outcome.SAT:
        return NodeOutcome(Status.UNSOUND, verdict=verdict,
                           detail="premises admit a counterexample to the conclusion")
    return NodeOutcome(Status.UNKNOWN, verdict=verdict,
                       detail=verdict.diagnostics.get("reason", "solver budget exhausted"))


def evaluate_subtree(project: Project, node_id: str,
                     budget: SolverBudget | None = None) -> NodeOutcome:
    """Status of one family; used for incremental re-checks after an edit."""
    if node_id not in project.nodes:
        raise KeyError(node_id)
    return _family_outcome(project, node_id, budget or SolverBudget())


def evaluate_tree(project: Project, budget: SolverBudget | None = None,
                  parallelism: int = 4, revision: int | None = None,
                  generated_at: str | None = None) -> EvaluationReport:
    errors = validation_errors(project)
    if errors:
        raise ValueError(f"project is invalid: {errors[0]}")
    budget = budget or SolverBudget()
    node_ids = sorted(project.nodes)
    if parallelism > 1 and len(node_ids) > 1:
        with ThreadPoolExecutor(max_workers=parallelism) as pool:
            results = list(pool.map(
                lambda nid: _family_outcome(project, nid, budget), node_ids))
        outcomes = dict(zip(node_ids, results))
    else:
        outcomes = {nid: _family_outcome(project, nid, budget) for nid in node_ids}
    when = generated_at or _dt.datetime.now(_dt.timezone.utc).isoformat()
    return build_report(project, outcomes, budget, revision=revision, generated_at=when)
