"""Evaluation reports and graph export.

The JSON rendering is byte-deterministic for a given report and round
trips through report_from_json.  The markdown rendering lists every risk
with its counterexample bindings as ``name = value`` lines.  DOT export
colors nodes blue (plain), green (carries an expression) or yellow
(unsound or tainted), with And/Or labels on the edges.
"""

from __future__ import annotations

import json
from dataclasses import dataclass, field
from fractions import Fraction

from .lang.printer import format_rational
from .model import Project, Status
from .solve import Outcome

_RISK_LABELS = {
    Status.UNSOUND: "unsound",
    Status.UNKNOWN: "inconclusive (budget)",
    Status.ILL_FORMED: "ill-formed",
    Status.NOT_EVALUATED: "not evaluated",
}


@dataclass(frozen=True)
class RiskEntry:
    node_id: str
    status: Status
    label: str
    explanation: str
    outcome: str | None = None
    relation: str | None = None
    model: tuple = ()
    diagnostics: dict = field(default_factory=dict)


@dataclass(frozen=True)
class NodeReport:
    status: Status
    evidence_assumed: bool = False
    vacuous_premises: bool = False


@dataclass(frozen=True)
class EvaluationReport:
    statuses: dict[str, NodeReport]
    risks: tuple[RiskEntry, ...]
    tainted: tuple[str, ...]
    counts: dict[str, int]
    budget: dict
    revision: int | None
    generated_at: str


def _node_order(node_id: str):
    return (0, int(node_id), "") if node_id.isdigit() else (1, 0, node_id)


def build_report(project: Project, outcomes: dict, budget, revision, generated_at) -> EvaluationReport:
    statuses: dict[str, NodeReport] = {}
    counts: dict[str, int] = {s.value: 0 for s in Status}
    for node_id in sorted(outcomes, key=_node_order):
        oc = outcomes[node_id]
        statuses[node_id] = NodeReport(oc.status, oc.evidence_assumed, oc.vacuous_premises)
        counts[oc.status.value] += 1

    parents: dict[str, str] = {}
    for node in project.nodes.values():
        for child in node.children:
            parents[child] = node.id
    bad = {nid for nid, oc in outcomes.items()
           if oc.status in (Status.UNSOUND, Status.UNKNOWN, Status.ILL_FORMED)}
    tainted: set[str] = set()
    for nid in bad:
        current = parents.get(nid)
        while current is not None and current not in tainted:
            tainted.add(current)
            current = parents.get(current)

    risks = []
    for node_id in sorted(outcomes, key=_node_order):
        oc = outcomes[node_id]
        if oc.status == Status.SOUND:
            continue
        verdict = oc.verdict
        risks.append(RiskEntry(
            node_id=node_id,
            status=oc.status,
            label=_RISK_LABELS[oc.status],
            explanation=oc.detail,
            outcome=verdict.outcome.value if verdict else None,
            relation=project.nodes[node_id].relation.value if project.nodes[node_id].children else None,
            model=tuple(verdict.model) if verdict and verdict.model else (),
            diagnostics=dict(verdict.diagnostics) if verdict else {},
        ))

    return EvaluationReport(
        statuses=statuses,
        risks=tuple(risks),
        tainted=tuple(sorted(tainted, key=_node_order)),
        counts=counts,
        budget={"max_steps": budget.max_steps, "max_boxes": budget.max_boxes,
                "max_universe": budget.max_universe, "wall_ms": budget.wall_ms},
        revision=revision,
        generated_at=generated_at,
    )


# --------------------------------------------------------------------------
# model value serialization

def _value_to_json(value):
    if isinstance(value, Fraction):
        return {"type": "rational", "value": format_rational(value)}
    if isinstance(value, frozenset):
        return {"type": "set", "value": sorted(value)}
    if isinstance(value, bool):
        return {"type": "atom", "value": str(value)}
    if isinstance(value, int):
        return {"type": "nat", "value": value}
    return {"type": "atom", "value": str(value)}


def _value_from_json(obj):
    if obj["type"] == "rational":
        return Fraction(obj["value"])
    if obj["type"] == "set":
        return frozenset(obj["value"])
    if obj["type"] == "nat":
        return int(obj["value"])
    return str(obj["value"])


def format_model_value(value) -> str:
    if isinstance(value, Fraction):
        return format_rational(value)
    if isinstance(value, frozenset):
        return "{" + ", ".join(str(v) for v in sorted(value)) + "}"
    return str(value)


# --------------------------------------------------------------------------
# rendering

def report_to_dict(report: EvaluationReport) -> dict:
    return {
        "generated_at": report.generated_at,
        "revision": report.revision,
        "counts": report.counts,
        "budget": report.budget,
        "statuses": {
            nid: {"status": nr.status.value,
                  "evidence_assumed": nr.evidence_assumed,
                  "vacuous_premises": nr.vacuous_premises}
            for nid, nr in report.statuses.items()
        },
        "risks": [
            {"node_id": r.node_id, "status": r.status.value, "label": r.label,
             "explanation": r.explanation, "outcome": r.outcome,
             "relation": r.relation,
             "model": [{"name": n, **_value_to_json(v)} for n, v in r.model],
             "diagnostics": r.diagnostics}
            for r in report.risks
        ],
        "tainted": list(report.tainted),
    }


def report_from_json(text: str) -> EvaluationReport:
    data = json.loads(text)
    statuses = {
        nid: NodeReport(Status(entry["status"]), entry["evidence_assumed"],
                        entry["vacuous_premises"])
        for nid, entry in data["statuses"].items()
    }
    risks = tuple(
        RiskEntry(node_id=r["node_id"], status=Status(r["status"]), label=r["label"],
                  explanation=r["explanation"], outcome=r["outcome"],
                  relation=r["relation"],
                  model=tuple((m["name"], _value_from_json(m)) for m in r["model"]),
                  diagnostics=r["diagnostics"])
        for r in data["risks"]
    )
    return EvaluationReport(statuses=statuses, risks=risks,
                            tainted=tuple(data["tainted"]), counts=data["counts"],
                            budget=data["budget"], revision=data["revision"],
                            generated_at=data["generated_at"])


def render_report(report: EvaluationReport, format: str = "json") -> str:
    if format == "json":
        return json.dumps(report_to_dict(report), indent=2, sort_keys=True) + "\n"
    if format != "markdown":
        raise ValueError(f"unknown report format {format!r}")
    lines = ["# Evaluation report", ""]
    lines.append(f"Generated: {report.generated_at}")
    if report.revision is not None:
        lines.append(f"Revision: {report.revision}")
    lines += ["", "## Summary", ""]
    for status in Status:
        n = report.counts.get(status.value, 0)
        if n:
            lines.append(f"- {status.value}: {n}")
    assumed = sum(1 for nr in report.statuses.values() if nr.evidence_assumed)
    if assumed:
        lines.append(f"- evidence assumed on {assumed} leaf node(s)")
    vacuous = [nid for nid, nr in report.statuses.items() if nr.vacuous_premises]
    if vacuous:
        lines.append(f"- vacuous premises on: {', '.join(vacuous)}")
    lines += ["", "## Risks", ""]
    if not report.risks:
        lines.append("No risks found.")
    for risk in report.risks:
        lines.append(f"### node {risk.node_id}: {risk.label}")
        if risk.explanation:
            lines.append(f"{risk.explanation}")
        if risk.model:
            lines.append("counterexample:")
            for name, value in risk.model:
                lines.append(f"- {name} = {format_model_value(value)}")
        lines.append("")
    if report.tainted:
        lines += ["## Tainted ancestors", ""]
        lines.append(", ".join(report.tainted))
        lines.append("")
    return "\n".join(lines).rstrip() + "\n"


# --------------------------------------------------------------------------
# DOT export

def _dot_escape(text: str) -> str:
    return text.replace("\\", "\\\\").replace('"', '\\"').replace("\n", "\\n")


def node_color(node, report: EvaluationReport | None, tainted: set[str]) -> str:
    if report is not None:
        nr = report.statuses.get(node.id)
        if (nr is not None and nr.status == Status.UNSOUND) or node.id in tainted:
            return "yellow"
    if node.expr is not None:
        return "green"
    return "blue"


def export_dot(project: Project, report: EvaluationReport | None = None) -> str:
    lines = ["digraph tdt {", "  node [shape=box, style=filled];"]
    tainted = set(report.tainted) if report is not None else set()
    for node_id in sorted(project.nodes, key=_node_order):
        node = project.nodes[node_id]
        color = node_color(node, report, tainted)
        label = _dot_escape(f"{node.id}: {node.description}")
        lines.append(f'  "{node.id}" [label="{label}", fillcolor={color}];')
    for node_id in sorted(project.nodes, key=_node_order):
        node = project.nodes[node_id]
        for child in node.children:
            lines.append(f'  "{node.id}" -> "{child}" [label="{node.relation.value}"];')
    lines.append("}")
    return "\n".join(lines) + "\n"
