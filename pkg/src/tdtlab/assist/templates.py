"""Prompt templates for the two assist pipelines.

Decompose prompts have four segments: role and output contract,
definitions (with the five CAE building blocks), worked examples covering
each block, and the incomplete final example holding the goal placeholder.
Translate prompts carry symbol conventions, the SI-units rule and three
worked translation examples, then the pending sentence with optional
sub-translation cues.

Placeholders are literal ``{name}`` markers substituted by plain string
replacement, so braces elsewhere in the template text are harmless.
"""

from __future__ import annotations

from dataclasses import dataclass
from enum import Enum

from ..errors import MissingPlaceholder

CAE_BLOCKS = (
    "Decomposition",
    "Substitution",
    "Concretion",
    "Calculation or Proof",
    "Evidence Incorporation",
)

SI_UNITS_RULE = ("Use international standard (SI) units for every quantity and write "
                 "bare numbers without unit suffixes.")


class TemplateKind(str, Enum):
    DECOMPOSE = "Decompose"
    TRANSLATE = "Translate"


@dataclass(frozen=True)
class PromptTemplate:
    kind: TemplateKind
    segments: tuple[str, ...]

    def placeholders(self) -> set[str]:
        import re

        names = set()
        for segment in self.segments:
            names.update(re.findall(r"\{([a-z_]+)\}", segment))
        return names


_DECOMPOSE_SEGMENTS = (
    """You are an expert in assurance cases for safety-critical systems.
Break a given goal down into sub-goals, explain the reasoning behind the split,
and propose solutions (evidence) where a sub-goal can be discharged directly.
Answer strictly in the labeled-line format shown by the examples below:
lines starting with "Goal:", "Strategy:", "Sub-goal N:", "Explanation:",
"Solution N:" (N names the sub-goal a solution supports) and a final
"Building blocks:" line.""",
    """Definitions.
A Goal is a claim about the system that must be supported.
A Strategy describes how a goal is broken into sub-goals.
A Solution is concrete evidence that discharges a goal.
Arguments are built from five basic CAE (Claim-Argument-Evidence) building blocks:
1. Decomposition: split a claim into sub-claims that jointly cover it.
2. Substitution: replace a claim by an equivalent, easier-to-show claim.
3. Concretion: make a vague claim precise.
4. Calculation or Proof: discharge a claim by computing or proving it.
5. Evidence Incorporation: attach direct evidence to a claim.""",
    """Example (Decomposition, Evidence Incorporation):
Goal: The self-driving car avoids collisions in urban traffic.
Strategy: Argue separately over perception, planning and actuation.
Sub-goal 1: The perception stack detects all relevant obstacles.
Explanation: Collision avoidance starts with complete obstacle detection.
Sub-goal 2: The planner keeps a safe distance envelope at all times.
Explanation: Planned trajectories must respect braking margins.
Solution 2: Simulation campaign covering 10,000 urban scenarios.
Building blocks: Decomposition, Evidence Incorporation

Example (Concretion, Calculation or Proof):
Goal: The infusion pump delivers medication accurately.
Strategy: Make the accuracy claim precise, then prove the bound.
Sub-goal 1: The delivered volume deviates less than 5 percent from the setpoint.
Explanation: A measurable bound replaces the vague accuracy wording.
Solution 1: Static worst-case analysis of the metering loop.
Building blocks: Concretion, Calculation or Proof

Example (Substitution):
Goal: Stored patient records remain confidential.
Strategy: Replace confidentiality with the standard encryption claim.
Sub-goal 1: All records are encrypted at rest with AES-256.
Explanation: Industry-standard encryption is accepted as confidentiality.
Solution 1: Configuration audit of the storage cluster.
Building blocks: Substitution, Evidence Incorporation""",
    """Now complete the following example in the same format.
This goal sits {layers} layer(s) above the evidence level.
Goal: {goal}""",
)

_TRANSLATE_SEGMENTS = (
    """You translate natural-language requirements into constraint expressions
for an automatic solver.  Emit only the constraint, no commentary.""",
    """Symbol conventions: variables are lower_snake_case identifiers; the
relations are =, <, <=, >, >=; conjuncts are separated by ';'.
""" + SI_UNITS_RULE,
    """Example 1.
Sentence: The water tank holds at most 200 liters.
Constraint: tank_volume <= 200

Example 2.
Sentence: Travel time is distance divided by speed.
Constraint: travel_time = distance / speed

Example 3.
Sentence: The sensor sampling period is 20 ms.
Constraint: sampling_period = 0.02""",
    """Translate the following sentence.
{sub_translations}Sentence: {nl_text}
Constraint:""",
)

DEFAULT_DECOMPOSE_TEMPLATE = PromptTemplate(TemplateKind.DECOMPOSE, _DECOMPOSE_SEGMENTS)
DEFAULT_TRANSLATE_TEMPLATE = PromptTemplate(TemplateKind.TRANSLATE, _TRANSLATE_SEGMENTS)


def _substitute(segments: tuple[str, ...], values: dict[str, str],
                required: tuple[str, ...]) -> str:
    joined = "\n\n".join(segments)
    for name in required:
        if "{" + name + "}" not in joined:
            raise MissingPlaceholder(f"template lacks {{{name}}} placeholder")
    for name, value in values.items():
        joined = joined.replace("{" + name + "}", value)
    return joined


def build_decomposition_prompt(goal: str, layers: int,
                               tpl: PromptTemplate = DEFAULT_DECOMPOSE_TEMPLATE) -> str:
    if not goal.strip():
        raise ValueError("goal must be non-empty")
    if layers < 1:
        raise ValueError("layers must be at least 1")
    return _substitute(tpl.segments, {"goal": goal, "layers": str(layers)}, ("goal",))


def build_translation_prompt(nl: str, subs: list[tuple[str, str]] | tuple = (),
                             tpl: PromptTemplate = DEFAULT_TRANSLATE_TEMPLATE) -> str:
    if not nl.strip():
        raise ValueError("sentence must be non-empty")
    cues = ""
    for sentence, constraint in subs:
        cues += f"Known sub-translation: {sentence} -> {constraint}\n"
    return _substitute(tpl.segments, {"nl_text": nl, "sub_translations": cues},
                       ("nl_text", "sub_translations"))
