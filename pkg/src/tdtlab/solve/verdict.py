"""Solver outcomes and witness models."""

from __future__ import annotations

from dataclasses import dataclass, field
from enum import Enum
from fractions import Fraction
from typing import Union

ModelValue = Union[Fraction, str, frozenset]
Model = tuple[tuple[str, ModelValue], ...]


class Outcome(str, Enum):
    SAT = "Sat"
    UNSAT = "Unsat"
    UNKNOWN = "Unknown"


@dataclass(frozen=True)
class Verdict:
    outcome: Outcome
    model: Model | None = None
    diagnostics: dict = field(default_factory=dict)

    def __post_init__(self):
        if (self.model is not None) != (self.outcome == Outcome.SAT):
            raise ValueError("model must be present exactly for Sat verdicts")
