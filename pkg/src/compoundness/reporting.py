"""Shared report records for randomized verification runs."""

from __future__ import annotations

import json
from dataclasses import dataclass


@dataclass(frozen=True)
class LawFailure:
    """One violated law instance: which law, on what input, by how much."""

    law: str
    inputs: str
    discrepancy: float

    def to_dict(self) -> dict:
        return {"law": self.law, "inputs": self.inputs,
                "discrepancy": self.discrepancy}


@dataclass(frozen=True)
class VerificationReport:
    """Result of one verification suite run under a fixed seed."""

    suite: str
    seed: int
    trials: int
    failures: tuple[LawFailure, ...]
    max_discrepancy: float
    elapsed_s: float

    @property
    def ok(self) -> bool:
        return not self.failures

    def to_dict(self, include_elapsed: bool = True) -> dict:
        data = {
            "suite": self.suite,
            "seed": self.seed,
            "trials": self.trials,
            "failures": [f.to_dict() for f in self.failures],
            "max_discrepancy": self.max_discrepancy,
        }
        if include_elapsed:
            data["elapsed_s"] = self.elapsed_s
        return data

    def to_json(self, include_elapsed: bool = True) -> str:
        return json.dumps(self.to_dict(include_elapsed), sort_keys=True)
