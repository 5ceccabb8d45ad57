"""Aggregated run reports with lossless (de)serialization.

A RunReport bundles everything one scenario run produced: the structure
validation, the per-check verdicts, and the cross-check residuals, plus the
seed/layout provenance.  Wall-clock timing lives on the object for interactive
use but is deliberately excluded from serialization so that reports from
identical inputs are byte-identical.
"""

from __future__ import annotations

from dataclasses import dataclass, field

from .contact import StructureCheck, ValidationReport
from .spheresearch import LAYOUT_VERSION
from .verifier import CrossCheckReport, VerdictReport

__all__ = ["RunReport"]


@dataclass
class RunReport:
    validation: ValidationReport
    verdicts: list[VerdictReport]
    cross: CrossCheckReport | None = None
    provenance: dict = field(default_factory=lambda: {"layout_version": LAYOUT_VERSION})
    timing_seconds: float = 0.0  # runtime-only; never serialized

    def to_dict(self) -> dict:
        data = {
            "validation": {
                "tolerance": self.validation.tolerance,
                "checks": [
                    {"name": c.name, "max_residual": float(c.max_residual), "pass": c.passed}
                    for c in self.validation.checks
                ],
            },
            "verdicts": [v.to_dict() for v in self.verdicts],
            "provenance": self.provenance,
        }
        if self.cross is not None:
            data["cross_check"] = {
                "residuals": {k: float(v) for k, v in self.cross.residuals.items()},
                "q_min": float(self.cross.q_min),
                "cauchy_schwarz_slack": float(self.cross.cauchy_schwarz_slack),
            }
        return data

    @classmethod
    def from_dict(cls, data: dict) -> "RunReport":
        validation = ValidationReport(
            checks=tuple(
                StructureCheck(c["name"], c["max_residual"], c["pass"])
                for c in data["validation"]["checks"]
            ),
            tolerance=data["validation"]["tolerance"],
        )
        verdicts = [
            VerdictReport(
                theorem_id=v["theorem"], lhs=v["lhs"], rhs=v["rhs"], slack=v["slack"],
                holds=v["holds"], tol=v["tol"], diagnostics=v["diagnostics"],
            )
            for v in data["verdicts"]
        ]
        cross = None
        if "cross_check" in data:
            cc = data["cross_check"]
            cross = CrossCheckReport(
                residuals=cc["residuals"], q_min=cc["q_min"],
                cauchy_schwarz_slack=cc["cauchy_schwarz_slack"],
            )
        return cls(validation=validation, verdicts=verdicts, cross=cross,
                   provenance=data.get("provenance", {}))
