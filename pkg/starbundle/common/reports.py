"""Pydantic schemas for verification reports.

Every check in the engine returns a ``VerificationReport`` instead of raising.
Reports carry the verdict, the equation tag being verified, the lowest failing
deformation order, a pretty-printed witness, the bounds used and any exact
coefficients as strings, so that they serialize losslessly and deterministically.

References:
    - [Pydantic Documentation](https://docs.pydantic.dev/)

### Legal
SPDX-FileCopyright © Robert Ferguson <rmferguson@pm.me>

SPDX-License-Identifier: [MIT](https://spdx.org/licenses/MIT.html)
"""

import json
from collections.abc import Iterable
from enum import Enum
from typing import Any

from pydantic import BaseModel, Field

__all__ = [
    "Verdict",
    "VerificationReport",
    "merge_reports",
    "render_report",
    "series_result",
]


class Verdict(str, Enum):
    """Enumeration for report outcomes."""

    PASS = "pass"
    FAIL = "fail"
    INCONCLUSIVE = "inconclusive"
    COMPUTED = "computed"


class VerificationReport(BaseModel):
    """Schema for a single verification or computation outcome."""

    verdict: Verdict = Field(..., description="Outcome of the check")
    check: str = Field(..., description="Short name of the check that ran")
    equation: str = Field(..., description="Equation tag the check verifies")
    axiom: str | None = Field(None, description="Failing axiom for multi-axiom checks")
    failing_order: int | None = Field(None, description="Lowest deformation order at which the check fails")
    witness: list[str] = Field(default_factory=list, description="Pretty-printed witness inputs")
    bounds: dict[str, int] = Field(default_factory=dict, description="Degree, order and ansatz bounds used")
    checked: int = Field(0, description="Number of tuples examined")
    completeness_degree: int | None = Field(None, description="Degree bound that makes the check complete")
    result: dict[str, Any] = Field(default_factory=dict, description="Exact results keyed for serialization")

    @property
    def passed(self) -> bool:
        """Whether the verdict is a pass."""
        return self.verdict == Verdict.PASS

    def to_json(self) -> str:
        """Serialize with sorted keys so identical inputs give identical bytes."""
        return render_report(self)


def render_report(report: VerificationReport) -> str:
    """Render a report as deterministic JSON.

    Args:
        report: The report to serialize

    Returns:
        str: Indented JSON with sorted keys and a trailing newline
    """
    return json.dumps(report.model_dump(mode="json"), sort_keys=True, indent=2, ensure_ascii=False) + "\n"


def series_result(coefficients: Iterable[object]) -> dict[str, str]:
    """Key the coefficients of a series by order.

    Args:
        coefficients: Coefficients in increasing order of lam

    Returns:
        dict: ``{"order0": ..., "order1": ...}`` with string values
    """
    return {f"order{index}": str(value) for index, value in enumerate(coefficients)}


def merge_reports(check: str, equation: str, reports: list[VerificationReport]) -> VerificationReport:
    """Combine sub-reports, keeping the first failure.

    Args:
        check: Name of the combined check
        equation: Equation tag of the combined check
        reports: Sub-reports in evaluation order

    Returns:
        VerificationReport: The first failing sub-report, or a pass that sums the work done
    """
    for report in reports:
        if report.verdict != Verdict.PASS:
            return report
    bounds: dict[str, int] = {}
    for report in reports:
        bounds.update(report.bounds)
    return VerificationReport(
        verdict=Verdict.PASS,
        check=check,
        equation=equation,
        bounds=bounds,
        checked=sum(report.checked for report in reports),
    )
