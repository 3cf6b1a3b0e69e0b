"""Tests for verification reports and the exception hierarchy."""

import json

import pytest

from starbundle.common.constants import EQ_MOYAL, EQ_POISSON
from starbundle.common.exceptions import (
    AlgebraError,
    ArityUnsupported,
    CohomologyError,
    ExpressionSyntaxError,
    InputError,
    NoSolutionInTruncation,
    NotModuleToOrderK,
    OrderMismatch,
    StarbundleError,
    StarbundleException,
    UnknownIdentifier,
    WorkspaceError,
)
from starbundle.common.reports import Verdict, VerificationReport, merge_reports, render_report, series_result


def passing(check: str, checked: int, **bounds: int) -> VerificationReport:
    return VerificationReport(verdict=Verdict.PASS, check=check, equation=EQ_MOYAL, bounds=bounds, checked=checked)


def test_json_is_sorted_and_stable() -> None:
    """Test sorted keys, a trailing newline and identical bytes on repeat."""
    report = VerificationReport(
        verdict=Verdict.FAIL,
        check="assoc-check",
        equation=EQ_MOYAL,
        failing_order=2,
        witness=["x", "x", "x^2"],
        result={"order2": "-2"},
    )
    text = report.to_json()
    assert text == render_report(report)
    assert text.endswith("\n")
    data = json.loads(text)
    assert list(data) == sorted(data)
    assert data["verdict"] == "fail"
    assert data["witness"] == ["x", "x", "x^2"]


def test_passed_property() -> None:
    """Test that only a pass counts as passed."""
    assert passing("assoc-check", 1).passed
    computed = VerificationReport(verdict=Verdict.COMPUTED, check="star", equation=EQ_MOYAL)
    assert not computed.passed


def test_series_result_keys() -> None:
    """Test the order-keyed rendering of coefficients."""
    assert series_result(["x*y", "1/2*i", 0]) == {"order0": "x*y", "order1": "1/2*i", "order2": "0"}


def test_merge_keeps_first_failure() -> None:
    """Test that a merge returns the first non-passing sub-report unchanged."""
    failure = VerificationReport(verdict=Verdict.FAIL, check="schouten", equation=EQ_POISSON, failing_order=0)
    inconclusive = VerificationReport(verdict=Verdict.INCONCLUSIVE, check="other", equation=EQ_POISSON)
    merged = merge_reports("combined", EQ_POISSON, [passing("first", 3), failure, inconclusive])
    assert merged is failure


def test_merge_sums_passes() -> None:
    """Test that a merged pass adds up the work and the bounds."""
    merged = merge_reports("combined", EQ_POISSON, [passing("a", 3, order=2), passing("b", 4, degree_bound=1)])
    assert merged.verdict == Verdict.PASS
    assert merged.check == "combined"
    assert merged.checked == 7
    assert merged.bounds == {"order": 2, "degree_bound": 1}


@pytest.mark.parametrize(
    "error, parent",
    [
        (OrderMismatch(1, 2), AlgebraError),
        (ArityUnsupported(3), CohomologyError),
        (NoSolutionInTruncation({"max_diffop_order": 1}), CohomologyError),
        (UnknownIdentifier("z"), InputError),
        (WorkspaceError("bad"), InputError),
        (ExpressionSyntaxError("x +", 1, 4), InputError),
    ],
)
def test_hierarchy(error: StarbundleError, parent: type) -> None:
    """Test that every error sits under its area and the package root."""
    assert isinstance(error, parent)
    assert isinstance(error, StarbundleException)


def test_messages_carry_their_data() -> None:
    """Test the readable messages of the structured exceptions."""
    assert "order 2" in str(NoSolutionInTruncation({"max_diffop_order": 1}, order=2))
    assert "order 2" not in str(NoSolutionInTruncation({"max_diffop_order": 1}))
    assert "lam^3" in str(NotModuleToOrderK(2, 1))
    assert "'z'" in str(UnknownIdentifier("z"))
    assert "column 4" in str(ExpressionSyntaxError("x +* y", 1, 4))
