"""Tests for the command-line interface, its reports and its exit codes."""

import json
from pathlib import Path
from typing import Any

import pytest
from click.testing import CliRunner, Result

from starbundle.cli.commands import starbundle
from starbundle.common.constants import (
    EQ_COMMUTATION,
    EQ_STAR_PRODUCT,
    EXIT_FAIL,
    EXIT_INCONCLUSIVE,
    EXIT_INPUT_ERROR,
    EXIT_PASS,
)
from starbundle.tests.conftest import WorkspaceFactory
from starbundle.tests.starbundle_test_constants import (
    BAD_EXPRESSION,
    BAD_EXPRESSION_COLUMN,
    MODULE_TWIST,
    MOYAL_COMMUTATOR_ORDER1,
    MOYAL_XY_ORDER0,
    MOYAL_XY_ORDER1,
    SPACE_BASE,
)

HALF_PROJECTOR = "[1/2, 1/2; 1/2, 1/2]"


def invoke(runner: CliRunner, workspace: Path, command: str, *arguments: str) -> Result:
    """Run one subcommand against a workspace file."""
    return runner.invoke(starbundle, [command, "--workspace", str(workspace), *arguments])


def report_of(result: Result) -> dict[str, Any]:
    """The JSON report a command wrote to stdout."""
    return json.loads(result.stdout)


def test_star_golden_output(cli_runner: CliRunner, write_workspace: WorkspaceFactory) -> None:
    """Test x * y on the Moyal plane."""
    result = invoke(cli_runner, write_workspace(), "star", "x", "y")
    assert result.exit_code == EXIT_PASS
    report = report_of(result)
    assert report["verdict"] == "computed"
    assert report["equation"] == EQ_STAR_PRODUCT
    assert report["result"] == {"order0": MOYAL_XY_ORDER0, "order1": MOYAL_XY_ORDER1, "order2": "0"}


def test_reports_are_deterministic(cli_runner: CliRunner, write_workspace: WorkspaceFactory) -> None:
    """Test byte-identical output for identical inputs."""
    workspace = write_workspace()
    first = invoke(cli_runner, workspace, "star", "x^2", "y^2")
    second = invoke(cli_runner, workspace, "star", "x^2", "y^2")
    assert first.stdout == second.stdout
    assert first.stdout.endswith("\n")


def test_output_file(cli_runner: CliRunner, write_workspace: WorkspaceFactory, tmp_path: Path) -> None:
    """Test that --output writes the report instead of printing it."""
    target = tmp_path / "report.json"
    result = invoke(cli_runner, write_workspace(), "star", "x", "y", "--output", str(target))
    assert result.exit_code == EXIT_PASS
    assert result.stdout == ""
    assert json.loads(target.read_text(encoding="utf-8"))["result"]["order0"] == MOYAL_XY_ORDER0


def test_commutator(cli_runner: CliRunner, write_workspace: WorkspaceFactory) -> None:
    """Test both forms of the commutator command."""
    workspace = write_workspace()
    relations = invoke(cli_runner, workspace, "commutator")
    assert relations.exit_code == EXIT_PASS
    assert report_of(relations)["verdict"] == "pass"
    computed = invoke(cli_runner, workspace, "commutator", "x", "y")
    assert computed.exit_code == EXIT_PASS
    report = report_of(computed)
    assert report["equation"] == EQ_COMMUTATION
    assert report["result"]["order1"] == MOYAL_COMMUTATOR_ORDER1


@pytest.mark.parametrize("command", ["assoc-check", "hermitian-check", "poisson", "schouten"])
def test_moyal_plane_checks_pass(cli_runner: CliRunner, write_workspace: WorkspaceFactory, command: str) -> None:
    """Test the star product checks on the Moyal plane."""
    result = invoke(cli_runner, write_workspace(), command, "--degree-bound", "1")
    assert result.exit_code == EXIT_PASS
    assert report_of(result)["verdict"] == "pass"


def test_poisson_limit_failure(cli_runner: CliRunner, write_workspace: WorkspaceFactory, tmp_path: Path) -> None:
    """Test a cochain file whose first cochain is twice the Moyal one."""
    doubled = {
        "cochains": {
            "1": [
                {"left": "d_x", "right": "d_y", "coefficient": "i"},
                {"left": "d_y", "right": "d_x", "coefficient": "-i"},
            ]
        }
    }
    (tmp_path / "doubled.json").write_text(json.dumps(doubled), encoding="utf-8")
    workspace = write_workspace(star="cochain-file", cochain_file="doubled.json")
    result = invoke(cli_runner, workspace, "poisson", "--degree-bound", "1")
    assert result.exit_code == EXIT_FAIL
    report = report_of(result)
    assert report["verdict"] == "fail"
    assert report["failing_order"] == 1


def test_schouten_failure(cli_runner: CliRunner, write_workspace: WorkspaceFactory) -> None:
    """Test a bivector on three variables that violates the Jacobi identity."""
    workspace = write_workspace(base_variables=list(SPACE_BASE), theta=[["x", "y", "x"], ["x", "z", "1"]])
    result = invoke(cli_runner, workspace, "schouten", "--degree-bound", "1")
    assert result.exit_code == EXIT_FAIL
    report = report_of(result)
    assert report["witness"] == list(SPACE_BASE)
    assert report["result"]["jacobi"] == "fail"
    assert "x-y-z" in report["result"]


def test_deform_projector(cli_runner: CliRunner, write_workspace: WorkspaceFactory) -> None:
    """Test that a constant projector is reported unchanged."""
    result = invoke(cli_runner, write_workspace(projector=HALF_PROJECTOR), "deform-projector")
    assert result.exit_code == EXIT_PASS
    report = report_of(result)
    assert report["result"]["e12"] == {"order0": "1/2", "order1": "0", "order2": "0"}
    assert report["result"]["newton"] == ["0:None"]


def test_metric(cli_runner: CliRunner, write_workspace: WorkspaceFactory) -> None:
    """Test the metric axioms and positivity for a Hermitian projector."""
    workspace = write_workspace(projector=HALF_PROJECTOR, metric_points=3)
    result = invoke(cli_runner, workspace, "metric", "--degree-bound", "1")
    assert result.exit_code == EXIT_PASS
    assert report_of(result)["check"] == "metric"


def test_metric_checks_file_products(
    cli_runner: CliRunner, write_workspace: WorkspaceFactory, tmp_path: Path
) -> None:
    """Test that a file product claiming to be Hermitian is still checked before a metric is built."""
    claimed = {"cochains": {"1": [{"left": "d_x", "right": "d_y", "coefficient": "1"}]}, "hermitian": True}
    (tmp_path / "claimed.json").write_text(json.dumps(claimed), encoding="utf-8")
    workspace = write_workspace(
        star="cochain-file", cochain_file="claimed.json", projector=HALF_PROJECTOR, metric_points=3
    )
    result = invoke(cli_runner, workspace, "metric", "--degree-bound", "1")
    assert result.exit_code == EXIT_INPUT_ERROR
    assert "Hermitian" in result.stderr
    assert result.stdout == ""


def test_module_check(cli_runner: CliRunner, write_workspace: WorkspaceFactory) -> None:
    """Test the product bundle module and its fiber-dependent conjugate."""
    plain = invoke(cli_runner, write_workspace(), "module-check")
    assert plain.exit_code == EXIT_PASS
    twisted = invoke(cli_runner, write_workspace(module_twist=MODULE_TWIST), "module-check")
    assert twisted.exit_code == EXIT_FAIL
    report = report_of(twisted)
    assert report["axiom"] == "equivariance"
    assert report["failing_order"] == 1


def test_extend_module_inconclusive(cli_runner: CliRunner, write_workspace: WorkspaceFactory) -> None:
    """Test that an ansatz without derivatives gives the inconclusive exit code."""
    result = invoke(cli_runner, write_workspace(), "extend-module", "--bounds", "0,0,0")
    assert result.exit_code == EXIT_INCONCLUSIVE
    report = report_of(result)
    assert report["verdict"] == "inconclusive"
    assert report["failing_order"] == 1
    assert report["bounds"] == {"max_diffop_order": 0, "max_coeff_degree": 0, "max_base_derivatives": 0}


def test_equiv_solve(cli_runner: CliRunner, write_workspace: WorkspaceFactory) -> None:
    """Test the trivial equivalence and the equivariant search against a fiber-dependent twist."""
    plain = invoke(cli_runner, write_workspace(), "equiv-solve")
    assert plain.exit_code == EXIT_PASS
    assert report_of(plain)["result"] == {"T1": "0", "T2": "0"}
    twisted = invoke(cli_runner, write_workspace(module_twist=MODULE_TWIST), "equiv-solve")
    assert twisted.exit_code == EXIT_INCONCLUSIVE


def test_lift_vertical(cli_runner: CliRunner, write_workspace: WorkspaceFactory) -> None:
    """Test lifting x into the commutant and refusing d_x."""
    workspace = write_workspace()
    lifted = invoke(cli_runner, workspace, "lift-vertical", "x", "--degree-bound", "1")
    assert lifted.exit_code == EXIT_PASS
    report = report_of(lifted)
    assert report["check"] == "commutant"
    assert report["result"]["order0"] == "x"
    refused = invoke(cli_runner, workspace, "lift-vertical", "d_x")
    assert refused.exit_code == EXIT_INPUT_ERROR
    assert refused.stdout == ""


def test_star_prime(cli_runner: CliRunner, write_workspace: WorkspaceFactory) -> None:
    """Test x *' d_t on the product bundle."""
    result = invoke(cli_runner, write_workspace(), "star-prime", "x", "d_t", "--degree-bound", "1")
    assert result.exit_code == EXIT_PASS
    assert report_of(result)["result"] == {"order0": "x*d_t", "order1": "0", "order2": "0"}


def test_syntax_error_exit(cli_runner: CliRunner, write_workspace: WorkspaceFactory) -> None:
    """Test that a malformed expression goes to stderr with its column."""
    result = invoke(cli_runner, write_workspace(), "star", BAD_EXPRESSION, "y")
    assert result.exit_code == EXIT_INPUT_ERROR
    assert f"column {BAD_EXPRESSION_COLUMN}" in result.stderr
    assert result.stdout == ""


@pytest.mark.parametrize(
    "fields, arguments",
    [
        ({}, ["star", "x", "z"]),
        ({"base_variables": ["x", "lam"]}, ["star", "x", "x"]),
        ({}, ["star", "x", "1/x"]),
        ({}, ["deform-projector"]),
        ({}, ["assoc-check", "--bounds", "1,2"]),
        ({}, ["assoc-check", "--order", "0"]),
    ],
)
def test_input_errors(
    cli_runner: CliRunner, write_workspace: WorkspaceFactory, fields: dict, arguments: list[str]
) -> None:
    """Test unknown names, reserved names, bad divisions, missing data and bad options."""
    command, *rest = arguments
    result = invoke(cli_runner, write_workspace(**fields), command, *rest)
    assert result.exit_code == EXIT_INPUT_ERROR
    assert result.stdout == ""


def test_missing_workspace(cli_runner: CliRunner, tmp_path: Path) -> None:
    """Test an unreadable workspace path."""
    result = invoke(cli_runner, tmp_path / "missing.json", "assoc-check")
    assert result.exit_code == EXIT_INPUT_ERROR
    assert "Input error" in result.stderr


def test_unknown_command(cli_runner: CliRunner) -> None:
    """Test that usage errors share the input error exit code."""
    assert cli_runner.invoke(starbundle, ["no-such-command"]).exit_code == EXIT_INPUT_ERROR
    assert cli_runner.invoke(starbundle, ["star", "x", "y"]).exit_code == EXIT_INPUT_ERROR
