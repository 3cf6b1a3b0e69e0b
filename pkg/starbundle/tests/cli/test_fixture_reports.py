"""Byte-level checks of every subcommand against the workspaces under fixtures/.

Each fixture directory holds a ``workspace.json``, a ``case.json`` with the command line, exit code and the report
fields it must produce, and optionally a ``report.json`` with the exact stdout.
"""

import json
from pathlib import Path
from typing import Any

import pytest
from click.testing import CliRunner, Result

from starbundle.cli.commands import starbundle
from starbundle.common.constants import EXIT_INPUT_ERROR
from starbundle.common.reports import VerificationReport

FIXTURES = Path(__file__).parent / "fixtures"
CASES = sorted(directory.name for directory in FIXTURES.iterdir() if directory.is_dir())


def run_case(runner: CliRunner, name: str, arguments: list[str]) -> Result:
    """Run a fixture command line against its workspace."""
    command, *rest = arguments
    workspace = FIXTURES / name / "workspace.json"
    return runner.invoke(starbundle, [command, "--workspace", str(workspace), *rest])


def load_case(name: str) -> dict[str, Any]:
    """The command line and expectations of one fixture."""
    return json.loads((FIXTURES / name / "case.json").read_text(encoding="utf-8"))


@pytest.mark.parametrize("name", CASES)
def test_fixture_report(cli_runner: CliRunner, name: str) -> None:
    """Test a fixture workspace, twice, against its recorded exit code and report."""
    case = load_case(name)
    first = run_case(cli_runner, name, case["arguments"])
    second = run_case(cli_runner, name, case["arguments"])
    assert first.exit_code == case["exit_code"], first.stderr
    assert second.exit_code == first.exit_code
    assert first.stdout == second.stdout
    if case["exit_code"] == EXIT_INPUT_ERROR:
        assert first.stdout == ""
        assert first.stderr
        return
    assert VerificationReport.model_validate_json(first.stdout).to_json() == first.stdout
    report = json.loads(first.stdout)
    assert {key: report[key] for key in case["report"]} == case["report"]
    golden = FIXTURES / name / "report.json"
    if golden.exists():
        assert first.stdout == golden.read_text(encoding="utf-8")


def test_every_fixture_has_a_workspace() -> None:
    """Test that no fixture directory is missing its workspace or case file."""
    assert len(CASES) >= 20
    for name in CASES:
        assert (FIXTURES / name / "workspace.json").is_file()
        assert "arguments" in load_case(name)
