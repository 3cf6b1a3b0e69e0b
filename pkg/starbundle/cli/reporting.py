"""Emitting reports and mapping outcomes to exit codes.

### Legal
SPDX-FileCopyright © Robert Ferguson <rmferguson@pm.me>

SPDX-License-Identifier: [MIT](https://spdx.org/licenses/MIT.html)
"""

import logging
from pathlib import Path

import click

from starbundle.common.constants import EQ_COBOUNDARY, EXIT_FAIL, EXIT_INCONCLUSIVE, EXIT_PASS
from starbundle.common.exceptions import NoSolutionInTruncation
from starbundle.common.reports import Verdict, VerificationReport

logger = logging.getLogger(__name__)

__all__ = [
    "EXIT_CODES",
    "emit_report",
    "inconclusive_report",
]

EXIT_CODES = {
    Verdict.PASS: EXIT_PASS,
    Verdict.COMPUTED: EXIT_PASS,
    Verdict.FAIL: EXIT_FAIL,
    Verdict.INCONCLUSIVE: EXIT_INCONCLUSIVE,
}


def inconclusive_report(check: str, error: NoSolutionInTruncation) -> VerificationReport:
    """The report of a solver run that found nothing inside its ansatz."""
    return VerificationReport(
        verdict=Verdict.INCONCLUSIVE,
        check=check,
        equation=EQ_COBOUNDARY,
        failing_order=error.order,
        bounds=error.bounds,
        result={"reason": str(error)},
    )


def emit_report(report: VerificationReport, output: str | None) -> int:
    """Write the report as JSON to ``output`` or stdout.

    Args:
        report: The report to write
        output: Target file, or None for stdout

    Returns:
        int: The exit code for the report's verdict
    """
    text = report.to_json()
    if output is None:
        click.echo(text, nl=False)
    else:
        Path(output).write_text(text, encoding="utf-8")
        logger.info(f"Report written to {output}")
    return EXIT_CODES[report.verdict]
