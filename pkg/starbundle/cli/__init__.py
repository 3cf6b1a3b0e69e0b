"""Expression language, workspace files and the batch command-line front end.

### Legal
SPDX-FileCopyright © Robert Ferguson <rmferguson@pm.me>

SPDX-License-Identifier: [MIT](https://spdx.org/licenses/MIT.html)
"""

from starbundle.cli.evaluate import (
    evaluate_matrix,
    evaluate_operator,
    evaluate_series,
    evaluate_vector,
    parse_operator,
    parse_series,
)
from starbundle.cli.parser import parse_expression, pretty
from starbundle.cli.workspace import CochainFile, Workspace, load_workspace

__all__ = [
    "CochainFile",
    "Workspace",
    "evaluate_matrix",
    "evaluate_operator",
    "evaluate_series",
    "evaluate_vector",
    "load_workspace",
    "parse_expression",
    "parse_operator",
    "parse_series",
    "pretty",
]
