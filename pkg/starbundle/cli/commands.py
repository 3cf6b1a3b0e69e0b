"""Command-line interface for batch verification runs.

Every subcommand reads a workspace file, runs one computation or check and
writes a JSON report. The exit code is 0 for a pass or a computed result, 1 for
a failure with a witness, 2 when the solver found nothing inside its bounds,
and 3 for any input or precondition error, whose message goes to stderr.

### Legal
SPDX-FileCopyright © Robert Ferguson <rmferguson@pm.me>

SPDX-License-Identifier: [MIT](https://spdx.org/licenses/MIT.html)
"""

import logging
from collections.abc import Callable
from functools import wraps
from typing import Any

import click
from pydantic import ValidationError

from starbundle.cli.evaluate import parse_operator, parse_series
from starbundle.cli.reporting import emit_report, inconclusive_report
from starbundle.cli.workspace import Workspace, load_workspace, parse_error_message
from starbundle.common.constants import (
    EQ_COMMUTATION,
    EQ_LEFT_ACTION,
    EQ_METRIC,
    EQ_MODULE_ACTION,
    EQ_POISSON,
    EQ_STAR_PRODUCT,
    EXIT_INPUT_ERROR,
)
from starbundle.common.exceptions import InputError, NoSolutionInTruncation, StarbundleError
from starbundle.common.reports import Verdict, VerificationReport, merge_reports, series_result
from starbundle.commutant.lifting import CommutantLift, check_commutant
from starbundle.formal_core.diffop import DiffOp
from starbundle.formal_core.polynomial import monomials
from starbundle.formal_core.series import FormalSeries
from starbundle.hochschild.solver import AnsatzBounds
from starbundle.module_deform.idempotent import deform_idempotent
from starbundle.module_deform.metric import check_metric_axioms, check_metric_positivity, deform_metric, sample_points
from starbundle.module_deform.module import StarModuleAction, module_generators
from starbundle.principal_deform.bundle import product_bundle_module
from starbundle.principal_deform.checks import check_module_structure
from starbundle.principal_deform.equivalence import check_bundle_equivalence, solve_module_equivalence
from starbundle.principal_deform.obstruction import build_module_deformation
from starbundle.settings import configure_logging, create_app_settings, get_app_settings
from starbundle.star_products.checks import check_associativity, check_hermitian, check_jacobi, check_poisson_limit
from starbundle.star_products.poisson import schouten_square
from starbundle.star_products.star import check_commutation_relations, star_commutator, star_multiply

logger = logging.getLogger(__name__)

__all__ = ["starbundle"]

Compute = Callable[..., VerificationReport]


class StarbundleGroup(click.Group):
    """Command group whose usage errors exit with the input-error code instead of click's 2."""

    def make_context(
        self, info_name: str | None, args: list[str], parent: click.Context | None = None, **extra: Any
    ) -> click.Context:
        try:
            return super().make_context(info_name, args, parent=parent, **extra)
        except click.UsageError as e:
            e.exit_code = EXIT_INPUT_ERROR
            raise

    def invoke(self, ctx: click.Context) -> Any:
        try:
            return super().invoke(ctx)
        except click.UsageError as e:
            e.exit_code = EXIT_INPUT_ERROR
            raise


def _parse_bounds(ctx: click.Context, param: click.Parameter, value: str | None) -> AnsatzBounds | None:
    if value is None:
        return None
    try:
        return AnsatzBounds.parse(value)
    except (ValueError, ValidationError) as e:
        raise click.BadParameter(str(e), ctx=ctx, param=param) from e


WORKSPACE_OPTIONS = [
    click.option(
        "--workspace",
        "workspace_path",
        required=True,
        type=click.Path(dir_okay=False),
        help="Workspace JSON file",
    ),
    click.option("--order", type=click.IntRange(min=1), default=None, help="Truncation order N"),
    click.option("--degree-bound", type=click.IntRange(min=0), default=None, help="Monomial degree bound d"),
    click.option("--bounds", callback=_parse_bounds, default=None, help="Solver ansatz bounds as order,degree,derivs"),
    click.option(
        "--equivariant/--general",
        default=None,
        help="Restrict solver ansatz to translation-invariant operators",
    ),
    click.option("--output", type=click.Path(dir_okay=False), default=None, help="Write the report to this file"),
    click.option("--format", "output_format", type=click.Choice(["json"]), default="json", help="Report format"),
]


def _with_overrides(
    workspace: Workspace, order: int | None, degree_bound: int | None, bounds: AnsatzBounds | None
) -> Workspace:
    updates: dict[str, Any] = {}
    if order is not None:
        updates["order"] = order
    if degree_bound is not None:
        updates["degree_bound"] = degree_bound
    if bounds is not None:
        updates["bounds"] = bounds
    return workspace.model_copy(update=updates)


def report_command(name: str, equivariant_default: bool = False) -> Callable[[Compute], click.Command]:
    """Register a subcommand that turns a workspace into a report.

    The wrapped function receives the workspace (with command-line overrides
    applied), the equivariance choice and its own arguments, and returns the
    report to emit.
    """

    def decorator(compute: Compute) -> click.Command:
        @wraps(compute)
        def command(
            workspace_path: str,
            order: int | None,
            degree_bound: int | None,
            bounds: AnsatzBounds | None,
            equivariant: bool | None,
            output: str | None,
            output_format: str,
            **arguments: Any,
        ) -> None:
            ctx = click.get_current_context()
            try:
                workspace = _with_overrides(load_workspace(workspace_path), order, degree_bound, bounds)
                chosen = equivariant_default if equivariant is None else equivariant
                report = compute(workspace, chosen, **arguments)
            except NoSolutionInTruncation as e:
                logger.info(f"{name}: {e}")
                report = inconclusive_report(name, e)
            except (InputError, ValidationError) as e:
                click.echo(f"Input error: {parse_error_message(e)}", err=True)
                ctx.exit(EXIT_INPUT_ERROR)
            except StarbundleError as e:
                click.echo(f"Error: {e}", err=True)
                ctx.exit(EXIT_INPUT_ERROR)
            ctx.exit(emit_report(report, output))

        for option in reversed(WORKSPACE_OPTIONS):
            command = option(command)
        return starbundle.command(name)(command)

    return decorator


@click.group(cls=StarbundleGroup)
@click.option("--log-level", default=None, help="Logging level (defaults to the configured one)")
def starbundle(log_level: str | None) -> None:
    """Exact deformation quantization checks and solvers."""
    settings = get_app_settings() if log_level is None else create_app_settings(log_level=log_level)
    try:
        configure_logging(settings)
    except ValueError as e:
        raise click.BadParameter(str(e), param_hint="--log-level") from e


@click.argument("right")
@click.argument("left")
@report_command("star")
def star(workspace: Workspace, equivariant: bool, left: str, right: str) -> VerificationReport:
    """Compute LEFT * RIGHT order by order."""
    product = workspace.build_star_product()
    f = parse_series(left, product.layout, product.order)
    g = parse_series(right, product.layout, product.order)
    return VerificationReport(
        verdict=Verdict.COMPUTED,
        check="star",
        equation=EQ_STAR_PRODUCT,
        bounds={"order": product.order},
        result=series_result(star_multiply(product, f, g)),
    )


@click.argument("right", required=False)
@click.argument("left", required=False)
@report_command("commutator")
def commutator(workspace: Workspace, equivariant: bool, left: str | None, right: str | None) -> VerificationReport:
    """Compute [LEFT, RIGHT]_*, or check [x^mu, x^nu]_* = i lam theta^{mu nu} without arguments."""
    product = workspace.build_star_product()
    if left is None or right is None:
        return check_commutation_relations(product, workspace.build_theta())
    f = parse_series(left, product.layout, product.order)
    g = parse_series(right, product.layout, product.order)
    return VerificationReport(
        verdict=Verdict.COMPUTED,
        check="commutator",
        equation=EQ_COMMUTATION,
        bounds={"order": product.order},
        result=series_result(star_commutator(product, f, g)),
    )


@report_command("assoc-check")
def assoc_check(workspace: Workspace, equivariant: bool) -> VerificationReport:
    """Exhaustive associativity check on monomial triples."""
    return check_associativity(workspace.build_star_product(), workspace.degree_bound)


@report_command("hermitian-check")
def hermitian_check(workspace: Workspace, equivariant: bool) -> VerificationReport:
    """Exhaustive check of conj(f * g) = conj(g) * conj(f)."""
    return check_hermitian(workspace.build_star_product(), workspace.degree_bound)


@report_command("poisson")
def poisson(workspace: Workspace, equivariant: bool) -> VerificationReport:
    """Compare the first-order bracket with the workspace bivector."""
    return check_poisson_limit(workspace.build_star_product(), workspace.build_theta(), workspace.degree_bound)


@report_command("schouten")
def schouten(workspace: Workspace, equivariant: bool) -> VerificationReport:
    """Compute [theta, theta] and cross-check it against the Jacobi identity."""
    theta = workspace.build_theta()
    square = {key: value for key, value in sorted(schouten_square(theta).items()) if not value.is_zero()}
    jacobi = check_jacobi(theta, workspace.degree_bound)
    names = theta.layout.names
    result: dict[str, Any] = {
        "-".join(names[index] for index in key): str(value) for key, value in square.items()
    }
    result["jacobi"] = jacobi.verdict.value
    if square:
        first = next(iter(square))
        return VerificationReport(
            verdict=Verdict.FAIL,
            check="schouten",
            equation=EQ_POISSON,
            failing_order=0,
            witness=[names[index] for index in first],
            bounds={"degree_bound": workspace.degree_bound},
            checked=jacobi.checked,
            result=result,
        )
    return VerificationReport(
        verdict=Verdict.PASS,
        check="schouten",
        equation=EQ_POISSON,
        bounds={"degree_bound": workspace.degree_bound},
        checked=jacobi.checked,
        result=result,
    )


@report_command("deform-projector")
def deform_projector(workspace: Workspace, equivariant: bool) -> VerificationReport:
    """Deform the workspace projector into a star-idempotent."""
    product = workspace.build_star_product()
    idempotent = deform_idempotent(workspace.build_projector(), product)
    result: dict[str, Any] = {}
    rows, columns = idempotent.shape
    for i in range(rows):
        for j in range(columns):
            result[f"e{i + 1}{j + 1}"] = series_result(idempotent[i, j])
    result["newton"] = [f"{step.step}:{step.defect_order}" for step in idempotent.history]
    return VerificationReport(
        verdict=Verdict.COMPUTED,
        check="deform-projector",
        equation=EQ_MODULE_ACTION,
        bounds={"order": product.order},
        result=result,
    )


@report_command("metric")
def metric(workspace: Workspace, equivariant: bool) -> VerificationReport:
    """Check the deformed fiber metric on module generators."""
    product = workspace.build_star_product()
    idempotent = deform_idempotent(workspace.build_projector(), product)
    deformed = deform_metric(idempotent, product)
    elements = module_generators(idempotent, product, workspace.degree_bound)
    functions = monomials(product.layout, workspace.degree_bound)
    settings = get_app_settings()
    points = sample_points(product.layout, workspace.metric_points, settings.metric_sample_seed)
    reports = [
        check_metric_axioms(deformed, StarModuleAction(product, idempotent), elements, functions),
        check_metric_positivity(deformed, elements, points),
    ]
    return merge_reports("metric", EQ_METRIC, reports)


@report_command("module-check")
def module_check(workspace: Workspace, equivariant: bool) -> VerificationReport:
    """Check the right-module law, unitality and equivariance of the workspace module."""
    deformation = workspace.build_module(equivariant=equivariant)
    return check_module_structure(deformation, workspace.degree_bound)


@report_command("extend-module")
def extend_module(workspace: Workspace, equivariant: bool) -> VerificationReport:
    """Build a module structure order by order from the obstruction equations."""
    deformation = build_module_deformation(
        workspace.build_star_product(),
        workspace.build_model(),
        workspace.order,
        workspace.bounds,
        equivariant=equivariant,
        degree_bound=workspace.degree_bound,
    )
    report = check_module_structure(deformation, workspace.degree_bound)
    stages = {f"rho{index}": str(stage) for index, stage in enumerate(deformation.stages, start=1)}
    bounds = {**report.bounds, **workspace.bounds.model_dump()}
    return report.model_copy(update={"result": {**report.result, **stages}, "bounds": bounds})


@report_command("equiv-solve", equivariant_default=True)
def equiv_solve(workspace: Workspace, equivariant: bool) -> VerificationReport:
    """Solve for an equivalence from the product bundle module to the workspace module."""
    target = workspace.build_module(equivariant=equivariant)
    source = product_bundle_module(target.star, target.model)
    transform = solve_module_equivalence(source, target, workspace.bounds, equivariant, workspace.degree_bound)
    return check_bundle_equivalence(transform, source, target, workspace.degree_bound)


def _vertical_operator(text: str, workspace: Workspace) -> DiffOp:
    series = parse_operator(text, workspace.build_model().total_layout, workspace.order)
    if any(not stage.is_zero() for stage in series.coeffs[1:]):
        raise InputError(f"vertical operator {text} must not depend on lam")
    return series[0]


@click.argument("operator")
@report_command("lift-vertical")
def lift_vertical(workspace: Workspace, equivariant: bool, operator: str) -> VerificationReport:
    """Lift a vertical OPERATOR into the commutant of the workspace module."""
    deformation = workspace.build_module(equivariant=equivariant)
    lift = CommutantLift(deformation, workspace.bounds, workspace.degree_bound)
    lifted = lift.lift(_vertical_operator(operator, workspace))
    report = check_commutant(lifted, deformation, workspace.degree_bound)
    return report.model_copy(update={"result": {**report.result, **series_result(lifted)}})


@click.argument("right")
@click.argument("left")
@report_command("star-prime")
def star_prime(workspace: Workspace, equivariant: bool, left: str, right: str) -> VerificationReport:
    """Compute LEFT *' RIGHT for vertical operator series."""
    deformation = workspace.build_module(equivariant=equivariant)
    layout = deformation.model.total_layout
    lift = CommutantLift(deformation, workspace.bounds, workspace.degree_bound)
    first: FormalSeries[DiffOp] = parse_operator(left, layout, deformation.order)
    second: FormalSeries[DiffOp] = parse_operator(right, layout, deformation.order)
    return VerificationReport(
        verdict=Verdict.COMPUTED,
        check="star-prime",
        equation=EQ_LEFT_ACTION,
        bounds={"order": deformation.order},
        result=series_result(lift.star_prime(first, second)),
    )
