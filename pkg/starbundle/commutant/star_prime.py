"""The induced deformation of vertical operators and its left action.

``D *' D~`` pulls the composition of lifted operators back to vertical
series, and ``D .' F`` applies the lift. Together with the right action they
make the total-space functions a bimodule, which ``check_left_module`` verifies
on monomials.

### Legal
SPDX-FileCopyright © Robert Ferguson <rmferguson@pm.me>

SPDX-License-Identifier: [MIT](https://spdx.org/licenses/MIT.html)
"""

from __future__ import annotations

import logging
from collections.abc import Sequence
from itertools import product

from starbundle.common.constants import EQ_CHANGE_OF_STAR, EQ_COMMUTANT, EQ_LEFT_ACTION, EQ_VERTICAL_BRACKET
from starbundle.common.exceptions import OrderMismatch
from starbundle.common.reports import Verdict, VerificationReport, series_result
from starbundle.commutant.lifting import CommutantLift, check_commutant
from starbundle.formal_core.diffop import DiffOp
from starbundle.formal_core.linsolve import nullspace
from starbundle.formal_core.multiindex import zero_index
from starbundle.formal_core.polynomial import Polynomial
from starbundle.formal_core.scalars import ComplexScalar
from starbundle.formal_core.series import FormalSeries
from starbundle.hochschild.model import SubmersionModel
from starbundle.hochschild.solver import AnsatzBounds, ansatz_basis
from starbundle.principal_deform.bundle import ModuleDeformation

logger = logging.getLogger(__name__)

__all__ = [
    "bicommutant",
    "check_bicommutant",
    "check_left_module",
    "check_star_change",
    "check_vertical_bracket",
    "induced_star_prime",
    "left_action",
    "order_zero_bicommutant",
    "right_multiplication_preimage",
    "star_prime_commutator",
    "vertical_generators",
]

OperatorSeries = FormalSeries[DiffOp]
Operand = OperatorSeries | DiffOp


def induced_star_prime(
    left: Operand, right: Operand, deformation: ModuleDeformation, bounds: AnsatzBounds | None = None
) -> OperatorSeries:
    """``D *' D~`` for vertical operators or vertical series."""
    return CommutantLift(deformation, bounds).star_prime(left, right)


def left_action(
    operator: Operand,
    element: Polynomial | FormalSeries[Polynomial],
    deformation: ModuleDeformation,
    bounds: AnsatzBounds | None = None,
) -> FormalSeries[Polynomial]:
    """``D .' F``, the lifted operator applied to ``F``."""
    return CommutantLift(deformation, bounds).left_action(operator, element)


def star_prime_commutator(lift: CommutantLift, left: Operand, right: Operand) -> OperatorSeries:
    """``[D, D~]_{*'} = D *' D~ - D~ *' D``."""
    return lift.star_prime(left, right) - lift.star_prime(right, left)


def check_vertical_bracket(lift: CommutantLift, left: DiffOp, right: DiffOp) -> VerificationReport:
    """Check that the order-0 part of ``[D, D~]_{*'}`` is the operator commutator ``[D, D~]``."""
    bracket = star_prime_commutator(lift, left, right)
    expected = left.commutator(right)
    checked = 1
    if bracket[0] != expected:
        return VerificationReport(
            verdict=Verdict.FAIL,
            check="vertical-bracket",
            equation=EQ_VERTICAL_BRACKET,
            failing_order=0,
            witness=[str(left), str(right)],
            checked=checked,
            result=series_result(bracket),
        )
    return VerificationReport(
        verdict=Verdict.PASS,
        check="vertical-bracket",
        equation=EQ_VERTICAL_BRACKET,
        checked=checked,
        result=series_result(bracket),
    )


def _series_difference_order(left: FormalSeries[Polynomial], right: FormalSeries[Polynomial]) -> int | None:
    return (left - right).lowest_order()


def check_left_module(lift: CommutantLift, operators: Sequence[DiffOp], degree_bound: int) -> VerificationReport:
    """Check the left module law and its compatibility with the right action.

    ``(D *' D~) .' F = D .' (D~ .' F)`` on operator pairs and total-space
    monomials, then ``(D .' F) . f = D .' (F . f)`` with base monomials ``f``.

    Args:
        lift: The lifting map of the right action
        operators: Vertical operators to combine
        degree_bound: Largest monomial degree for ``F`` and ``f``

    Returns:
        VerificationReport: The first failing identity with its ``(D, D~, F)`` or ``(D, F, f)`` witness
    """
    deformation = lift.deformation
    elements = deformation.model.total_monomials(degree_bound)
    functions = deformation.model.base_monomials(degree_bound)
    bounds = {"degree_bound": degree_bound, "order": deformation.order}
    checked = 0

    def failure(axiom: str, failing: int | None, witness: list[str]) -> VerificationReport:
        logger.info(f"Left module {axiom} fails at order {failing} on {witness}")
        return VerificationReport(
            verdict=Verdict.FAIL,
            check="left-module",
            equation=EQ_LEFT_ACTION,
            axiom=axiom,
            failing_order=failing,
            witness=witness,
            bounds=bounds,
            checked=checked,
        )

    for first, second in product(operators, repeat=2):
        composite = lift.star_prime(first, second)
        for element in elements:
            checked += 1
            failing = _series_difference_order(
                lift.left_action(composite, element), lift.left_action(first, lift.left_action(second, element))
            )
            if failing is not None:
                return failure("left-module", failing, [str(first), str(second), str(element)])
    for operator, element, function in product(operators, elements, functions):
        checked += 1
        failing = _series_difference_order(
            deformation.act(lift.left_action(operator, element), function),
            lift.left_action(operator, deformation.act(element, function)),
        )
        if failing is not None:
            return failure("bimodule", failing, [str(operator), str(element), str(function)])
    return VerificationReport(
        verdict=Verdict.PASS, check="left-module", equation=EQ_LEFT_ACTION, bounds=bounds, checked=checked
    )


def check_star_change(
    lift: CommutantLift, lift_tilde: CommutantLift, operators: Sequence[DiffOp], degree_bound: int
) -> VerificationReport:
    """Check that an equivalent right action has the same commutant and the same ``*'``.

    ``lift_tilde`` lifts into the commutant of ``F .~ f = F . Phi(f)``. Each of
    its lifts must commute with the original right action and each original
    lift with the reparametrized one; then ``*'`` agrees on every pair of
    ``operators``.

    Args:
        lift: The lifting map of the original right action
        lift_tilde: The lifting map of the reparametrized right action
        operators: Vertical operators to lift and combine
        degree_bound: Largest base monomial degree of the commutant checks

    Returns:
        VerificationReport: The first failing axiom with its witness, or a pass

    Raises:
        OrderMismatch: If the two right actions are truncated at different orders
    """
    if lift.order != lift_tilde.order:
        raise OrderMismatch(lift.order, lift_tilde.order)
    bounds = {"degree_bound": degree_bound, "order": lift.order}
    checked = 0
    crossings = (("commutant", lift_tilde, lift.deformation), ("commutant-reverse", lift, lift_tilde.deformation))
    for axiom, source, target in crossings:
        for operator in operators:
            report = check_commutant(source.lift(operator), target, degree_bound)
            checked += report.checked
            if not report.passed:
                logger.info(f"Lift of {operator} leaves the other commutant at order {report.failing_order}")
                return report.model_copy(
                    update={
                        "check": "star-change",
                        "equation": EQ_CHANGE_OF_STAR,
                        "axiom": axiom,
                        "witness": [str(operator), *report.witness],
                        "checked": checked,
                    }
                )
    for first, second in product(operators, repeat=2):
        checked += 1
        original = lift.star_prime(first, second)
        changed = lift_tilde.star_prime(first, second)
        failing = (original - changed).lowest_order()
        if failing is not None:
            logger.info(f"*' changes at order {failing} on {first}, {second}")
            return VerificationReport(
                verdict=Verdict.FAIL,
                check="star-change",
                equation=EQ_CHANGE_OF_STAR,
                axiom="star-prime",
                failing_order=failing,
                witness=[str(first), str(second)],
                bounds=bounds,
                checked=checked,
                result={"original": str(original[failing]), "changed": str(changed[failing])},
            )
    return VerificationReport(
        verdict=Verdict.PASS, check="star-change", equation=EQ_CHANGE_OF_STAR, bounds=bounds, checked=checked
    )


def vertical_generators(model: SubmersionModel) -> list[DiffOp]:
    """Multiplication by each variable and differentiation along each fiber variable."""
    layout = model.total_layout
    generators = [DiffOp.multiplication(Polynomial.variable(layout, name)) for name in layout.names]
    generators.extend(DiffOp.partial(layout, name) for name in model.fiber)
    return generators


def order_zero_bicommutant(
    model: SubmersionModel, generators: Sequence[DiffOp] | None = None, bounds: AnsatzBounds | None = None
) -> list[DiffOp]:
    """A basis of the ansatz operators commuting with every generator.

    With the default vertical generators the result spans the multiplications
    by base polynomials, the order-0 right multiplications.

    Args:
        model: The bundle model
        generators: Operators to commute with (``vertical_generators`` by default)
        bounds: Operator order and coefficient degree of the searched space

    Returns:
        list[DiffOp]: Basis of the commuting operators inside the ansatz
    """
    bounds = bounds or AnsatzBounds.from_settings()
    generators = vertical_generators(model) if generators is None else list(generators)
    columns = [cochain.operator for cochain in ansatz_basis(model, 0, bounds)]
    rows: dict[tuple[int, tuple[int, ...], tuple[int, ...]], dict[int, ComplexScalar]] = {}
    for index, generator in enumerate(generators):
        for column, operator in enumerate(columns):
            for alpha, coefficient in operator.commutator(generator).terms.items():
                for exponent, value in coefficient.terms.items():
                    rows.setdefault((index, alpha, exponent), {})[column] = value
    basis = nullspace([rows[key] for key in sorted(rows)], len(columns))
    result = []
    for vector in basis:
        operator = DiffOp.zero(model.total_layout)
        for value, column in zip(vector, columns, strict=True):
            if not value.is_zero():
                operator = operator + column.scale(value)
        result.append(operator)
    logger.debug(f"Order-0 bicommutant: {len(result)} of {len(columns)} ansatz operators")
    return result


def _series_from_vector(
    vector: Sequence[ComplexScalar], columns: Sequence[DiffOp], model: SubmersionModel, order: int
) -> OperatorSeries:
    stages = [DiffOp.zero(model.total_layout)] * (order + 1)
    width = len(columns)
    for index, value in enumerate(vector):
        if not value.is_zero():
            power, column = divmod(index, width)
            stages[power] = stages[power] + columns[column].scale(value)
    return FormalSeries(stages, order)


def bicommutant(
    lift: CommutantLift, generators: Sequence[DiffOp] | None = None, bounds: AnsatzBounds | None = None
) -> list[OperatorSeries]:
    """A basis of the ansatz series commuting with every lifted generator up to the truncation order.

    The unknown is ``B = B_0 + lam B_1 + ...`` with every ``B_a`` in the ansatz;
    the equations are ``sum_{a+b=n} [B_a, lift(V)_b] = 0`` for ``n <= N``.

    Args:
        lift: The lifting map of the right action
        generators: Vertical operators whose lifts ``B`` must commute with (``vertical_generators`` by default)
        bounds: Operator order and coefficient degree of every ``B_a``

    Returns:
        list[OperatorSeries]: Basis of the commuting series inside the ansatz
    """
    deformation = lift.deformation
    model = deformation.model
    order = deformation.order
    bounds = bounds or AnsatzBounds.from_settings()
    generators = vertical_generators(model) if generators is None else list(generators)
    columns = [cochain.operator for cochain in ansatz_basis(model, 0, bounds)]
    width = len(columns)
    rows: dict[tuple[int, int, tuple[int, ...], tuple[int, ...]], dict[int, ComplexScalar]] = {}
    for index, generator in enumerate(generators):
        lifted = lift.lift_all(generator)
        for b, stage in enumerate(lifted):
            if stage.is_zero():
                continue
            for column, operator in enumerate(columns):
                commutator = operator.commutator(stage)
                for alpha, coefficient in commutator.terms.items():
                    for exponent, value in coefficient.terms.items():
                        for a in range(order + 1 - b):
                            rows.setdefault((index, a + b, alpha, exponent), {})[a * width + column] = value
    basis = nullspace([rows[key] for key in sorted(rows)], width * (order + 1))
    logger.debug(f"Bicommutant: {len(basis)} of {width * (order + 1)} ansatz series")
    return [_series_from_vector(vector, columns, model, order) for vector in basis]


def right_multiplication_preimage(
    element: OperatorSeries, deformation: ModuleDeformation
) -> tuple[FormalSeries[Polynomial] | None, int | None]:
    """Peel ``element`` into ``F -> F . f`` order by order.

    Returns:
        tuple: ``(f, None)`` when ``element`` is the right multiplication by ``f``,
        else ``(None, n)`` with ``n`` the order whose term is not a base multiplication
    """
    layout = deformation.model.total_layout
    identity_index = zero_index(layout.size)
    remainder = element
    functions = [Polynomial.zero(layout)] * (deformation.order + 1)
    for power in range(deformation.order + 1):
        stage = remainder[power]
        if stage.is_zero():
            continue
        if set(stage.terms) != {identity_index} or not stage.terms[identity_index].is_base_only():
            return None, power
        functions[power] = stage.terms[identity_index]
        remainder = remainder - deformation.operator(functions[power]).shift(power)
    return FormalSeries(functions, deformation.order), None


def check_bicommutant(
    lift: CommutantLift, generators: Sequence[DiffOp] | None = None, bounds: AnsatzBounds | None = None
) -> VerificationReport:
    """Check that everything commuting with the lifted vertical operators is a right multiplication.

    Args:
        lift: The lifting map of the right action
        generators: Vertical operators to lift (``vertical_generators`` by default)
        bounds: Operator order and coefficient degree of the searched series

    Returns:
        VerificationReport: The first basis series that is not ``deformation.operator(f)``, or a pass
    """
    bounds = bounds or AnsatzBounds.from_settings()
    deformation = lift.deformation
    solutions = bicommutant(lift, generators, bounds)
    report_bounds = {"order": deformation.order, **bounds.model_dump()}
    for checked, solution in enumerate(solutions, start=1):
        function, failing = right_multiplication_preimage(solution, deformation)
        if function is None or deformation.operator(function) != solution:
            logger.info(f"Bicommutant element {solution} is not a right multiplication at order {failing}")
            return VerificationReport(
                verdict=Verdict.FAIL,
                check="bicommutant",
                equation=EQ_COMMUTANT,
                failing_order=failing,
                witness=[str(stage) for stage in solution],
                bounds=report_bounds,
                checked=checked,
            )
    return VerificationReport(
        verdict=Verdict.PASS,
        check="bicommutant",
        equation=EQ_COMMUTANT,
        bounds=report_bounds,
        checked=len(solutions),
        result={"dimension": len(solutions)},
    )
