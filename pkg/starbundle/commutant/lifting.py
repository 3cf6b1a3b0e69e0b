"""Lifting vertical operators into the commutant of the deformed right action.

A series ``D = D_0 + lam D_1 + ...`` commutes with every ``F -> F . f`` when
``D o rho(f) = rho(f) o D``. At order 0 this says ``D_0`` is vertical, and at
order ``n`` it is ``d D_n = E_n`` with the same defect as a module
equivalence whose head is ``D_0``. Each order is solved with the coboundary
solver, so a lift is the solver's canonical choice at every stage.

### Legal
SPDX-FileCopyright © Robert Ferguson <rmferguson@pm.me>

SPDX-License-Identifier: [MIT](https://spdx.org/licenses/MIT.html)
"""

from __future__ import annotations

import logging
from typing import Any

from starbundle.common.constants import EQ_COMMUTANT
from starbundle.common.exceptions import NotVertical
from starbundle.common.reports import Verdict, VerificationReport
from starbundle.formal_core.diffop import DiffOp
from starbundle.formal_core.polynomial import Polynomial
from starbundle.formal_core.series import FormalSeries, lift_series
from starbundle.hochschild.solver import AnsatzBounds, solve_coboundary
from starbundle.principal_deform.bundle import ModuleDeformation
from starbundle.principal_deform.checks import separating_monomial
from starbundle.principal_deform.equivalence import equivalence_defect
from starbundle.settings import get_app_settings

logger = logging.getLogger(__name__)

__all__ = [
    "CommutantLift",
    "check_commutant",
    "lift_vertical",
    "right_multiplication_operator",
]

OperatorSeries = FormalSeries[DiffOp]


def right_multiplication_operator(
    deformation: ModuleDeformation, function: Polynomial | FormalSeries[Polynomial]
) -> OperatorSeries:
    """The series ``F -> F . f``."""
    return deformation.operator(function)


def check_commutant(
    operator: OperatorSeries | DiffOp, deformation: ModuleDeformation, degree_bound: int
) -> VerificationReport:
    """Check ``D(F . f) = D(F) . f`` for every base monomial ``f`` up to the bound.

    Args:
        operator: The candidate ``D``, a series or a single operator
        deformation: The right action
        degree_bound: Largest base monomial degree

    Returns:
        VerificationReport: The first failing order with an ``(F, f)`` witness, or a pass
    """
    series: OperatorSeries = lift_series(operator, deformation.order)
    bounds = {"degree_bound": degree_bound, "order": deformation.order}
    checked = 0
    for function in deformation.model.base_monomials(degree_bound):
        checked += 1
        multiplication = deformation.operator(function)
        difference = series * multiplication - multiplication * series
        failing = difference.lowest_order()
        if failing is not None:
            witness = [str(separating_monomial(deformation, difference[failing])), str(function)]
            logger.info(f"Commutant check fails at order {failing} on {witness}")
            return VerificationReport(
                verdict=Verdict.FAIL,
                check="commutant",
                equation=EQ_COMMUTANT,
                failing_order=failing,
                witness=witness,
                bounds=bounds,
                checked=checked,
                result={"difference": str(difference[failing])},
            )
    return VerificationReport(
        verdict=Verdict.PASS, check="commutant", equation=EQ_COMMUTANT, bounds=bounds, checked=checked
    )


class CommutantLift:
    """The lifting map ``D_0 -> D_0 + lam D_1 + ...`` for one right action, with a cache.

    Attributes:
        deformation: The right action whose commutant is targeted
        bounds: Solver ansatz bounds for every correction
        degree_bound: Degree bound of the solver's independent re-check
        provenance: The vertical operator each computed lift came from
    """

    def __init__(
        self, deformation: ModuleDeformation, bounds: AnsatzBounds | None = None, degree_bound: int | None = None
    ):
        self.deformation = deformation
        self.bounds = bounds or AnsatzBounds.from_settings()
        self.degree_bound = get_app_settings().default_degree_bound if degree_bound is None else degree_bound
        self._cache: dict[DiffOp, OperatorSeries] = {}
        self.provenance: dict[OperatorSeries, DiffOp] = {}

    @property
    def order(self) -> int:
        return self.deformation.order

    def lift(self, operator: DiffOp) -> OperatorSeries:
        """The commutant element over a vertical ``D_0``.

        Raises:
            NotVertical: If ``D_0`` differentiates along a base variable
            NoSolutionInTruncation: If a correction is outside the ansatz
        """
        cached = self._cache.get(operator)
        if cached is not None:
            return cached
        if not operator.is_vertical():
            raise NotVertical(f"{operator} differentiates along the base")
        # translation-invariant data keeps the corrections translation-invariant
        equivariant = operator.is_t_independent() and self.deformation.is_t_independent()
        stages: list[DiffOp] = []
        for n in range(1, self.order + 1):
            target = equivalence_defect(self.deformation, self.deformation, stages, head=operator)
            solution = solve_coboundary(
                target, self.bounds, equivariant=equivariant, order=n, degree_bound=self.degree_bound
            )
            stages.append(solution.operator)
            logger.debug(f"Lift of {operator} at order {n}: {solution.operator}")
        lifted = FormalSeries([operator, *stages], self.order)
        self._cache[operator] = lifted
        self.provenance[lifted] = operator
        return lifted

    def lift_all(self, series: OperatorSeries | DiffOp) -> OperatorSeries:
        """Extend the lift lam-linearly: ``sum lam^s lift(V_s)``."""
        vertical: FormalSeries[Any] = lift_series(series, self.order)
        total = FormalSeries.constant(DiffOp.zero(self.deformation.model.total_layout), self.order)
        for power, stage in enumerate(vertical):
            if not stage.is_zero():
                total = total + self.lift(stage).shift(power)
        return total

    def inverse(self, element: OperatorSeries) -> OperatorSeries:
        """The vertical series ``V`` with ``lift_all(V) = element``.

        The lowest term of a commutant element with vanishing lower orders
        commutes with every ``mult(pr^* f)``, hence is vertical; it is peeled
        off and its shifted lift subtracted.

        Raises:
            NotVertical: If some peeled term is not vertical, so ``element`` is outside the commutant
        """
        remainder = lift_series(element, self.order)
        zero = DiffOp.zero(self.deformation.model.total_layout)
        preimage = [zero] * (self.order + 1)
        for power in range(self.order + 1):
            stage = remainder[power]
            if stage.is_zero():
                continue
            if not stage.is_vertical():
                logger.info(f"Order {power} term {stage} of a claimed commutant element is not vertical")
                raise NotVertical(f"order {power} term {stage} is not vertical")
            preimage[power] = stage
            remainder = remainder - self.lift(stage).shift(power)
        return FormalSeries(preimage, self.order)

    def star_prime(self, left: OperatorSeries | DiffOp, right: OperatorSeries | DiffOp) -> OperatorSeries:
        """``D *' D~ = lift^{-1}(lift(D) o lift(D~))``."""
        return self.inverse(self.lift_all(left) * self.lift_all(right))

    def left_action(
        self, operator: OperatorSeries | DiffOp, element: Polynomial | FormalSeries[Polynomial]
    ) -> FormalSeries[Polynomial]:
        """``D .' F = lift(D) F``."""
        lifted = self.lift_all(operator)
        argument: FormalSeries[Any] = lift_series(element, self.order)
        zero = Polynomial.zero(self.deformation.model.total_layout)
        coefficients = [zero] * (self.order + 1)
        for a, stage in enumerate(lifted):
            for b in range(self.order + 1 - a):
                coefficients[a + b] = coefficients[a + b] + stage.apply(argument[b])
        return FormalSeries(coefficients, self.order)


def lift_vertical(
    operator: DiffOp,
    deformation: ModuleDeformation,
    bounds: AnsatzBounds | None = None,
    degree_bound: int | None = None,
) -> OperatorSeries:
    """One-shot ``CommutantLift(deformation, bounds).lift(operator)``."""
    return CommutantLift(deformation, bounds, degree_bound).lift(operator)
