"""Star products given by bidifferential cochains, and the exponential product.

A ``StarProduct`` is the list ``C_0..C_N`` of bidifferential operators with
``C_0`` the pointwise product. ``f * g = sum lam^r C_r(f, g)`` is evaluated by
the Cauchy product over the series coefficients of ``f`` and ``g``.

The exponential product for a constant bivector is built as one operator per
order by expanding ``(theta^{mu nu} xi_mu eta_nu)^r`` in commuting symbols,
where ``xi`` differentiates the first argument and ``eta`` the second.

References:
    - [Moyal product](https://en.wikipedia.org/wiki/Moyal_product)

### Legal
SPDX-FileCopyright © Robert Ferguson <rmferguson@pm.me>

SPDX-License-Identifier: [MIT](https://spdx.org/licenses/MIT.html)
"""

from __future__ import annotations

import logging
from collections.abc import Sequence
from fractions import Fraction
from math import factorial
from typing import Any

from starbundle.common.constants import EQ_COMMUTATION
from starbundle.common.exceptions import LayoutMismatch, NonConstantTheta, UnitalityViolation
from starbundle.common.reports import Verdict, VerificationReport, series_result
from starbundle.formal_core.diffop import MultiDiffOp
from starbundle.formal_core.multiindex import MultiIndex, add_indices, unit_index, zero_index
from starbundle.formal_core.polynomial import Polynomial, VariableLayout
from starbundle.formal_core.scalars import I, ComplexScalar
from starbundle.formal_core.series import FormalSeries, lift_series
from starbundle.star_products.poisson import PoissonTensor

logger = logging.getLogger(__name__)

__all__ = [
    "StarProduct",
    "check_commutation_relations",
    "extract_poisson",
    "moyal_bidifferential",
    "moyal_cochain",
    "moyal_star_product",
    "star_commutator",
    "star_multiply",
]

SeriesLike = FormalSeries[Polynomial] | Polynomial


class StarProduct:
    """A truncated star product.

    Attributes:
        layout: Variables the cochains act on
        cochains: ``C_0..C_N``
        hermitian_claimed: Whether the construction promises ``conj(f*g) = conj(g)*conj(f)``
        label: Short description used in logs and reports
    """

    __slots__ = ("cochains", "hermitian_claimed", "label", "layout")

    def __init__(
        self,
        layout: VariableLayout,
        cochains: Sequence[MultiDiffOp],
        hermitian_claimed: bool = False,
        label: str = "cochains",
        require_unital: bool = True,
    ):
        """Validate and store the cochains.

        Args:
            layout: Variables the cochains act on
            cochains: ``C_0..C_N``; ``C_0`` must be the pointwise product
            hermitian_claimed: Whether Hermitian-ness is promised
            label: Short description
            require_unital: Reject cochains that do not annihilate constants

        Raises:
            LayoutMismatch: If a cochain is not bidifferential on ``layout``
            UnitalityViolation: If ``C_0`` is not the pointwise product, or a later cochain
                sees constants and ``require_unital`` is set
        """
        if not cochains:
            raise ValueError("a star product needs at least C_0")
        for cochain in cochains:
            if cochain.arity != 2 or cochain.layout != layout:  # noqa: PLR2004
                raise LayoutMismatch(f"Star product cochains must be bidifferential on {layout.names}")
        if cochains[0] != MultiDiffOp.pointwise_product(layout):
            raise UnitalityViolation(0)
        if require_unital:
            for order, cochain in enumerate(cochains[1:], start=1):
                if not cochain.annihilates_constants():
                    raise UnitalityViolation(order)
        self.layout = layout
        self.cochains: tuple[MultiDiffOp, ...] = tuple(cochains)
        self.hermitian_claimed = hermitian_claimed
        self.label = label

    @classmethod
    def undeformed(cls, layout: VariableLayout, order: int) -> StarProduct:
        """The pointwise product with every higher cochain zero."""
        return cls(
            layout,
            [MultiDiffOp.pointwise_product(layout)] + [MultiDiffOp.zero(layout, 2)] * order,
            hermitian_claimed=True,
            label="pointwise",
        )

    @property
    def order(self) -> int:
        return len(self.cochains) - 1

    def cochain(self, order: int) -> MultiDiffOp:
        if order > self.order:
            return MultiDiffOp.zero(self.layout, 2)
        return self.cochains[order]

    def is_unital(self) -> bool:
        return all(cochain.annihilates_constants() for cochain in self.cochains[1:])

    def completeness_degree(self) -> int:
        """Largest derivative order any cochain takes in one argument."""
        return max((max(cochain.slot_orders(), default=0) for cochain in self.cochains), default=0)

    def multiply(self, f: SeriesLike, g: SeriesLike) -> FormalSeries[Polynomial]:
        return star_multiply(self, f, g)

    def extend_to(self, layout: VariableLayout) -> StarProduct:
        """The same cochains acting on a larger set of variables."""
        return StarProduct(
            layout,
            [cochain.transfer(layout) for cochain in self.cochains],
            hermitian_claimed=self.hermitian_claimed,
            label=self.label,
            require_unital=self.is_unital(),
        )

    def truncate(self, order: int) -> StarProduct:
        return StarProduct(
            self.layout,
            self.cochains[: order + 1],
            hermitian_claimed=self.hermitian_claimed,
            label=self.label,
            require_unital=self.is_unital(),
        )

    def __eq__(self, other: object) -> bool:
        if not isinstance(other, StarProduct):
            return NotImplemented
        return self.layout == other.layout and self.cochains == other.cochains

    def __hash__(self) -> int:
        return hash((self.layout, self.cochains))

    def __repr__(self) -> str:
        return f"StarProduct({self.label}, variables={self.layout.names}, order={self.order})"


def moyal_bidifferential(theta: PoissonTensor, order: int) -> MultiDiffOp:
    """The order-``order`` cochain of the exponential product as one operator.

    Raises:
        NonConstantTheta: If theta has non-scalar components
    """
    if not theta.is_constant():
        raise NonConstantTheta(f"The exponential product formula needs a constant bivector, got {theta!r}")
    layout = theta.layout
    size = layout.size
    origin = (zero_index(size), zero_index(size))
    symbol: dict[tuple[MultiIndex, MultiIndex], ComplexScalar] = {origin: ComplexScalar(1)}
    factors = [
        (unit_index(size, mu), unit_index(size, nu), theta.component(mu, nu).constant_term())
        for mu in range(size)
        for nu in range(size)
        if not theta.component(mu, nu).is_zero()
    ]
    for _ in range(order):
        expanded: dict[tuple[MultiIndex, MultiIndex], ComplexScalar] = {}
        for (alpha, beta), weight in symbol.items():
            for step_alpha, step_beta, entry in factors:
                key = (add_indices(alpha, step_alpha), add_indices(beta, step_beta))
                expanded[key] = expanded.get(key, ComplexScalar(0)) + weight * entry
        symbol = {key: value for key, value in expanded.items() if not value.is_zero()}
    prefactor = (I * Fraction(1, 2)) ** order * Fraction(1, factorial(order))
    return MultiDiffOp(
        layout,
        2,
        {(alpha, beta): Polynomial.constant(layout, weight * prefactor) for (alpha, beta), weight in symbol.items()},
    )


def moyal_cochain(theta: PoissonTensor, order: int, f: Polynomial, g: Polynomial) -> Polynomial:
    """``C_r(f, g)`` of the exponential product.

    Args:
        theta: Constant bivector
        order: The cochain index r
        f: First base polynomial
        g: Second base polynomial

    Returns:
        Polynomial: ``(1/r!) (i/2)^r theta^{mu_1 nu_1}..theta^{mu_r nu_r} (d_mu.. f)(d_nu.. g)``

    Raises:
        NonConstantTheta: If theta has non-scalar components
    """
    return moyal_bidifferential(theta, order).apply(f.transfer(theta.layout), g.transfer(theta.layout))


def moyal_star_product(theta: PoissonTensor, order: int) -> StarProduct:
    """The exponential product truncated at ``order``; Hermitian when theta is real."""
    cochains = [moyal_bidifferential(theta, r) for r in range(order + 1)]
    logger.debug(f"Built exponential product of order {order} on {theta.layout.names}")
    return StarProduct(theta.layout, cochains, hermitian_claimed=theta.is_real(), label="moyal")


def star_multiply(star: StarProduct, f: SeriesLike, g: SeriesLike) -> FormalSeries[Polynomial]:
    """``f * g`` modulo ``lam^(N+1)``.

    Args:
        star: The product
        f: Left factor, a polynomial or a series of the product's order
        g: Right factor

    Returns:
        FormalSeries: ``(f*g)_n = sum_{a+b+r=n} C_r(f_a, g_b)``

    Raises:
        OrderMismatch: If a series operand has another truncation order
    """
    order = star.order
    left: FormalSeries[Any] = lift_series(f, order)
    right: FormalSeries[Any] = lift_series(g, order)
    zero = Polynomial.zero(star.layout)
    coefficients = [zero] * (order + 1)
    for a, f_a in enumerate(left):
        if f_a.is_zero():
            continue
        for b in range(order + 1 - a):
            g_b = right[b]
            if g_b.is_zero():
                continue
            for r in range(order + 1 - a - b):
                coefficients[a + b + r] = coefficients[a + b + r] + star.cochains[r].apply(f_a, g_b)
    return FormalSeries(coefficients, order)


def star_commutator(star: StarProduct, f: SeriesLike, g: SeriesLike) -> FormalSeries[Polynomial]:
    """``f*g - g*f``."""
    return star_multiply(star, f, g) - star_multiply(star, g, f)


def extract_poisson(star: StarProduct) -> MultiDiffOp:
    """The first-order bracket ``{f, g} = (1/i)(C_1(f, g) - C_1(g, f))`` as a bidifferential operator."""
    first = star.cochain(1)
    return (first - first.swapped()).scale(-I)


def check_commutation_relations(star: StarProduct, theta: PoissonTensor) -> VerificationReport:
    """Check ``[x^mu, x^nu]_* = i lam theta^{mu nu}`` for every pair of base coordinates.

    Args:
        star: The product to check
        theta: The bivector the commutators should reproduce

    Returns:
        VerificationReport: Pass, or the first failing pair with its order
    """
    layout = star.layout
    names = theta.layout.names
    checked = 0
    for mu, nu in ((mu, nu) for mu in range(len(names)) for nu in range(len(names))):
        x_mu = Polynomial.variable(layout, names[mu])
        x_nu = Polynomial.variable(layout, names[nu])
        commutator = star_commutator(star, x_mu, x_nu)
        expected = FormalSeries.monomial(theta.component(mu, nu).transfer(layout) * I, 1, star.order)
        checked += 1
        difference = commutator - expected
        failing = difference.lowest_order()
        if failing is not None:
            logger.info(f"Commutation relation fails for ({names[mu]}, {names[nu]}) at order {failing}")
            return VerificationReport(
                verdict=Verdict.FAIL,
                check="commutator",
                equation=EQ_COMMUTATION,
                failing_order=failing,
                witness=[names[mu], names[nu]],
                bounds={"order": star.order},
                checked=checked,
                result=series_result(commutator),
            )
    return VerificationReport(
        verdict=Verdict.PASS,
        check="commutator",
        equation=EQ_COMMUTATION,
        bounds={"order": star.order},
        checked=checked,
    )
