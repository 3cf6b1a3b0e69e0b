"""Exhaustive monomial checks for star product axioms.

Each check walks every tuple of base monomials up to a degree bound and
compares exact series coefficients. A multidifferential identity whose
per-argument order is at most k vanishes identically as soon as it vanishes on
monomials of degree at most k, so each report also states the degree that
makes the walk complete.

### Legal
SPDX-FileCopyright © Robert Ferguson <rmferguson@pm.me>

SPDX-License-Identifier: [MIT](https://spdx.org/licenses/MIT.html)
"""

import logging
from itertools import product

from starbundle.common.constants import EQ_HERMITIAN, EQ_MOYAL, EQ_POISSON, EQ_STAR_PRODUCT
from starbundle.common.reports import Verdict, VerificationReport, series_result
from starbundle.formal_core.polynomial import Polynomial, monomials
from starbundle.formal_core.series import FormalSeries
from starbundle.star_products.poisson import PoissonTensor, jacobi_defect
from starbundle.star_products.star import StarProduct, extract_poisson, star_multiply

logger = logging.getLogger(__name__)

__all__ = [
    "associativity_completeness_degree",
    "check_associativity",
    "check_hermitian",
    "check_jacobi",
    "check_poisson_limit",
]


def associativity_completeness_degree(star: StarProduct) -> int:
    """Largest per-argument order of any ``C_a(C_b(., .), .)`` with ``a + b <= N``."""
    orders = [max(cochain.slot_orders()) for cochain in star.cochains]
    return max(orders[a] + orders[b] for a in range(star.order + 1) for b in range(star.order + 1 - a))


def _fail(check: str, equation: str, order: int, witness: list[Polynomial], **extra: object) -> VerificationReport:
    logger.info(f"{check} fails at order {order} on {[str(item) for item in witness]}")
    return VerificationReport(
        verdict=Verdict.FAIL,
        check=check,
        equation=equation,
        failing_order=order,
        witness=[str(item) for item in witness],
        **extra,  # type: ignore[arg-type]
    )


def check_associativity(star: StarProduct, degree_bound: int) -> VerificationReport:
    """Verify ``(f*g)*h = f*(g*h)`` on all monomial triples of degree at most ``degree_bound``.

    Args:
        star: The product to check
        degree_bound: Largest monomial degree

    Returns:
        VerificationReport: Pass, or the lowest failing order with the first triple failing there
    """
    basis = monomials(star.layout, degree_bound)
    bounds = {"degree_bound": degree_bound, "order": star.order}
    completeness = associativity_completeness_degree(star)
    pairs: dict[tuple[int, int], FormalSeries[Polynomial]] = {}

    def pair(i: int, j: int) -> FormalSeries[Polynomial]:
        key = (i, j)
        if key not in pairs:
            pairs[key] = star_multiply(star, basis[i], basis[j])
        return pairs[key]

    best: tuple[int, list[Polynomial], FormalSeries[Polynomial]] | None = None
    checked = 0
    for i, j, k in product(range(len(basis)), repeat=3):
        checked += 1
        associator = star_multiply(star, pair(i, j), basis[k]) - star_multiply(star, basis[i], pair(j, k))
        failing = associator.lowest_order()
        if failing is not None and (best is None or failing < best[0]):
            best = (failing, [basis[i], basis[j], basis[k]], associator)
    logger.debug(f"Associativity walked {checked} triples up to degree {degree_bound}")
    if best is not None:
        return _fail(
            "assoc-check",
            EQ_MOYAL,
            best[0],
            best[1],
            bounds=bounds,
            checked=checked,
            completeness_degree=completeness,
            result=series_result(best[2]),
        )
    return VerificationReport(
        verdict=Verdict.PASS,
        check="assoc-check",
        equation=EQ_MOYAL,
        bounds=bounds,
        checked=checked,
        completeness_degree=completeness,
    )


def check_hermitian(star: StarProduct, degree_bound: int) -> VerificationReport:
    """Verify ``conj(f*g) = conj(g)*conj(f)`` on all monomial pairs of degree at most ``degree_bound``."""
    basis = monomials(star.layout, degree_bound)
    bounds = {"degree_bound": degree_bound, "order": star.order}
    checked = 0
    for f, g in product(basis, repeat=2):
        checked += 1
        left = star_multiply(star, f, g).conjugate()
        right = star_multiply(star, g.conjugate(), f.conjugate())
        failing = (left - right).lowest_order()
        if failing is not None:
            return _fail(
                "hermitian-check",
                EQ_HERMITIAN,
                failing,
                [f, g],
                bounds=bounds,
                checked=checked,
                completeness_degree=star.completeness_degree(),
                result=series_result(left - right),
            )
    return VerificationReport(
        verdict=Verdict.PASS,
        check="hermitian-check",
        equation=EQ_HERMITIAN,
        bounds=bounds,
        checked=checked,
        completeness_degree=star.completeness_degree(),
    )


def check_poisson_limit(star: StarProduct, theta: PoissonTensor, degree_bound: int) -> VerificationReport:
    """Compare the first-order bracket of ``star`` with ``theta``'s bracket on monomial pairs."""
    bracket = extract_poisson(star)
    basis = monomials(star.layout, degree_bound)
    checked = 0
    for f, g in product(basis, repeat=2):
        checked += 1
        expected = theta.bracket(f.transfer(theta.layout), g.transfer(theta.layout)).transfer(star.layout)
        if bracket.apply(f, g) != expected:
            return _fail("poisson", EQ_STAR_PRODUCT, 1, [f, g], bounds={"degree_bound": degree_bound}, checked=checked)
    return VerificationReport(
        verdict=Verdict.PASS,
        check="poisson",
        equation=EQ_STAR_PRODUCT,
        bounds={"degree_bound": degree_bound},
        checked=checked,
    )


def check_jacobi(theta: PoissonTensor, degree_bound: int) -> VerificationReport:
    """Evaluate the Jacobi defect of ``theta``'s bracket on all monomial triples."""
    basis = monomials(theta.layout, degree_bound)
    checked = 0
    for f, g, h in product(basis, repeat=3):
        checked += 1
        if not jacobi_defect(theta, f, g, h).is_zero():
            return _fail("schouten", EQ_POISSON, 0, [f, g, h], bounds={"degree_bound": degree_bound}, checked=checked)
    return VerificationReport(
        verdict=Verdict.PASS,
        check="schouten",
        equation=EQ_POISSON,
        bounds={"degree_bound": degree_bound},
        checked=checked,
    )
