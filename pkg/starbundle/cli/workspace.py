"""Workspace files: the per-run description of a deformation problem.

A workspace is a JSON object naming the variables, the bivector, the star
product source, truncation and degree bounds, solver bounds and the optional
projector and twists. Every expression inside it uses the parser's grammar.

References:
    - [Pydantic Documentation](https://docs.pydantic.dev/)

### Legal
SPDX-FileCopyright © Robert Ferguson <rmferguson@pm.me>

SPDX-License-Identifier: [MIT](https://spdx.org/licenses/MIT.html)
"""

from __future__ import annotations

import json
import logging
from pathlib import Path
from typing import Literal

from pydantic import BaseModel, Field, ValidationError, field_validator, model_validator

from starbundle.cli.evaluate import evaluate_matrix, evaluate_operator, evaluate_series, parse_operator
from starbundle.cli.parser import parse_expression
from starbundle.common.constants import DEFORMATION_PARAMETER, DERIVATIVE_PREFIX, IMAGINARY_UNIT
from starbundle.common.exceptions import AlgebraError, InputError, WorkspaceError
from starbundle.formal_core.diffop import MultiDiffOp
from starbundle.formal_core.matrix import PolyMatrix
from starbundle.formal_core.polynomial import Polynomial, VariableLayout
from starbundle.hochschild.model import SubmersionModel
from starbundle.hochschild.solver import AnsatzBounds
from starbundle.principal_deform.bundle import ModuleDeformation, product_bundle_module
from starbundle.principal_deform.obstruction import build_module_deformation
from starbundle.settings import get_app_settings
from starbundle.star_products.equivalence import EquivalenceTransform
from starbundle.star_products.poisson import PoissonTensor
from starbundle.star_products.star import StarProduct, moyal_star_product

logger = logging.getLogger(__name__)

__all__ = [
    "CochainFile",
    "CochainTerm",
    "Workspace",
    "load_workspace",
    "parse_error_message",
]

RESERVED_NAMES = (IMAGINARY_UNIT, DEFORMATION_PARAMETER)


class CochainTerm(BaseModel):
    """One term ``c * L(f) * R(g)`` of a bidifferential cochain."""

    left: str = Field("1", description="Operator applied to the first argument")
    right: str = Field("1", description="Operator applied to the second argument")
    coefficient: str = Field("1", description="Polynomial coefficient")


class CochainFile(BaseModel):
    """Schema for a star product given by its cochains ``C_1..C_N``."""

    cochains: dict[int, list[CochainTerm]] = Field(..., description="Terms of C_r keyed by r >= 1")
    require_unital: bool = Field(True, description="Reject cochains that see constants")

    @field_validator("cochains")
    @classmethod
    def validate_orders(cls, v: dict[int, list[CochainTerm]]) -> dict[int, list[CochainTerm]]:
        """Cochain orders start at 1; C_0 is always the pointwise product."""
        if any(order < 1 for order in v):
            raise ValueError("cochain orders must be at least 1")
        return v

    def build(self, layout: VariableLayout, order: int) -> StarProduct:
        """Assemble ``C_0..C_order``; orders missing from the file are zero."""
        cochains = [MultiDiffOp.pointwise_product(layout)]
        for r in range(1, order + 1):
            terms: dict[tuple[tuple[int, ...], ...], Polynomial] = {}
            for term in self.cochains.get(r, []):
                left = parse_operator(term.left, layout, 0)[0]
                right = parse_operator(term.right, layout, 0)[0]
                coefficient = evaluate_series(parse_expression(term.coefficient), layout, 0)[0]
                for alpha, a in left.terms.items():
                    for beta, b in right.terms.items():
                        key = (alpha, beta)
                        terms[key] = terms.get(key, Polynomial.zero(layout)) + coefficient * a * b
            cochains.append(MultiDiffOp(layout, 2, terms))
        # file products are never trusted as Hermitian; deform_metric checks them
        return StarProduct(layout, cochains, label="cochain-file", require_unital=self.require_unital)


class Workspace(BaseModel):
    """Schema for a workspace file."""

    base_variables: list[str] = Field(..., min_length=1, description="Base variable names x_1..x_m")
    fiber_variables: list[str] = Field(default_factory=list, description="Fiber variable names t_1..t_k")
    theta: list[tuple[int | str, int | str, str]] = Field(
        default_factory=list, description="Bivector entries [mu, nu, expr]; mu, nu are 1-based indices or names"
    )
    star: Literal["moyal", "cochain-file"] = Field("moyal", description="Star product source")
    cochain_file: str | None = Field(None, description="Cochain file for the cochain-file star product")
    order: int = Field(default_factory=lambda: get_app_settings().default_order, ge=1, description="Truncation N")
    degree_bound: int = Field(
        default_factory=lambda: get_app_settings().default_degree_bound, ge=0, description="Monomial degree bound"
    )
    bounds: AnsatzBounds = Field(default_factory=AnsatzBounds.from_settings, description="Solver ansatz bounds")
    projector: str | None = Field(None, description="Classical projector as a matrix literal")
    metric_points: int = Field(
        default_factory=lambda: get_app_settings().metric_sample_points, ge=1, description="Positivity sample points"
    )
    module: Literal["product", "extended"] = Field("product", description="Source of the module structure")
    module_twist: str | None = Field(None, description="Operator series D; the module is conjugated by 1 + D")
    star_twist: str | None = Field(None, description="Base operator series D; the module is reparametrized by 1 + D")

    @field_validator("base_variables", "fiber_variables")
    @classmethod
    def validate_names(cls, v: list[str]) -> list[str]:
        """Reject names the expression grammar reserves.

        Raises:
            ValueError: For ``i``, ``lam``, ``d_``-prefixed or non-identifier names
        """
        for name in v:
            if not name.isidentifier():
                raise ValueError(f"Variable name '{name}' is not an identifier")
            if name in RESERVED_NAMES or name.startswith(DERIVATIVE_PREFIX):
                raise ValueError(f"Variable name '{name}' is reserved by the expression grammar")
        return v

    @model_validator(mode="after")
    def validate_workspace(self) -> Workspace:
        """Check distinct names and the star product source."""
        names = self.base_variables + self.fiber_variables
        if len(set(names)) != len(names):
            raise ValueError(f"Variable names must be distinct: {names}")
        if self.star == "cochain-file" and self.cochain_file is None:
            raise ValueError("star 'cochain-file' needs a cochain_file")
        return self

    def build_model(self) -> SubmersionModel:
        return SubmersionModel(tuple(self.base_variables), tuple(self.fiber_variables))

    def _index(self, entry: int | str) -> int:
        if isinstance(entry, int):
            if not 1 <= entry <= len(self.base_variables):
                raise WorkspaceError(f"theta index {entry} outside 1..{len(self.base_variables)}")
            return entry - 1
        if entry not in self.base_variables:
            raise WorkspaceError(f"theta index '{entry}' is not a base variable")
        return self.base_variables.index(entry)

    def build_theta(self) -> PoissonTensor:
        """The bivector on the base variables.

        Raises:
            WorkspaceError: On bad indices, nonzero diagonal entries or entries that are not antisymmetric
        """
        layout = self.build_model().base_layout
        components = {}
        for mu, nu, text in self.theta:
            components[(self._index(mu), self._index(nu))] = evaluate_series(parse_expression(text), layout, 0)[0]
        try:
            return PoissonTensor(layout, components)
        except AlgebraError as e:
            raise WorkspaceError(f"theta is not antisymmetric: {e}") from e

    def build_star_product(self) -> StarProduct:
        """The base star product truncated at the workspace order."""
        if self.star == "moyal":
            return moyal_star_product(self.build_theta(), self.order)
        path = Path(self.cochain_file or "")
        try:
            cochain_file = CochainFile.model_validate(json.loads(path.read_text(encoding="utf-8")))
        except (OSError, json.JSONDecodeError, ValidationError) as e:
            raise WorkspaceError(f"cannot read cochain file {path}: {e}") from e
        return cochain_file.build(self.build_model().base_layout, self.order)

    def build_projector(self) -> PolyMatrix:
        if self.projector is None:
            raise WorkspaceError("this command needs a projector")
        layout = self.build_model().base_layout
        matrix = evaluate_matrix(parse_expression(self.projector), layout, 0)
        return PolyMatrix(layout, [[entry[0] for entry in row] for row in matrix])

    def _transform(self, text: str, layout: VariableLayout) -> EquivalenceTransform:
        series = evaluate_operator(parse_expression(text), layout, self.order)
        if not series[0].is_zero():
            raise WorkspaceError(f"twist {text} must vanish at order 0")
        return EquivalenceTransform(layout, list(series.coeffs[1:]))

    def module_transform(self) -> EquivalenceTransform | None:
        if self.module_twist is None:
            return None
        return self._transform(self.module_twist, self.build_model().total_layout)

    def star_transform(self) -> EquivalenceTransform | None:
        if self.star_twist is None:
            return None
        return self._transform(self.star_twist, self.build_model().base_layout)

    def build_module(self, star: StarProduct | None = None, equivariant: bool = False) -> ModuleDeformation:
        """The workspace module: product bundle or solver-built, then twisted.

        Args:
            star: The base product (built from the workspace when omitted)
            equivariant: Use the equivariant ansatz when the module is solver-built

        Returns:
            ModuleDeformation: The structure after the module twist and then the star twist
        """
        star = star or self.build_star_product()
        model = self.build_model()
        if self.module == "product":
            deformation = product_bundle_module(star, model)
        else:
            deformation = build_module_deformation(
                star, model, self.order, self.bounds, equivariant=equivariant, degree_bound=self.degree_bound
            )
        module_transform = self.module_transform()
        if module_transform is not None:
            deformation = deformation.conjugate(module_transform)
        star_transform = self.star_transform()
        if star_transform is not None:
            deformation = deformation.reparametrize(star_transform)
        logger.debug(f"Built workspace module {deformation!r}")
        return deformation


def load_workspace(path: str | Path) -> Workspace:
    """Read and validate a workspace file.

    A relative ``cochain_file`` is resolved against the workspace's directory.

    Raises:
        WorkspaceError: If the file cannot be read or is not JSON
        ValidationError: If the content violates the workspace schema
    """
    path = Path(path)
    try:
        data = json.loads(path.read_text(encoding="utf-8"))
    except (OSError, json.JSONDecodeError) as e:
        raise WorkspaceError(f"cannot read workspace {path}: {e}") from e
    workspace = Workspace.model_validate(data)
    if workspace.cochain_file is not None and not Path(workspace.cochain_file).is_absolute():
        workspace = workspace.model_copy(update={"cochain_file": str(path.parent / workspace.cochain_file)})
    return workspace


def parse_error_message(error: InputError | ValidationError) -> str:
    """One-line description of an input problem for stderr."""
    if isinstance(error, ValidationError):
        return "; ".join(f"{'.'.join(map(str, item['loc']))}: {item['msg']}" for item in error.errors())
    return str(error)
