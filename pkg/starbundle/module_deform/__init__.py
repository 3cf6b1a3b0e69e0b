"""Deformation of projective modules and Hermitian fiber metrics.

### Legal
SPDX-FileCopyright © Robert Ferguson <rmferguson@pm.me>

SPDX-License-Identifier: [MIT](https://spdx.org/licenses/MIT.html)
"""

from starbundle.module_deform.equivalence import check_module_equivalence
from starbundle.module_deform.idempotent import (
    IdempotentMatrix,
    NewtonStep,
    SeriesMatrix,
    deform_idempotent,
    intertwiner,
)
from starbundle.module_deform.metric import (
    DeformedMetric,
    TransformedMetric,
    check_metric_axioms,
    check_metric_positivity,
    deform_metric,
    sample_points,
)
from starbundle.module_deform.module import (
    ComponentTransform,
    DeformedModuleElement,
    LeftStarTransform,
    PerturbedModuleAction,
    StarModuleAction,
    TransformedModuleAction,
    module_action,
    module_generators,
    project_to_module,
)

__all__ = [
    "ComponentTransform",
    "DeformedMetric",
    "DeformedModuleElement",
    "IdempotentMatrix",
    "LeftStarTransform",
    "NewtonStep",
    "PerturbedModuleAction",
    "SeriesMatrix",
    "StarModuleAction",
    "TransformedMetric",
    "TransformedModuleAction",
    "check_metric_axioms",
    "check_metric_positivity",
    "check_module_equivalence",
    "deform_idempotent",
    "deform_metric",
    "intertwiner",
    "module_action",
    "module_generators",
    "project_to_module",
    "sample_points",
]
