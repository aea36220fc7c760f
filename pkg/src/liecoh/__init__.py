"""Exact-arithmetic Chevalley-Eilenberg cohomology for rational Lie algebras.

The package computes absolute and relative Lie-algebra cohomology with
module coefficients over exact rationals, classifies algebras through the
Killing form, builds central extensions with diagonal isotropy, and checks
the classical operator identities that tie the whole calculus together.
"""

from .cecomplex import Cochain, CochainLevel, differential_matrix, relative_subspace
from .cohomology import (
    CohomologyResult,
    betti_sequence,
    cohomology,
    duality_report,
    invariant_volume_form,
    killing_three_form,
)
from .extensions import ExtensionPair, builtin, central_extension, verify_vanishing
from .gmod import (
    GModule,
    adjoint_module,
    coadjoint_module,
    direct_sum,
    dual_module,
    make_module,
    module_from_spec,
    trivial_module,
)
from .liealg import (
    LieAlgebra,
    Subalgebra,
    killing_form,
    structure_report,
    subalgebra,
    validate,
)
from .ratlin import Matrix, quotient_dim

__version__ = "0.1.0"

__all__ = [
    "Cochain",
    "CochainLevel",
    "CohomologyResult",
    "ExtensionPair",
    "GModule",
    "LieAlgebra",
    "Matrix",
    "Subalgebra",
    "adjoint_module",
    "betti_sequence",
    "builtin",
    "central_extension",
    "coadjoint_module",
    "cohomology",
    "differential_matrix",
    "direct_sum",
    "dual_module",
    "duality_report",
    "invariant_volume_form",
    "killing_form",
    "killing_three_form",
    "make_module",
    "module_from_spec",
    "quotient_dim",
    "relative_subspace",
    "structure_report",
    "subalgebra",
    "trivial_module",
    "validate",
    "verify_vanishing",
]
