"""Conditional expectation operators on C(X) for finite Stone spaces X.

Exact-rational models of simple functions over finite Boolean algebras,
positive functionals as finitely additive measures, the Alexandroff-duplicate
averaging operator with an axiom checker, and the dyadic-tower construction
showing that no positive order continuous functional survives on spaces
without isolated points.
"""
from .boolean_algebra import (
    BooleanAlgebra,
    ClopenSet,
    is_connected,
    make_dyadic_algebra,
    make_finite_algebra,
    separation_witness,
)
from .cond_expectation import (
    AxiomReport,
    CeOperator,
    DuplicateOperator,
    DuplicateSpace,
    PartitionAverageOperator,
    check_ce_axioms,
    duplicate_space,
    range_basis,
    range_membership,
)
from .errors import *  # noqa: F401,F403
from .functional import (
    OrderFunctional,
    dirac,
    evaluate,
    is_strictly_positive,
    positive_split,
    vanishes_on_clopens,
)
from .simple_function import SimpleFunction, freudenthal_approx, indicator, level_set, unit
from .witness import (
    BranchChain,
    DyadicTower,
    alphas,
    build_tower,
    divergence_function,
    embed,
    verify_divergence,
)

__version__ = "0.1.0"
