"""Exact-rational verification of utilitarian aggregation on finite societies.

Everything is computed over ``fractions.Fraction``: axiom checks either
pass or produce a concrete witness, recovered weights satisfy their
defining identity pointwise, and coincidence verdicts carry exact affine
coefficients.  No tolerances appear anywhere.
"""

from .alt import (
    AltSystem,
    MissingGridPointError,
    StandardSequence,
    alt_represents,
    build_standard_sequence,
    check_consistency,
    check_crossover,
    reconstruct_alt_utility,
)
from .coincidence import (
    AffineReport,
    AgentVerdict,
    NormalizationError,
    SimplexFixture,
    SqrtFixture,
    Theorem3Report,
    ViolationWitness,
    normalize_for_theorem3,
    proposition1_check,
    simplex_counterexample,
    sqrt_fixture,
    theorem3_pipeline,
)
from .core import (
    GridDim,
    SimpleLottery,
    StateSpace,
    UtilityTable,
    WeakOrder,
    dirac,
    expectation,
    linear_combination,
    mix,
)
from .harsanyi import (
    DependencyBasis,
    LotteryWitnessPair,
    SpanProblem,
    WeightReport,
    check_axiom_i,
    express_in_span,
    positive_reweighting,
    recover_weights,
    select_dependency_basis,
    witness_lotteries_for_sign,
)
from .harvey import (
    DifferenceMap,
    DifferenceMapError,
    HarveyReport,
    build_difference_map,
    check_axiom_I,
    extract_slopes,
    harvey_recover,
    recover_constant,
    verify_chain_rule,
    verify_component_additivity,
)
from .nm import (
    LotteryOrderSample,
    affine_relation,
    check_independence,
    dyadic_mixture_lotteries,
    nm_represents,
    random_dyadic_lotteries,
    sample_from_ranking,
    sample_from_utility,
)
from .rationals import format_rational, parse_rational
from .society import (
    CheckResult,
    Profile,
    Society,
    check_pareto_criterion,
    check_probabilistic_extension,
    check_semi_separable,
    matches,
    pareto_dominates,
)
from .societyfile import SocietyFileError, emit_society, parse_society, society_to_payload

__all__ = [name for name in dir() if not name.startswith("_")]
