"""Weight recovery, span tests, and witness lotteries."""

from __future__ import annotations

import random
from fractions import Fraction

import pytest

from conftest import letters_space, planted_society, rand_fraction
from utilcheck import (
    GridDim,
    Society,
    SpanProblem,
    StateSpace,
    UtilityTable,
    check_axiom_i,
    check_pareto_criterion,
    expectation,
    express_in_span,
    linear_combination,
    positive_reweighting,
    recover_weights,
    select_dependency_basis,
    witness_lotteries_for_sign,
)
from utilcheck.linalg import dot, mat_vec, null_space, rank, rref, solve

F = Fraction


# ---------------------------------------------------------------------------
# Exact elimination primitives


def test_rref_pivots():
    m = [[F(2), F(4)], [F(1), F(2)], [F(0), F(1)]]
    red, pivots = rref(m)
    assert pivots == [0, 1]
    assert red[0] == [F(1), F(0)] and red[1] == [F(0), F(1)]


def test_solve_unique_and_inconsistent():
    a = [[F(1), F(1)], [F(1), F(-1)]]
    assert solve(a, [F(3), F(1)]) == [F(2), F(1)]
    b = [[F(1), F(1)], [F(2), F(2)]]
    assert solve(b, [F(1), F(3)]) is None


def test_solve_underdetermined_sets_free_to_zero():
    a = [[F(1), F(1), F(1)]]
    assert solve(a, [F(5)]) == [F(5), F(0), F(0)]


def test_null_space_annihilates():
    rng = random.Random(13)
    for _ in range(20):
        rows = [[rand_fraction(rng, 5, 5) for _ in range(4)] for _ in range(2)]
        basis = null_space(rows)
        assert len(basis) == 4 - rank(rows)
        for vec in basis:
            assert mat_vec(rows, vec) == [F(0)] * 2


# ---------------------------------------------------------------------------
# Span membership


def test_express_in_span_first_vector():
    f1 = [F(1), F(2), F(3)]
    f2 = [F(0), F(1), F(0)]
    assert express_in_span(f1, [f1, f2]) == (F(1), F(0))


def test_express_in_span_zero_vector():
    f1 = [F(1), F(2)]
    f2 = [F(4), F(1)]
    assert express_in_span([F(0), F(0)], [f1, f2]) == (F(0), F(0))


def test_express_in_span_random_combination():
    rng = random.Random(19)
    for _ in range(20):
        f1 = [rand_fraction(rng) for _ in range(5)]
        f2 = [rand_fraction(rng) for _ in range(5)]
        f0 = [2 * a - 3 * b for a, b in zip(f1, f2)]
        coeffs = express_in_span(f0, [f1, f2])
        assert coeffs is not None
        # Substitute back and compare coordinate by coordinate.
        rebuilt = [coeffs[0] * a + coeffs[1] * b for a, b in zip(f1, f2)]
        assert rebuilt == f0


def test_express_in_span_outside():
    assert express_in_span([F(0), F(1)], [[F(1), F(0)]]) is None


def test_express_in_span_empty():
    with pytest.raises(ValueError):
        express_in_span([F(1)], [])


def test_lemma4_agreement_with_null_annihilation():
    # Membership in the span must agree with "every null vector of the
    # spanning set annihilates the target", case by case.
    rng = random.Random(29)
    for _ in range(100):
        dim = rng.randint(1, 6)
        count = rng.randint(1, 4)
        fs = [[rand_fraction(rng, 6, 4) for _ in range(dim)] for _ in range(count)]
        if rng.random() < 0.5:
            f0 = [
                sum((rand_fraction(rng, 3, 3) * f[j] for f in fs), F(0))
                for j in range(dim)
            ]
        else:
            f0 = [rand_fraction(rng, 6, 4) for _ in range(dim)]
        verdict = express_in_span(f0, fs) is not None
        basis = null_space(fs)  # vectors eta with sum_j eta_j f_i[j] = 0
        oracle = all(dot(f0, eta) == 0 for eta in basis)
        assert verdict == oracle


# ---------------------------------------------------------------------------
# Axiom (i)


def _grid_2x2_society(v_fn):
    space = StateSpace.product_grid(
        [GridDim("x", F(0), F(1), F(1)), GridDim("y", F(0), F(1), F(1))]
    )
    u1 = UtilityTable.on_coords(space, lambda x, y: x)
    u2 = UtilityTable.on_coords(space, lambda x, y: y)
    v = UtilityTable.on_coords(space, v_fn)
    return Society.from_tables(space, {"a1": u1, "a2": u2}, v)


def test_axiom_i_sum_passes():
    soc = _grid_2x2_society(lambda x, y: x + y)
    assert check_axiom_i(soc).passed


def test_axiom_i_difference_passes_but_pareto_fails():
    soc = _grid_2x2_society(lambda x, y: x - y)
    assert check_axiom_i(soc).passed
    assert not check_pareto_criterion(soc).passed


def test_axiom_i_product_witness():
    soc = _grid_2x2_society(lambda x, y: x * y)
    result = check_axiom_i(soc)
    assert not result.passed
    pair = result.witness
    profile = soc.nm_side()
    for name in soc.agents:
        table = profile.tables[name]
        assert expectation(pair.p, table) == expectation(pair.q, table)
    assert expectation(pair.p, profile.ethical) != expectation(pair.q, profile.ethical)
    # Null-space oracle: the product profile spans only 3 of the 4 directions,
    # so exactly one perturbation direction remains and the ethical table must
    # load on it.
    problem = SpanProblem.from_profile(profile, soc.agents, soc.space.states)
    assert len(problem.null_basis) == 1
    assert dot(list(problem.target), problem.null_basis[0]) != 0


def test_axiom_i_invariant_under_affine_rescaling():
    rng = random.Random(37)
    for _ in range(10):
        soc, _, _ = planted_society(rng, 2, 5)
        assert check_axiom_i(soc).passed
        tables = {
            name: soc.base.tables[name].affine(
                F(rng.choice([-3, -1, 2, 5])), rand_fraction(rng)
            )
            for name in soc.agents
        }
        ethical = soc.base.ethical.affine(F(rng.randint(1, 7)), rand_fraction(rng))
        rescaled = Society.from_tables(soc.space, tables, ethical)
        assert check_axiom_i(rescaled).passed


# ---------------------------------------------------------------------------
# Weight recovery


def test_recover_sum_weights():
    soc = _grid_2x2_society(lambda x, y: x + y)
    report = recover_weights(soc)
    assert report.success and report.unique
    assert report.weights == (F(1), F(1))
    assert report.constant == F(0)


def test_recover_failure_reports_residual_state():
    soc = _grid_2x2_society(lambda x, y: x * y)
    report = recover_weights(soc)
    assert not report.success
    assert report.residual_witness in soc.space.states


def test_plant_and_recover_random():
    rng = random.Random(41)
    for _ in range(25):
        n = rng.choice([2, 3, 4])
        soc, weights, constant = planted_society(rng, n, rng.randint(n + 2, 8))
        report = recover_weights(soc)
        assert report.success and report.unique
        assert report.weights == weights
        assert report.constant == constant


def test_recover_weights_canonical_on_dependent_profile():
    # Duplicate agent: canonical solution pins the non-basis copy to zero.
    space = letters_space(3)
    u1 = UtilityTable({"s0": F(0), "s1": F(1), "s2": F(2)})
    soc = Society.from_tables(
        space, {"a1": u1, "a2": u1}, linear_combination([u1], [F(2)])
    )
    report = recover_weights(soc)
    assert report.success and not report.unique
    assert report.weights == (F(2), F(0))
    assert report.constant == F(0)


# ---------------------------------------------------------------------------
# Witness lotteries


def test_witness_lotteries_verified_by_expectation():
    rng = random.Random(43)
    soc, _, _ = planted_society(rng, 2, 5)
    profile = soc.nm_side()
    pair = witness_lotteries_for_sign(soc, "a0")
    u0, u1 = profile.tables["a0"], profile.tables["a1"]
    assert expectation(pair.p, u0) > expectation(pair.q, u0)
    assert expectation(pair.p, u1) == expectation(pair.q, u1)


def test_witness_lotteries_certify_negative_weight():
    rng = random.Random(47)
    for _ in range(5):
        soc, weights, _ = planted_society(
            rng, 3, 6, weights=(F(2), F(-1), F(3)), ensure_single_agent_pairs=True
        )
        pair = witness_lotteries_for_sign(soc, "a1")
        v = soc.base.ethical
        diff_u = expectation(pair.p, soc.base.tables["a1"]) - expectation(
            pair.q, soc.base.tables["a1"]
        )
        diff_v = expectation(pair.p, v) - expectation(pair.q, v)
        assert diff_u > 0
        assert diff_v == weights[1] * diff_u  # other agents cancel exactly
        assert diff_v < 0


def test_witness_lotteries_dependent_profile_errors():
    space = letters_space(3)
    u1 = UtilityTable({"s0": F(0), "s1": F(1), "s2": F(2)})
    soc = Society.from_tables(space, {"a1": u1, "a2": u1}, u1)
    with pytest.raises(ValueError, match="dependent"):
        witness_lotteries_for_sign(soc, "a1")


# ---------------------------------------------------------------------------
# Dependency basis and positive reweighting


def test_basis_all_constant_agents():
    space = letters_space(3)
    c2 = UtilityTable({s: F(2) for s in space.states})
    c5 = UtilityTable({s: F(5) for s in space.states})
    soc = Society.from_tables(space, {"a1": c2, "a2": c5}, c2)
    basis = select_dependency_basis(soc.base, soc.agents, soc.space.states)
    assert basis.basis == ()
    assert basis.coefficients[0] == (F(2),)
    assert basis.coefficients[1] == (F(5),)


def test_basis_affine_dependency():
    space = letters_space(3)
    u1 = UtilityTable({"s0": F(0), "s1": F(1), "s2": F(3)})
    u2 = u1.affine(F(2), F(1))
    soc = Society.from_tables(space, {"a1": u1, "a2": u2}, u1)
    basis = select_dependency_basis(soc.base, soc.agents, soc.space.states)
    assert basis.basis == (0,)
    assert basis.coefficients[1] == (F(1), F(2))


def test_basis_random_planted_dependency():
    rng = random.Random(53)
    for _ in range(10):
        space = letters_space(6)
        tables = {f"a{i}": UtilityTable({s: rand_fraction(rng) for s in space.states}) for i in range(3)}
        dep = linear_combination(
            list(tables.values()),
            [rand_fraction(rng, 5, 3) for _ in range(3)],
            rand_fraction(rng),
        )
        tables["a3"] = dep
        soc = Society.from_tables(space, tables, dep)
        basis = select_dependency_basis(soc.base, soc.agents, soc.space.states)
        assert len(basis.basis) <= 3
        # Re-verify every expansion pointwise.
        names = list(soc.agents)
        for j, coeffs in basis.coefficients.items():
            combo = linear_combination(
                [soc.base.tables[names[i]] for i in basis.basis],
                coeffs[1:],
                coeffs[0],
            )
            assert combo == soc.base.tables[names[j]]


def test_positive_reweighting_already_positive():
    rng = random.Random(59)
    soc, weights, constant = planted_society(rng, 2, 5)
    report = recover_weights(soc)
    basis = select_dependency_basis(soc.nm_side(), soc.agents, soc.space.states)
    out = positive_reweighting(soc, report, basis)
    assert out is not None
    assert out.positive_variant == (weights, constant)


def test_positive_reweighting_duplicate_agent():
    space = letters_space(3)
    u1 = UtilityTable({"s0": F(0), "s1": F(1), "s2": F(2)})
    soc = Society.from_tables(
        space, {"a1": u1, "a2": u1}, linear_combination([u1], [F(2)])
    )
    report = recover_weights(soc)
    assert report.weights == (F(2), F(0))
    basis = select_dependency_basis(soc.nm_side(), soc.agents, soc.space.states)
    out = positive_reweighting(soc, report, basis)
    assert out is not None
    new_weights, new_b = out.positive_variant
    assert all(w > 0 for w in new_weights)
    assert (
        linear_combination([u1, u1], new_weights, new_b) == soc.base.ethical
    )
    # The transfer shape: basis keeps 2 - eps, the copy gets eps.
    assert new_weights[0] + new_weights[1] == F(2)


def test_positive_reweighting_unique_zero_weight_is_none():
    space = letters_space(4)
    u1 = UtilityTable({"s0": F(0), "s1": F(1), "s2": F(2), "s3": F(5)})
    u2 = UtilityTable({"s0": F(1), "s1": F(0), "s2": F(2), "s3": F(3)})
    soc = Society.from_tables(space, {"a1": u1, "a2": u2}, u1)  # v = u1 exactly
    report = recover_weights(soc)
    assert report.unique and report.weights == (F(1), F(0))
    basis = select_dependency_basis(soc.nm_side(), soc.agents, soc.space.states)
    assert positive_reweighting(soc, report, basis) is None
