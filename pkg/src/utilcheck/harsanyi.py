"""Welfare-weight recovery from expected-utility data.

On a finite space, unanimous lottery indifference forcing ethical
indifference is exactly a row-space condition: stack the constant function
1 and the agent tables as rows of a matrix A over the states, and the
ethical table must be a linear combination of those rows.  Everything else
follows constructively: a violating null vector yields a witness lottery
pair, a regular submatrix yields sign-certifying lotteries, and a
dependency basis lets nonpositive weights be traded away when the profile
is linearly dependent.
"""

from __future__ import annotations

from dataclasses import dataclass, replace
from fractions import Fraction
from functools import cached_property

from . import linalg
from .core import SimpleLottery, StateKey, UtilityTable, linear_combination
from .society import Profile, Society


def express_in_span(f0, fs) -> tuple[Fraction, ...] | None:
    """Coefficients a with f0 = sum(a_i * f_i), or None if f0 is outside the span.

    Vectors are sampled values of functionals on a common finite domain.
    Underdetermined systems return the solution with free coefficients 0.
    """
    fs = [list(map(Fraction, f)) for f in fs]
    if not fs:
        raise ValueError("need at least one spanning vector")
    f0 = list(map(Fraction, f0))
    if any(len(f) != len(f0) for f in fs):
        raise ValueError("all vectors must share a dimension")
    columns = [[f[j] for f in fs] for j in range(len(f0))]
    sol = linalg.solve(columns, f0)
    return tuple(sol) if sol is not None else None


@dataclass(frozen=True)
class SpanProblem:
    """Stacked profile matrix: row 0 is constantly 1, row i is agent i's table."""

    states: tuple[StateKey, ...]
    matrix: tuple[tuple[Fraction, ...], ...]
    target: tuple[Fraction, ...]

    @classmethod
    def from_profile(cls, profile: Profile, agents, states) -> "SpanProblem":
        states = tuple(states)
        rows = [tuple(Fraction(1) for _ in states)]
        rows += [tuple(profile.tables[a][s] for s in states) for a in agents]
        target = tuple(profile.ethical[s] for s in states)
        return cls(states=states, matrix=tuple(rows), target=target)

    @cached_property
    def null_basis(self) -> list[list[Fraction]]:
        return linalg.null_space([list(r) for r in self.matrix])

    def rows_independent(self) -> bool:
        return linalg.rank([list(r) for r in self.matrix]) == len(self.matrix)


@dataclass(frozen=True)
class LotteryWitnessPair:
    """Two full-support lotteries built from a perturbation of the uniform one."""

    p: SimpleLottery
    q: SimpleLottery
    eta: tuple[Fraction, ...]
    lam: Fraction


@dataclass(frozen=True)
class AxiomIResult:
    passed: bool
    witness: LotteryWitnessPair | None = None

    def __bool__(self) -> bool:
        return self.passed


@dataclass(frozen=True)
class WeightReport:
    """Outcome of weight recovery; the identity is re-verified before return."""

    success: bool
    agents: tuple[str, ...]
    weights: tuple[Fraction, ...] | None = None
    constant: Fraction | None = None
    unique: bool = False
    positive_variant: tuple[tuple[Fraction, ...], Fraction] | None = None
    residual_witness: StateKey | None = None

    def as_mapping(self) -> dict[str, Fraction]:
        if not self.success:
            raise ValueError("recovery failed; no weights")
        return dict(zip(self.agents, self.weights))


@dataclass(frozen=True)
class DependencyBasis:
    """Greedy maximal independent agent set plus exact expansion coefficients.

    ``coefficients[j]`` expresses agent j's table as c0 * 1 + sum over the
    basis agents of c_i * u_i, for every j outside the basis.
    """

    basis: tuple[int, ...]
    coefficients: dict[int, tuple[Fraction, ...]]  # j -> (c0, then one per basis agent)


def _perturbed_pair(eta: list[Fraction], states) -> LotteryWitnessPair:
    """Uniform lottery pushed by +/- lambda * eta, with lambda = 1/(2m*max|eta|)."""
    m = len(states)
    biggest = max(abs(e) for e in eta)
    if biggest == 0:
        raise ValueError("zero perturbation vector")
    lam = Fraction(1, 2 * m) / biggest
    p = SimpleLottery.from_mapping(
        {s: Fraction(1, m) + lam * e for s, e in zip(states, eta)}
    )
    q = SimpleLottery.from_mapping(
        {s: Fraction(1, m) - lam * e for s, e in zip(states, eta)}
    )
    return LotteryWitnessPair(p=p, q=q, eta=tuple(eta), lam=lam)


def check_axiom_i(soc: Society) -> AxiomIResult:
    """Unanimous lottery indifference must force ethical indifference.

    Passes iff the ethical table lies in the row space of the profile
    matrix.  On failure the certifying lottery pair (equal expectation for
    every agent, unequal for the ethical table) is constructed from a
    violating null vector and verified before return.
    """
    profile = soc.nm_side()
    problem = SpanProblem.from_profile(profile, soc.agents, soc.space.states)
    coeffs = express_in_span(list(problem.target), [list(r) for r in problem.matrix])
    if coeffs is not None:
        return AxiomIResult(True)
    eta = next(
        eta for eta in problem.null_basis if linalg.dot(problem.target, eta) != 0
    )
    pair = _perturbed_pair(eta, problem.states)
    for name in soc.agents:
        table = profile.tables[name]
        if _expect(pair.p, table) != _expect(pair.q, table):
            raise AssertionError("witness pair fails agent indifference")
    if _expect(pair.p, profile.ethical) == _expect(pair.q, profile.ethical):
        raise AssertionError("witness pair fails ethical separation")
    return AxiomIResult(False, witness=pair)


def _expect(lottery: SimpleLottery, table: UtilityTable) -> Fraction:
    return sum((pr * table[s] for s, pr in lottery.probs), Fraction(0))


def recover_weights(soc: Society) -> WeightReport:
    """Exact (weights, constant) with ethical = sum w_i u_i + constant.

    With an independent profile the solution is unique.  Dependent profiles
    get the canonical solution: coefficients of non-basis agents are pinned
    to 0 and the basis carries everything.  If the row-space condition
    fails, the report carries the first state where the best-effort
    combination misses.
    """
    profile = soc.nm_side()
    problem = SpanProblem.from_profile(profile, soc.agents, soc.space.states)
    basis = select_dependency_basis(profile, soc.agents, soc.space.states)
    keep = [0] + [i + 1 for i in basis.basis]  # matrix rows: constant, then agents
    rows = [list(problem.matrix[i]) for i in keep]
    columns = [[row[j] for row in rows] for j in range(len(problem.states))]
    sol = linalg.solve(columns, list(problem.target))
    if sol is None:
        # Fit the consistent part of the system, then report where it misses.
        n_unknown = len(rows)
        red, pivots = linalg.rref([col + [t] for col, t in zip(columns, problem.target)])
        fit = [Fraction(0)] * n_unknown
        for r, c in enumerate(pivots):
            if c < n_unknown:
                fit[c] = red[r][n_unknown]
        bad = next(
            s
            for s, col, want in zip(problem.states, columns, problem.target)
            if linalg.dot(col, fit) != want
        )
        return WeightReport(success=False, agents=soc.agents, residual_witness=bad)
    b = sol[0]
    weights = [Fraction(0)] * soc.n
    for slot, agent_index in enumerate(basis.basis):
        weights[agent_index] = sol[slot + 1]
    report = WeightReport(
        success=True,
        agents=soc.agents,
        weights=tuple(weights),
        constant=b,
        unique=problem.rows_independent(),
    )
    _verify_identity(profile, soc.agents, report.weights, b)
    return report


def _verify_identity(profile: Profile, agents, weights, constant) -> None:
    combo = linear_combination([profile.tables[a] for a in agents], weights, constant)
    if combo != profile.ethical:
        raise AssertionError("recovered identity failed pointwise re-verification")


def select_dependency_basis(profile: Profile, agents, states) -> DependencyBasis:
    """Greedy-by-index maximal set of agents independent together with 1."""
    states = tuple(states)
    ones = [Fraction(1)] * len(states)
    chosen_rows = [ones]
    basis: list[int] = []
    for i, name in enumerate(agents):
        row = [profile.tables[name][s] for s in states]
        if linalg.rank(chosen_rows + [row]) == len(chosen_rows) + 1:
            chosen_rows.append(row)
            basis.append(i)
    coefficients: dict[int, tuple[Fraction, ...]] = {}
    for j, name in enumerate(agents):
        if j in basis:
            continue
        row = [profile.tables[name][s] for s in states]
        coeffs = express_in_span(row, chosen_rows)
        if coeffs is None:
            raise AssertionError("non-basis agent escaped the basis span")
        coefficients[j] = coeffs
    return DependencyBasis(basis=tuple(basis), coefficients=coefficients)


def witness_lotteries_for_sign(soc: Society, agent: str) -> LotteryWitnessPair:
    """Lotteries separating one agent: strict gain for them, indifference for the rest.

    Requires the profile rows (with the constant row) to be independent so a
    regular square submatrix exists; its inverse image of the target unit
    vector gives the perturbation.
    """
    profile = soc.nm_side()
    problem = SpanProblem.from_profile(profile, soc.agents, soc.space.states)
    if not problem.rows_independent():
        raise ValueError("profile is linearly dependent; no regular submatrix exists")
    k = len(problem.matrix)
    cols = _independent_columns(problem.matrix, k)
    square = [[problem.matrix[r][c] for c in cols] for r in range(k)]
    idx = soc.agents.index(agent)
    target = [Fraction(0)] * k
    target[idx + 1] = Fraction(1)  # strict separation for the chosen agent only
    eta_small = linalg.solve(square, target)
    if eta_small is None:
        raise AssertionError("regular submatrix failed to solve")
    eta = [Fraction(0)] * len(problem.states)
    for c, val in zip(cols, eta_small):
        eta[c] = val
    pair = _perturbed_pair(eta, problem.states)
    for j, name in enumerate(soc.agents):
        table = profile.tables[name]
        diff = _expect(pair.p, table) - _expect(pair.q, table)
        if name == agent:
            if diff <= 0:
                raise AssertionError("witness pair fails strict separation")
        elif diff != 0:
            raise AssertionError("witness pair fails indifference for others")
    return pair


def _independent_columns(matrix, k: int) -> list[int]:
    """First k columns (in state order) that make the rows regular."""
    cols: list[int] = []
    for c in range(len(matrix[0])):
        trial = cols + [c]
        sub = [[row[j] for j in trial] for row in matrix]
        if linalg.rank(sub) == len(trial):
            cols.append(c)
            if len(cols) == k:
                return cols
    raise ValueError("matrix rows are dependent; no regular submatrix")


def positive_reweighting(
    soc: Society, report: WeightReport, basis: DependencyBasis
) -> WeightReport | None:
    """Trade weight from the basis onto dependent agents to make all weights positive.

    Returns the report with an all-positive variant attached, or None when
    the profile is independent and some weight is forced nonpositive.
    The transfer amount is eps = min basis weight / (2 * (1 + largest total
    expansion magnitude)), small enough to keep every basis weight positive.
    """
    if not report.success:
        raise ValueError("cannot reweight a failed recovery")
    weights = list(report.weights)
    if all(w > 0 for w in weights):
        return replace(report, positive_variant=(report.weights, report.constant))
    if report.unique:
        return None
    if any(weights[i] <= 0 for i in basis.basis):
        return None
    non_basis = [j for j in range(len(weights)) if j not in basis.basis]
    spread = max(
        (
            sum(abs(basis.coefficients[j][slot + 1]) for j in non_basis)
            for slot in range(len(basis.basis))
        ),
        default=Fraction(0),
    )
    eps = min(weights[i] for i in basis.basis) / (2 * (1 + spread))
    new = list(weights)
    new_b = report.constant
    for j in non_basis:
        new[j] = eps
        coeffs = basis.coefficients[j]
        new_b -= eps * coeffs[0]
        for slot, i in enumerate(basis.basis):
            new[i] -= eps * coeffs[slot + 1]
    if any(w <= 0 for w in new):
        raise AssertionError("reweighting produced a nonpositive weight")
    profile = soc.nm_side()
    _verify_identity(profile, soc.agents, new, new_b)
    return replace(report, positive_variant=(tuple(new), new_b))
