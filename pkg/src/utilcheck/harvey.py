"""Weight recovery from improvement-intensity data.

The engine is the difference map F: tabulate the ethical difference
v(x) - v(y) against the vector of agent differences u_i(x) - u_i(y).  When
unanimous intensity equality forces ethical intensity equality, F is a
well-defined function of the difference vector; semi-separability makes its
domain a full product, and then F splits into per-agent components that are
additive on their grids.  On a finite grid additivity plus the realized
step structure force each component to be exactly linear, so the slopes can
be read off and verified exhaustively instead of by a limit argument; any
failure is a hard error, never an approximation.
"""

from __future__ import annotations

import itertools
import random
from dataclasses import dataclass
from fractions import Fraction

from .core import StateKey, linear_combination
from .society import CheckResult, Society, check_semi_separable

DiffVector = tuple[Fraction, ...]


class DifferenceMapError(ValueError):
    """Construction failed: two pairs share a difference vector but not an ethical difference."""

    def __init__(self, first: tuple[StateKey, StateKey], second: tuple[StateKey, StateKey]):
        super().__init__(f"conflicting pairs {first} and {second}")
        self.conflict = (first, second)


@dataclass(frozen=True)
class DifferenceMap:
    """Tabulated ethical differences over realized agent-difference vectors."""

    agents: tuple[str, ...]
    table: dict[DiffVector, Fraction]
    exemplars: dict[DiffVector, tuple[StateKey, StateKey]]
    components: tuple[dict[Fraction, Fraction], ...]
    diff_grids: tuple[tuple[Fraction, ...], ...]
    ranges: tuple[tuple[Fraction, ...], ...]
    value_vectors: tuple[DiffVector, ...]

    def component_monotone(self, i: int) -> bool:
        grid = self.diff_grids[i]
        comp = self.components[i]
        return all(comp[a] < comp[b] for a, b in zip(grid, grid[1:]))


def _pair_groups(soc: Society):
    """Iterate (difference vector, ethical difference, pair) in state order."""
    profile = soc.alt_side()
    tables = [profile.tables[a] for a in soc.agents]
    v = profile.ethical
    for x in soc.space.states:
        for y in soc.space.states:
            c = tuple(t[x] - t[y] for t in tables)
            yield c, v[x] - v[y], (x, y)


def check_axiom_I(soc: Society) -> CheckResult:
    """Equal agent differences on all coordinates must give equal ethical differences.

    Scans pairs grouped by their difference vector, which decides the same
    condition as the quadruple formulation: a witness quadruple is two pairs
    in one group with different ethical differences.
    """
    seen: dict[DiffVector, tuple[Fraction, tuple[StateKey, StateKey]]] = {}
    for c, dv, pair in _pair_groups(soc):
        stored = seen.get(c)
        if stored is None:
            seen[c] = (dv, pair)
        elif stored[0] != dv:
            return CheckResult(False, witness=pair + stored[1])
    return CheckResult(True)


def build_difference_map(soc: Society) -> DifferenceMap:
    """Tabulate F on every realized difference vector, validating well-definedness.

    Semi-separability is a hard precondition: it is what makes the realized
    difference vectors cover the full product of the per-agent grids, so a
    violation raises immediately rather than producing a partial map.
    """
    semi = check_semi_separable(soc)
    if not semi:
        raise ValueError(f"society is not semi-separable (witness profile {semi.witness})")
    profile = soc.alt_side()
    tables = [profile.tables[a] for a in soc.agents]
    table: dict[DiffVector, Fraction] = {}
    exemplars: dict[DiffVector, tuple[StateKey, StateKey]] = {}
    for c, dv, pair in _pair_groups(soc):
        if c in table:
            if table[c] != dv:
                raise DifferenceMapError(pair, exemplars[c])
        else:
            table[c] = dv
            exemplars[c] = pair
    diff_grids = tuple(
        tuple(sorted({c[i] for c in table})) for i in range(len(soc.agents))
    )
    zero = Fraction(0)
    components = []
    for i, grid in enumerate(diff_grids):
        comp = {}
        for c in grid:
            axis = tuple(c if j == i else zero for j in range(len(soc.agents)))
            if axis not in table:
                raise AssertionError("semi-separable map misses an axis vector")
            comp[c] = table[axis]
        components.append(comp)
    ranges = tuple(tuple(t.range_values()) for t in tables)
    vectors = sorted({tuple(t[x] for t in tables) for x in soc.space.states})
    return DifferenceMap(
        agents=soc.agents,
        table=table,
        exemplars=exemplars,
        components=tuple(components),
        diff_grids=diff_grids,
        ranges=ranges,
        value_vectors=tuple(vectors),
    )


def verify_chain_rule(
    dm: DifferenceMap, *, exhaustive_limit: int = 200_000, sample: int = 8000, seed: int = 0
) -> CheckResult:
    """F(c'-c) + F(c''-c') must equal F(c''-c) over value-vector triples.

    The tabulated F is fetched once per ordered vector pair; the triple scan
    itself then only adds and compares those cached values.
    """
    vectors = dm.value_vectors
    n = len(vectors)

    def diff(a: DiffVector, b: DiffVector) -> DiffVector:
        return tuple(x - y for x, y in zip(a, b))

    fetched = [[dm.table[diff(b, a)] for a in vectors] for b in vectors]
    exhaustive = n**3 <= exhaustive_limit
    if exhaustive:
        triples = itertools.product(range(n), repeat=3)
    else:
        rng = random.Random(seed)
        triples = (
            (rng.randrange(n), rng.randrange(n), rng.randrange(n)) for _ in range(sample)
        )
    for i, j, k in triples:
        if fetched[j][i] + fetched[k][j] != fetched[k][i]:
            return CheckResult(False, witness=(vectors[i], vectors[j], vectors[k]))
    note = "" if exhaustive else f"sampled {sample} of {n**3} triples"
    return CheckResult(True, description=note)


def verify_component_additivity(dm: DifferenceMap, i: int) -> CheckResult:
    """F_i(c) + F_i(c') must equal F_i(c + c') whenever all three lie on the grid.

    Also certifies the forced consequences F_i(0) = 0 and F_i(-c) = -F_i(c).
    """
    comp = dm.components[i]
    grid = dm.diff_grids[i]
    zero = Fraction(0)
    if comp[zero] != 0:
        return CheckResult(False, witness=(zero, zero), description="F_i(0) != 0")
    for c in grid:
        if comp[-c] != -comp[c]:
            return CheckResult(False, witness=(c, -c), description="F_i(-c) != -F_i(c)")
    grid_set = set(grid)
    for c in grid:
        for c1 in grid:
            if c + c1 in grid_set and comp[c] + comp[c1] != comp[c + c1]:
                return CheckResult(False, witness=(c, c1))
    return CheckResult(True)


@dataclass(frozen=True)
class SlopeReport:
    slopes: tuple[Fraction, ...]
    constant_agents: tuple[str, ...]  # agents with a trivial grid, slope fixed at 1


def extract_slopes(dm: DifferenceMap) -> SlopeReport:
    """Per-agent slope a_i with F_i(c) = a_i * c verified on the whole grid.

    Agents whose difference grid is {0} contribute nothing to any
    difference; their slope is fixed at 1 by convention and flagged.
    A non-constant slope or a nonpositive slope (an upstream dominance
    violation) is a hard error.
    """
    slopes: list[Fraction] = []
    constant_agents: list[str] = []
    for i, name in enumerate(dm.agents):
        grid = dm.diff_grids[i]
        comp = dm.components[i]
        positives = [c for c in grid if c > 0]
        if not positives:
            slopes.append(Fraction(1))
            constant_agents.append(name)
            continue
        h = positives[0]
        a = comp[h] / h
        for c in grid:
            if comp[c] != a * c:
                raise ValueError(f"component {name!r} is not linear at {c}: {comp[c]} != {a * c}")
        if a <= 0:
            raise ValueError(f"component slope for {name!r} is not positive: {a}")
        slopes.append(a)
    return SlopeReport(slopes=tuple(slopes), constant_agents=tuple(constant_agents))


def recover_constant(soc: Society, slopes) -> Fraction:
    """The additive constant, fixed at the first state and re-verified pointwise."""
    profile = soc.alt_side()
    tables = [profile.tables[a] for a in soc.agents]
    anchor = soc.space.states[0]
    b = profile.ethical[anchor] - sum(
        (a * t[anchor] for a, t in zip(slopes, tables)), Fraction(0)
    )
    if linear_combination(tables, slopes, b) != profile.ethical:
        raise ValueError("slopes and constant fail pointwise re-verification")
    return b


@dataclass(frozen=True)
class HarveyReport:
    success: bool
    agents: tuple[str, ...]
    weights: tuple[Fraction, ...] | None = None
    constant: Fraction | None = None
    constant_agents: tuple[str, ...] = ()
    failed_stage: str | None = None
    witness: object = None

    def as_mapping(self) -> dict[str, Fraction]:
        if not self.success:
            raise ValueError("recovery failed; no weights")
        return dict(zip(self.agents, self.weights))


def harvey_recover(soc: Society) -> HarveyReport:
    """Full intensity-side pipeline: axiom check, map, additivity, slopes, constant."""
    axiom = check_axiom_I(soc)
    if not axiom:
        return HarveyReport(False, soc.agents, failed_stage="axiom-I", witness=axiom.witness)
    try:
        dm = build_difference_map(soc)
    except ValueError as exc:
        stage = "difference-map" if isinstance(exc, DifferenceMapError) else "semi-separability"
        return HarveyReport(False, soc.agents, failed_stage=stage, witness=str(exc))
    chain = verify_chain_rule(dm)
    if not chain:
        return HarveyReport(False, soc.agents, failed_stage="chain-rule", witness=chain.witness)
    for i, name in enumerate(soc.agents):
        add = verify_component_additivity(dm, i)
        if not add:
            return HarveyReport(
                False, soc.agents, failed_stage=f"additivity:{name}", witness=add.witness
            )
    try:
        slope_report = extract_slopes(dm)
        b = recover_constant(soc, slope_report.slopes)
    except ValueError as exc:
        return HarveyReport(False, soc.agents, failed_stage="slopes", witness=str(exc))
    return HarveyReport(
        True,
        soc.agents,
        weights=slope_report.slopes,
        constant=b,
        constant_agents=slope_report.constant_agents,
    )
