"""Shared generators for randomized exact-arithmetic tests.

Everything is seeded; no test depends on global RNG state.
"""

from __future__ import annotations

import random
from fractions import Fraction

from utilcheck import GridDim, Profile, Society, StateSpace, UtilityTable, linear_combination


def rand_fraction(rng: random.Random, num: int = 100, den: int = 100) -> Fraction:
    return Fraction(rng.randint(-num, num), rng.randint(1, den))


def rand_positive_fraction(rng: random.Random, num: int = 100, den: int = 100) -> Fraction:
    return Fraction(rng.randint(1, num), rng.randint(1, den))


def rand_table(rng: random.Random, states, num: int = 100, den: int = 100) -> UtilityTable:
    return UtilityTable({s: rand_fraction(rng, num, den) for s in states})


def letters_space(n: int) -> StateSpace:
    return StateSpace.explicit([f"s{i}" for i in range(n)])


def planted_society(
    rng: random.Random,
    n_agents: int,
    n_states: int,
    *,
    weights=None,
    constant=None,
    ensure_single_agent_pairs: bool = False,
) -> tuple[Society, tuple[Fraction, ...], Fraction]:
    """Society with ethical = sum(weights * tables) + constant, profile independent.

    With ``ensure_single_agent_pairs`` each agent gets a pair of states where
    only that agent's value moves, which makes the state-level dominance
    criterion decisive for weight signs.
    """
    from utilcheck.linalg import rank

    space = letters_space(n_states)
    while True:
        tables = {f"a{i}": rand_table(rng, space.states) for i in range(n_agents)}
        if ensure_single_agent_pairs:
            values = {name: dict(t.values) for name, t in tables.items()}
            names = list(values)
            for i, name in enumerate(names):
                lo, hi = f"s{2 * i}", f"s{2 * i + 1}"
                for other in names:
                    if other != name:
                        values[other][hi] = values[other][lo]
                if values[name][hi] == values[name][lo]:
                    values[name][hi] = values[name][lo] + 1
            tables = {name: UtilityTable(vals) for name, vals in values.items()}
        rows = [[Fraction(1)] * n_states]
        rows += [[t[s] for s in space.states] for t in tables.values()]
        if rank(rows) == n_agents + 1:
            break
    if weights is None:
        weights = tuple(rand_positive_fraction(rng) for _ in range(n_agents))
    if constant is None:
        constant = rand_fraction(rng)
    ethical = linear_combination(list(tables.values()), weights, constant)
    return Society.from_tables(space, tables, ethical), tuple(weights), Fraction(constant)


def product_grid_society(
    rng: random.Random,
    n_agents: int,
    *,
    sizes=None,
    weights=None,
    constant=None,
) -> tuple[Society, tuple[Fraction, ...], Fraction]:
    """Separable society on a dyadic product grid with a planted ethical sum.

    Each agent's table depends only on its own coordinate and is injective
    on that coordinate, so the society is semi-separable by construction.
    """
    if sizes is None:
        sizes = [rng.choice([1, 1, 2]) for _ in range(n_agents)]  # depth per dim
    dims = [
        GridDim(name=f"x{i}", lo=Fraction(0), hi=Fraction(1), step=Fraction(1, 2**m))
        for i, m in enumerate(sizes)
    ]
    space = StateSpace.product_grid(dims)
    tables = {}
    for i in range(n_agents):
        points = dims[i].points()
        while True:
            per_value = {p: rand_fraction(rng) for p in points}
            if len(set(per_value.values())) == len(points):
                break
        tables[f"a{i}"] = UtilityTable(
            {s: per_value[space.coords(s)[i]] for s in space.states}
        )
    if weights is None:
        weights = tuple(rand_positive_fraction(rng) for _ in range(n_agents))
    if constant is None:
        constant = rand_fraction(rng)
    ethical = linear_combination(list(tables.values()), weights, constant)
    return Society.from_tables(space, tables, ethical), tuple(weights), Fraction(constant)

def planted_coincidence_society(
    rng: random.Random, n_agents: int, *, distort_agent: int | None = None, sizes=None
):
    """Society whose two profiles are planted affine images agent by agent.

    The intensity side carries (u_i, v = sum a_i u_i + b); the lottery side
    carries u*_i = alpha_i u_i + beta_i with weights a*_i = a_i / alpha_i, so
    both ethical tables order states identically.  With ``distort_agent``
    that agent's starred table is cubed after a positive shift, a monotone
    but never-affine distortion (its value grid has at least three points).

    Returns (society, alphas, betas).
    """
    soc, weights, _ = product_grid_society(rng, n_agents, sizes=sizes)
    alphas = [rand_positive_fraction(rng, 9, 5) for _ in range(n_agents)]
    betas = [rand_fraction(rng, 9, 5) for _ in range(n_agents)]
    star_tables = {}
    star_weights = []
    for i, name in enumerate(soc.agents):
        base = soc.base.tables[name]
        if i == distort_agent:
            low = min(base.values.values())
            star_tables[name] = UtilityTable(
                {s: (v - low + 1) ** 3 for s, v in base.values.items()}
            )
            star_weights.append(Fraction(1))
            alphas[i] = betas[i] = None
        else:
            star_tables[name] = base.affine(alphas[i], betas[i])
            star_weights.append(weights[i] / alphas[i])
    star_ethical = linear_combination(
        [star_tables[a] for a in soc.agents], star_weights, rand_fraction(rng)
    )
    society = Society(
        space=soc.space,
        agents=soc.agents,
        base=soc.base,
        nm=Profile(star_tables, star_ethical),
        alt=None,
        metadata={},
    )
    return society, tuple(alphas), tuple(betas)
