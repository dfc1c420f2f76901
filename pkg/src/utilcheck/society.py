"""Societies and their order-level axioms.

A society is an ethical order plus n >= 2 individual orders on one state
space, all given here as utility tables.  Coincidence runs carry two extra
table profiles: a lottery-side profile (u*, v*) and an intensity-side
profile (u, v); either defaults to the base profile when absent.

Failing checks return the first witness in state order, so results are
reproducible byte for byte.
"""

from __future__ import annotations

import itertools
from dataclasses import dataclass, field
from typing import TYPE_CHECKING, Mapping

from .core import StateKey, StateSpace, UtilityTable, WeakOrder, dirac

if TYPE_CHECKING:  # pragma: no cover
    from .alt import AltSystem

#: Guard for the semi-separability search: refuse when |X|**(n+1) exceeds this.
DEFAULT_STATE_CAP = 2**30


@dataclass(frozen=True)
class CheckResult:
    """PASS, or a witness demonstrating failure."""

    passed: bool
    witness: tuple | None = None
    description: str = ""

    def __bool__(self) -> bool:
        return self.passed


@dataclass(frozen=True)
class Profile:
    """Named agent tables plus one ethical table on a common space."""

    tables: dict[str, UtilityTable]
    ethical: UtilityTable

    def __post_init__(self):
        object.__setattr__(self, "tables", dict(self.tables))


@dataclass(frozen=True)
class Society:
    space: StateSpace
    agents: tuple[str, ...]
    base: Profile
    nm: Profile | None = None
    alt: Profile | None = None
    metadata: dict = field(default_factory=dict)

    def __post_init__(self):
        if len(self.agents) < 2:
            raise ValueError("a society needs at least two individuals")
        if len(set(self.agents)) != len(self.agents):
            raise ValueError("duplicate agent names")
        for label, profile in (("base", self.base), ("nm", self.nm), ("alt", self.alt)):
            if profile is None:
                continue
            if set(profile.tables) != set(self.agents):
                raise ValueError(f"{label} profile does not cover exactly the agents")
            for name, table in profile.tables.items():
                if not table.covers(self.space):
                    raise ValueError(f"{label} table for {name!r} misses states")
            if not profile.ethical.covers(self.space):
                raise ValueError(f"{label} ethical table misses states")

    @classmethod
    def from_tables(
        cls,
        space: StateSpace,
        utilities: Mapping[str, UtilityTable],
        ethical: UtilityTable,
        *,
        nm: Profile | None = None,
        alt: Profile | None = None,
        metadata: dict | None = None,
    ) -> "Society":
        return cls(
            space=space,
            agents=tuple(utilities),
            base=Profile(dict(utilities), ethical),
            nm=nm,
            alt=alt,
            metadata=dict(metadata or {}),
        )

    @property
    def n(self) -> int:
        return len(self.agents)

    def nm_side(self) -> Profile:
        """Tables feeding the expected-utility theorems (u*, v*)."""
        return self.nm if self.nm is not None else self.base

    def alt_side(self) -> Profile:
        """Tables feeding the intensity theorems (u, v)."""
        return self.alt if self.alt is not None else self.base

    def order(self, agent: str) -> WeakOrder:
        return WeakOrder.from_utility(self.base.tables[agent], items=self.space.states)

    def ethical_order(self) -> WeakOrder:
        return WeakOrder.from_utility(self.base.ethical, items=self.space.states)

    def orders(self) -> list[WeakOrder]:
        return [self.order(a) for a in self.agents]


def pareto_dominates(soc: Society, x: StateKey, y: StateKey) -> bool:
    """True iff every individual weakly prefers x to y and someone strictly does."""
    for s in (x, y):
        if s not in soc.space:
            raise KeyError(f"unknown state {s!r}")
    strict = False
    for a in soc.agents:
        u = soc.base.tables[a]
        if u[x] < u[y]:
            return False
        if u[x] > u[y]:
            strict = True
    return strict


def check_pareto_criterion(soc: Society) -> CheckResult:
    """Every dominated pair must be ranked strictly by the ethical order."""
    v = soc.base.ethical
    for x in soc.space.states:
        for y in soc.space.states:
            if pareto_dominates(soc, x, y) and not v[x] > v[y]:
                return CheckResult(
                    False,
                    witness=(x, y),
                    description=f"{x!r} dominates {y!r} but is not ethically better",
                )
    return CheckResult(True)


def check_semi_separable(
    soc: Society, *, orders: list[WeakOrder] | None = None, cap: int = DEFAULT_STATE_CAP
) -> CheckResult:
    """For every profile (x_1..x_n) some single state must be i-indifferent to x_i.

    Equivalent to requiring every combination of per-agent indifference
    classes to be realized by an actual state, which is what gets searched:
    profiles are scanned in state order and distinct class combinations are
    checked once, so the witness is still the first failing profile.
    """
    size = len(soc.space)
    if size ** (soc.n + 1) > cap:
        raise ValueError(
            f"semi-separability search size {size}**{soc.n + 1} exceeds cap {cap}"
        )
    if orders is None:
        orders = soc.orders()
    class_ids = [o.indifference_class_ids() for o in orders]
    realized = {tuple(ids[s] for ids in class_ids) for s in soc.space.states}
    n_classes = [len(set(ids.values())) for ids in class_ids]
    needed = 1
    for k in n_classes:
        needed *= k
    if len(realized) == needed:
        return CheckResult(True)
    for profile in itertools.product(soc.space.states, repeat=soc.n):
        combo = tuple(ids[s] for ids, s in zip(class_ids, profile))
        if combo not in realized:
            return CheckResult(
                False,
                witness=profile,
                description="no single state is indifferent to this profile agent-wise",
            )
    raise AssertionError("class counting and profile scan disagree")


def check_probabilistic_extension(ext: WeakOrder, base: WeakOrder) -> bool:
    """True iff ext agrees with base on all point-mass lotteries."""
    for x in base.items:
        if dirac(x) not in ext.items:
            raise KeyError(f"point-mass lottery for {x!r} missing from the extension")
    for x in base.items:
        for y in base.items:
            if base.geq(x, y) != ext.geq(dirac(x), dirac(y)):
                return False
    return True


def matches(order: WeakOrder, alt: "AltSystem") -> bool:
    """True iff x >= y in the order exactly when [x,y] >= [y,y] in the system."""
    for x in order.items:
        for y in order.items:
            if order.geq(x, y) != alt.geq((x, y), (y, y)):
                return False
    return True
