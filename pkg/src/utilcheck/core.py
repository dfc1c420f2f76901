"""Finite state spaces, utility tables, simple lotteries, and weak orders.

States are identified by strings.  A space is either an explicit list of
identifiers or the full Cartesian product of per-dimension dyadic grids, in
which case a state key is the comma-joined canonical form of its
coordinates (e.g. ``"1/4,0"``).  Dyadic product grids are the finite
stand-in for the connected spaces that the calibration constructions need:
their step structure lets every halving step of a standard sequence land
exactly on a state.
"""

from __future__ import annotations

import itertools
from dataclasses import dataclass
from fractions import Fraction
from functools import cached_property
from typing import Callable, Iterable, Mapping

from .rationals import format_rational

StateKey = str


@dataclass(frozen=True)
class GridDim:
    """One dyadic coordinate axis: points lo, lo+step, ..., hi."""

    name: str
    lo: Fraction
    hi: Fraction
    step: Fraction

    def __post_init__(self):
        if self.hi <= self.lo:
            raise ValueError(f"dimension {self.name!r}: need hi > lo")
        if self.step <= 0:
            raise ValueError(f"dimension {self.name!r}: step must be positive")
        ratio = (self.hi - self.lo) / self.step
        if ratio.denominator != 1 or ratio.numerator & (ratio.numerator - 1):
            raise ValueError(
                f"dimension {self.name!r}: (hi-lo)/step must be a power of two, got {ratio}"
            )

    @property
    def depth(self) -> int:
        """m such that step = (hi-lo) / 2**m."""
        return (((self.hi - self.lo) / self.step).numerator).bit_length() - 1

    def points(self) -> list[Fraction]:
        n = ((self.hi - self.lo) / self.step).numerator
        return [self.lo + k * self.step for k in range(n + 1)]


@dataclass(frozen=True)
class StateSpace:
    """Ordered finite set of states, optionally with product-grid structure."""

    states: tuple[StateKey, ...]
    dims: tuple[GridDim, ...] | None = None
    _coords: tuple[tuple[Fraction, ...], ...] | None = None

    def __post_init__(self):
        if not self.states:
            raise ValueError("state space must be nonempty")
        if len(set(self.states)) != len(self.states):
            raise ValueError("state identifiers must be unique")

    @classmethod
    def explicit(cls, states: Iterable[StateKey]) -> "StateSpace":
        return cls(states=tuple(states))

    @classmethod
    def product_grid(cls, dims: Iterable[GridDim]) -> "StateSpace":
        """Full Cartesian product, row-major with the first dimension slowest."""
        dims = tuple(dims)
        if not dims:
            raise ValueError("product grid needs at least one dimension")
        coords = tuple(itertools.product(*(d.points() for d in dims)))
        keys = tuple(",".join(format_rational(c) for c in point) for point in coords)
        return cls(states=keys, dims=dims, _coords=coords)

    @property
    def kind(self) -> str:
        return "grid" if self.dims is not None else "explicit"

    def __len__(self) -> int:
        return len(self.states)

    def __contains__(self, key: object) -> bool:
        return key in self.index

    @cached_property
    def index(self) -> dict[StateKey, int]:
        return {s: i for i, s in enumerate(self.states)}

    def coords(self, key: StateKey) -> tuple[Fraction, ...]:
        if self._coords is None:
            raise ValueError("explicit spaces carry no coordinates")
        return self._coords[self.index[key]]


@dataclass(frozen=True)
class UtilityTable:
    """Total map state -> exact rational value.

    Equality is pointwise exact equality of the value maps.
    """

    values: Mapping[StateKey, Fraction]

    def __post_init__(self):
        object.__setattr__(self, "values", dict(self.values))

    @classmethod
    def from_function(cls, space: StateSpace, fn: Callable[[StateKey], Fraction]) -> "UtilityTable":
        return cls({s: Fraction(fn(s)) for s in space.states})

    @classmethod
    def on_coords(cls, space: StateSpace, fn: Callable[..., Fraction]) -> "UtilityTable":
        """Build from a function of the grid coordinates."""
        return cls({s: Fraction(fn(*space.coords(s))) for s in space.states})

    def __getitem__(self, key: StateKey) -> Fraction:
        return self.values[key]

    def states(self):
        return self.values.keys()

    def covers(self, space: StateSpace) -> bool:
        return all(s in self.values for s in space.states)

    def is_constant(self) -> bool:
        vals = iter(self.values.values())
        first = next(vals)
        return all(v == first for v in vals)

    def affine(self, alpha: Fraction, beta: Fraction) -> "UtilityTable":
        a, b = Fraction(alpha), Fraction(beta)
        return UtilityTable({s: a * v + b for s, v in self.values.items()})

    def range_values(self) -> list[Fraction]:
        """Sorted distinct values (the realized range)."""
        return sorted(set(self.values.values()))


def linear_combination(
    tables: Iterable[UtilityTable],
    weights: Iterable[Fraction],
    constant: Fraction = Fraction(0),
) -> UtilityTable:
    """Pointwise sum(w_i * t_i) + constant over the common domain."""
    tables = list(tables)
    weights = [Fraction(w) for w in weights]
    if len(tables) != len(weights):
        raise ValueError("one weight per table")
    if not tables:
        raise ValueError("need at least one table")
    keys = tables[0].values.keys()
    out = {}
    for s in keys:
        out[s] = sum((w * t[s] for w, t in zip(weights, tables)), Fraction(constant))
    return UtilityTable(out)


@dataclass(frozen=True)
class SimpleLottery:
    """Finite-support probability vector over states.

    Canonical: entries sorted by state key, strictly positive, summing to
    exactly 1.  Hashable, so lotteries can be looked up in enumerated sets.
    """

    probs: tuple[tuple[StateKey, Fraction], ...]

    def __post_init__(self):
        entries = tuple(sorted((s, Fraction(p)) for s, p in self.probs))
        if any(p < 0 for _, p in entries):
            raise ValueError("negative probability")
        entries = tuple((s, p) for s, p in entries if p != 0)
        if not entries:
            raise ValueError("empty lottery")
        if len({s for s, _ in entries}) != len(entries):
            raise ValueError("duplicate state in support")
        total = sum((p for _, p in entries), Fraction(0))
        if total != 1:
            raise ValueError(f"probabilities sum to {total}, not 1")
        object.__setattr__(self, "probs", entries)

    @classmethod
    def from_mapping(cls, probs: Mapping[StateKey, Fraction]) -> "SimpleLottery":
        return cls(tuple(probs.items()))

    @property
    def support(self) -> tuple[StateKey, ...]:
        return tuple(s for s, _ in self.probs)

    def prob(self, state: StateKey) -> Fraction:
        for s, p in self.probs:
            if s == state:
                return p
        return Fraction(0)

    def as_dict(self) -> dict[StateKey, Fraction]:
        return dict(self.probs)


def dirac(state: StateKey) -> SimpleLottery:
    return SimpleLottery(((state, Fraction(1)),))


def mix(p: SimpleLottery, q: SimpleLottery, t: Fraction) -> SimpleLottery:
    """The compound lottery (1-t)p + tq, support pruned of zeros."""
    t = Fraction(t)
    if not 0 <= t <= 1:
        raise ValueError(f"mixture weight {t} outside [0, 1]")
    out: dict[StateKey, Fraction] = {}
    for s, pr in p.probs:
        out[s] = (1 - t) * pr
    for s, pr in q.probs:
        out[s] = out.get(s, Fraction(0)) + t * pr
    return SimpleLottery.from_mapping(out)


def expectation(p: SimpleLottery, u: UtilityTable) -> Fraction:
    """Exact expected value of u under p."""
    total = Fraction(0)
    for s, pr in p.probs:
        if s not in u.values:
            raise KeyError(f"state {s!r} in lottery support but not in table")
        total += pr * u[s]
    return total


class WeakOrder:
    """Complete transitive relation over a finite item list.

    Two storage forms: by a value map (item ranked by an exact rational) or
    by an explicit set of weakly-preferred pairs, which is validated for
    completeness and transitivity at construction.
    """

    def __init__(self, items, *, values=None, geq_pairs=None):
        self.items: tuple = tuple(items)
        if not self.items:
            raise ValueError("weak order needs at least one item")
        if (values is None) == (geq_pairs is None):
            raise ValueError("give exactly one of values / geq_pairs")
        self._values: dict | None = dict(values) if values is not None else None
        self._geq: frozenset | None = None
        if self._values is not None:
            missing = [x for x in self.items if x not in self._values]
            if missing:
                raise ValueError(f"no value for items: {missing[:3]}")
        else:
            self._geq = frozenset(geq_pairs)
            self._validate_pairs()

    @classmethod
    def from_utility(cls, table: UtilityTable, items=None) -> "WeakOrder":
        items = tuple(items) if items is not None else tuple(table.states())
        return cls(items, values=table.values)

    @classmethod
    def from_values(cls, items, values: Mapping) -> "WeakOrder":
        return cls(items, values=values)

    @classmethod
    def from_pairs(cls, items, geq_pairs) -> "WeakOrder":
        return cls(items, geq_pairs=geq_pairs)

    def _validate_pairs(self):
        geq = self._geq
        for x in self.items:
            if (x, x) not in geq:
                raise ValueError(f"relation not reflexive at {x!r}")
            for y in self.items:
                if (x, y) not in geq and (y, x) not in geq:
                    raise ValueError(f"relation not complete on ({x!r}, {y!r})")
        for x in self.items:
            for y in self.items:
                if (x, y) not in geq:
                    continue
                for z in self.items:
                    if (y, z) in geq and (x, z) not in geq:
                        raise ValueError(
                            f"relation not transitive on ({x!r}, {y!r}, {z!r})"
                        )

    @property
    def table(self) -> UtilityTable | None:
        """The backing value map as a table, when there is one."""
        if self._values is None:
            return None
        return UtilityTable(self._values)

    def geq(self, x, y) -> bool:
        if self._values is not None:
            return self._values[x] >= self._values[y]
        return (x, y) in self._geq

    def strict(self, x, y) -> bool:
        return self.geq(x, y) and not self.geq(y, x)

    def indiff(self, x, y) -> bool:
        return self.geq(x, y) and self.geq(y, x)

    def indifference_class_ids(self) -> dict:
        """Map item -> id of its indifference class, ids in item order."""
        if self._values is not None:
            reps: dict = {}
            out = {}
            for x in self.items:
                v = self._values[x]
                out[x] = reps.setdefault(v, len(reps))
            return out
        reps_list: list = []
        out = {}
        for x in self.items:
            for i, r in enumerate(reps_list):
                if self.indiff(x, r):
                    out[x] = i
                    break
            else:
                out[x] = len(reps_list)
                reps_list.append(x)
        return out
