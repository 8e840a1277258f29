"""Simulated decision makers answering pairwise act comparisons.

Each oracle exposes ``compare(f, g)`` returning one of the three
:class:`Preference` responses, with ties declared inside an indifference
band.  The expected-utility oracle follows a full model; the Choquet oracle
replaces the state beliefs with a (possibly non-additive) capacity, applying
it to the discounted row values.  All oracles here are deterministic, so
elicitation sessions and audit witnesses replay exactly.
"""

from __future__ import annotations

import enum
import itertools
from dataclasses import dataclass, field
from typing import Callable, Iterable, Mapping

from .acts import GridAct, Outcome, State
from .evaluate import Beliefs, DSEUModel, UtilityModel, profile_value
from .measure import ExpMeasure


class ProtocolError(RuntimeError):
    """An oracle answered in a way the running protocol cannot use."""


class Preference(enum.Enum):
    STRICTLY_PREFERS_FIRST = "first"
    INDIFFERENT = "indifferent"
    STRICTLY_PREFERS_SECOND = "second"

    @property
    def flipped(self) -> Preference:
        if self is Preference.STRICTLY_PREFERS_FIRST:
            return Preference.STRICTLY_PREFERS_SECOND
        if self is Preference.STRICTLY_PREFERS_SECOND:
            return Preference.STRICTLY_PREFERS_FIRST
        return self

    @property
    def weakly_first(self) -> bool:
        return self is not Preference.STRICTLY_PREFERS_SECOND


def _banded(diff: float, band: float) -> Preference:
    if abs(diff) <= band:
        return Preference.INDIFFERENT
    return (
        Preference.STRICTLY_PREFERS_FIRST
        if diff > 0
        else Preference.STRICTLY_PREFERS_SECOND
    )


@dataclass(frozen=True)
class SEUOracle:
    """Compares acts by their discounted subjective expected utility."""

    model: DSEUModel
    band: float = 0.0

    def __post_init__(self) -> None:
        if self.band < 0:
            raise ValueError(f"indifference band must be >= 0, got {self.band}")

    @property
    def states(self) -> tuple[State, ...]:
        return self.model.states

    @property
    def outcomes(self) -> tuple[Outcome, ...]:
        return self.model.outcomes

    @property
    def discount(self) -> ExpMeasure:
        return self.model.discount

    @property
    def utility(self) -> UtilityModel:
        return self.model.utility

    def value(self, f: GridAct) -> float:
        return self.model.act_value(f)

    def compare(self, f: GridAct, g: GridAct) -> Preference:
        return _banded(self.value(f) - self.value(g), self.band)


def seu_oracle(model: DSEUModel, band: float = 0.0) -> SEUOracle:
    return SEUOracle(model, band)


@dataclass(frozen=True)
class Capacity:
    """Normalized monotone set function on the subsets of a finite state space."""

    states: tuple[State, ...]
    weights: Mapping[frozenset[State], float]

    def __post_init__(self) -> None:
        full = frozenset(self.states)
        spec = dict(self.weights)
        spec.setdefault(frozenset(), 0.0)
        spec.setdefault(full, 1.0)
        missing = {
            frozenset(c)
            for r in range(len(self.states) + 1)
            for c in itertools.combinations(self.states, r)
        } - set(spec)
        if missing:
            raise ValueError(f"capacity misses {len(missing)} subsets, e.g. {sorted(next(iter(missing)))}")
        if spec[frozenset()] != 0.0:
            raise ValueError("capacity of the empty set must be 0")
        if abs(spec[full] - 1.0) > 1e-12:
            raise ValueError("capacity of the full state space must be 1")
        for subset, v in spec.items():
            for s in self.states:
                if s not in subset and spec[subset | {s}] < v - 1e-12:
                    raise ValueError(
                        f"capacity not monotone: adding {s!r} to {sorted(subset)} lowers it"
                    )
        object.__setattr__(self, "weights", spec)

    def __call__(self, subset: Iterable[State]) -> float:
        return self.weights[frozenset(subset)]

    @classmethod
    def additive(cls, beliefs: Beliefs) -> Capacity:
        states = beliefs.states
        spec = {
            frozenset(c): sum(beliefs(s) for s in c)
            for r in range(len(states) + 1)
            for c in itertools.combinations(states, r)
        }
        spec[frozenset(states)] = 1.0
        return cls(states, spec)

    @classmethod
    def epsilon_contamination(cls, beliefs: Beliefs, epsilon: float) -> Capacity:
        """Shrinks every proper event by ``1 - epsilon``; the sure event keeps mass 1."""
        if not 0.0 <= epsilon <= 1.0:
            raise ValueError(f"contamination must lie in [0, 1], got {epsilon}")
        states = beliefs.states
        spec: dict[frozenset[State], float] = {}
        for r in range(len(states) + 1):
            for c in itertools.combinations(states, r):
                spec[frozenset(c)] = (1.0 - epsilon) * sum(beliefs(s) for s in c)
        spec[frozenset(states)] = 1.0
        return cls(states, spec)


def choquet_value(
    capacity: Capacity, row_values: Mapping[State, float]
) -> float:
    """Choquet integral of per-state values against the capacity.

    Telescopes over states sorted by decreasing value (label-ordered within
    ties, which the integral is insensitive to).
    """
    order = sorted(capacity.states, key=lambda s: (-row_values[s], s))
    total = 0.0
    prev = 0.0
    top: set[State] = set()
    for s in order:
        top.add(s)
        nu = capacity(top)
        total += (nu - prev) * row_values[s]
        prev = nu
    return total


@dataclass(frozen=True)
class ChoquetOracle:
    """Discounts each row first, then aggregates rows with a Choquet integral."""

    discount: ExpMeasure
    utility: UtilityModel
    capacity: Capacity
    band: float = 0.0

    def __post_init__(self) -> None:
        if self.band < 0:
            raise ValueError(f"indifference band must be >= 0, got {self.band}")

    @property
    def states(self) -> tuple[State, ...]:
        return self.capacity.states

    @property
    def outcomes(self) -> tuple[Outcome, ...]:
        return self.utility.outcomes

    def value(self, f: GridAct) -> float:
        rows = {
            s: profile_value(self.discount, self.utility, f.row(s)) for s in f.states
        }
        return choquet_value(self.capacity, rows)

    def compare(self, f: GridAct, g: GridAct) -> Preference:
        return _banded(self.value(f) - self.value(g), self.band)


def choquet_oracle(
    discount: ExpMeasure,
    utility: UtilityModel,
    capacity: Capacity,
    band: float = 0.0,
) -> ChoquetOracle:
    return ChoquetOracle(discount, utility, capacity, band)


@dataclass(frozen=True)
class FunctionalOracle:
    """Oracle induced by an arbitrary value functional on grid acts."""

    fn: Callable[[GridAct], float]
    band: float = 0.0
    states: tuple[State, ...] = ()
    outcomes: tuple[Outcome, ...] = ()
    discount: ExpMeasure | None = None

    def value(self, f: GridAct) -> float:
        return self.fn(f)

    def compare(self, f: GridAct, g: GridAct) -> Preference:
        return _banded(self.fn(f) - self.fn(g), self.band)


@dataclass(frozen=True)
class WidenedOracle:
    """Same values as the inner oracle, with a larger indifference band."""

    inner: SEUOracle | ChoquetOracle | FunctionalOracle | WidenedOracle
    extra_band: float = 0.0

    def __post_init__(self) -> None:
        if self.extra_band < 0:
            raise ValueError(f"band inflation must be >= 0, got {self.extra_band}")

    @property
    def band(self) -> float:
        return self.inner.band + self.extra_band

    @property
    def states(self) -> tuple[State, ...]:
        return self.inner.states

    @property
    def outcomes(self) -> tuple[Outcome, ...]:
        return self.inner.outcomes

    @property
    def discount(self) -> ExpMeasure | None:
        return getattr(self.inner, "discount", None)

    @property
    def utility(self) -> UtilityModel | None:
        return getattr(self.inner, "utility", None)

    def value(self, f: GridAct) -> float:
        return self.inner.value(f)

    def compare(self, f: GridAct, g: GridAct) -> Preference:
        return _banded(self.value(f) - self.value(g), self.band)


def noisy_oracle(inner, band_inflation: float) -> WidenedOracle:
    """Deterministic noise stand-in: merges near-ties by widening the band."""
    return WidenedOracle(inner, band_inflation)


@dataclass
class CountingOracle:
    """Pass-through wrapper recording the number (and log) of comparisons."""

    inner: object
    count: int = 0
    keep_log: bool = False
    log: list[tuple[GridAct, GridAct, Preference]] = field(default_factory=list)

    @property
    def band(self) -> float:
        return self.inner.band

    @property
    def states(self) -> tuple[State, ...]:
        return self.inner.states

    @property
    def outcomes(self) -> tuple[Outcome, ...]:
        return self.inner.outcomes

    @property
    def discount(self) -> ExpMeasure | None:
        return getattr(self.inner, "discount", None)

    def compare(self, f: GridAct, g: GridAct) -> Preference:
        answer = self.inner.compare(f, g)
        self.count += 1
        if self.keep_log:
            self.log.append((f, g, answer))
        return answer
