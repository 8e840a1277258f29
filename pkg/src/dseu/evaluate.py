"""Discounted subjective expected utility of grid acts, in both integration orders.

A model is a triple (discount rate, utility on the outcome alphabet, beliefs
on the states).  The value of an act is the expectation of utility under the
product of beliefs and the exponential time measure; for step acts this is a
finite sum, evaluated either state-first or time-first.
"""

from __future__ import annotations

import math
from dataclasses import dataclass
from typing import Mapping

from .acts import GridAct, Outcome, State, StepProfile, splice_time
from .measure import INF, ExpMeasure, TimeInterval


@dataclass(frozen=True)
class UtilityModel:
    """Bounded utility on a finite outcome alphabet; must be nonconstant."""

    values: Mapping[Outcome, float]

    def __post_init__(self) -> None:
        if not self.values:
            raise ValueError("utility needs at least one outcome")
        for out, u in self.values.items():
            if not math.isfinite(u):
                raise ValueError(f"utility of {out!r} must be finite, got {u!r}")
        if len(set(self.values.values())) < 2:
            raise ValueError("utility must be nonconstant (two distinct values)")

    def __call__(self, outcome: Outcome) -> float:
        try:
            return self.values[outcome]
        except KeyError:
            raise KeyError(
                f"no utility for outcome {outcome!r}; alphabet is {sorted(self.values)}"
            ) from None

    @property
    def outcomes(self) -> tuple[Outcome, ...]:
        return tuple(self.values)

    def anchors(self) -> tuple[Outcome, Outcome]:
        """A (worst, best) outcome pair, ties broken by label."""
        worst = min(self.values, key=lambda o: (self.values[o], o))
        best = max(self.values, key=lambda o: (self.values[o], o))
        return worst, best

    @property
    def span(self) -> float:
        return max(self.values.values()) - min(self.values.values())


@dataclass(frozen=True)
class Beliefs:
    """Probability vector over states."""

    probs: Mapping[State, float]

    def __post_init__(self) -> None:
        if not self.probs:
            raise ValueError("beliefs need at least one state")
        for s, p in self.probs.items():
            if not math.isfinite(p) or p < 0:
                raise ValueError(f"probability of state {s!r} must be >= 0, got {p!r}")
        total = sum(self.probs.values())
        if abs(total - 1.0) > 1e-12:
            raise ValueError(f"state probabilities must sum to 1 within 1e-12, got {total!r}")

    def __call__(self, state: State) -> float:
        try:
            return self.probs[state]
        except KeyError:
            raise KeyError(
                f"no probability for state {state!r}; states are {sorted(self.probs)}"
            ) from None

    @property
    def states(self) -> tuple[State, ...]:
        return tuple(self.probs)

    def event_mass(self, states: frozenset[State] | set[State]) -> float:
        return sum(self.probs[s] for s in self.probs if s in states)

    @classmethod
    def uniform(cls, states: tuple[State, ...] | list[State]) -> Beliefs:
        n = len(states)
        return cls({s: 1.0 / n for s in states})


@dataclass(frozen=True)
class DSEUModel:
    """Representing triple: discount measure, utility, beliefs."""

    discount: ExpMeasure
    utility: UtilityModel
    beliefs: Beliefs

    @property
    def states(self) -> tuple[State, ...]:
        return self.beliefs.states

    @property
    def outcomes(self) -> tuple[Outcome, ...]:
        return self.utility.outcomes

    def profile_value(self, profile: StepProfile) -> float:
        """Discounted utility of a deterministic stream."""
        return profile_value(self.discount, self.utility, profile)

    def act_value(self, act: GridAct) -> float:
        """State-first order: expectation over states of row values."""
        return sum(self.beliefs(s) * self.profile_value(act.row(s)) for s in act.states)

    def act_value_dual(self, act: GridAct) -> float:
        """Time-first order: expectation over a common time refinement.

        Merges the breakpoints of every row, then sums cell mass times the
        believed mean utility inside each cell.  Agrees with
        :meth:`act_value` up to float roundoff.
        """
        cuts = sorted({b for s in act.states for b in act.row(s).breakpoints})
        bounds = [0.0, *cuts, INF]
        total = 0.0
        for lo, hi in zip(bounds, bounds[1:]):
            if lo >= hi:
                continue
            cell = self.discount.interval_mass(TimeInterval(lo, hi))
            mean_u = sum(
                self.beliefs(s) * self.utility(act.at(s, lo)) for s in act.states
            )
            total += cell * mean_u
        return total

    def prefix_value(self, act: GridAct, t: float) -> float:
        """Expected discounted utility of ``act`` restricted to times before ``t``."""
        if t < 0 or math.isnan(t):
            raise ValueError(f"prefix end must be >= 0, got {t!r}")
        total = 0.0
        for s in act.states:
            row = 0.0
            for iv, out in act.row(s).pieces:
                if iv.lo >= t:
                    break
                clipped = TimeInterval(iv.lo, min(iv.hi, t))
                row += self.discount.interval_mass(clipped) * self.utility(out)
            total += self.beliefs(s) * row
        return total


def profile_value(
    discount: ExpMeasure, utility: UtilityModel, profile: StepProfile
) -> float:
    """Discounted utility of a stream; beliefs play no role for deterministic acts."""
    return sum(
        discount.interval_mass(iv) * utility(out) for iv, out in profile.pieces
    )


def decomposition_check(
    model: DSEUModel, h: GridAct, t: float, f: GridAct
) -> tuple[float, float]:
    """Both sides of the splice decomposition identity.

    Left: value of ``h`` spliced before ``f`` at time ``t``.  Right: the
    prefix value of ``h`` on ``[0, t)`` plus the tail factor ``exp(-rate*t)``
    times the value of ``f``.  The two agree in closed form.
    """
    lhs = model.act_value(splice_time(h, t, f))
    rhs = model.prefix_value(h, t) + model.discount.sf(t) * model.act_value(f)
    return lhs, rhs
