"""Seeded random generation of profiles, acts, and time sets for audits and tests.

Breakpoints are drawn as quantiles of the discount measure, so the sampled
structure concentrates where the measure puts its mass instead of wandering
into the weightless far tail.  Everything is driven by a caller-owned
``random.Random``, which keeps reports reproducible from their seed.
"""

from __future__ import annotations

import random
from dataclasses import dataclass

from .acts import GridAct, Outcome, State, StepProfile
from .measure import ExpMeasure, TimeSet


@dataclass(frozen=True)
class ActSampler:
    """Draws step structure matched to one measure, state space, and alphabet."""

    measure: ExpMeasure
    states: tuple[State, ...]
    outcomes: tuple[Outcome, ...]
    max_pieces: int = 6
    mass_ceiling: float = 0.995

    @classmethod
    def for_oracle(cls, oracle, max_pieces: int = 6) -> ActSampler:
        measure = getattr(oracle, "discount", None)
        if measure is None:
            raise ValueError(
                "oracle exposes no discount measure; construct the sampler explicitly"
            )
        return cls(measure, tuple(oracle.states), tuple(oracle.outcomes), max_pieces)

    def breakpoints(self, rng: random.Random, count: int) -> list[float]:
        qs = sorted(rng.uniform(0.0, self.mass_ceiling) for _ in range(count))
        return [self.measure.quantile(q) for q in qs]

    def profile(self, rng: random.Random, pieces: int | None = None) -> StepProfile:
        if pieces is None:
            pieces = rng.randint(1, self.max_pieces)
        cuts = self.breakpoints(rng, pieces - 1)
        outs = [rng.choice(self.outcomes) for _ in range(pieces)]
        return StepProfile.from_breakpoints(cuts, outs).normalized()

    def act(self, rng: random.Random) -> GridAct:
        return GridAct({s: self.profile(rng) for s in self.states})

    def time_set(self, rng: random.Random, max_intervals: int = 3) -> TimeSet:
        n = rng.randint(0, max_intervals)
        cuts = self.breakpoints(rng, 2 * n)
        return TimeSet.from_pairs(
            (lo, hi) for lo, hi in zip(cuts[::2], cuts[1::2]) if lo < hi
        )

    def disjoint_time_sets(self, rng: random.Random) -> tuple[TimeSet, TimeSet]:
        """Two nonempty disjoint sets, built from alternating quantile slices."""
        while True:
            cuts = self.breakpoints(rng, rng.randint(2, 6) * 2)
            cuts = sorted(set(cuts))
            pairs = [
                (lo, hi) for lo, hi in zip(cuts[::2], cuts[1::2]) if lo < hi
            ]
            if len(pairs) < 2:
                continue
            first = TimeSet.from_pairs(pairs[0::2])
            second = TimeSet.from_pairs(pairs[1::2])
            if not first.is_empty and not second.is_empty:
                return first, second

    def splice_time_point(self, rng: random.Random) -> float:
        return self.measure.quantile(rng.uniform(0.0, 0.9))
