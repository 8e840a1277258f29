"""Step acts over states and continuous time, with the two splice operators.

An act assigns an outcome to every (state, time) pair.  Here every act is a
finite grid: per state, a step profile made of finitely many half-open
pieces tiling ``[0, inf)``.  Deterministic acts have the same profile in
every state; stochastic acts are constant over time.  Outcomes and states
are opaque string labels.
"""

from __future__ import annotations

import math
from dataclasses import dataclass
from typing import Iterable, Mapping

from .measure import INF, TimeInterval, TimeSet

Outcome = str
State = str

Piece = tuple[TimeInterval, Outcome]


@dataclass(frozen=True)
class StepProfile:
    """Outcome stream over time: finitely many pieces tiling ``[0, inf)``.

    Pieces must start at 0, end at ``inf``, and be contiguous.  Adjacent
    pieces with equal outcomes are allowed at construction;(:meth:`normalized`
    merges them into the canonical form on which equality is structural).
    """

    pieces: tuple[Piece, ...]

    def __post_init__(self) -> None:
        if not self.pieces:
            raise ValueError("a profile needs at least one piece")
        if self.pieces[0][0].lo != 0.0:
            raise ValueError("profile must start at time 0")
        if self.pieces[-1][0].hi != INF:
            raise ValueError("profile must extend to the whole horizon")
        for (a, _), (b, _) in zip(self.pieces, self.pieces[1:]):
            if a.hi != b.lo:
                raise ValueError(f"gap or overlap at time {a.hi} vs {b.lo}")

    @classmethod
    def constant(cls, outcome: Outcome) -> StepProfile:
        return cls(((TimeInterval(0.0, INF), outcome),))

    @classmethod
    def before_after(cls, early: Outcome, t: float, late: Outcome) -> StepProfile:
        """``early`` on ``[0, t)`` then ``late`` forever; ``t = 0`` drops ``early``."""
        if t < 0 or math.isnan(t):
            raise ValueError(f"switch time must be >= 0, got {t!r}")
        if t == 0.0:
            return cls.constant(late)
        if math.isinf(t):
            return cls.constant(early)
        return cls(((TimeInterval(0.0, t), early), (TimeInterval(t, INF), late)))

    @classmethod
    def from_breakpoints(
        cls, breakpoints: Iterable[float], outcomes: Iterable[Outcome]
    ) -> StepProfile:
        """Profile with pieces between consecutive members of ``[0, *breakpoints, inf)``.

        Degenerate segments (zero width, e.g. repeated breakpoints or a
        breakpoint at ``inf``) are skipped together with their outcome.
        """
        bounds = [0.0, *breakpoints, INF]
        outs = list(outcomes)
        if len(outs) != len(bounds) - 1:
            raise ValueError(
                f"need {len(bounds) - 1} outcomes for {len(bounds)} bounds, got {len(outs)}"
            )
        pieces = [
            (TimeInterval(lo, hi), out)
            for lo, hi, out in zip(bounds, bounds[1:], outs)
            if lo < hi and not math.isinf(lo)
        ]
        return cls(tuple(pieces))

    def normalized(self) -> StepProfile:
        """Merge adjacent equal-outcome pieces; pointwise value is unchanged."""
        merged: list[Piece] = []
        for iv, out in self.pieces:
            if merged and merged[-1][1] == out:
                prev_iv, _ = merged.pop()
                merged.append((TimeInterval(prev_iv.lo, iv.hi), out))
            else:
                merged.append((iv, out))
        return StepProfile(tuple(merged))

    def outcome_at(self, t: float) -> Outcome:
        if t < 0:
            raise ValueError(f"time must be >= 0, got {t}")
        for iv, out in self.pieces:
            if t < iv.hi:
                return out
        raise AssertionError("unreachable: pieces tile the horizon")

    @property
    def outcomes(self) -> set[Outcome]:
        return {out for _, out in self.pieces}

    @property
    def breakpoints(self) -> list[float]:
        return [iv.hi for iv, _ in self.pieces[:-1]]

    def level_set(self, outcome: Outcome) -> TimeSet:
        """Times at which the profile pays ``outcome``."""
        return TimeSet.of(iv for iv, out in self.pieces if out == outcome)

    def shift(self, t: float) -> tuple[Piece, ...]:
        """Pieces translated by ``+t`` (no longer a tiling; used for splicing)."""
        return tuple((iv.shift(t), out) for iv, out in self.pieces)


def normalize(profile: StepProfile) -> StepProfile:
    return profile.normalized()


@dataclass(frozen=True)
class GridAct:
    """Act given by one step profile per state.

    The mapping fixes the state space and its order.  Equality is structural
    on normalized profiles, which every operation in this module returns.
    """

    profiles: Mapping[State, StepProfile]

    def __post_init__(self) -> None:
        if not self.profiles:
            raise ValueError("an act needs at least one state")

    @property
    def states(self) -> tuple[State, ...]:
        return tuple(self.profiles)

    def row(self, state: State) -> StepProfile:
        return self.profiles[state]

    def at(self, state: State, t: float) -> Outcome:
        return self.profiles[state].outcome_at(t)

    @property
    def outcomes(self) -> set[Outcome]:
        return set().union(*(p.outcomes for p in self.profiles.values()))

    @property
    def is_deterministic(self) -> bool:
        rows = [p.normalized() for p in self.profiles.values()]
        return all(r == rows[0] for r in rows)

    @property
    def is_stochastic(self) -> bool:
        return all(len(p.normalized().pieces) == 1 for p in self.profiles.values())

    @classmethod
    def deterministic(cls, states: Iterable[State], profile: StepProfile) -> GridAct:
        p = profile.normalized()
        return cls({s: p for s in states})

    @classmethod
    def constant(cls, states: Iterable[State], outcome: Outcome) -> GridAct:
        return cls.deterministic(states, StepProfile.constant(outcome))

    @classmethod
    def stochastic(cls, assignment: Mapping[State, Outcome]) -> GridAct:
        return cls({s: StepProfile.constant(x) for s, x in assignment.items()})

    @classmethod
    def bet(
        cls,
        states: Iterable[State],
        on: Iterable[State],
        win: Outcome,
        lose: Outcome,
    ) -> GridAct:
        """The classic bet: ``win`` forever on the event, ``lose`` elsewhere."""
        event = set(on)
        return cls.stochastic({s: win if s in event else lose for s in states})


@dataclass(frozen=True)
class Event:
    """Rectangle event: a state part times a time part.

    ``None`` in either slot means that side is unrestricted (the full state
    space, respectively the whole horizon).  An empty state set or empty
    time set makes the event empty.
    """

    states: frozenset[State] | None = None
    times: TimeSet | None = None

    @classmethod
    def on_states(cls, states: Iterable[State]) -> Event:
        return cls(states=frozenset(states), times=None)

    @classmethod
    def on_times(cls, times: TimeSet) -> Event:
        return cls(states=None, times=times)

    @classmethod
    def nowhere(cls) -> Event:
        return cls(states=frozenset(), times=None)

    @classmethod
    def everywhere(cls) -> Event:
        return cls(states=None, times=None)

    def covers_state(self, state: State) -> bool:
        return self.states is None or state in self.states


def _check_same_states(f: GridAct, g: GridAct) -> tuple[State, ...]:
    if set(f.states) != set(g.states):
        raise ValueError(
            f"acts live on different state spaces: {sorted(f.states)} vs {sorted(g.states)}"
        )
    return g.states


def splice_time(h: GridAct, t: float, f: GridAct) -> GridAct:
    """Act equal to ``h`` before time ``t`` and to ``f`` shifted by ``t`` after.

    ``t = 0`` returns ``f`` itself (normalized).
    """
    if t < 0 or math.isnan(t) or math.isinf(t):
        raise ValueError(f"splice time must be finite and >= 0, got {t!r}")
    states = _check_same_states(h, f)
    out: dict[State, StepProfile] = {}
    for s in states:
        if t == 0.0:
            out[s] = f.row(s).normalized()
            continue
        head = []
        for iv, x in h.row(s).pieces:
            if iv.lo >= t:
                break
            head.append((TimeInterval(iv.lo, min(iv.hi, t)), x))
        tail = f.row(s).shift(t)
        out[s] = StepProfile((*head, *tail)).normalized()
    return GridAct(out)


def _overlay(top: StepProfile, times: TimeSet, bottom: StepProfile) -> StepProfile:
    """Profile equal to ``top`` on ``times`` and to ``bottom`` elsewhere."""
    cuts = sorted(
        {b for b in (*top.breakpoints, *bottom.breakpoints) if math.isfinite(b)}
        | {x for iv in times for x in (iv.lo, iv.hi) if math.isfinite(x) and x > 0}
    )
    bounds = [0.0, *cuts, INF]
    pieces = []
    for lo, hi in zip(bounds, bounds[1:]):
        if lo >= hi:
            continue
        src = top if times.contains(lo) else bottom
        pieces.append((TimeInterval(lo, hi), src.outcome_at(lo)))
    return StepProfile(tuple(pieces)).normalized()


def splice_event(f: GridAct, event: Event, g: GridAct) -> GridAct:
    """Act equal to ``f`` on the rectangle ``event`` and to ``g`` off it."""
    states = _check_same_states(f, g)
    times = TimeSet.full() if event.times is None else event.times
    out: dict[State, StepProfile] = {}
    for s in states:
        if not event.covers_state(s) or times.is_empty:
            out[s] = g.row(s).normalized()
        elif times == TimeSet.full():
            out[s] = f.row(s).normalized()
        else:
            out[s] = _overlay(f.row(s), times, g.row(s))
    return GridAct(out)


def restrict(f: GridAct, state: State) -> StepProfile:
    """The deterministic row of ``f`` at ``state``."""
    if state not in f.profiles:
        raise KeyError(f"unknown state {state!r}; act has {sorted(f.states)}")
    return f.row(state)
