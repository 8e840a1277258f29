"""Time equivalents: the prefix length that matches a target value.

Given outcomes ``x`` strictly better than ``y``, the profile paying ``x`` on
``[0, t)`` and ``y`` afterwards sweeps every value between ``u(y)`` and
``u(x)`` as ``t`` grows.  The closed form inverts the prefix mass; the
bisection variant recovers the same ``t`` from a black-box comparison oracle
without ever seeing its model.
"""

from __future__ import annotations

import math
from dataclasses import dataclass

from .acts import GridAct, Outcome, State, StepProfile
from .evaluate import DSEUModel
from .measure import ExpMeasure
from .oracles import Preference, ProtocolError

#: Prefix masses above this are reported as the whole horizon.
CEILING_MASS = 1.0 - 1e-9

#: Fallback search ceiling when the oracle's discount rate is unknown.
FALLBACK_HORIZON = 1e12

DEFAULT_TOL = 1e-9


@dataclass(frozen=True)
class TimeEquivalent:
    """Prefix length ``t``, or the whole horizon when ``t`` is ``None``.

    ``bracket_width`` is 0 for closed-form answers and the final bracket for
    bisected ones.
    """

    t: float | None
    bracket_width: float = 0.0

    def __post_init__(self) -> None:
        if self.t is not None and (self.t < 0 or math.isnan(self.t)):
            raise ValueError(f"equivalent time must be >= 0, got {self.t!r}")

    @property
    def is_whole_horizon(self) -> bool:
        return self.t is None

    def profile(self, x: Outcome, y: Outcome) -> StepProfile:
        """The witness stream: ``x`` before ``t``, ``y`` after."""
        if self.t is None:
            return StepProfile.constant(x)
        return StepProfile.before_after(x, self.t, y)


def time_equivalent_value(
    model: DSEUModel, v: float, x: Outcome, y: Outcome
) -> TimeEquivalent:
    """Closed-form prefix length whose x-then-y stream is worth ``v``."""
    ux, uy = model.utility(x), model.utility(y)
    if ux <= uy:
        raise ValueError(f"need u({x!r}) > u({y!r}), got {ux} <= {uy}")
    if not uy <= v <= ux:
        raise ValueError(f"target value {v!r} outside [{uy}, {ux}]")
    if v == uy:
        return TimeEquivalent(0.0)
    if v == ux:
        return TimeEquivalent(None)
    p = (v - uy) / (ux - uy)
    if p >= 1.0:
        return TimeEquivalent(None)
    return TimeEquivalent(model.discount.quantile(p))


def time_equivalent_act(
    model: DSEUModel, f: GridAct, x: Outcome, y: Outcome
) -> TimeEquivalent:
    """Time equivalent of an act, through its model value."""
    v = model.act_value(f)
    ux, uy = model.utility(x), model.utility(y)
    if ux <= uy:
        raise ValueError(f"need u({x!r}) > u({y!r}), got {ux} <= {uy}")
    if not uy <= v <= ux:
        raise ValueError(
            f"act value {v!r} escapes the bracket [u({y!r})={uy}, u({x!r})={ux}]"
        )
    return time_equivalent_value(model, v, x, y)


def _prefix_act(states: tuple[State, ...], x: Outcome, t: float, y: Outcome) -> GridAct:
    return GridAct.deterministic(states, StepProfile.before_after(x, t, y))


def time_equivalent_bisect(
    oracle,
    f: GridAct,
    x: Outcome,
    y: Outcome,
    tol: float = DEFAULT_TOL,
    rate: ExpMeasure | None = None,
) -> TimeEquivalent:
    """Bisect an oracle for the prefix length indifferent to ``f``.

    Requires the oracle to weakly rank ``x`` above ``f`` above ``y`` (checked
    first; violations raise :class:`ProtocolError`).  The upper search bound
    doubles until the prefix stream overtakes ``f``; past the mass ceiling
    (computed from ``rate`` when given, a fixed large horizon otherwise) the
    answer is the whole horizon.  Declares indifference as soon as the oracle
    does, or once the bracket is narrower than ``tol``.
    """
    if tol <= 0:
        raise ValueError(f"tolerance must be > 0, got {tol}")
    states = f.states
    top = oracle.compare(GridAct.constant(states, x), f)
    if top is Preference.STRICTLY_PREFERS_SECOND:
        raise ProtocolError(f"oracle strictly prefers the act to constant {x!r}")
    bottom = oracle.compare(f, GridAct.constant(states, y))
    if bottom is Preference.STRICTLY_PREFERS_SECOND:
        raise ProtocolError(f"oracle strictly prefers constant {y!r} to the act")
    if bottom is Preference.INDIFFERENT:
        return TimeEquivalent(0.0)
    if top is Preference.INDIFFERENT:
        return TimeEquivalent(None)

    if rate is not None:
        ceiling = rate.quantile(CEILING_MASS)
    else:
        ceiling = FALLBACK_HORIZON

    lo = 0.0
    hi = min(1.0, ceiling)
    while True:
        answer = oracle.compare(_prefix_act(states, x, hi, y), f)
        if answer is Preference.INDIFFERENT:
            return TimeEquivalent(hi, 0.0)
        if answer is Preference.STRICTLY_PREFERS_FIRST:
            break
        lo = hi
        if hi >= ceiling:
            return TimeEquivalent(None)
        hi = min(hi * 2.0, ceiling)

    while hi - lo > tol:
        mid = 0.5 * (lo + hi)
        answer = oracle.compare(_prefix_act(states, x, mid, y), f)
        if answer is Preference.INDIFFERENT:
            return TimeEquivalent(mid, 0.0)
        if answer is Preference.STRICTLY_PREFERS_FIRST:
            hi = mid
        else:
            lo = mid
    return TimeEquivalent(0.5 * (lo + hi), hi - lo)
