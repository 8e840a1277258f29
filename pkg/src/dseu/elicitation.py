"""Recovering a discount rate and event probabilities from indifference queries.

The session first finds the half-life: the prefix length at which swapping
"good now, bad later" against "bad now, good later" leaves the oracle
indifferent.  That pins the rate.  Each event's probability is then read off
its time equivalent: the prefix length whose sure stream matches a bet on
the event, mapped through the prefix mass.  An additive decision maker
yields a probability measure; the additivity residuals measure how far any
other oracle deviates.
"""

from __future__ import annotations

import itertools
import math
from dataclasses import dataclass, field

from .acts import GridAct, Outcome, State, StepProfile
from .equivalents import (
    DEFAULT_TOL,
    FALLBACK_HORIZON,
    TimeEquivalent,
    time_equivalent_bisect,
)
from .evaluate import Beliefs, DSEUModel, UtilityModel
from .measure import ExpMeasure
from .oracles import CountingOracle, Preference, ProtocolError

#: Residual size above which a recovered set function is flagged non-additive.
DEFAULT_RESIDUAL_TOLERANCE = 1e-3


@dataclass
class ElicitationReport:
    """Everything one session recovers, with its additivity audit."""

    lambda_hat: float
    mu_hat: dict[frozenset[State], float]
    additivity_residuals: dict[tuple[frozenset[State], frozenset[State]], float]
    query_count: int
    residual_tolerance: float = DEFAULT_RESIDUAL_TOLERANCE

    @property
    def max_residual(self) -> float:
        if not self.additivity_residuals:
            return 0.0
        return max(abs(r) for r in self.additivity_residuals.values())

    @property
    def additive(self) -> bool:
        return self.max_residual <= self.residual_tolerance

    @property
    def verdict(self) -> str:
        return "PASS" if self.additive else "FAIL"


def _swap_acts(
    states: tuple[State, ...], x: Outcome, y: Outcome, t: float
) -> tuple[GridAct, GridAct]:
    """The half-life probe: x-then-y against y-then-x, both switching at ``t``."""
    a = GridAct.deterministic(states, StepProfile.before_after(x, t, y))
    b = GridAct.deterministic(states, StepProfile.before_after(y, t, x))
    return a, b


def elicit_lambda(
    oracle, x: Outcome, y: Outcome, tol: float = DEFAULT_TOL
) -> ExpMeasure:
    """Recover the discount rate from the half-life indifference point.

    At the indifference time ``t*`` the two swap streams split the horizon
    into halves of equal mass, so the rate is ``ln 2 / t*`` regardless of
    the utilities involved.
    """
    if tol <= 0:
        raise ValueError(f"tolerance must be > 0, got {tol}")
    states = oracle.states
    ranked = oracle.compare(GridAct.constant(states, x), GridAct.constant(states, y))
    if ranked is not Preference.STRICTLY_PREFERS_FIRST:
        raise ProtocolError(
            f"half-life query needs a strict preference for {x!r} over {y!r}, got {ranked.name}"
        )

    def probe(t: float) -> Preference:
        return oracle.compare(*_swap_acts(states, x, y, t))

    lo = 0.0
    hi = 1.0
    while True:
        answer = probe(hi)
        if answer is Preference.INDIFFERENT:
            return ExpMeasure(math.log(2.0) / hi)
        if answer is Preference.STRICTLY_PREFERS_FIRST:
            break
        lo = hi
        hi *= 2.0
        if hi > FALLBACK_HORIZON:
            raise ProtocolError(
                f"no half-life indifference below the search ceiling {FALLBACK_HORIZON:g}"
            )
    while hi - lo > tol:
        mid = 0.5 * (lo + hi)
        answer = probe(mid)
        if answer is Preference.INDIFFERENT:
            return ExpMeasure(math.log(2.0) / mid)
        if answer is Preference.STRICTLY_PREFERS_FIRST:
            hi = mid
        else:
            lo = mid
    return ExpMeasure(math.log(2.0) / (0.5 * (lo + hi)))


def elicit_event(
    oracle,
    rate: ExpMeasure,
    event: frozenset[State] | set[State],
    x: Outcome,
    y: Outcome,
    tol: float = DEFAULT_TOL,
) -> float:
    """Probability of an event from the time equivalent of a bet on it."""
    states = oracle.states
    event = frozenset(event)
    if not event <= set(states):
        raise ValueError(f"event {sorted(event)} is not a subset of {sorted(states)}")
    if not event:
        return 0.0
    if event == frozenset(states):
        return 1.0
    bet = GridAct.bet(states, event, x, y)
    te: TimeEquivalent = time_equivalent_bisect(oracle, bet, x, y, tol, rate=rate)
    if te.is_whole_horizon:
        return 1.0
    return -math.expm1(-rate.rate * te.t)


def _subset_families(
    states: tuple[State, ...],
) -> tuple[list[frozenset[State]], list[tuple[frozenset[State], frozenset[State]]]]:
    """Subsets to elicit and the disjoint pairs to audit.

    Up to 10 states every subset is elicited and every disjoint pair of
    nonempty subsets is audited; beyond that only singletons and their
    pairwise unions are used.
    """
    if len(states) <= 10:
        subsets = [
            frozenset(c)
            for r in range(len(states) + 1)
            for c in itertools.combinations(states, r)
        ]
        pairs = [
            (e, f)
            for e, f in itertools.combinations([s for s in subsets if s], 2)
            if not (e & f)
        ]
        return subsets, pairs
    singletons = [frozenset({s}) for s in states]
    pairs = [
        (frozenset({a}), frozenset({b})) for a, b in itertools.combinations(states, 2)
    ]
    subsets = singletons + [e | f for e, f in pairs]
    return subsets, pairs


def elicit_measure(
    oracle,
    rate: ExpMeasure,
    x: Outcome,
    y: Outcome,
    tol: float = DEFAULT_TOL,
    residual_tolerance: float = DEFAULT_RESIDUAL_TOLERANCE,
) -> ElicitationReport:
    """Elicit a whole set function and audit its additivity."""
    counting = CountingOracle(oracle)
    states = oracle.states
    subsets, pairs = _subset_families(states)
    mu_hat: dict[frozenset[State], float] = {}
    for subset in subsets:
        mu_hat[subset] = elicit_event(counting, rate, subset, x, y, tol)
    residuals = {
        (e, f): mu_hat[e | f] - mu_hat[e] - mu_hat[f]
        for e, f in pairs
        if (e | f) in mu_hat
    }
    return ElicitationReport(
        lambda_hat=rate.rate,
        mu_hat=mu_hat,
        additivity_residuals=residuals,
        query_count=counting.count,
        residual_tolerance=residual_tolerance,
    )


def run_session(
    oracle,
    x: Outcome,
    y: Outcome,
    tol: float = DEFAULT_TOL,
    residual_tolerance: float = DEFAULT_RESIDUAL_TOLERANCE,
) -> ElicitationReport:
    """Full session: half-life first, then the event family, one query log."""
    counting = CountingOracle(oracle)
    rate = elicit_lambda(counting, x, y, tol)
    report = elicit_measure(counting.inner, rate, x, y, tol, residual_tolerance)
    # elicit_measure wrapped the inner oracle itself; merge both query counts.
    report.query_count += counting.count
    return report


# ---------------------------------------------------------------------------
# The worked three-state chain: betting on a union versus its parts.
# ---------------------------------------------------------------------------

GOOD = "10"
BAD = "0"

_CHAIN = (
    ("bet_union", "bet_union_delayed"),
    ("bet_union_delayed", "sure_union_window"),
    ("bet_union", "bet_e_then_f"),
    ("bet_e_then_f", "bet_e_sure_f"),
    ("bet_e_sure_f", "sure_fprime_bet_e"),
    ("sure_fprime_bet_e", "sure_two_windows"),
    ("sure_union_window", "sure_two_windows"),
)


@dataclass
class Section2Trace:
    """All intermediate quantities of the union-additivity chain."""

    rate: float
    mu_e: float
    mu_f: float
    t_half: float
    t_e: float
    t_f: float
    t_union: float
    t_f_prime: float
    acts: dict[str, GridAct] = field(default_factory=dict)
    values: dict[str, float] = field(default_factory=dict)
    indifference_gaps: dict[tuple[str, str], float] = field(default_factory=dict)
    identity_residual: float = 0.0
    mu_hat: dict[str, float] = field(default_factory=dict)
    additivity_residual: float = 0.0

    @property
    def max_gap(self) -> float:
        return max(abs(g) for g in self.indifference_gaps.values())

    @property
    def chain(self) -> tuple[tuple[str, str], ...]:
        return _CHAIN


def _stream(breaks: list[float], outs: list[str]) -> StepProfile:
    return StepProfile.from_breakpoints(breaks, outs)


def section2_demo(rate: ExpMeasure, mu_e: float, mu_f: float) -> Section2Trace:
    """Run the seven-matrix indifference chain for two disjoint events.

    States are the three classes "e", "f", "r" (inside the first event,
    inside the second, outside both) with the given probabilities.  Each
    claimed indifference is verified by evaluating both acts; the final
    comparison of the two deterministic acts is the additivity identity.
    Probabilities are recovered through log-survival products kept separate
    from the rate, so exact inputs round-trip exactly.
    """
    for name, p in (("mu_e", mu_e), ("mu_f", mu_f)):
        if not 0.0 <= p <= 1.0 or math.isnan(p):
            raise ValueError(f"{name} must lie in [0, 1], got {p!r}")
    if mu_e + mu_f > 1.0:
        raise ValueError(f"event masses overlap: {mu_e} + {mu_f} > 1")

    lam = rate.rate
    q_e = -math.log1p(-mu_e) if mu_e < 1.0 else math.inf
    q_f = -math.log1p(-mu_f) if mu_f < 1.0 else math.inf
    mu_union = mu_e + mu_f
    q_union = -math.log1p(-mu_union) if mu_union < 1.0 else math.inf
    q_f_prime = -math.log1p(-0.5 * mu_f)

    t = rate.half_life
    t_e, t_f, t_union, t_f_prime = (q / lam for q in (q_e, q_f, q_union, q_f_prime))

    model = DSEUModel(
        rate,
        UtilityModel({GOOD: 1.0, BAD: 0.0}),
        Beliefs({"e": mu_e, "f": mu_f, "r": 1.0 - mu_e - mu_f}),
    )

    bet_row = _stream([t], [GOOD, BAD])
    zero = StepProfile.constant(BAD)
    delayed_row = _stream([t], [BAD, GOOD])
    window_union = _stream([t, t + t_union], [BAD, GOOD, BAD])
    window_f = _stream([t, t + t_f], [BAD, GOOD, BAD])
    e_long = _stream([t + t_f], [GOOD, BAD])
    fprime_head = [t_f_prime, t]
    acts = {
        "bet_union": GridAct({"e": bet_row, "f": bet_row, "r": zero}),
        "bet_union_delayed": GridAct({"e": delayed_row, "f": delayed_row, "r": zero}),
        "sure_union_window": GridAct.deterministic(("e", "f", "r"), window_union),
        "bet_e_then_f": GridAct({"e": bet_row, "f": delayed_row, "r": zero}),
        "bet_e_sure_f": GridAct({"e": e_long, "f": window_f, "r": window_f}),
        "sure_fprime_bet_e": GridAct(
            {
                "e": _stream(fprime_head, [GOOD, BAD, GOOD]),
                "f": _stream(fprime_head, [GOOD, BAD, BAD]),
                "r": _stream(fprime_head, [GOOD, BAD, BAD]),
            }
        ),
        "sure_two_windows": GridAct.deterministic(
            ("e", "f", "r"), _stream([*fprime_head, t + t_e], [GOOD, BAD, GOOD, BAD])
        ),
    }

    values = {name: model.act_value(act) for name, act in acts.items()}
    gaps = {(a, b): values[a] - values[b] for a, b in _CHAIN}

    mu_hat = {
        "e": -math.expm1(-q_e),
        "f": -math.expm1(-q_f),
        "union": -math.expm1(-q_union),
    }
    return Section2Trace(
        rate=lam,
        mu_e=mu_e,
        mu_f=mu_f,
        t_half=t,
        t_e=t_e,
        t_f=t_f,
        t_union=t_union,
        t_f_prime=t_f_prime,
        acts=acts,
        values=values,
        indifference_gaps=gaps,
        identity_residual=values["sure_union_window"] - values["sure_two_windows"],
        mu_hat=mu_hat,
        additivity_residual=mu_hat["union"] - mu_hat["e"] - mu_hat["f"],
    )
