"""Finite executable checks of the preference axioms against any oracle.

Each check samples witness configurations, asks the oracle, and logs any
response pattern the axiom forbids.  A violation stores the exact query
sequence with the observed answers, so it replays deterministically against
the same oracle.  The tail-continuity check is a one-sided proxy (it can
certify but never refute), and the measurability axiom is vacuous for a
finite alphabet; both facts are reflected in the verdicts.
"""

from __future__ import annotations

import math
import random
from dataclasses import dataclass, field
from typing import Callable

from .acts import (
    Event,
    GridAct,
    Outcome,
    State,
    StepProfile,
    splice_event,
    splice_time,
)
from .evaluate import Beliefs, DSEUModel
from .measure import INF, TimeInterval, TimeSet
from .oracles import Preference, SEUOracle
from .sampling import ActSampler

PASS = "PASS"
FAIL = "FAIL"
INCONCLUSIVE = "INCONCLUSIVE"


@dataclass
class Violation:
    """One forbidden response pattern, with everything needed to replay it."""

    kind: str
    queries: list[tuple[GridAct, GridAct, Preference]]
    note: str = ""

    def replay(self, oracle) -> bool:
        """True when the oracle still answers every logged query the same way."""
        return all(oracle.compare(f, g) is answer for f, g, answer in self.queries)


@dataclass
class CheckReport:
    axiom: str
    checked: int
    violations: list[Violation] = field(default_factory=list)
    verdict: str = PASS
    note: str = ""
    data: dict = field(default_factory=dict)

    def __post_init__(self) -> None:
        if self.violations and self.verdict == PASS:
            self.verdict = FAIL


@dataclass
class AuditReport:
    checks: dict[str, CheckReport]

    @property
    def all_pass(self) -> bool:
        return all(c.verdict == PASS for c in self.checks.values())


def _lift(profile: StepProfile, states: tuple[State, ...]) -> GridAct:
    return GridAct.deterministic(states, profile)


def _outcome_ranking(oracle) -> dict[tuple[Outcome, Outcome], Preference]:
    """Oracle's ranking of constant acts, queried once per ordered pair."""
    states = tuple(oracle.states)
    ranking: dict[tuple[Outcome, Outcome], Preference] = {}
    outs = tuple(oracle.outcomes)
    for i, a in enumerate(outs):
        for b in outs[i + 1 :]:
            answer = oracle.compare(
                GridAct.constant(states, a), GridAct.constant(states, b)
            )
            ranking[(a, b)] = answer
            ranking[(b, a)] = answer.flipped
    return ranking


def check_stationarity(
    oracle, samples: int, seed: int, sampler: ActSampler | None = None
) -> CheckReport:
    """Delaying both acts behind a shared head must preserve the response."""
    sampler = sampler or ActSampler.for_oracle(oracle)
    rng = random.Random(seed)
    violations: list[Violation] = []
    for _ in range(samples):
        f, g, h = sampler.act(rng), sampler.act(rng), sampler.act(rng)
        t = sampler.splice_time_point(rng)
        base = oracle.compare(f, g)
        fd, gd = splice_time(h, t, f), splice_time(h, t, g)
        delayed = oracle.compare(fd, gd)
        if delayed is not base:
            violations.append(
                Violation(
                    kind="response flipped under delay",
                    queries=[(f, g, base), (fd, gd, delayed)],
                    note=f"delay t={t!r}",
                )
            )
    return CheckReport(axiom="stationarity", checked=samples, violations=violations)


def _improved_profile(
    profile: StepProfile,
    ranking: dict[tuple[Outcome, Outcome], Preference],
    outcomes: tuple[Outcome, ...],
    rng: random.Random,
) -> StepProfile | None:
    """Replace one piece's outcome by a strictly better one, if any exists."""
    upgrades = [
        (i, cand)
        for i, (_, out) in enumerate(profile.pieces)
        for cand in outcomes
        if cand != out
        and ranking[(cand, out)] is Preference.STRICTLY_PREFERS_FIRST
    ]
    if not upgrades:
        return None
    i, cand = rng.choice(upgrades)
    pieces = list(profile.pieces)
    pieces[i] = (pieces[i][0], cand)
    return StepProfile(tuple(pieces)).normalized()


def check_t_monotonicity(
    oracle, samples: int, seed: int, sampler: ActSampler | None = None
) -> CheckReport:
    """Pointwise-better deterministic streams must be weakly (here: strictly) preferred.

    The improvement always sits on a positive-mass piece, so with a zero
    indifference band the strict clause applies; with a positive band only
    the weak clause is enforced.
    """
    sampler = sampler or ActSampler.for_oracle(oracle)
    rng = random.Random(seed)
    ranking = _outcome_ranking(oracle)
    states = tuple(oracle.states)
    strict_applies = getattr(oracle, "band", 0.0) == 0.0
    note = "" if strict_applies else "strict clause skipped inside the indifference band"
    violations: list[Violation] = []
    done = 0
    while done < samples:
        y = sampler.profile(rng)
        x = _improved_profile(y, ranking, sampler.outcomes, rng)
        if x is None:
            continue
        done += 1
        fx, fy = _lift(x, states), _lift(y, states)
        answer = oracle.compare(fx, fy)
        if answer is Preference.STRICTLY_PREFERS_SECOND:
            violations.append(
                Violation("pointwise-better stream rejected", [(fx, fy, answer)])
            )
        elif strict_applies and answer is not Preference.STRICTLY_PREFERS_FIRST:
            violations.append(
                Violation(
                    "strict improvement on positive mass not strictly preferred",
                    [(fx, fy, answer)],
                )
            )
    return CheckReport(
        axiom="t_monotonicity", checked=samples, violations=violations, note=note
    )


def check_dominance(
    oracle,
    row_model: DSEUModel,
    samples: int,
    seed: int,
    sampler: ActSampler | None = None,
) -> CheckReport:
    """Statewise-better acts must be preferred; strictly so on believed states.

    Rows are compared through the oracle itself (as deterministic lifts);
    ``row_model`` only supplies the reference beliefs that decide which
    states count as non-null for the strict clause.
    """
    sampler = sampler or ActSampler.for_oracle(oracle)
    rng = random.Random(seed)
    ranking = _outcome_ranking(oracle)
    states = tuple(oracle.states)
    strict_applies = getattr(oracle, "band", 0.0) == 0.0
    note = "" if strict_applies else "strict clause skipped inside the indifference band"
    violations: list[Violation] = []
    done = 0
    while done < samples:
        g = sampler.act(rng)
        k = rng.randint(1, len(states))
        chosen = rng.sample(states, k)
        rows = {s: g.row(s) for s in states}
        improved: list[State] = []
        for s in chosen:
            better = _improved_profile(g.row(s), ranking, sampler.outcomes, rng)
            if better is not None:
                rows[s] = better
                improved.append(s)
        if not improved:
            continue
        done += 1
        f = GridAct({s: rows[s] for s in states})
        row_queries = []
        premise_ok = True
        strict_row = False
        for s in improved:
            fa, fb = _lift(f.row(s), states), _lift(g.row(s), states)
            answer = oracle.compare(fa, fb)
            row_queries.append((fa, fb, answer))
            if answer is Preference.STRICTLY_PREFERS_SECOND:
                premise_ok = False
            if answer is Preference.STRICTLY_PREFERS_FIRST and row_model.beliefs(s) > 0:
                strict_row = True
        if not premise_ok:
            continue
        answer = oracle.compare(f, g)
        if answer is Preference.STRICTLY_PREFERS_SECOND:
            violations.append(
                Violation(
                    "statewise-better act rejected",
                    [*row_queries, (f, g, answer)],
                )
            )
        elif (
            strict_applies
            and strict_row
            and answer is not Preference.STRICTLY_PREFERS_FIRST
        ):
            violations.append(
                Violation(
                    "strictly better row on a believed state, no strict preference",
                    [*row_queries, (f, g, answer)],
                )
            )
    return CheckReport(
        axiom="dominance", checked=samples, violations=violations, note=note
    )


def _pasted_profile(
    background: StepProfile, patches: list[tuple[TimeSet, Outcome]]
) -> StepProfile:
    """Background stream overwritten by constant patches on disjoint time sets."""
    cuts = set(background.breakpoints)
    for ts, _ in patches:
        for iv in ts:
            cuts.add(iv.lo)
            if math.isfinite(iv.hi):
                cuts.add(iv.hi)
    bounds = [0.0, *sorted(c for c in cuts if 0.0 < c < INF), INF]
    pieces = []
    for lo, hi in zip(bounds, bounds[1:]):
        if lo >= hi:
            continue
        out = background.outcome_at(lo)
        for ts, patch in patches:
            if ts.contains(lo):
                out = patch
                break
        pieces.append((TimeInterval(lo, hi), out))
    return StepProfile(tuple(pieces)).normalized()


def check_t_separability(
    oracle, samples: int, seed: int, sampler: ActSampler | None = None
) -> CheckReport:
    """Which of two disjoint periods gets the better outcome must be a fixed choice.

    For each sampled disjoint pair of time sets, the direction of preference
    between placing the better outcome on the first set versus the second is
    compared across outcome pairs and backgrounds; any disagreement is a
    violation.  A positive indifference band can blur a strict direction
    into a tie, so in that case only strictly opposite directions count.
    """
    sampler = sampler or ActSampler.for_oracle(oracle)
    rng = random.Random(seed)
    ranking = _outcome_ranking(oracle)
    states = tuple(oracle.states)
    strict_pairs = [
        (a, b)
        for (a, b), answer in ranking.items()
        if answer is Preference.STRICTLY_PREFERS_FIRST
    ]
    if not strict_pairs:
        return CheckReport(
            axiom="t_separability",
            checked=0,
            note="vacuous: the oracle ranks no outcome pair strictly",
        )
    exact = getattr(oracle, "band", 0.0) == 0.0
    violations: list[Violation] = []
    for _ in range(samples):
        first, second = sampler.disjoint_time_sets(rng)
        combos = []
        n_pairs = min(2, len(strict_pairs))
        for better, worse in rng.sample(strict_pairs, n_pairs):
            for background in (sampler.profile(rng), sampler.profile(rng)):
                left = _pasted_profile(background, [(first, better), (second, worse)])
                right = _pasted_profile(background, [(first, worse), (second, better)])
                fa, fb = _lift(left, states), _lift(right, states)
                combos.append((fa, fb, oracle.compare(fa, fb)))
        answers = {answer for _, _, answer in combos}
        opposed = (
            Preference.STRICTLY_PREFERS_FIRST in answers
            and Preference.STRICTLY_PREFERS_SECOND in answers
        )
        if opposed or (exact and len(answers) > 1):
            violations.append(
                Violation(
                    "period comparison depends on stakes or background",
                    combos,
                )
            )
    return CheckReport(axiom="t_separability", checked=samples, violations=violations)


def check_monotone_continuity(
    oracle, f: GridAct, g: GridAct, x: Outcome, horizon_max: int
) -> CheckReport:
    """Search the canonical tail family for an index preserving a strict preference.

    Only certifies: if no tail works up to ``horizon_max`` the verdict is
    INCONCLUSIVE, never FAIL, since some other vanishing family might still
    violate the axiom and this proxy checks just one.
    """
    base = oracle.compare(f, g)
    if base is not Preference.STRICTLY_PREFERS_FIRST:
        raise ValueError(
            f"tail-continuity proxy needs a strict preference, oracle said {base.name}"
        )
    for n in range(1, horizon_max + 1):
        tail = Event.on_times(TimeSet.from_pairs([(float(n), INF)]))
        patched_f = splice_event(GridAct.constant(f.states, x), tail, f)
        patched_g = splice_event(GridAct.constant(g.states, x), tail, g)
        a1 = oracle.compare(patched_f, g)
        a2 = oracle.compare(f, patched_g)
        if (
            a1 is Preference.STRICTLY_PREFERS_FIRST
            and a2 is Preference.STRICTLY_PREFERS_FIRST
        ):
            return CheckReport(
                axiom="monotone_continuity",
                checked=n,
                verdict=PASS,
                note=f"strict preference survives the tail [{n}, inf)",
                data={"tail_index": n},
            )
    return CheckReport(
        axiom="monotone_continuity",
        checked=horizon_max,
        verdict=INCONCLUSIVE,
        note="no certifying tail index found below the horizon",
    )


def check_decomposition(
    value_fn: Callable[[GridAct], float],
    model: DSEUModel,
    samples: int,
    seed: int,
    sampler: ActSampler | None = None,
    tolerance: float = 1e-10,
) -> CheckReport:
    """Residuals of the splice decomposition identity for a claimed model.

    The left side evaluates the spliced act with ``value_fn``; the right
    side combines the claimed model's prefix integral with the functional's
    own tail value.  Any functional of the discounted-expected-utility form
    satisfies the identity exactly.
    """
    sampler = sampler or ActSampler(
        model.discount, model.states, model.outcomes
    )
    rng = random.Random(seed)
    violations: list[Violation] = []
    worst = 0.0
    for _ in range(samples):
        h, f = sampler.act(rng), sampler.act(rng)
        t = sampler.splice_time_point(rng)
        lhs = value_fn(splice_time(h, t, f))
        rhs = model.prefix_value(h, t) + model.discount.sf(t) * value_fn(f)
        residual = abs(lhs - rhs)
        worst = max(worst, residual)
        if residual > tolerance:
            violations.append(
                Violation(
                    kind="decomposition identity fails",
                    queries=[],
                    note=f"residual {residual!r} at t={t!r}",
                )
            )
    return CheckReport(
        axiom="decomposition",
        checked=samples,
        violations=violations,
        data={"worst_residual": worst},
    )


def t_measurability_report() -> CheckReport:
    """The measurability axiom is vacuous here: the alphabet is finite."""
    return CheckReport(
        axiom="t_measurability",
        checked=0,
        verdict=PASS,
        note="finite outcome alphabet: every preference cut is a finite union of singletons",
    )


def run_audit(
    oracle,
    samples: int = 500,
    seed: int = 0,
    horizon_max: int = 64,
    row_model: DSEUModel | None = None,
    sampler: ActSampler | None = None,
) -> AuditReport:
    """All applicable checks on one oracle, under a single seed.

    The dominance check needs reference beliefs to decide which states are
    non-null; an expected-utility oracle supplies its own, any other oracle
    exposing a utility and a discount gets uniform reference beliefs unless
    ``row_model`` overrides them.
    """
    sampler = sampler or ActSampler.for_oracle(oracle)
    if row_model is None:
        if isinstance(oracle, SEUOracle):
            row_model = oracle.model
        else:
            utility = getattr(oracle, "utility", None)
            discount = getattr(oracle, "discount", None)
            if utility is not None and discount is not None:
                row_model = DSEUModel(
                    discount, utility, Beliefs.uniform(tuple(oracle.states))
                )
    checks: dict[str, CheckReport] = {}
    checks["stationarity"] = check_stationarity(oracle, samples, seed, sampler)
    checks["t_monotonicity"] = check_t_monotonicity(oracle, samples, seed + 1, sampler)
    if row_model is not None:
        checks["dominance"] = check_dominance(
            oracle, row_model, samples, seed + 2, sampler
        )
    checks["t_separability"] = check_t_separability(oracle, samples, seed + 3, sampler)
    ranking = _outcome_ranking(oracle)
    strict = [
        pair
        for pair, answer in ranking.items()
        if answer is Preference.STRICTLY_PREFERS_FIRST
    ]
    if strict:
        best, worst = strict[0]
        states = tuple(oracle.states)
        checks["monotone_continuity"] = check_monotone_continuity(
            oracle,
            GridAct.constant(states, best),
            GridAct.constant(states, worst),
            worst,
            horizon_max,
        )
    if isinstance(oracle, SEUOracle):
        checks["decomposition"] = check_decomposition(
            oracle.value, oracle.model, samples, seed + 4, sampler
        )
    checks["t_measurability"] = t_measurability_report()
    return AuditReport(checks)
