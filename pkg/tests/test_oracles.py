"""Comparison oracles: expected-utility, Choquet-capacity, and wrappers."""

import random

import pytest

from dseu.acts import GridAct, StepProfile
from dseu.evaluate import Beliefs, DSEUModel, UtilityModel
from dseu.measure import ExpMeasure
from dseu.oracles import (
    Capacity,
    CountingOracle,
    Preference,
    choquet_oracle,
    choquet_value,
    noisy_oracle,
    seu_oracle,
)

STATES = ("s0", "s1", "s2")
UTIL = {"w": 1.0, "m": 0.4, "l": 0.0}


def base_model(probs=(0.5, 0.3, 0.2), rate=1.0) -> DSEUModel:
    return DSEUModel(
        ExpMeasure(rate), UtilityModel(dict(UTIL)), Beliefs(dict(zip(STATES, probs)))
    )


def random_act(rng, states=STATES) -> GridAct:
    def profile():
        n = rng.randint(1, 5)
        cuts = sorted(rng.uniform(0.0, 6.0) for _ in range(n - 1))
        return StepProfile.from_breakpoints(cuts, [rng.choice(list(UTIL)) for _ in range(n)])

    return GridAct({s: profile() for s in states})


class TestSEUOracle:
    def test_reflexive_indifference(self):
        oracle = seu_oracle(base_model())
        rng = random.Random(31)
        for _ in range(20):
            f = random_act(rng)
            assert oracle.compare(f, f) is Preference.INDIFFERENT

    def test_bets_ranked_by_event_probability(self):
        oracle = seu_oracle(base_model(probs=(0.5, 0.3, 0.2)))
        larger = GridAct.bet(STATES, {"s0"}, "w", "l")
        smaller = GridAct.bet(STATES, {"s2"}, "w", "l")
        assert oracle.compare(larger, smaller) is Preference.STRICTLY_PREFERS_FIRST

    def test_antisymmetry_and_value_sign_on_random_pairs(self):
        model = base_model()
        oracle = seu_oracle(model)
        rng = random.Random(32)
        for _ in range(300):
            f, g = random_act(rng), random_act(rng)
            answer = oracle.compare(f, g)
            assert oracle.compare(g, f) is answer.flipped
            diff = model.act_value(f) - model.act_value(g)
            if answer is Preference.STRICTLY_PREFERS_FIRST:
                assert diff > 0
            elif answer is Preference.STRICTLY_PREFERS_SECOND:
                assert diff < 0


class TestCapacity:
    def test_validation(self):
        with pytest.raises(ValueError):
            Capacity(("a", "b"), {frozenset(): 0.1, frozenset({"a"}): 0.5,
                                  frozenset({"b"}): 0.5, frozenset({"a", "b"}): 1.0})
        with pytest.raises(ValueError):  # not monotone
            Capacity(("a", "b"), {frozenset(): 0.0, frozenset({"a"}): 0.9,
                                  frozenset({"b"}): 0.5, frozenset({"a", "b"}): 0.8})
        with pytest.raises(ValueError):  # missing subsets
            Capacity(("a", "b"), {frozenset(): 0.0, frozenset({"a", "b"}): 1.0,
                                  frozenset({"a"}): 0.4})

    def test_additive_matches_beliefs(self):
        beliefs = Beliefs(dict(zip(STATES, (0.5, 0.3, 0.2))))
        cap = Capacity.additive(beliefs)
        assert cap({"s0", "s2"}) == pytest.approx(0.7, abs=1e-15)

    def test_epsilon_contamination(self):
        beliefs = Beliefs({"a": 0.5, "b": 0.5})
        cap = Capacity.epsilon_contamination(beliefs, 0.1)
        assert cap({"a"}) == pytest.approx(0.45, abs=1e-15)
        assert cap({"a", "b"}) == 1.0


class TestChoquetOracle:
    def test_deterministic_acts_ranked_like_seu(self):
        model = base_model()
        cap = Capacity.epsilon_contamination(model.beliefs, 0.3)
        deviant = choquet_oracle(model.discount, model.utility, cap)
        reference = seu_oracle(model)
        rng = random.Random(33)
        for _ in range(100):
            f = GridAct.deterministic(STATES, random_act(rng).row("s0"))
            g = GridAct.deterministic(STATES, random_act(rng).row("s1"))
            assert deviant.compare(f, g) is reference.compare(f, g)

    def test_ellsberg_two_urn_pattern(self):
        # Ambiguous urn: capacity 0.45 on each color. The deterministic
        # half-life stream (the unambiguous 0.5 bet) beats both color bets.
        states = ("red", "black")
        util = UtilityModel({"w": 1.0, "l": 0.0})
        rate = ExpMeasure(1.0)
        cap = Capacity(
            states,
            {
                frozenset(): 0.0,
                frozenset({"red"}): 0.45,
                frozenset({"black"}): 0.45,
                frozenset(states): 1.0,
            },
        )
        deviant = choquet_oracle(rate, util, cap)
        stream = GridAct.deterministic(
            states, StepProfile.before_after("w", rate.half_life, "l")
        )
        for color in states:
            bet = GridAct.bet(states, {color}, "w", "l")
            assert deviant.value(bet) == pytest.approx(0.45, abs=1e-12)
            assert deviant.compare(stream, bet) is Preference.STRICTLY_PREFERS_FIRST
        assert deviant.value(stream) == pytest.approx(0.5, abs=1e-12)

    def test_additive_capacity_agrees_with_seu(self):
        model = base_model()
        additive = choquet_oracle(
            model.discount, model.utility, Capacity.additive(model.beliefs)
        )
        reference = seu_oracle(model)
        rng = random.Random(34)
        for _ in range(500):
            f, g = random_act(rng), random_act(rng)
            assert additive.compare(f, g) is reference.compare(f, g)

    def test_comonotonic_additivity(self):
        # Rows ordered the same way across two acts: the Choquet value of a
        # statewise mixture telescopes additively.
        states = ("a", "b")
        util = UtilityModel({"w": 1.0, "l": 0.0})
        rate = ExpMeasure(1.0)
        cap = Capacity(
            states,
            {
                frozenset(): 0.0,
                frozenset({"a"}): 0.7,
                frozenset({"b"}): 0.1,
                frozenset(states): 1.0,
            },
        )
        # comonotone pairs: state "a" at least as good in both
        rows_f = {"a": 0.9, "b": 0.3}
        rows_g = {"a": 0.5, "b": 0.2}
        combined = {s: rows_f[s] + rows_g[s] for s in states}
        assert choquet_value(cap, combined) == pytest.approx(
            choquet_value(cap, rows_f) + choquet_value(cap, rows_g), abs=1e-12
        )
        # a non-comonotone pair breaks additivity
        rows_h = {"a": 0.1, "b": 0.8}
        mixed = {s: rows_f[s] + rows_h[s] for s in states}
        assert abs(
            choquet_value(cap, mixed)
            - choquet_value(cap, rows_f)
            - choquet_value(cap, rows_h)
        ) > 1e-6


class TestWrappers:
    def test_noisy_identity_at_zero_inflation(self):
        oracle = seu_oracle(base_model())
        wrapped = noisy_oracle(oracle, 0.0)
        rng = random.Random(35)
        for _ in range(100):
            f, g = random_act(rng), random_act(rng)
            assert wrapped.compare(f, g) is oracle.compare(f, g)

    def test_wider_band_merges_near_ties(self):
        model = base_model()
        oracle = seu_oracle(model)
        wide = noisy_oracle(oracle, 10.0)
        rng = random.Random(36)
        f, g = random_act(rng), random_act(rng)
        assert wide.compare(f, g) is Preference.INDIFFERENT

    def test_bisection_converges_within_widened_band(self):
        from dseu.equivalents import time_equivalent_bisect

        model = base_model(probs=(0.3, 0.5, 0.2))
        band = 1e-4
        oracle = noisy_oracle(seu_oracle(model), band)
        bet = GridAct.bet(STATES, {"s0"}, "w", "l")
        te = time_equivalent_bisect(oracle, bet, "w", "l", tol=1e-9, rate=model.discount)
        # the band blurs the value comparison; the time error stays of band size
        recovered = model.profile_value(te.profile("w", "l"))
        assert abs(recovered - model.act_value(bet)) <= 2 * band

    def test_counting_oracle_counts(self):
        oracle = CountingOracle(seu_oracle(base_model()), keep_log=True)
        rng = random.Random(37)
        f, g = random_act(rng), random_act(rng)
        oracle.compare(f, g)
        oracle.compare(g, f)
        assert oracle.count == 2
        assert len(oracle.log) == 2
