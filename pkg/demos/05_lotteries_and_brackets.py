"""Acts as lotteries, the mixture identity, and 1/N sandwich brackets.

Pushing time through the discount measure turns a stream into a lottery over
outcomes.  Splicing a head act before time t realizes a convex mixture with
weight exp(-rate*t) on the tail's lottery, which is exactly the structure an
independence axiom needs.  Separately, any act can be squeezed between two
streams that use only the best and worst outcomes, with value gap at most
1/N; doubling N halves the gap.
"""

import random

from dseu import (
    ActSampler,
    Beliefs,
    DSEUModel,
    ExpMeasure,
    Lottery,
    LotteryAct,
    UtilityModel,
    aa_value,
    bracket_profile,
    independence_witness,
    reduce_act,
)

model = DSEUModel(
    ExpMeasure(1.0),
    UtilityModel({"low": 0.0, "mid": 0.5, "high": 1.0}),
    Beliefs({"s0": 0.6, "s1": 0.4}),
)
sampler = ActSampler(model.discount, model.states, tuple(model.outcomes))
rng = random.Random(0)
act = sampler.act(rng)

print("== an act reduces to one lottery per state ==")
reduced = reduce_act(model.discount, act)
for s in reduced.states:
    probs = {o: round(p, 6) for o, p in reduced.at(s).probs.items()}
    print(f"  {s}: {probs}")
print(f"  value through lotteries: {aa_value(model, act)!r}")
print(f"  value directly:          {model.act_value(act)!r}")

print("\n== the mixture identity behind independence ==")
g = LotteryAct({s: Lottery({"low": 0.5, "high": 0.5}) for s in model.states})
for t in (0.25, 1.0, 3.0):
    lhs, rhs = independence_witness(model.discount, t, g, act)
    w = model.discount.sf(t)
    print(f"  t={t}: weight on tail = {w:.4f}, entrywise gap = {lhs.distance(rhs):.2e}")

print("\n== sandwich brackets tighten like 1/N ==")
profile = sampler.profile(rng, pieces=6)
value = model.profile_value(profile)
print(f"  target stream value: {value:.9f}")
print(f"  {'N':>4} {'lower':>12} {'upper':>12} {'gap':>10}")
for n in (1, 2, 4, 8, 16, 32, 64):
    res = bracket_profile(model, profile, n)
    lo = model.profile_value(res.lower)
    hi = model.profile_value(res.upper)
    print(f"  {n:>4} {lo:>12.7f} {hi:>12.7f} {res.gap:>10.7f}")
