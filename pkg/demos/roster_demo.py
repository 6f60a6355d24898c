"""Turn an optimal shift plan into a balanced per-driver roster.

Greedy time-ordered assignment always succeeds on a feasible plan but can
leave drivers with uneven shift counts. Alternating swaps along overlap
chains then equalize the counts without ever breaking the rest-time rule.
"""

from shiftopt import (
    Scenario,
    greedy_assign,
    plan,
    rebalance,
    roster_to_csv,
    verify_roster,
)

scenario = Scenario(T=48, N=3, s=2, delta=4, beta=2, d_max=6.0, a=2.0, c_veh=6)
result = plan(scenario)
print(f"plan: {result.plan.x.tolist()}")

greedy = greedy_assign(result.plan, scenario)
print(f"greedy shift counts   : {greedy.counts()} (target {scenario.s} each)")

trace = []
balanced = rebalance(greedy, scenario.s, trace=trace)
for step, counts in enumerate(trace, start=1):
    print(f"after swap {step}          : {counts}")
print(f"balanced shift counts : {balanced.counts()}")

report = verify_roster(balanced, result.plan, scenario)
print(f"verified              : {report.ok}")

print("\n" + roster_to_csv(balanced, scenario))
