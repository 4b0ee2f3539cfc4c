# Decode a key vector on the bundled six-customer routing instance and
# print the full timing trace.
#
# $ python3 demos/decode_route_walkthrough.py

from pathlib import Path

import numpy as np

from randomkeys import (
    TdTspInstance,
    check_tdtsp,
    decode_tdtsp,
    travel_time_lower_bound,
)
from randomkeys.instances import load_tdtsp

instance = load_tdtsp(Path(__file__).parent.parent / "data" / "tdtsp_n6_h2.json")
keys = np.array([0.71, 0.38, 0.52, 0.28, 0.05, 0.93])

# sorting the keys gives the visiting order; each customer's key is its
# priority, smaller first
order = sorted(range(1, 7), key=lambda v: keys[v - 1])
print("keys  ", keys)
print("order ", order)

solution = decode_tdtsp(instance, keys)
interval = instance.interval_length
print(f"interval length {interval}, horizon {instance.horizon}")
print("leg by leg (travel times depend on the departure interval):")
now = 0.0
for i, j, slot in solution.arcs:
    leg = instance.travel[slot][i][j]
    service = instance.service[j]
    print(f"  {i} -> {j}  depart {now:5.1f}  interval {slot}  travel {leg:4.1f}"
          f"  service {service:4.1f}  arrive-and-finish {now + leg + service:5.1f}")
    now += leg + service

print("arrival vector ", [float(a) for a in solution.arrival])
print("travel cost    ", solution.travel_cost)
print("penalized      ", solution.penalized)

bound = travel_time_lower_bound(instance)
print("sum of cheapest outgoing arcs:", bound,
      "(no tour can travel less)")

report = check_tdtsp(instance, solution)
print("checker families all pass:", report.feasible)

# squeeze the horizon and the same keys become infeasible: the decoder
# keeps the route but adds one large penalty so the search can still
# rank bad routes against worse ones
tight = TdTspInstance(
    n_customers=instance.n_customers,
    n_intervals=instance.n_intervals,
    interval_length=10.0,
    service=instance.service,
    travel=instance.travel,
)
squeezed = decode_tdtsp(tight, keys)
print(f"with horizon {tight.horizon}: cost {squeezed.cost} "
      f"(travel {squeezed.travel_cost} plus penalty), "
      f"penalized {squeezed.penalized}")
