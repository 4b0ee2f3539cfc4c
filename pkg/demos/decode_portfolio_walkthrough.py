# Walk one key vector through the portfolio decoder, step by step.
#
# $ python3 demos/decode_portfolio_walkthrough.py
#
# The decoder reads 2K keys: the first K pick assets off a shrinking
# candidate list, the last K become weights after an affine map into
# [lower, upper] and a renormalization.  Infeasible weight vectors are
# not repaired; the decoder charges a penalty instead and the search
# learns to avoid them.

import numpy as np

from randomkeys import PortfolioInstance, decode_portfolio, check_portfolio

instance = PortfolioInstance(
    means=np.linspace(0.05, 0.14, 10),
    covariance=np.diag(np.linspace(0.01, 0.03, 10)),
    cardinality=3,
    risk_aversion=0.5,
    lower=0.01,
    upper=0.40,
)

keys = np.array([0.81, 0.32, 0.54, 0.29, 0.15, 0.91])

print("selection keys ", keys[:3])
remaining = list(range(10))
for key in keys[:3]:
    position = max(1, int(np.ceil(key * len(remaining))))
    picked = remaining.pop(position - 1)
    print(f"  key {key:.2f} -> position {position:2d} of {len(remaining) + 1}"
          f" -> asset {picked}")

solution = decode_portfolio(instance, keys)
print("weight keys    ", keys[3:])
print("assets         ", solution.assets)
print("weights        ", np.round(solution.weights, 4))
print("weight sum     ", float(solution.weights.sum()))
print("penalty        ", round(solution.penalty, 4),
      "(upper bound 0.40 is exceeded, so the cost is pushed up)")
print("cost           ", round(solution.cost, 4))

report = check_portfolio(instance, solution)
print("checker        ", {name: ok for name, ok in report.families.items()})
