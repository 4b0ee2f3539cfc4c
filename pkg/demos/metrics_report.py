# Measurement helpers on synthetic run data: relative percent
# deviation, time-to-target curves, and performance profiles.
#
# $ python3 demos/metrics_report.py

from randomkeys import (
    profile_fractions,
    quality_ratios,
    relative_percent_deviation,
    summarize_rpd,
    ttt_curve,
    ttt_target,
)

# --- RPD against a reference value ----------------------------------
# works for negative objectives too: a cost above the reference is a
# positive deviation regardless of sign
for cost, ref in [(105.0, 100.0), (-0.00460, -0.00466)]:
    print(f"cost {cost:10.5f} vs reference {ref:10.5f} "
          f"-> RPD {relative_percent_deviation(cost, ref):+.4f}%")

summary = summarize_rpd(
    "demo", 100.0,
    costs=[100.0, 102.0, 105.0], times_to_best=[0.4, 1.2, 0.9],
)
print(f"over 3 runs: best {summary.rpd_best:+.2f}%  "
      f"avg {summary.rpd_avg:+.2f}%  "
      f"mean time {summary.mean_time_to_best:.2f}s")

# --- time-to-target -------------------------------------------------
# target = reference degraded by 2%; runs that never reach it within
# the budget are censored and only lower the plotted probabilities
target = ttt_target(100.0, 2.0)
times = [4.0, None, 1.0, 2.5, None]  # None marks a censored run
curve = ttt_curve(times, target=target, limit=30.0)
print(f"target {target}: {len(curve.times)} of {curve.n_runs} runs "
      f"reached it, {curve.n_censored} censored")
for t, p in curve.points():
    print(f"  P(time <= {t:4.1f}s) ~ {p:.2f}")

# --- performance profile --------------------------------------------
reference = {"a": 50.0, "b": 80.0, "c": 120.0, "d": 60.0}
ours = {"a": 50.0, "b": 80.0, "c": 121.0, "d": 60.0}
rival = {"a": 55.0, "b": 80.0, "c": 120.0, "d": 66.0}
taus = [1.0, 1.01, 1.05, 1.10]
for name, costs in [("ours", ours), ("rival", rival)]:
    ratios = quality_ratios(costs, reference, "best")
    rho = profile_fractions(ratios, taus)
    row = "  ".join(f"rho({tau}) = {r:.2f}" for tau, r in zip(taus, rho))
    print(f"{name:5s} {row}")
