"""Benchmark metrics: deviation summaries, time-to-target curves, and
quality performance profiles."""

from __future__ import annotations

from dataclasses import dataclass
from typing import Mapping, Optional, Sequence

__all__ = [
    "relative_percent_deviation",
    "RpdSummary",
    "summarize_rpd",
    "ttt_target",
    "TttCurve",
    "ttt_curve",
    "quality_ratios",
    "profile_fractions",
]


def relative_percent_deviation(cost: float, reference: float) -> float:
    """Percentage deviation of ``cost`` from a reference value.

    Computed as (cost - reference) / |reference| * 100 so that worse
    costs give larger deviations regardless of the reference's sign
    (references of minimization benchmarks are often negative).
    """
    if reference == 0.0:
        raise ValueError("reference value must be nonzero")
    return (cost - reference) / abs(reference) * 100.0


@dataclass(frozen=True)
class RpdSummary:
    """Deviation summary of repeated runs on one instance."""

    instance: str
    reference: float
    best_cost: float
    rpd_best: float
    rpd_avg: float
    mean_time_to_best: float
    n_runs: int


def summarize_rpd(
    instance: str,
    reference: float,
    costs: Sequence[float],
    times_to_best: Sequence[float],
) -> RpdSummary:
    if not costs:
        raise ValueError("need at least one run")
    if len(costs) != len(times_to_best):
        raise ValueError(
            f"{len(costs)} costs but {len(times_to_best)} times"
        )
    best = min(costs)
    deviations = [relative_percent_deviation(c, reference) for c in costs]
    return RpdSummary(
        instance=instance,
        reference=reference,
        best_cost=best,
        rpd_best=relative_percent_deviation(best, reference),
        rpd_avg=sum(deviations) / len(deviations),
        mean_time_to_best=sum(times_to_best) / len(times_to_best),
        n_runs=len(costs),
    )


def ttt_target(reference: float, percent: float) -> float:
    """Target cost ``percent`` percent above the reference optimum."""
    return reference + percent / 100.0 * abs(reference)


@dataclass(frozen=True)
class TttCurve:
    """Empirical time-to-target distribution.

    ``times`` holds the successful runs' times sorted ascending;
    censored runs hit ``limit`` without reaching the target.  Plotting
    position of the i-th success (1-based) is (i - 0.5) / n_runs.
    """

    target: float
    limit: float
    times: tuple[float, ...]
    n_runs: int

    @property
    def n_censored(self) -> int:
        return self.n_runs - len(self.times)

    def points(self) -> list[tuple[float, float]]:
        return [
            (t, (i + 0.5) / self.n_runs) for i, t in enumerate(self.times)
        ]


def ttt_curve(
    results: Sequence[Optional[float]], target: float, limit: float
) -> TttCurve:
    """Build a curve from per-run results (None marks a censored run)."""
    if not results:
        raise ValueError("need at least one repetition")
    reached = sorted(t for t in results if t is not None)
    if any(t < 0 for t in reached):
        raise ValueError("negative time to target")
    return TttCurve(
        target=target, limit=limit, times=tuple(reached), n_runs=len(results)
    )


def quality_ratios(
    costs: Mapping[str, float], reference: Mapping[str, float], scheme: str
) -> dict[str, float]:
    """Per-instance quality ratios of one method.

    ``scheme`` "best" uses cost / best_known; "lower" uses
    1 + (cost - bound) / bound.  Both presume positive costs and
    references, as in travel-time minimization.  Every reference
    instance must be present in ``costs``.
    """
    if scheme not in ("best", "lower"):
        raise ValueError(f"unknown scheme {scheme!r}")
    ratios = {}
    for instance, ref in reference.items():
        if instance not in costs:
            raise ValueError(f"no cost reported for instance {instance!r}")
        if ref <= 0:
            raise ValueError(f"reference for {instance!r} must be positive, got {ref}")
        z = costs[instance]
        ratios[instance] = (
            z / ref if scheme == "best" else 1.0 + (z - ref) / ref
        )
    return ratios


def profile_fractions(
    ratios: Mapping[str, float], taus: Sequence[float]
) -> list[float]:
    """Fraction of instances with ratio <= tau, per tau.

    Nondecreasing in tau; with tau = 1 and the "best" scheme this is
    the fraction of instances on which the method attains the
    best-known value exactly.
    """
    if not ratios:
        raise ValueError("no ratios given")
    values = sorted(ratios.values())
    out = []
    for tau in taus:
        count = sum(1 for q in values if q <= tau)
        out.append(count / len(values))
    return out
