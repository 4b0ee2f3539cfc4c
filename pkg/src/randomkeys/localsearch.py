"""Local searches over key vectors and the RVND driver that cycles them.

All searches are first-improvement: they return as soon as one
evaluated neighbour costs strictly less than the incumbent.  Decoder
calls issued here are charged to the run budget by the evaluator;
:func:`rvnd` can additionally cap its own total calls.
"""

from __future__ import annotations

import itertools
from typing import Callable, Optional

import numpy as np

from .errors import BudgetExhausted
from .keys import KEY_MAX
from .pool import EvaluatedSolution

__all__ = [
    "FAREY_VALUES",
    "swap_search",
    "mirror_search",
    "farey_search",
    "nelder_mead_search",
    "rvnd",
]

# Farey sequence of order 7, with the right endpoint pulled just below
# one so it stays a representable key.
FAREY_VALUES = (
    0.0, 1 / 7, 1 / 6, 1 / 5, 1 / 4, 2 / 7, 1 / 3, 2 / 5, 3 / 7, 1 / 2,
    4 / 7, 3 / 5, 2 / 3, 5 / 7, 3 / 4, 4 / 5, 5 / 6, 6 / 7, 0.9999,
)

Trial = Callable[[np.ndarray], EvaluatedSolution]


class _RvndBudget(Exception):
    """Internal: rvnd's own call allowance ran out."""


def swap_search(
    current: EvaluatedSolution, try_eval: Trial, rng: np.random.Generator
) -> tuple[bool, EvaluatedSolution]:
    """Try exchanging key pairs (i, j), i < j, in random order."""
    d = current.keys.shape[0]
    pairs = list(itertools.combinations(range(d), 2))
    for p in rng.permutation(len(pairs)):
        i, j = pairs[p]
        if current.keys[i] == current.keys[j]:
            continue
        cand = current.keys.copy()
        cand[i], cand[j] = cand[j], cand[i]
        trial = try_eval(cand)
        if trial.cost < current.cost:
            return True, trial
    return False, current


def mirror_search(
    current: EvaluatedSolution, try_eval: Trial, rng: np.random.Generator
) -> tuple[bool, EvaluatedSolution]:
    """Try replacing single keys with their mirror 1 - key."""
    d = current.keys.shape[0]
    for i in rng.permutation(d):
        value = min(max(1.0 - current.keys[i], 0.0), KEY_MAX)
        if value == current.keys[i]:
            continue
        cand = current.keys.copy()
        cand[i] = value
        trial = try_eval(cand)
        if trial.cost < current.cost:
            return True, trial
    return False, current


def farey_search(
    current: EvaluatedSolution, try_eval: Trial, rng: np.random.Generator
) -> tuple[bool, EvaluatedSolution]:
    """Try snapping single keys to Farey fractions of order 7."""
    d = current.keys.shape[0]
    for i in rng.permutation(d):
        for value in FAREY_VALUES:
            if value == current.keys[i]:
                continue
            cand = current.keys.copy()
            cand[i] = value
            trial = try_eval(cand)
            if trial.cost < current.cost:
                return True, trial
    return False, current


def nelder_mead_search(
    current: EvaluatedSolution, try_eval: Trial, rng: np.random.Generator
) -> tuple[bool, EvaluatedSolution]:
    """Downhill-simplex descent from the incumbent, clamped to the key box.

    The initial simplex is the incumbent plus, per coordinate, a copy
    shifted by +0.05 (or -0.05 where that would leave the box).
    Standard reflection/expansion/contraction/shrink steps with
    coefficients 1, 2, 0.5, 0.5.  Stops after 50 * dimension decoder
    calls or when the simplex diameter falls below 1e-4; if the outer
    budget runs out mid-descent, the best vertex found so far is
    returned and the exhaustion is left for the caller's next call.
    """
    d = current.keys.shape[0]
    calls = 0
    limit = 50 * d

    def spend(keys: np.ndarray) -> EvaluatedSolution:
        nonlocal calls
        if calls >= limit:
            raise _NmDone
        calls += 1
        return try_eval(np.clip(keys, 0.0, KEY_MAX))

    simplex = [current]
    try:
        for i in range(d):
            vertex = current.keys.copy()
            step = 0.05 if vertex[i] + 0.05 <= KEY_MAX else -0.05
            vertex[i] += step
            simplex.append(spend(vertex))
        while True:
            simplex.sort(key=lambda s: s.cost)
            spread = max(
                float(np.max(np.abs(s.keys - simplex[0].keys))) for s in simplex
            )
            if spread < 1e-4:
                break
            worst = simplex[-1]
            centroid = np.mean([s.keys for s in simplex[:-1]], axis=0)
            reflected = spend(centroid + (centroid - worst.keys))
            if reflected.cost < simplex[0].cost:
                expanded = spend(centroid + 2.0 * (centroid - worst.keys))
                simplex[-1] = expanded if expanded.cost < reflected.cost else reflected
            elif reflected.cost < simplex[-2].cost:
                simplex[-1] = reflected
            elif reflected.cost < worst.cost:
                contracted = spend(centroid + 0.5 * (reflected.keys - centroid))
                if contracted.cost <= reflected.cost:
                    simplex[-1] = contracted
                else:
                    _shrink(simplex, spend)
            else:
                contracted = spend(centroid - 0.5 * (centroid - worst.keys))
                if contracted.cost < worst.cost:
                    simplex[-1] = contracted
                else:
                    _shrink(simplex, spend)
    except (_NmDone, _RvndBudget, BudgetExhausted):
        pass
    best = min(simplex, key=lambda s: s.cost)
    if best.cost < current.cost:
        return True, best
    return False, current


class _NmDone(Exception):
    """Internal: the Nelder-Mead call allowance ran out."""


def _shrink(simplex: list[EvaluatedSolution], spend: Trial) -> None:
    best = simplex[0]
    for k in range(1, len(simplex)):
        simplex[k] = spend(best.keys + 0.5 * (simplex[k].keys - best.keys))


def rvnd(
    start: EvaluatedSolution,
    evaluate: Trial,
    rng: np.random.Generator,
    max_calls: Optional[int] = None,
) -> EvaluatedSolution:
    """Random variable neighbourhood descent over the four searches.

    Runs the searches in a freshly shuffled order, reshuffling and
    restarting the list after every improvement, until all four fail in
    a row.  ``max_calls`` caps the decoder calls issued by this descent
    (the run budget still applies underneath); on either budget running
    out the best solution found so far is returned.

    The returned cost is never above ``start.cost``.
    """
    remaining = float("inf") if max_calls is None else max_calls

    def try_eval(keys: np.ndarray) -> EvaluatedSolution:
        nonlocal remaining
        if remaining <= 0:
            raise _RvndBudget
        remaining -= 1
        return evaluate(keys)

    searches = (swap_search, mirror_search, farey_search, nelder_mead_search)
    current = start
    try:
        order = [searches[k] for k in rng.permutation(len(searches))]
        i = 0
        while i < len(order):
            improved, current = order[i](current, try_eval, rng)
            if improved:
                order = [searches[k] for k in rng.permutation(len(searches))]
                i = 0
            else:
                i += 1
    except (_RvndBudget, BudgetExhausted):
        pass
    return current
