"""Run an ensemble of searchers against one decoder under one budget.

All searchers share the elite pool and the decoder-call budget.  Two
drivers are provided: a threaded one (default) and a deterministic
single-threaded one that interleaves the searcher generators
round-robin, switching at the first yield on or after a fixed quantum
of decoder calls.  Given the same seed, decoder, searcher list, and
budget, the deterministic driver reproduces a run exactly; its time
fields count decoder calls instead of wall seconds so reports do not
depend on machine speed.
"""

from __future__ import annotations

import threading
from collections import Counter
from dataclasses import dataclass
from typing import Optional, Sequence

import numpy as np

from .budget import Decoder, Evaluator, RunBudget, SearchClock
from .errors import BudgetExhausted
from .keys import new_random_vector
from .pool import ElitePool
from .searchers import SearcherParams

__all__ = ["RunReport", "run_ensemble"]


@dataclass(frozen=True)
class RunReport:
    """Outcome of one ensemble run.

    ``time_to_best`` is wall seconds in threaded mode and the
    decoder-call count at the best insertion in deterministic mode.
    ``searcher`` is the label of the searcher that produced the best
    solution ("init" when the initial random pool was never beaten).
    """

    best_cost: float
    best_keys: np.ndarray
    time_to_best: float
    decoder_calls: int
    seed: int
    searcher: str


def _unique_labels(searchers: Sequence[SearcherParams]) -> list[str]:
    counts = Counter(s.label for s in searchers)
    seen: Counter = Counter()
    labels = []
    for s in searchers:
        if counts[s.label] == 1:
            labels.append(s.label)
        else:
            seen[s.label] += 1
            labels.append(f"{s.label}-{seen[s.label]}")
    return labels


def run_ensemble(
    decoder: Decoder,
    searchers: Sequence[SearcherParams],
    budget: RunBudget,
    seed: int,
    *,
    pool_capacity: int = 20,
    deterministic: bool = False,
    quantum: int = 100,
    target_cost: Optional[float] = None,
) -> RunReport:
    """Search the key hypercube of ``decoder`` and return the best found.

    The pool is seeded with ``pool_capacity`` random evaluated vectors
    (these decodes count against the budget), then every searcher runs
    until the budget is exhausted or, when ``target_cost`` is given,
    until some solution reaches it.  ``seed`` reproduces the run
    exactly in deterministic mode.
    """
    if not searchers:
        raise ValueError("need at least one searcher")
    if quantum < 1:
        raise ValueError(f"quantum must be >= 1, got {quantum}")
    dimension = decoder.dimension
    if dimension < 1:
        raise ValueError(f"decoder dimension must be positive, got {dimension}")

    clock = SearchClock(budget, virtual_time=deterministic)
    evaluator = Evaluator(decoder, clock)
    streams = np.random.SeedSequence(seed).spawn(len(searchers) + 1)

    best_seen = {"time": 0.0}

    def note_best(solution) -> None:
        best_seen["time"] = clock.elapsed()
        if target_cost is not None and solution.cost <= target_cost:
            clock.stop()

    pool = ElitePool(pool_capacity, on_new_best=note_best)
    init_rng = np.random.default_rng(streams[0])
    init_evaluate = evaluator.bound_to("init")
    try:
        for _ in range(pool_capacity):
            pool.insert(init_evaluate(new_random_vector(dimension, init_rng)))
    except BudgetExhausted:
        pass
    else:
        labels = _unique_labels(searchers)
        generators = [
            spec.search(
                dimension,
                evaluator.bound_to(labels[i]),
                pool,
                np.random.default_rng(streams[i + 1]),
            )
            for i, spec in enumerate(searchers)
        ]
        if deterministic:
            _drive_round_robin(generators, clock, quantum)
        else:
            _drive_threads(generators)

    best = pool.best()
    if best is None:
        raise RuntimeError("budget expired before any vector was evaluated")
    return RunReport(
        best_cost=best.cost,
        best_keys=best.keys,
        time_to_best=best_seen["time"],
        decoder_calls=clock.calls,
        seed=seed,
        searcher=best.origin,
    )


def _drive_threads(generators) -> None:
    failures: list[BaseException] = []

    def run(gen) -> None:
        try:
            for _ in gen:
                pass
        except BudgetExhausted:
            pass
        except BaseException as exc:
            failures.append(exc)

    threads = [threading.Thread(target=run, args=(g,), daemon=True) for g in generators]
    for t in threads:
        t.start()
    for t in threads:
        t.join()
    if failures:
        raise failures[0]


def _drive_round_robin(generators, clock: SearchClock, quantum: int) -> None:
    active = list(generators)
    while active:
        for gen in list(active):
            resumed_at = clock.calls
            while True:
                try:
                    next(gen)
                except (StopIteration, BudgetExhausted):
                    active.remove(gen)
                    break
                if clock.calls - resumed_at >= quantum:
                    break
