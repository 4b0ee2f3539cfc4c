"""The four metaheuristics that search the key hypercube.

Each searcher is written as a generator: it evaluates candidates
through the callable handed to it (which charges the shared budget and
raises ``BudgetExhausted`` when the run is over) and yields control
after every outer iteration.  Improvements are offered to the shared
elite pool.  Drivers decide whether generators run on threads or are
interleaved deterministically.
"""

from __future__ import annotations

import math
from dataclasses import dataclass, field
from typing import Iterator, Optional

import numpy as np

from .keys import BlendConfig, ShakeConfig, blend, new_random_vector, shake
from .localsearch import rvnd
from .pool import ElitePool, EvaluatedSolution

__all__ = ["BrkgaParams", "SaParams", "IlsParams", "VnsParams", "SearcherParams"]


@dataclass(frozen=True)
class BrkgaParams:
    """Biased random-key genetic algorithm.

    Each generation carries the elite fraction unchanged, fills the
    mutant fraction with fresh random vectors, and breeds the rest by
    blending one elite with one non-elite parent, inheriting elite keys
    with probability ``inherit_bias``.  Every ``exchange_interval``
    generations one pool member replaces a random non-elite individual.
    """

    population_size: int = 100
    elite_fraction: float = 0.20
    mutant_fraction: float = 0.15
    inherit_bias: float = 0.70
    exchange_interval: int = 50
    label: str = "brkga"

    def __post_init__(self) -> None:
        if self.population_size < 3:
            raise ValueError(f"population_size must be >= 3, got {self.population_size}")
        if not 0.0 < self.elite_fraction < 1.0:
            raise ValueError(f"elite_fraction outside (0, 1): {self.elite_fraction}")
        if not 0.0 <= self.mutant_fraction < 1.0:
            raise ValueError(f"mutant_fraction outside [0, 1): {self.mutant_fraction}")
        if self.elite_fraction + self.mutant_fraction >= 1.0:
            raise ValueError("elite_fraction + mutant_fraction must stay below 1")
        if not 0.0 <= self.inherit_bias <= 1.0:
            raise ValueError(f"inherit_bias outside [0, 1]: {self.inherit_bias}")
        if self.exchange_interval < 1:
            raise ValueError(f"exchange_interval must be >= 1, got {self.exchange_interval}")

    def search(
        self,
        dimension: int,
        evaluate,
        pool: ElitePool,
        rng: np.random.Generator,
    ) -> Iterator[None]:
        p = self.population_size
        n_elite = max(1, int(p * self.elite_fraction))
        n_mutant = min(int(p * self.mutant_fraction), p - n_elite - 1)
        crossover = BlendConfig(inherit_prob=self.inherit_bias)

        population = [evaluate(new_random_vector(dimension, rng)) for _ in range(p)]
        population.sort(key=lambda s: s.cost)
        generation = 0
        while True:
            pool.insert(population[0])
            yield
            generation += 1
            offspring = [
                evaluate(new_random_vector(dimension, rng)) for _ in range(n_mutant)
            ]
            for _ in range(p - n_elite - n_mutant):
                elite = population[int(rng.integers(n_elite))]
                other = population[n_elite + int(rng.integers(p - n_elite))]
                offspring.append(evaluate(blend(elite.keys, other.keys, crossover, rng)))
            population = population[:n_elite] + offspring
            if generation % self.exchange_interval == 0 and len(pool) > 0:
                migrant = pool.random_entry(rng)
                slot = n_elite + int(rng.integers(p - n_elite))
                population[slot] = migrant
            population.sort(key=lambda s: s.cost)


@dataclass(frozen=True)
class SaParams:
    """Simulated annealing over shake moves with Metropolis acceptance.

    The initial temperature is calibrated so the mean worsening delta
    of 100 sampled neighbours is accepted with ``initial_acceptance``.
    When the temperature decays below ``restart_floor`` the walk
    restarts from a random pool member at the calibrated temperature.
    ``moves_per_temperature`` defaults to the decoder dimension.
    """

    initial_acceptance: float = 0.5
    cooling_rate: float = 0.99
    moves_per_temperature: Optional[int] = None
    shake: ShakeConfig = field(default_factory=ShakeConfig)
    restart_floor: float = 1e-6
    label: str = "sa"

    def __post_init__(self) -> None:
        if not 0.0 < self.initial_acceptance < 1.0:
            raise ValueError(
                f"initial_acceptance outside (0, 1): {self.initial_acceptance}"
            )
        if not 0.0 < self.cooling_rate < 1.0:
            raise ValueError(f"cooling_rate outside (0, 1): {self.cooling_rate}")
        if self.moves_per_temperature is not None and self.moves_per_temperature < 1:
            raise ValueError("moves_per_temperature must be >= 1 when given")

    def search(
        self,
        dimension: int,
        evaluate,
        pool: ElitePool,
        rng: np.random.Generator,
    ) -> Iterator[None]:
        moves = self.moves_per_temperature or dimension
        current = evaluate(new_random_vector(dimension, rng))
        pool.insert(current)
        best = current

        deltas = []
        for _ in range(100):
            neighbour = evaluate(shake(current.keys, self.shake, rng))
            deltas.append(neighbour.cost - current.cost)
        worsening = [d for d in deltas if d > 0]
        t_start = (
            -float(np.mean(worsening)) / math.log(self.initial_acceptance)
            if worsening
            else 1.0
        )
        temperature = t_start
        while True:
            for _ in range(moves):
                candidate = evaluate(shake(current.keys, self.shake, rng))
                delta = candidate.cost - current.cost
                if delta < 0:
                    accept = True
                else:
                    ratio = delta / temperature
                    accept = rng.random() < (math.exp(-ratio) if ratio < 700 else 0.0)
                if accept:
                    current = candidate
                if current.cost < best.cost:
                    best = current
                    pool.insert(best)
            temperature *= self.cooling_rate
            if temperature < self.restart_floor:
                try:
                    current = pool.random_entry(rng)
                except LookupError:
                    pass
                temperature = t_start
            yield


def _shake_then_descend(
    current: EvaluatedSolution,
    config: ShakeConfig,
    evaluate,
    rng: np.random.Generator,
    rvnd_calls: Optional[int],
) -> EvaluatedSolution:
    candidate = evaluate(shake(current.keys, config, rng))
    return rvnd(candidate, evaluate, rng, rvnd_calls)


@dataclass(frozen=True)
class IlsParams:
    """Iterated local search: shake the incumbent, descend, keep if better."""

    shake: ShakeConfig = field(default_factory=ShakeConfig)
    rvnd_calls: Optional[int] = None
    label: str = "ils"

    def search(
        self,
        dimension: int,
        evaluate,
        pool: ElitePool,
        rng: np.random.Generator,
    ) -> Iterator[None]:
        current = evaluate(new_random_vector(dimension, rng))
        pool.insert(current)
        while True:
            candidate = _shake_then_descend(
                current, self.shake, evaluate, rng, self.rvnd_calls
            )
            if candidate.cost < current.cost:
                current = candidate
                pool.insert(current)
            yield


@dataclass(frozen=True)
class VnsParams:
    """Variable neighbourhood search over a ladder of shake strengths.

    Improvement resets to the first level; failure advances cyclically.
    With a single level this is exactly :class:`IlsParams` at that
    fixed strength (both go through the same shake-then-descend path).
    """

    beta_levels: tuple[float, ...] = (0.1, 0.2, 0.3, 0.4, 0.5)
    rvnd_calls: Optional[int] = None
    label: str = "vns"

    def __post_init__(self) -> None:
        if not self.beta_levels:
            raise ValueError("beta_levels must not be empty")
        if any(not 0.0 < b <= 1.0 for b in self.beta_levels):
            raise ValueError(f"beta levels outside (0, 1]: {self.beta_levels}")
        if any(
            b2 <= b1 for b1, b2 in zip(self.beta_levels, self.beta_levels[1:])
        ):
            raise ValueError(f"beta levels must increase: {self.beta_levels}")

    def search(
        self,
        dimension: int,
        evaluate,
        pool: ElitePool,
        rng: np.random.Generator,
    ) -> Iterator[None]:
        configs = [ShakeConfig(b, b) for b in self.beta_levels]
        current = evaluate(new_random_vector(dimension, rng))
        pool.insert(current)
        level = 0
        while True:
            candidate = _shake_then_descend(
                current, configs[level], evaluate, rng, self.rvnd_calls
            )
            if candidate.cost < current.cost:
                current = candidate
                pool.insert(current)
                level = 0
            else:
                level = (level + 1) % len(configs)
            yield


SearcherParams = BrkgaParams | SaParams | IlsParams | VnsParams
