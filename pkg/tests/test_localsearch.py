from fractions import Fraction

import numpy as np
import pytest

from randomkeys import BudgetExhausted, Evaluator, RunBudget, SearchClock
from randomkeys.localsearch import (
    FAREY_VALUES,
    farey_search,
    mirror_search,
    nelder_mead_search,
    rvnd,
    swap_search,
)


class QuadraticDecoder:
    """Distance to a fixed target point; minimum cost zero."""

    def __init__(self, target):
        self.target = np.asarray(target, dtype=float)

    @property
    def dimension(self):
        return self.target.shape[0]

    def cost(self, keys):
        return float(np.sum((keys - self.target) ** 2))


def evaluator_for(decoder, calls=100_000):
    return Evaluator(decoder, SearchClock(RunBudget(decoder_calls=calls)))


def test_farey_values_are_order_seven():
    interior = [Fraction(v).limit_denominator(7) for v in FAREY_VALUES[1:-1]]
    expected = sorted(
        {
            Fraction(p, q)
            for q in range(1, 8)
            for p in range(0, q + 1)
        }
    )[1:-1]
    assert interior == expected
    assert FAREY_VALUES[0] == 0.0
    assert FAREY_VALUES[-1] == pytest.approx(1.0, abs=1e-3)
    assert FAREY_VALUES[-1] < 1.0


def test_swap_search_finds_an_improving_exchange():
    decoder = QuadraticDecoder([0.2, 0.8])
    ev = evaluator_for(decoder)
    start = ev.evaluate(np.array([0.8, 0.2]))
    improved, result = swap_search(start, ev.evaluate, np.random.default_rng(1))
    assert improved
    assert result.cost == pytest.approx(0.0)


def test_swap_search_skips_equal_keys():
    decoder = QuadraticDecoder([0.5, 0.5])
    counting = evaluator_for(decoder)
    start = counting.evaluate(np.array([0.3, 0.3]))
    before = counting.clock.calls
    improved, _ = swap_search(start, counting.evaluate, np.random.default_rng(1))
    assert not improved
    assert counting.clock.calls == before  # the only pair was a no-op


def test_mirror_search_improves_when_mirror_is_better():
    decoder = QuadraticDecoder([0.9, 0.5])
    ev = evaluator_for(decoder)
    start = ev.evaluate(np.array([0.1, 0.5]))
    improved, result = mirror_search(start, ev.evaluate, np.random.default_rng(2))
    assert improved
    assert result.cost < start.cost
    assert result.keys[0] == pytest.approx(0.9)


def test_farey_search_snaps_to_a_fraction():
    decoder = QuadraticDecoder([1 / 3, 1 / 2])
    ev = evaluator_for(decoder)
    start = ev.evaluate(np.array([0.11, 0.48]))
    improved, result = farey_search(start, ev.evaluate, np.random.default_rng(3))
    assert improved
    assert result.cost < start.cost


def test_nelder_mead_descends_a_quadratic():
    decoder = QuadraticDecoder([0.31, 0.62, 0.47])
    ev = evaluator_for(decoder)
    start = ev.evaluate(np.array([0.9, 0.1, 0.9]))
    improved, result = nelder_mead_search(start, ev.evaluate, np.random.default_rng(4))
    assert improved
    assert result.cost < 1e-4
    assert np.all(result.keys >= 0.0) and np.all(result.keys < 1.0)


def test_nelder_mead_keeps_result_on_budget_exhaustion():
    decoder = QuadraticDecoder([0.31, 0.62, 0.47])
    ev = evaluator_for(decoder, calls=10)
    start = ev.evaluate(np.array([0.9, 0.1, 0.9]))
    improved, result = nelder_mead_search(start, ev.evaluate, np.random.default_rng(4))
    assert result.cost <= start.cost
    # next global charge still reports exhaustion
    with pytest.raises(BudgetExhausted):
        ev.evaluate(start.keys)


def test_rvnd_never_worsens_and_reaches_local_optimum():
    decoder = QuadraticDecoder([0.25, 0.75, 0.5, 0.1])
    ev = evaluator_for(decoder)
    start = ev.evaluate(np.array([0.9, 0.2, 0.1, 0.8]))
    result = rvnd(start, ev.evaluate, np.random.default_rng(5))
    assert result.cost <= start.cost
    assert result.cost < 1e-3


def test_rvnd_respects_its_own_call_cap():
    decoder = QuadraticDecoder([0.25, 0.75])
    ev = evaluator_for(decoder)
    start = ev.evaluate(np.array([0.9, 0.2]))
    before = ev.clock.calls
    result = rvnd(start, ev.evaluate, np.random.default_rng(6), max_calls=7)
    assert ev.clock.calls - before <= 7
    assert result.cost <= start.cost


def test_rvnd_key_range_closure():
    decoder = QuadraticDecoder([0.5, 0.5, 0.5])
    ev = evaluator_for(decoder)
    rng = np.random.default_rng(7)
    for _ in range(50):
        start = ev.evaluate(rng.random(3))
        result = rvnd(start, ev.evaluate, rng, max_calls=60)
        assert np.all(result.keys >= 0.0)
        assert np.all(result.keys < 1.0)
