import numpy as np
import pytest

from randomkeys import (
    BudgetExhausted,
    DecoderError,
    Evaluator,
    RunBudget,
    SearchClock,
)


class CountingDecoder:
    """Sums the keys; counts how often it is asked."""

    def __init__(self, dim=3):
        self._dim = dim
        self.calls = 0

    @property
    def dimension(self):
        return self._dim

    def cost(self, keys):
        self.calls += 1
        return float(keys.sum())


def test_budget_requires_a_limit():
    with pytest.raises(ValueError):
        RunBudget()
    with pytest.raises(ValueError):
        RunBudget(time_limit=-1.0)
    with pytest.raises(ValueError):
        RunBudget(decoder_calls=0)


def test_charge_stops_exactly_at_call_limit():
    clock = SearchClock(RunBudget(decoder_calls=3))
    for _ in range(3):
        clock.charge()
    with pytest.raises(BudgetExhausted):
        clock.charge()
    assert clock.calls == 3


def test_stop_flag_blocks_further_charges():
    clock = SearchClock(RunBudget(decoder_calls=100))
    clock.charge()
    clock.stop()
    assert clock.exhausted()
    with pytest.raises(BudgetExhausted):
        clock.charge()
    assert clock.calls == 1


def test_virtual_elapsed_counts_calls():
    clock = SearchClock(RunBudget(decoder_calls=10), virtual_time=True)
    assert clock.elapsed() == 0.0
    clock.charge()
    clock.charge()
    assert clock.elapsed() == 2.0


def test_wall_elapsed_is_nonnegative_seconds():
    clock = SearchClock(RunBudget(time_limit=60.0))
    assert clock.elapsed() >= 0.0
    assert clock.elapsed() < 1.0


def test_evaluator_never_decodes_past_budget():
    decoder = CountingDecoder()
    clock = SearchClock(RunBudget(decoder_calls=2))
    ev = Evaluator(decoder, clock)
    ev.evaluate(np.array([0.1, 0.2, 0.3]))
    ev.evaluate(np.array([0.4, 0.5, 0.6]))
    with pytest.raises(BudgetExhausted):
        ev.evaluate(np.array([0.7, 0.8, 0.9]))
    assert decoder.calls == 2
    assert clock.calls == 2


def test_evaluator_stamps_origin_and_ordinal():
    ev = Evaluator(CountingDecoder(), SearchClock(RunBudget(decoder_calls=5)))
    first = ev.evaluate(np.array([0.1, 0.1, 0.1]), origin="sa")
    assert first.origin == "sa"
    assert first.decoded_at == 1
    bound = ev.bound_to("ils")
    second = bound(np.array([0.2, 0.2, 0.2]))
    assert second.origin == "ils"
    assert second.decoded_at == 2
    assert second.cost == pytest.approx(0.6)


def test_evaluator_wraps_decoder_failures():
    class Broken:
        dimension = 2

        def cost(self, keys):
            raise KeyError("boom")

    ev = Evaluator(Broken(), SearchClock(RunBudget(decoder_calls=5)))
    with pytest.raises(DecoderError):
        ev.evaluate(np.array([0.1, 0.2]))


def test_evaluator_rejects_non_finite_cost():
    class Nan:
        dimension = 1

        def cost(self, keys):
            return float("nan")

    ev = Evaluator(Nan(), SearchClock(RunBudget(decoder_calls=5)))
    with pytest.raises(DecoderError):
        ev.evaluate(np.array([0.5]))
