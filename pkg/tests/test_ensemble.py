import numpy as np
import pytest

from randomkeys import (
    BrkgaParams,
    IlsParams,
    RunBudget,
    SaParams,
    VnsParams,
    run_ensemble,
)


class SphereDecoder:
    def __init__(self, dim=4):
        self._dim = dim
        self.target = np.linspace(0.2, 0.8, dim)
        self.calls = 0

    @property
    def dimension(self):
        return self._dim

    def cost(self, keys):
        self.calls += 1
        return float(np.sum((keys - self.target) ** 2))


ALL_SEARCHERS = [BrkgaParams(population_size=20), SaParams(),
                 IlsParams(rvnd_calls=100), VnsParams(rvnd_calls=100)]


def test_call_accounting_is_exact():
    decoder = SphereDecoder()
    report = run_ensemble(
        decoder, ALL_SEARCHERS, RunBudget(decoder_calls=1234), seed=1,
        deterministic=True,
    )
    assert report.decoder_calls == 1234
    assert decoder.calls == 1234


def test_deterministic_runs_repeat_exactly():
    kwargs = dict(budget=RunBudget(decoder_calls=2000), seed=5, deterministic=True)
    a = run_ensemble(SphereDecoder(), ALL_SEARCHERS, **kwargs)
    b = run_ensemble(SphereDecoder(), ALL_SEARCHERS, **kwargs)
    assert a.best_cost == b.best_cost
    assert np.array_equal(a.best_keys, b.best_keys)
    assert a.time_to_best == b.time_to_best
    assert a.searcher == b.searcher


def test_different_seeds_differ():
    a = run_ensemble(SphereDecoder(), ALL_SEARCHERS,
                     RunBudget(decoder_calls=800), seed=1, deterministic=True)
    b = run_ensemble(SphereDecoder(), ALL_SEARCHERS,
                     RunBudget(decoder_calls=800), seed=2, deterministic=True)
    assert not np.array_equal(a.best_keys, b.best_keys)


def test_threaded_driver_improves_too():
    report = run_ensemble(SphereDecoder(), ALL_SEARCHERS,
                          RunBudget(decoder_calls=4000), seed=3)
    assert report.best_cost < 0.05
    assert report.decoder_calls <= 4000


def test_target_cost_stops_early():
    report = run_ensemble(
        SphereDecoder(), ALL_SEARCHERS, RunBudget(decoder_calls=50_000),
        seed=4, deterministic=True, target_cost=0.05,
    )
    assert report.best_cost <= 0.05
    assert report.decoder_calls < 50_000


def test_single_searcher_runs():
    report = run_ensemble(
        SphereDecoder(), [IlsParams(rvnd_calls=100)],
        RunBudget(decoder_calls=1500), seed=6, deterministic=True,
    )
    assert report.best_cost < 0.1
    assert report.searcher in ("ils", "init")


def test_duplicate_searchers_get_distinct_labels():
    report = run_ensemble(
        SphereDecoder(), [SaParams(), SaParams()],
        RunBudget(decoder_calls=1500), seed=7, deterministic=True,
    )
    assert report.searcher in ("init", "sa-1", "sa-2")


def test_budget_smaller_than_pool_init_still_reports():
    report = run_ensemble(
        SphereDecoder(), ALL_SEARCHERS, RunBudget(decoder_calls=7),
        seed=8, deterministic=True, pool_capacity=20,
    )
    assert report.decoder_calls == 7
    assert report.searcher == "init"
    assert np.isfinite(report.best_cost)


def test_empty_searcher_list_rejected():
    with pytest.raises(ValueError):
        run_ensemble(SphereDecoder(), [], RunBudget(decoder_calls=10), seed=1)


def test_time_to_best_is_virtual_in_deterministic_mode():
    report = run_ensemble(
        SphereDecoder(), ALL_SEARCHERS, RunBudget(decoder_calls=2000),
        seed=9, deterministic=True,
    )
    assert report.time_to_best == int(report.time_to_best)
    assert 0 < report.time_to_best <= 2000
