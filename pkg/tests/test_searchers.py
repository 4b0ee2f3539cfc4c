import numpy as np
import pytest

from randomkeys import (
    BrkgaParams,
    BudgetExhausted,
    ElitePool,
    Evaluator,
    IlsParams,
    RunBudget,
    SaParams,
    SearchClock,
    ShakeConfig,
    VnsParams,
)


class SphereDecoder:
    """Squared distance to an interior optimum; smooth and unimodal."""

    target = np.array([0.3, 0.7, 0.2, 0.6])

    @property
    def dimension(self):
        return 4

    def cost(self, keys):
        return float(np.sum((keys - self.target) ** 2))


def drive(params, calls=4000, seed=1, dim=4, decoder=None):
    decoder = decoder or SphereDecoder()
    clock = SearchClock(RunBudget(decoder_calls=calls))
    pool = ElitePool(capacity=10)
    ev = Evaluator(decoder, clock)
    gen = params.search(dim, ev.bound_to(params.label), pool, np.random.default_rng(seed))
    try:
        for _ in gen:
            pass
    except BudgetExhausted:
        pass
    return pool


def test_brkga_param_validation():
    with pytest.raises(ValueError):
        BrkgaParams(population_size=2)
    with pytest.raises(ValueError):
        BrkgaParams(elite_fraction=0.0)
    with pytest.raises(ValueError):
        BrkgaParams(elite_fraction=0.6, mutant_fraction=0.5)
    with pytest.raises(ValueError):
        BrkgaParams(exchange_interval=0)


def test_sa_param_validation():
    with pytest.raises(ValueError):
        SaParams(initial_acceptance=1.0)
    with pytest.raises(ValueError):
        SaParams(cooling_rate=1.0)
    with pytest.raises(ValueError):
        SaParams(moves_per_temperature=0)


def test_vns_param_validation():
    with pytest.raises(ValueError):
        VnsParams(beta_levels=())
    with pytest.raises(ValueError):
        VnsParams(beta_levels=(0.3, 0.2))
    with pytest.raises(ValueError):
        VnsParams(beta_levels=(0.1, 1.2))


@pytest.mark.parametrize(
    "params",
    [
        BrkgaParams(population_size=20),
        SaParams(),
        IlsParams(rvnd_calls=200),
        VnsParams(rvnd_calls=200),
    ],
    ids=["brkga", "sa", "ils", "vns"],
)
def test_each_searcher_descends_on_a_sphere(params):
    pool = drive(params)
    best = pool.best()
    assert best is not None
    assert best.cost < 0.05  # random vectors average around 0.33


def test_brkga_respects_exact_call_budget():
    decoder = SphereDecoder()
    clock = SearchClock(RunBudget(decoder_calls=137))
    ev = Evaluator(decoder, clock)
    pool = ElitePool(capacity=5)
    gen = BrkgaParams(population_size=20).search(
        4, ev.bound_to("brkga"), pool, np.random.default_rng(2)
    )
    with pytest.raises(BudgetExhausted):
        for _ in gen:
            pass
    assert clock.calls == 137


def test_sa_yields_after_each_temperature_step():
    decoder = SphereDecoder()
    clock = SearchClock(RunBudget(decoder_calls=10_000))
    ev = Evaluator(decoder, clock)
    pool = ElitePool(capacity=5)
    params = SaParams(moves_per_temperature=5)
    gen = params.search(4, ev.bound_to("sa"), pool, np.random.default_rng(3))
    next(gen)
    after_first = clock.calls
    # 1 initial + 100 calibration + 5 moves
    assert after_first == 106
    next(gen)
    assert clock.calls == 111


def test_ils_equals_single_level_vns():
    # same fixed shake strength, same seed: identical pool trajectories
    ils = IlsParams(shake=ShakeConfig(0.3, 0.3), rvnd_calls=50)
    vns = VnsParams(beta_levels=(0.3,), rvnd_calls=50)
    pool_a = drive(ils, calls=2000, seed=9)
    pool_b = drive(vns, calls=2000, seed=9)
    costs_a = [e.cost for e in pool_a.entries]
    costs_b = [e.cost for e in pool_b.entries]
    assert costs_a == pytest.approx(costs_b, abs=0.0)


def test_vns_cycles_levels_without_improvement():
    # a constant decoder never improves, so the level index must cycle
    class Flat:
        dimension = 3

        def cost(self, keys):
            return 1.0

    params = VnsParams(beta_levels=(0.1, 0.2), rvnd_calls=5)
    pool = drive(params, calls=500, dim=3, decoder=Flat())
    assert pool.best().cost == 1.0


def test_sa_flat_landscape_accepts_zero_delta():
    class Flat:
        dimension = 3

        def cost(self, keys):
            return 2.5

    pool = drive(SaParams(), calls=400, dim=3, decoder=Flat())
    assert pool.best().cost == 2.5
