import pytest

from randomkeys import (
    profile_fractions,
    quality_ratios,
    relative_percent_deviation,
    summarize_rpd,
    ttt_curve,
    ttt_target,
)


def test_rpd_positive_reference():
    assert relative_percent_deviation(110.0, 100.0) == pytest.approx(10.0, abs=1e-10)
    assert relative_percent_deviation(100.0, 100.0) == 0.0
    assert relative_percent_deviation(95.0, 100.0) == pytest.approx(-5.0, abs=1e-10)


def test_rpd_negative_reference_keeps_worse_positive():
    # minimization with a negative optimum: a less negative cost is
    # worse and must come out as a positive deviation
    assert relative_percent_deviation(-99.0, -100.0) == pytest.approx(1.0, abs=1e-10)
    assert relative_percent_deviation(-101.0, -100.0) == pytest.approx(-1.0, abs=1e-10)
    assert relative_percent_deviation(-0.00460, -0.00466) > 0


def test_rpd_zero_reference_rejected():
    with pytest.raises(ValueError):
        relative_percent_deviation(1.0, 0.0)


def test_summarize_rpd():
    summary = summarize_rpd("toy", 100.0, [101.0, 100.0, 103.0], [1.0, 2.0, 3.0])
    assert summary.best_cost == 100.0
    assert summary.rpd_best == 0.0
    assert summary.rpd_avg == pytest.approx(4.0 / 3.0, abs=1e-10)
    assert summary.mean_time_to_best == pytest.approx(2.0)
    assert summary.n_runs == 3
    with pytest.raises(ValueError):
        summarize_rpd("toy", 100.0, [], [])
    with pytest.raises(ValueError):
        summarize_rpd("toy", 100.0, [1.0], [1.0, 2.0])


def test_ttt_target_positive_and_negative_reference():
    assert ttt_target(100.0, 1.0) == pytest.approx(101.0, abs=1e-10)
    # a negative optimum relaxes toward zero
    assert ttt_target(-0.00466, 1.0) == pytest.approx(-0.0046134, abs=1e-10)


def test_ttt_curve_plotting_positions_and_censoring():
    curve = ttt_curve([4.0, None, 1.0, 2.5, None], target=10.0, limit=30.0)
    assert curve.times == (1.0, 2.5, 4.0)
    assert curve.n_runs == 5
    assert curve.n_censored == 2
    assert curve.points() == [(1.0, 0.1), (2.5, 0.3), (4.0, 0.5)]
    with pytest.raises(ValueError):
        ttt_curve([], target=1.0, limit=1.0)
    with pytest.raises(ValueError):
        ttt_curve([-1.0], target=1.0, limit=1.0)


def test_quality_ratios_best_scheme():
    ratios = quality_ratios(
        {"a": 100.0, "b": 210.0}, {"a": 100.0, "b": 200.0}, "best"
    )
    assert ratios["a"] == pytest.approx(1.0, abs=1e-10)
    assert ratios["b"] == pytest.approx(1.05, abs=1e-10)


def test_quality_ratios_lower_scheme():
    ratios = quality_ratios({"a": 99.0}, {"a": 90.0}, "lower")
    assert ratios["a"] == pytest.approx(1.1, abs=1e-10)


def test_quality_ratios_validation():
    with pytest.raises(ValueError):
        quality_ratios({"a": 1.0}, {"a": 1.0}, "median")
    with pytest.raises(ValueError):
        quality_ratios({}, {"a": 1.0}, "best")
    with pytest.raises(ValueError):
        quality_ratios({"a": 1.0}, {"a": -1.0}, "best")


def test_profile_fractions_are_nondecreasing():
    ratios = {f"i{k}": 1.0 + k / 10.0 for k in range(5)}
    fractions = profile_fractions(ratios, [1.0, 1.15, 1.25, 2.0])
    assert fractions == [0.2, 0.4, 0.6, 1.0]
    assert fractions == sorted(fractions)
    with pytest.raises(ValueError):
        profile_fractions({}, [1.0])
