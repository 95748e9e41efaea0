"""Event-driven simulation: determinism, conservation, and agreement."""

import pytest

from tandemqbd import (
    InputError,
    NegativeArrivalRateError,
    TargetTooSmallError,
    closed_form_two_server,
    lambda_max,
    simulate_saturated,
    simulate_with_arrivals,
    validate_config,
)


def line(rates, buffers):
    return validate_config(rates, buffers)


def test_repeat_runs_are_bit_identical():
    cfg = line([1.0, 1.0], [1])
    a = simulate_saturated(cfg, 10_000, seed=99)
    b = simulate_saturated(cfg, 10_000, seed=99)
    assert a == b
    c = simulate_saturated(cfg, 10_000, seed=100)
    assert c.throughput_estimate != a.throughput_estimate


def test_negative_and_huge_seeds_accepted():
    cfg = line([1.0], [])
    simulate_saturated(cfg, 10_000, seed=-17)
    simulate_saturated(cfg, 10_000, seed=2**63 + 5)


def test_saturated_single_server():
    result = simulate_saturated(line([1.0], []), 50_000, seed=42)
    assert abs(result.throughput_estimate - 1.0) <= max(3 * result.ci_half_width, 0.01)
    assert result.departures_counted == 50_000
    assert result.ci_half_width >= 0.0


def test_saturated_two_servers_no_buffer():
    result = simulate_saturated(line([1.0, 1.0], [0]), 100_000, seed=7)
    want = closed_form_two_server(1.0, 1.0, 0)
    assert abs(result.throughput_estimate - want) <= max(3 * result.ci_half_width, 0.005)


def test_saturated_three_servers_matches_solver():
    cfg = line([1.0, 1.0, 1.0], [0, 0])
    result = simulate_saturated(cfg, 200_000, seed=11)
    want = lambda_max(cfg).lambda_max
    assert abs(result.throughput_estimate - want) <= max(3 * result.ci_half_width, 0.005)


def test_customer_conservation():
    result = simulate_saturated(line([0.8, 1.0, 1.2], [1, 0]), 20_000, seed=3)
    assert (
        result.total_departures
        == result.customers_injected - result.customers_in_system
    )


def test_target_too_small():
    with pytest.raises(TargetTooSmallError):
        simulate_saturated(line([1.0], []), 9_999, seed=0)


def test_arrivals_zero_rate_is_a_dead_line():
    result = simulate_with_arrivals(line([1.0, 1.0], [1]), 0.0, 500.0, seed=1)
    assert result.arrivals == 0
    assert result.departures == 0
    assert result.final_level == 0
    assert result.mean_level == 0.0


def test_arrivals_run_is_deterministic():
    cfg = line([1.0, 1.0], [1])
    a = simulate_with_arrivals(cfg, 0.5, 2_000.0, seed=5)
    b = simulate_with_arrivals(cfg, 0.5, 2_000.0, seed=5)
    assert a == b


def test_arrivals_conservation():
    result = simulate_with_arrivals(line([1.0, 0.9, 1.1], [1, 1]), 0.5, 5_000.0, seed=8)
    assert result.arrivals - result.departures == result.in_system


def test_level_bounded_below_saturation():
    cfg = line([1.0, 1.0], [1])
    threshold = lambda_max(cfg).lambda_max
    result = simulate_with_arrivals(cfg, 0.5 * threshold, 20_000.0, seed=13)
    assert result.final_level < 50
    assert result.mean_level < 10.0


def test_level_drifts_above_saturation():
    cfg = line([1.0, 1.0], [1])
    threshold = lambda_max(cfg).lambda_max
    rate = 1.2 * threshold
    horizon = 20_000.0
    result = simulate_with_arrivals(cfg, rate, horizon, seed=13)
    drift = (rate - threshold) * horizon
    assert result.final_level > 0.5 * drift
    assert result.final_level < 2.0 * drift


def test_arrivals_input_checks():
    cfg = line([1.0], [])
    with pytest.raises(NegativeArrivalRateError):
        simulate_with_arrivals(cfg, -0.5, 10.0, seed=0)
    with pytest.raises(InputError):
        simulate_with_arrivals(cfg, 0.5, 0.0, seed=0)
