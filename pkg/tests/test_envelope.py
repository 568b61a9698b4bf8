import numpy as np
import pytest

from conftest import SLACK
from survbound.cutoff_bounds import amplitude_bound, build_cutoff_spec
from survbound.distributions import Square, TruncationView, alpha_at, truncated_moments
from survbound.envelope import (composite_bound, composite_frame, default_cutoff_grid, discrete_schedule,
                                edge_polynomial, envelope_equation_residual, envelope_time, square_envelope,
                                square_envelope_constants, sweep_envelope, t_of_c_numeric, t_of_c_quadratic,
                                t_of_c_quartic)
from survbound.errors import UnsupportedDistribution
from survbound.moments import b_from_h, e_from_h
from survbound.oracle import exact_amplitude
from survbound.utils_functions import time_grid


def _edge(dist, c, n):
    hbar = truncated_moments(TruncationView(dist, c), n)
    return b_from_h(hbar), e_from_h(hbar, n)


def test_square_constants():
    tau, sigma = square_envelope_constants(2)
    assert tau == pytest.approx(3.0, rel=1e-12)
    assert sigma == pytest.approx(0.5, rel=1e-12)
    assert square_envelope_constants(np.inf) == (2.0 * np.pi, 0.0)


def test_square_constants_solve_their_equation():
    for n in (4, 6, 8):
        tau, sigma = square_envelope_constants(n)
        lhs = sum((-1) ** (k // 2) * 2.0 * tau ** k / np.prod(np.arange(1, k + 3)) for k in range(0, n + 1, 2))
        rhs = sum((-1) ** (k // 2) * tau ** k / np.prod(np.arange(1, k + 2)) for k in range(0, n + 1, 2))
        assert lhs == pytest.approx(rhs ** 2, abs=1e-10)
        assert sigma ** 2 == pytest.approx(lhs, abs=1e-10)
        assert tau > 0


def test_quadratic_square_envelope():
    t = np.linspace(3.01, 4.49, 50)
    value, valid = square_envelope(2, t)
    np.testing.assert_allclose(value, 9.0 / (2.0 * t) - 1.0, rtol=1e-12)
    assert np.all(valid)
    _, valid = square_envelope(2, np.array([1.0, 2.9]))
    assert not valid.any()


def test_limiting_square_envelope_is_an_upper_bound(square):
    t = np.linspace(2.0 * np.pi, 60.0, 400)
    value, valid = square_envelope(np.inf, t)
    np.testing.assert_allclose(value, 1.0 - 2.0 * np.pi / t)
    assert np.all(value >= np.abs(exact_amplitude(square, t)) - SLACK)


@pytest.mark.parametrize("n", [2, 4, 6, 8])
def test_sweep_reproduces_square_envelope(square, n):
    env = sweep_envelope(square, n, c_grid_size=64)
    tau, sigma = square_envelope_constants(n)
    np.testing.assert_allclose(env.t * env.c, tau, rtol=1e-6)
    if env.direction == "upper":
        expected = 1.0 - (1.0 - sigma) * tau / env.t
    else:
        expected = (1.0 + sigma) * tau / env.t - 1.0
    np.testing.assert_allclose(env.raw_value, expected, rtol=1e-6, atol=1e-9)


def test_quadratic_sweep_and_tail(square):
    env = sweep_envelope(square, 2, c_grid_size=128)
    window = (env.t > 3.0) & (env.t < 4.5)
    assert window.sum() > 0
    np.testing.assert_allclose(env.raw_value[window], 9.0 / (2.0 * env.t[window]) - 1.0, rtol=1e-8)
    assert env.t_junction == pytest.approx(3.0, rel=1e-12)
    assert env.tail.t[-1] == pytest.approx(3.0, rel=1e-12)
    # tail meets the envelope point of c = M
    at_m = np.argmin(np.abs(env.c - 1.0))
    assert env.tail.raw_value[-1] == pytest.approx(env.raw_value[at_m], abs=1e-8)
    assert np.all(np.diff(env.t) > 0)


@pytest.mark.parametrize("c", [0.5, 0.8])
def test_envelope_touches_its_family(square, c):
    for n in (2, 4):
        spec = build_cutoff_spec(square, c, n)
        t, _, _ = envelope_time(spec.edge_moments(), n, spec.ebar)
        touch, _ = amplitude_bound(spec, t)
        for dc in (-0.01, 0.01):
            neighbour, _ = amplitude_bound(build_cutoff_spec(square, c + dc, n), t)
            if spec.direction == "lower":
                assert neighbour <= touch + 1e-12
            else:
                assert neighbour >= touch - 1e-12


def test_quadratic_root(power_law):
    B, _ = _edge(power_law, 2.0, 2)
    t = t_of_c_quadratic(B)
    assert t == pytest.approx(2.0 * B.b(1) / B.b(2))
    assert t_of_c_numeric(B, None, 2)[0] == pytest.approx(t, rel=1e-10)


def _cutoffs(dist, count=15):
    if dist.two_sided or np.isinf(dist.support_upper):
        return np.geomspace(0.1, 20.0, count) * dist.scale
    return np.linspace(dist.support_lower, dist.support_upper, count + 1)[1:]


@pytest.mark.parametrize("name", ["gamma_half", "power_law", "breit_wigner", "square", "triangle", "skewed"])
def test_quartic_closed_form_matches_numeric(request, name):
    dist = request.getfixturevalue(name)
    for c in _cutoffs(dist):
        B, ebar = _edge(dist, c, 4)
        b1, b2, b3, b4 = (B.b(k) for k in range(1, 5))
        assert min(b1, b2, b3, b4) > 0
        assert b1 * b3 - b2 * b2 > 0
        assert 16.0 * b2 ** 3 - 24.0 * b1 * b2 * b3 + 9.0 * b1 * b1 * b4 > 0
        t = t_of_c_quartic(B, check=True)
        roots = t_of_c_numeric(B, ebar, 4)
        assert np.min(np.abs(roots - t)) <= 1e-8 * t


@pytest.mark.parametrize("n", [2, 4, 6, 8])
def test_roots_solve_envelope_equation(power_law, n):
    B, ebar = _edge(power_law, 2.0, n)
    coef = edge_polynomial(B, n)
    assert len(coef) == n
    for t in t_of_c_numeric(B, ebar, n):
        residual = envelope_equation_residual(B, ebar, n, t)
        scale = max(max(abs(ebar.E(k)) * t ** k for k in range(0, n + 1, 2)),
                    max(B.B(k) * t ** k for k in range(0, n + 1, 2)) ** 2)
        assert abs(residual) <= 1e-8 * scale


@pytest.mark.parametrize("n", [2, 4, 6, 8])
def test_breit_wigner_envelopes_bracket_decay(breit_wigner, n):
    env = sweep_envelope(breit_wigner, n, c_grid_size=64)
    exact = np.exp(-env.t)
    if env.direction == "lower":
        assert np.all(env.value <= exact + SLACK)
    else:
        assert np.all(env.value >= exact - SLACK)
    assert env.tail is None


def test_power_law_envelope_holds(power_law):
    env = sweep_envelope(power_law, 2, c_grid_size=24)
    exact = np.abs(exact_amplitude(power_law, env.t))
    assert np.all(env.value <= exact + SLACK)


def test_default_cutoff_grid(square, power_law, breit_wigner):
    grid = default_cutoff_grid(square, 32)
    assert len(grid) == 32
    assert grid[-1] == 1.0
    assert grid[0] == pytest.approx(1e-3)
    assert np.all(np.diff(grid) > 0)
    grid = default_cutoff_grid(power_law, 32)
    assert alpha_at(power_law, grid[-1]) == pytest.approx(1.0 - 1e-6, abs=1e-10)
    grid = default_cutoff_grid(breit_wigner, 32)
    assert alpha_at(breit_wigner, grid[-1]) == pytest.approx(1.0 - 1e-6, abs=1e-10)


def test_discrete_spectra_have_schedules(three_level):
    with pytest.raises(UnsupportedDistribution):
        sweep_envelope(three_level, 2)
    with pytest.raises(UnsupportedDistribution):
        discrete_schedule(Square(1.0), 2)


def test_three_level_schedule_windows(three_level):
    schedule = discrete_schedule(three_level, 2)
    low_gap, high_gap, nocut = schedule.segments
    assert low_gap.t_start == pytest.approx(4.0, abs=1e-12)
    assert np.isinf(low_gap.t_end)
    assert high_gap.t_start == pytest.approx(32.0 / 15.0, abs=1e-12)
    assert high_gap.t_end == pytest.approx(4.0, abs=1e-12)
    assert nocut.t_start == 0.0
    assert nocut.t_end == pytest.approx(32.0 / 15.0, abs=1e-12)
    # the constant line 2 alpha - 1 with alpha = 0.7
    value, _ = schedule.evaluate(np.array([5.0, 50.0]))
    np.testing.assert_allclose(value, 0.4)


@pytest.mark.parametrize("n", [2, 4])
def test_three_level_schedule_holds(three_level, n):
    t = time_grid(8.0, 512)
    value, _ = discrete_schedule(three_level, n).evaluate(t)
    exact = np.abs(exact_amplitude(three_level, t))
    if n == 2:
        assert np.all(value <= exact + SLACK)
    else:
        assert np.all(value >= exact - SLACK)


def test_three_level_schedule_is_continuous(three_level):
    schedule = discrete_schedule(three_level, 2)
    for t_switch in (32.0 / 15.0, 4.0):
        value, _ = schedule.evaluate(np.array([t_switch - 1e-9, t_switch + 1e-9]))
        assert value[0] == pytest.approx(value[1], abs=1e-6)


def test_two_level_schedule(two_level):
    t = np.linspace(0.0, 12.0, 400)
    value, _ = discrete_schedule(two_level, 2).evaluate(t)
    assert np.all(value <= np.abs(np.cos(t / 2.0)) + SLACK)


@pytest.mark.parametrize("name", ["square", "three_level", "gamma_half", "triangle"])
def test_composite_sandwich(request, name):
    dist = request.getfixturevalue(name)
    t = time_grid(8.0 / dist.scale, 128)
    lower, upper = composite_bound(dist, [2, 4], t[-1], c_grid_size=32, t=t)
    exact = np.abs(exact_amplitude(dist, t))
    assert np.all(lower.value <= exact + SLACK)
    assert np.all(upper.value >= exact - SLACK)
    assert np.all(lower.value <= upper.value + SLACK)

    df = composite_frame(lower, upper)
    assert list(df.columns) == ["t", "lower", "upper", "lower_source", "upper_source"]
    assert df["lower_source"].iloc[0] != ""


def test_composite_beats_trivial_bounds(square):
    t = np.array([0.0, 0.5, 1.0])
    lower, upper = composite_bound(square, [2, 4], 1.0, c_grid_size=16, t=t)
    assert lower.value[0] == pytest.approx(1.0)
    assert lower.value[1] > 0.9
    assert upper.sources[1] != "trivial"
