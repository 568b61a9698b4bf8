from math import factorial

import numpy as np
import pytest
from hypothesis import given
from hypothesis import strategies as st

from survbound.distributions import Discrete, PowerLaw, Tabulated, TruncationView, raw_moments, truncated_moments
from survbound.errors import InputError, InsufficientOrder, NonPositiveCorrelationMoment, OrderTooLarge
from survbound.moments import (MomentVector, b_from_h, b_quadrature, check_order, e_brute_force, e_from_h,
                               ebar_from_B, schwarz_gaps)


def test_power_law_second_correlation_moment(power_law):
    h = raw_moments(power_law, 2)
    e = e_from_h(h, 2)
    assert e.e(2) == pytest.approx(40.0 / 9.0, rel=1e-10)


def test_gamma_half_recurrence(gamma_half):
    # e_n = (n - 1)^2 e_{n-2}
    e = e_from_h(raw_moments(gamma_half, 8), 8)
    assert e.e(0) == 1.0
    for n in (2, 4, 6, 8):
        assert e.e(n) == pytest.approx((n - 1) ** 2 * e.e(n - 2), rel=1e-10)
    assert e.delta_e() == pytest.approx(1.0 / np.sqrt(2.0), rel=1e-12)


def test_square_correlation_moments(square):
    # the autocorrelation of the unit square is the triangle 1 - |eps| on [-1, 1]
    e = e_from_h(raw_moments(square, 6), 6)
    for n in (2, 4, 6):
        assert e.e(n) == pytest.approx(2.0 / ((n + 1) * (n + 2)), rel=1e-10)


@pytest.mark.parametrize("name", ["three_level", "two_level", "square", "triangle", "skewed"])
def test_product_rule_matches_identity(request, name):
    dist = request.getfixturevalue(name)
    n = 8
    e = e_from_h(raw_moments(dist, n), n)
    brute = e_brute_force(dist, n)
    np.testing.assert_allclose(e.scaled, brute.scaled, rtol=1e-9, atol=1e-13)


def test_double_quadrature_matches_identity():
    dist = PowerLaw(1.0, 8.0)
    e = e_from_h(raw_moments(dist, 2), 2)
    brute = e_brute_force(dist, 2)
    assert e.e(2) == pytest.approx(14.0 / 180.0, rel=1e-10)
    assert brute.e(2) == pytest.approx(e.e(2), rel=1e-7)


def test_point_mass_is_degenerate():
    dist = Discrete(np.array([0.3]), np.array([1.0]))
    e = e_from_h(raw_moments(dist, 4), 4)
    assert e.degenerate
    assert e.e(2) == 0.0
    assert e.e(4) == 0.0


def test_inconsistent_moments_raise():
    # h_2 < h_1^2 is impossible for a probability density
    h = MomentVector(np.array([1.0, 1.0, 0.2]))
    with pytest.raises(NonPositiveCorrelationMoment) as info:
        e_from_h(h, 2)
    assert info.value.k == 2


def test_order_checks():
    check_order(16)
    with pytest.raises(OrderTooLarge):
        check_order(18)
    with pytest.raises(InputError):
        check_order(3, even=True)
    with pytest.raises(InputError):
        check_order(-2)
    with pytest.raises(InsufficientOrder):
        e_from_h(MomentVector(np.array([1.0, 0.5, 0.75])), 4)


@pytest.mark.parametrize("c", [0.5, 3.0, 10.0])
def test_edge_moments_match_quadrature(power_law, c):
    view = TruncationView(power_law, c)
    B = b_from_h(truncated_moments(view, 8))
    Bq = b_quadrature(view, 8)
    np.testing.assert_allclose(B.scaled, Bq.scaled, rtol=1e-8)
    assert np.all(B.scaled > 0)


def test_edge_moments_of_square(square):
    # the window [0, c] of the unit square has B_k = c^k / (k + 1)!
    c = 0.4
    B = b_from_h(truncated_moments(TruncationView(square, c), 6))
    expected = [c ** k / factorial(k + 1) for k in range(7)]
    np.testing.assert_allclose(B.scaled, expected, rtol=1e-10)


def test_edge_moments_of_two_sided_window(breit_wigner):
    view = TruncationView(breit_wigner, 2.0)
    B = b_from_h(truncated_moments(view, 4))
    assert B.cutoff == 2.0
    Bq = b_quadrature(view, 4)
    np.testing.assert_allclose(B.scaled, Bq.scaled, rtol=1e-8)


@pytest.mark.parametrize("c", [0.7, 2.0])
def test_truncated_correlation_moments_two_ways(skewed, c):
    hbar = truncated_moments(TruncationView(skewed, c), 8)
    direct = e_from_h(hbar, 8)
    from_edge = ebar_from_B(b_from_h(hbar), 8)
    np.testing.assert_allclose(direct.scaled, from_edge.scaled, rtol=1e-9)


def test_schwarz_gaps_are_nonnegative(power_law):
    for c in (0.1, 1.0, 10.0):
        B = b_from_h(truncated_moments(TruncationView(power_law, c), 4))
        gap13, gap24 = schwarz_gaps(B)
        assert gap13 >= 0
        assert gap24 >= 0


@pytest.mark.parametrize("s", [-1.0, 0.3, 10.0])
@pytest.mark.parametrize("n", [2, 4, 6, 8])
def test_correlation_moments_ignore_shifts(skewed, s, n):
    e = e_from_h(raw_moments(skewed, n), n)
    es = e_from_h(raw_moments(skewed.shifted(s), n), n)
    np.testing.assert_allclose(es.scaled, e.scaled, rtol=1e-8)


def test_recentred_moments(skewed, power_law):
    # the binomial shift of the raw moments agrees with the direct sums about the mean
    h = raw_moments(skewed, 8)
    recentred = MomentVector(h.scaled).centred()
    np.testing.assert_allclose(recentred, h.central, rtol=1e-10, atol=1e-14)
    assert recentred[1] == 0.0
    # analytic kinds carry no direct values; the variance is h_2 - h_1^2 = 20/9
    h = raw_moments(power_law, 2)
    assert h.central is None
    assert h.centred()[2] == pytest.approx(10.0 / 9.0, rel=1e-12)


@given(st.lists(st.floats(min_value=0.05, max_value=1.0), min_size=2, max_size=5),
       st.floats(min_value=-2.0, max_value=2.0))
def test_discrete_shift_invariance(weights, s):
    energies = np.arange(len(weights)) / len(weights)
    dist = Discrete(energies, np.array(weights))
    e = e_from_h(raw_moments(dist, 4), 4)
    es = e_from_h(raw_moments(dist.shifted(s), 4), 4)
    np.testing.assert_allclose(es.scaled, e.scaled, rtol=1e-7, atol=1e-12)
