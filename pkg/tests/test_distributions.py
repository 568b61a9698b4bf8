import json

import numpy as np
import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from survbound.distributions import (BreitWigner, Discrete, PowerLaw, Square, Tabulated, TruncationView,
                                     alpha_at, bundled_specs, load_distribution, normalize, raw_moments,
                                     truncated_moments)
from survbound.errors import (CutoffOutOfSupport, InvalidDistribution, MomentDivergent, NegativeDensity,
                              NonNormalizable, SpecFileError)


def test_gamma_half_moments(gamma_half):
    h = raw_moments(gamma_half, 2)
    assert h.h(0) == pytest.approx(1.0, rel=1e-12)
    assert h.h(1) == pytest.approx(0.5, rel=1e-12)
    assert h.h(2) == pytest.approx(0.75, rel=1e-12)


@pytest.mark.parametrize("c", [0.5, 1.0, 2.0, 3.0, 5.0])
def test_power_law_alpha(power_law, c):
    assert alpha_at(power_law, c) == pytest.approx(1.0 - (1.0 + c) ** -2.5, rel=1e-10)


def test_power_law_alpha_at_three(power_law):
    assert alpha_at(power_law, 3.0) == pytest.approx(31.0 / 32.0, rel=1e-12)


def test_power_law_divergent_moments_keep_lower_orders(power_law):
    with pytest.raises(MomentDivergent) as info:
        raw_moments(power_law, 4)
    assert info.value.k == 3
    assert info.value.partial.order == 2
    assert info.value.partial.h(1) == pytest.approx(2.0 / 3.0, rel=1e-12)
    assert info.value.partial.h(2) == pytest.approx(8.0 / 3.0, rel=1e-12)


def test_breit_wigner_has_no_mean(breit_wigner):
    with pytest.raises(MomentDivergent) as info:
        raw_moments(breit_wigner, 2)
    assert info.value.k == 1


def test_breit_wigner_symmetric_window(breit_wigner):
    view = TruncationView(breit_wigner, 5.0)
    hbar = truncated_moments(view, 2)
    assert view.alpha == pytest.approx(2.0 / np.pi * np.arctan(5.0), rel=1e-12)
    assert hbar.h(1) == pytest.approx(0.0, abs=1e-14)
    expected = breit_wigner.expectation(lambda e: e ** 2, -5.0, 5.0) / view.alpha
    assert hbar.h(2) == pytest.approx(expected, rel=1e-9)


@pytest.mark.parametrize("c", [0.3, 1.0, 4.0])
def test_power_law_truncated_moments_match_quadrature(power_law, c):
    view = TruncationView(power_law, c)
    hbar = truncated_moments(view, 6)
    for k in range(7):
        expected = power_law.expectation(lambda e, k=k: e ** k, 0.0, c) / view.alpha
        assert hbar.h(k) == pytest.approx(expected, rel=1e-8)


@pytest.mark.parametrize("name", ["gamma_half", "square", "triangle"])
def test_full_window_equals_raw_moments(name):
    dist = load_distribution(name)
    c = dist.support_upper
    hbar = truncated_moments(TruncationView(dist, c), 6)
    h = raw_moments(dist, 6)
    np.testing.assert_allclose(hbar.scaled, h.scaled, rtol=1e-8)
    assert alpha_at(dist, c) == 1.0


@given(st.lists(st.floats(min_value=1e-3, max_value=50.0), min_size=2, max_size=8))
def test_alpha_is_monotone(cutoffs):
    dist = PowerLaw(1.0, 3.5)
    cutoffs = sorted(cutoffs)
    alphas = [alpha_at(dist, c) for c in cutoffs]
    assert all(b >= a for a, b in zip(alphas, alphas[1:]))
    assert all(0 < a <= 1 for a in alphas)


def test_cutoff_outside_support(square, three_level):
    with pytest.raises(CutoffOutOfSupport):
        alpha_at(square, 1.5)
    with pytest.raises(CutoffOutOfSupport):
        alpha_at(square, 0.0)
    with pytest.raises(CutoffOutOfSupport):
        alpha_at(three_level, -0.1)


def test_discrete_window(three_level):
    assert alpha_at(three_level, 0.25) == pytest.approx(0.7)
    assert alpha_at(three_level, 0.75) == pytest.approx(0.9)
    hbar = truncated_moments(TruncationView(three_level, 0.75), 2)
    assert hbar.h(1) == pytest.approx(0.1 / 0.9)
    assert hbar.edge == 0.75


def test_discrete_validation():
    with pytest.raises(InvalidDistribution):
        Discrete(np.array([1.0, 0.0]), np.array([0.5, 0.5]))
    with pytest.raises(NegativeDensity):
        Discrete(np.array([0.0, 1.0]), np.array([0.5, -0.5]))


def test_tabulated_validation():
    with pytest.raises(NegativeDensity) as info:
        Tabulated(np.array([0.0, 1.0, 2.0]), np.array([1.0, -1.0, 1.0]))
    assert info.value.energy == 1.0
    with pytest.raises(NonNormalizable):
        normalize(Tabulated(np.array([0.0, 1.0]), np.array([0.0, 0.0])))


def test_normalize_rescales():
    dist, factor = normalize(Tabulated(np.array([0.0, 1.0]), np.array([2.0, 2.0])))
    assert factor == pytest.approx(0.5)
    assert dist.weight == pytest.approx(1.0)
    dist, factor = normalize(Square(2.0, height=1.0))
    assert factor == pytest.approx(0.5)
    assert dist.weight == pytest.approx(1.0)


def test_tabulated_window_integrals_are_exact(skewed):
    # mean of the triangle with vertices 0, 1, 3 is 4/3
    h = raw_moments(skewed, 1)
    assert h.h(1) == pytest.approx(4.0 / 3.0, rel=1e-12)
    assert alpha_at(skewed, 1.0) == pytest.approx(1.0 / 3.0, rel=1e-12)


@pytest.mark.parametrize("s", [-1.0, 0.3, 10.0])
def test_shift_moves_mean_only(skewed, s):
    h = raw_moments(skewed, 2)
    hs = raw_moments(skewed.shifted(s), 2)
    assert hs.h(1) == pytest.approx(h.h(1) + s, rel=1e-8)
    assert hs.variance() == pytest.approx(h.variance(), rel=1e-8)


def test_bundled_specs_load():
    names = bundled_specs()
    for name in ("gamma_half", "power_law", "breit_wigner", "square", "three_level", "triangle"):
        assert name in names
        dist = load_distribution(name)
        assert dist.weight == pytest.approx(1.0)


def test_spec_file_errors(tmp_path):
    empty = tmp_path / "empty.json"
    empty.write_text("")
    with pytest.raises(SpecFileError) as info:
        load_distribution(str(empty))
    assert info.value.field == "kind"

    missing = tmp_path / "missing.json"
    missing.write_text(json.dumps({"kind": "power_law", "gamma": 1.0}))
    with pytest.raises(SpecFileError) as info:
        load_distribution(str(missing))
    assert info.value.field == "exponent"

    with pytest.raises(SpecFileError):
        load_distribution(str(tmp_path / "nowhere.json"))

    unknown = tmp_path / "unknown.json"
    unknown.write_text(json.dumps({"kind": "gaussian"}))
    with pytest.raises(SpecFileError):
        load_distribution(str(unknown))


def test_tabulated_weight_check(tmp_path):
    (tmp_path / "rho.csv").write_text("E,rho\n0,4\n1,4\n")
    spec = tmp_path / "heavy.json"
    spec.write_text(json.dumps({"kind": "tabulated", "file": "rho.csv"}))
    with pytest.raises(InvalidDistribution):
        load_distribution(str(spec))
    dist = load_distribution(str(spec), renormalize=True)
    assert dist.weight == pytest.approx(1.0)


def test_breit_wigner_spec_defaults_center(tmp_path):
    spec = tmp_path / "bw.json"
    spec.write_text(json.dumps({"kind": "breit_wigner", "gamma": 2.0}))
    dist = load_distribution(str(spec))
    assert isinstance(dist, BreitWigner)
    assert dist.e0 == 0.0
    assert dist.gamma == 2.0
